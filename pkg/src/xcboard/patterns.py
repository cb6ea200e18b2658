"""Pattern-language catalog: schema, typed relation graph, queries, validation.

A catalog is a set of creativity methods described as patterns (context,
problem, forces, solution, consequences) connected by four relation kinds:

* ``refines``        — a more specific method implementing its parent
* ``alternative-to`` — one of several ways to reach a higher-level goal
* ``blends-with``    — two patterns that combine into a new method
* ``followed-by``    — a suggested next step

Graphs are immutable after load and safe to share between threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

LEVELS = ("process-phase", "pattern", "variant")
ROLE_TAGS = ("explorer", "artist", "judge", "warrior")
RELATION_KINDS = ("refines", "alternative-to", "blends-with", "followed-by")

_ID_RE = re.compile(r"[a-z0-9-]+")


class CatalogError(ValueError):
    """Raised when a catalog document cannot be loaded.

    ``line`` and ``column`` are set for textual parse errors (1-based).
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownPatternError(KeyError):
    def __init__(self, pattern_id: str):
        super().__init__(pattern_id)
        self.pattern_id = pattern_id

    def __str__(self) -> str:
        return f"unknown pattern id: {self.pattern_id!r}"


@dataclass(frozen=True)
class DetailBlock:
    """On-demand detail behind a pattern's short card text."""

    steps: tuple[str, ...] = ()
    examples: tuple[str, ...] = ()
    stimulating_questions: tuple[str, ...] = ()
    reasoning: str = ""


@dataclass(frozen=True)
class Pattern:
    id: str
    name: str
    level: str
    context: str
    problem: str
    forces: tuple[str, ...]
    solution: str
    consequences: tuple[str, ...]
    card_text: str
    detail: DetailBlock
    role_tag: str | None = None


@dataclass(frozen=True)
class Relation:
    # serialized as "from"/"to"; `from` is a Python keyword
    from_id: str
    to_id: str
    kind: str


@dataclass(frozen=True)
class PatternGraph:
    patterns: dict[str, Pattern] = field(default_factory=dict)
    relations: tuple[Relation, ...] = ()

    def require(self, pattern_id: str) -> Pattern:
        try:
            return self.patterns[pattern_id]
        except KeyError:
            raise UnknownPatternError(pattern_id) from None


@dataclass(frozen=True, order=True)
class Violation:
    """One broken invariant; validation returns these as values, not errors."""

    rule: str
    ids: tuple[str, ...]
    message: str = field(compare=False, default="")


# ---------------------------------------------------------------------------
# catalog document I/O


def _require_str(obj: dict, key: str, where: str, optional: bool = False) -> str | None:
    if key not in obj:
        if optional:
            return None
        raise CatalogError(f"{where}: missing field {key!r}")
    value = obj[key]
    if value is None and optional:
        return None
    if not isinstance(value, str):
        raise CatalogError(f"{where}: field {key!r} must be a string")
    return value


def _require_str_list(obj: dict, key: str, where: str) -> tuple[str, ...]:
    if key not in obj:
        raise CatalogError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise CatalogError(f"{where}: field {key!r} must be a list of strings")
    return tuple(value)


_PATTERN_KEYS = {
    "id", "name", "level", "context", "problem", "forces", "solution",
    "consequences", "role_tag", "card_text", "detail",
}
_DETAIL_KEYS = {"steps", "examples", "stimulating_questions", "reasoning"}
_RELATION_KEYS = {"from", "to", "kind"}


def _parse_pattern(obj: object, index: int) -> Pattern:
    where = f"patterns[{index}]"
    if not isinstance(obj, dict):
        raise CatalogError(f"{where}: expected an object")
    unknown = set(obj) - _PATTERN_KEYS
    if unknown:
        raise CatalogError(f"{where}: unknown fields {sorted(unknown)}")
    detail_obj = obj.get("detail")
    if not isinstance(detail_obj, dict):
        raise CatalogError(f"{where}: missing or invalid 'detail' object")
    unknown = set(detail_obj) - _DETAIL_KEYS
    if unknown:
        raise CatalogError(f"{where}.detail: unknown fields {sorted(unknown)}")
    detail = DetailBlock(
        steps=_require_str_list(detail_obj, "steps", f"{where}.detail"),
        examples=_require_str_list(detail_obj, "examples", f"{where}.detail"),
        stimulating_questions=_require_str_list(
            detail_obj, "stimulating_questions", f"{where}.detail"
        ),
        reasoning=_require_str(detail_obj, "reasoning", f"{where}.detail"),
    )
    return Pattern(
        id=_require_str(obj, "id", where),
        name=_require_str(obj, "name", where),
        level=_require_str(obj, "level", where),
        context=_require_str(obj, "context", where),
        problem=_require_str(obj, "problem", where),
        forces=_require_str_list(obj, "forces", where),
        solution=_require_str(obj, "solution", where),
        consequences=_require_str_list(obj, "consequences", where),
        card_text=_require_str(obj, "card_text", where),
        detail=detail,
        role_tag=_require_str(obj, "role_tag", where, optional=True),
    )


def _parse_relation(obj: object, index: int) -> Relation:
    where = f"relations[{index}]"
    if not isinstance(obj, dict):
        raise CatalogError(f"{where}: expected an object")
    unknown = set(obj) - _RELATION_KEYS
    if unknown:
        raise CatalogError(f"{where}: unknown fields {sorted(unknown)}")
    return Relation(
        from_id=_require_str(obj, "from", where),
        to_id=_require_str(obj, "to", where),
        kind=_require_str(obj, "kind", where),
    )


def load_catalog(source: str) -> PatternGraph:
    """Parse a catalog document into a PatternGraph.

    Structural errors (bad JSON, duplicate ids, relations naming unknown
    patterns) raise CatalogError.  Semantic invariants are *not* checked
    here; run :func:`validate_graph` for those.
    """
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"invalid catalog document: {exc.msg}",
                           line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise CatalogError("catalog document must be an object")
    unknown = set(doc) - {"patterns", "relations"}
    if unknown:
        raise CatalogError(f"unknown top-level fields {sorted(unknown)}")
    raw_patterns = doc.get("patterns")
    raw_relations = doc.get("relations")
    if not isinstance(raw_patterns, list) or not isinstance(raw_relations, list):
        raise CatalogError("catalog document needs 'patterns' and 'relations' arrays")

    patterns: dict[str, Pattern] = {}
    for i, raw in enumerate(raw_patterns):
        pattern = _parse_pattern(raw, i)
        if pattern.id in patterns:
            raise CatalogError(f"duplicate pattern id {pattern.id!r}")
        patterns[pattern.id] = pattern

    relations = []
    for i, raw in enumerate(raw_relations):
        relation = _parse_relation(raw, i)
        for endpoint in (relation.from_id, relation.to_id):
            if endpoint not in patterns:
                raise CatalogError(
                    f"relations[{i}]: endpoint {endpoint!r} is not a declared pattern"
                )
        relations.append(relation)

    return PatternGraph(patterns=patterns, relations=tuple(relations))


def load_catalog_file(path) -> PatternGraph:
    """load_catalog over the contents of a file path."""
    with open(path, encoding="utf-8") as fh:
        return load_catalog(fh.read())


def dump_catalog(graph: PatternGraph) -> str:
    """Serialize a graph back to the catalog file format.

    Patterns are written sorted by id; relations keep their stored order.
    ``load_catalog(dump_catalog(g))`` equals ``g``.
    """
    def pattern_obj(p: Pattern) -> dict:
        obj = {
            "id": p.id,
            "name": p.name,
            "level": p.level,
            "context": p.context,
            "problem": p.problem,
            "forces": list(p.forces),
            "solution": p.solution,
            "consequences": list(p.consequences),
            "card_text": p.card_text,
            "detail": {
                "steps": list(p.detail.steps),
                "examples": list(p.detail.examples),
                "stimulating_questions": list(p.detail.stimulating_questions),
                "reasoning": p.detail.reasoning,
            },
        }
        if p.role_tag is not None:
            obj["role_tag"] = p.role_tag
        return obj

    doc = {
        "patterns": [pattern_obj(graph.patterns[k]) for k in sorted(graph.patterns)],
        "relations": [
            {"from": r.from_id, "to": r.to_id, "kind": r.kind} for r in graph.relations
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# validation


def _refines_cycles(graph: PatternGraph) -> list[tuple[str, ...]]:
    """Strongly connected components of size >= 2 in the refines subgraph."""
    edges: dict[str, list[str]] = {pid: [] for pid in graph.patterns}
    for r in graph.relations:
        if r.kind == "refines" and r.from_id in edges and r.to_id in edges:
            edges[r.from_id].append(r.to_id)

    # Tarjan SCC, iterative to survive adversarial depth
    index_of: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[tuple[str, ...]] = []
    counter = 0

    for root in graph.patterns:
        if root in index_of:
            continue
        work = [(root, iter(edges[root]))]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index_of:
                    index_of[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(edges[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index_of[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index_of[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) >= 2:
                    sccs.append(tuple(sorted(component)))
    return sccs


def validate_graph(graph: PatternGraph) -> list[Violation]:
    """Check every schema invariant; returns a deterministic, sorted list."""
    out: list[Violation] = []

    for key, p in graph.patterns.items():
        ids = (p.id,)
        if not p.id or not _ID_RE.fullmatch(p.id):
            out.append(Violation("id-format", (key,),
                                 f"id {p.id!r} must be non-empty [a-z0-9-]+"))
        if key != p.id:
            out.append(Violation("id-mismatch", (key,),
                                 f"stored under key {key!r} but declares id {p.id!r}"))
        if p.level not in LEVELS:
            out.append(Violation("unknown-level", ids, f"level {p.level!r}"))
        if p.role_tag is not None and p.role_tag not in ROLE_TAGS:
            out.append(Violation("unknown-role", ids, f"role_tag {p.role_tag!r}"))
        if not p.card_text.strip():
            out.append(Violation("empty-card-text", ids, "card_text must be non-empty"))
        if any(not s.strip() for s in p.detail.steps):
            out.append(Violation("empty-detail-step", ids, "steps must be non-empty strings"))
        if p.level in ("pattern", "variant") and not p.detail.steps:
            out.append(Violation("missing-steps", ids,
                                 "patterns and variants need at least one step"))
        if p.level == "process-phase" and p.role_tag is None:
            out.append(Violation("phase-missing-role", ids,
                                 "process phases carry a role_tag"))
        if p.level == "variant" and p.role_tag is not None:
            out.append(Violation("variant-has-role", ids,
                                 "variants inherit their role; role_tag must be absent"))

    for r in graph.relations:
        pair = tuple(sorted((r.from_id, r.to_id)))
        if r.kind not in RELATION_KINDS:
            out.append(Violation("unknown-relation-kind", pair, f"kind {r.kind!r}"))
            continue
        for endpoint in (r.from_id, r.to_id):
            if endpoint not in graph.patterns:
                out.append(Violation("relation-endpoint-unknown", (endpoint,),
                                     f"{r.kind} relation names unknown pattern"))
        if r.kind in ("refines", "followed-by") and r.from_id == r.to_id:
            out.append(Violation("self-relation", (r.from_id,),
                                 f"{r.kind} relation from a pattern to itself"))
        if (
            r.kind == "alternative-to"
            and (target := graph.patterns.get(r.to_id)) is not None
            and target.level == "variant"
        ):
            out.append(Violation("alternative-target-level", pair,
                                 "alternative-to must target a process-phase or pattern"))

    for component in _refines_cycles(graph):
        out.append(Violation("refines-cycle", component,
                             f"refines edges form a cycle through {', '.join(component)}"))

    return sorted(set(out))


# ---------------------------------------------------------------------------
# graph queries (non-transitive; sorted, duplicate-free)


def _existing(graph: PatternGraph, ids) -> list[str]:
    return sorted({i for i in ids if i in graph.patterns})


def resolve_alternatives(graph: PatternGraph, goal: str) -> list[str]:
    """All patterns declared as alternatives for reaching `goal`."""
    graph.require(goal)
    return _existing(
        graph,
        (r.from_id for r in graph.relations
         if r.kind == "alternative-to" and r.to_id == goal),
    )


def refinements(graph: PatternGraph, pattern_id: str) -> list[str]:
    """Direct refinements of a pattern (one level, no transitive closure)."""
    graph.require(pattern_id)
    return _existing(
        graph,
        (r.from_id for r in graph.relations
         if r.kind == "refines" and r.to_id == pattern_id),
    )


def blends(graph: PatternGraph, pattern_id: str) -> list[str]:
    """Patterns this one blends with; symmetric regardless of edge direction."""
    graph.require(pattern_id)
    partners = []
    for r in graph.relations:
        if r.kind != "blends-with":
            continue
        if r.from_id == pattern_id:
            partners.append(r.to_id)
        elif r.to_id == pattern_id:
            partners.append(r.from_id)
    return _existing(graph, partners)


def next_steps(graph: PatternGraph, pattern_id: str) -> list[str]:
    """Suggested follow-up patterns."""
    graph.require(pattern_id)
    return _existing(
        graph,
        (r.to_id for r in graph.relations
         if r.kind == "followed-by" and r.from_id == pattern_id),
    )
