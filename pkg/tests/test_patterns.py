"""Pattern catalog: parsing strictness, schema validation, graph queries."""

import json

import pytest
from hypothesis import given, strategies as st

from xcboard.patterns import (
    CatalogError,
    Pattern,
    PatternGraph,
    Relation,
    UnknownPatternError,
    blends,
    dump_catalog,
    load_catalog,
    load_catalog_file,
    next_steps,
    refinements,
    resolve_alternatives,
    validate_graph,
)
from xcboard.resources import default_catalog_path


def make_pattern(pid, level="pattern", role_tag=None, **over):
    base = dict(
        id=pid,
        name=pid.replace("-", " ").title(),
        level=level,
        context="ctx",
        problem="prob",
        forces=["force one"],
        solution="sol",
        consequences=["better ideas"],
        card_text=f"Card for {pid}.",
        detail={"steps": ["do the thing"], "examples": [],
                "stimulating_questions": [], "reasoning": ""},
        role_tag=role_tag,
    )
    base.update(over)
    return base


def catalog_text(patterns, relations=()):
    return json.dumps({"patterns": list(patterns), "relations": list(relations)})


def load(patterns, relations=()):
    return load_catalog(catalog_text(patterns, relations))


# ---------------------------------------------------------------------------
# shipped catalog


def test_shipped_catalog_loads_clean():
    graph = load_catalog_file(default_catalog_path())
    assert validate_graph(graph) == []
    assert len(graph.patterns) >= 15


def test_shipped_catalog_known_queries():
    graph = load_catalog_file(default_catalog_path())
    assert resolve_alternatives(graph, "generate-ideas") == [
        "change-of-perspective", "combination", "metaphor",
        "random-impulse", "thought-provocation", "variation",
    ]
    assert refinements(graph, "change-of-perspective") == [
        "be-the-solution", "fictional-hero", "goal-reversal", "stakeholder-eyes",
    ]
    assert refinements(graph, "random-impulse") == [
        "first-thing-outside", "random-book-page", "word-list",
    ]
    assert blends(graph, "random-impulse") == [
        "change-of-perspective", "combination", "metaphor",
    ]
    assert next_steps(graph, "generate-ideas") == ["evaluate-ideas"]
    assert next_steps(graph, "change-of-perspective") == ["evaluate-ideas"]


def test_shipped_catalog_round_trip():
    graph = load_catalog_file(default_catalog_path())
    again = load_catalog(dump_catalog(graph))
    assert again == graph
    # dumping is a fixed point once normalised
    assert dump_catalog(again) == dump_catalog(graph)


# ---------------------------------------------------------------------------
# parsing strictness


def test_load_rejects_non_object():
    with pytest.raises(CatalogError):
        load_catalog("[]")
    with pytest.raises(CatalogError):
        load_catalog("42")


def test_load_rejects_bad_json():
    with pytest.raises(CatalogError):
        load_catalog("{not json")


def test_load_rejects_unknown_pattern_field():
    bad = make_pattern("a-1")
    bad["surprise"] = True
    with pytest.raises(CatalogError) as err:
        load([bad])
    assert "surprise" in str(err.value)


def test_load_rejects_unknown_detail_field():
    bad = make_pattern("a-1")
    bad["detail"]["bonus"] = []
    with pytest.raises(CatalogError):
        load([bad])


def test_load_rejects_unknown_relation_field():
    rel = {"from": "a-1", "to": "b-2", "kind": "refines", "weight": 3}
    with pytest.raises(CatalogError):
        load([make_pattern("a-1"), make_pattern("b-2")], [rel])


def test_load_rejects_duplicate_ids():
    with pytest.raises(CatalogError) as err:
        load([make_pattern("a-1"), make_pattern("a-1")])
    assert "a-1" in str(err.value)


def test_load_rejects_unknown_relation_endpoint():
    rel = {"from": "a-1", "to": "ghost", "kind": "refines"}
    with pytest.raises(CatalogError) as err:
        load([make_pattern("a-1")], [rel])
    assert "ghost" in str(err.value)


def test_load_rejects_missing_required_field():
    bad = make_pattern("a-1")
    del bad["solution"]
    with pytest.raises(CatalogError):
        load([bad])


def test_load_rejects_wrong_types():
    bad = make_pattern("a-1")
    bad["name"] = 7
    with pytest.raises(CatalogError):
        load([bad])
    bad = make_pattern("a-1")
    bad["detail"]["steps"] = "just one string"
    with pytest.raises(CatalogError):
        load([bad])


def test_role_tag_optional_and_checked_by_validation():
    graph = load([make_pattern("a-1", level="process-phase", role_tag="explorer")])
    assert graph.patterns["a-1"].role_tag == "explorer"
    loose = load([make_pattern("a-1", role_tag="astronaut")])
    assert "unknown-role" in {v.rule for v in validate_graph(loose)}


# ---------------------------------------------------------------------------
# round trip on synthetic graphs


def test_dump_load_round_trip_small():
    graph = load(
        [make_pattern("b-2"), make_pattern("a-1")],
        [{"from": "b-2", "to": "a-1", "kind": "refines"}],
    )
    assert load_catalog(dump_catalog(graph)) == graph


def test_dump_orders_patterns_by_id():
    graph = load([make_pattern("zz"), make_pattern("aa")])
    doc = json.loads(dump_catalog(graph))
    assert [p["id"] for p in doc["patterns"]] == ["aa", "zz"]


# ---------------------------------------------------------------------------
# validation rules


def graph_of(patterns, relations=()):
    return PatternGraph(
        patterns={p.id: p for p in patterns},
        relations=tuple(relations),
    )


def pattern_obj(pid, level="pattern", role_tag=None, **over):
    raw = make_pattern(pid, level=level, role_tag=role_tag, **over)
    detail = raw.pop("detail")
    from xcboard.patterns import DetailBlock

    raw["forces"] = tuple(raw["forces"])
    raw["consequences"] = tuple(raw["consequences"])
    return Pattern(detail=DetailBlock(
        steps=tuple(detail["steps"]),
        examples=tuple(detail["examples"]),
        stimulating_questions=tuple(detail["stimulating_questions"]),
        reasoning=detail["reasoning"],
    ), **raw)


def rules(violations):
    return sorted({v.rule for v in violations})


def test_validate_flags_bad_id_format():
    graph = graph_of([pattern_obj("Bad_Id")])
    assert "id-format" in rules(validate_graph(graph))


def test_validate_flags_empty_card_text():
    graph = graph_of([pattern_obj("a-1", card_text="   ")])
    assert "empty-card-text" in rules(validate_graph(graph))


def test_validate_flags_missing_steps_for_patterns():
    p = pattern_obj("a-1")
    p = Pattern(**{**p.__dict__, "detail": p.detail.__class__(
        steps=(), examples=(), stimulating_questions=(), reasoning="")})
    assert "missing-steps" in rules(validate_graph(graph_of([p])))


def test_validate_flags_phase_without_role():
    graph = graph_of([pattern_obj("a-1", level="process-phase")])
    assert "phase-missing-role" in rules(validate_graph(graph))


def test_validate_flags_variant_with_role():
    graph = graph_of([pattern_obj("a-1", level="variant", role_tag="artist")])
    assert "variant-has-role" in rules(validate_graph(graph))


def test_validate_flags_self_relation():
    graph = graph_of(
        [pattern_obj("a-1")],
        [Relation("a-1", "a-1", "refines")],
    )
    assert "self-relation" in rules(validate_graph(graph))


def test_validate_flags_alternative_targeting_variant():
    graph = graph_of(
        [pattern_obj("a-1"), pattern_obj("v-1", level="variant")],
        [Relation("a-1", "v-1", "alternative-to")],
    )
    assert "alternative-target-level" in rules(validate_graph(graph))


def test_validate_flags_refines_cycle():
    graph = graph_of(
        [pattern_obj("a-1"), pattern_obj("b-2"), pattern_obj("c-3")],
        [
            Relation("a-1", "b-2", "refines"),
            Relation("b-2", "c-3", "refines"),
            Relation("c-3", "a-1", "refines"),
        ],
    )
    out = validate_graph(graph)
    cycle = [v for v in out if v.rule == "refines-cycle"]
    assert len(cycle) == 1
    assert cycle[0].ids == ("a-1", "b-2", "c-3")


def test_validate_accepts_refines_dag():
    graph = graph_of(
        [pattern_obj("a-1"), pattern_obj("b-2"), pattern_obj("c-3")],
        [
            Relation("b-2", "a-1", "refines"),
            Relation("c-3", "a-1", "refines"),
            Relation("c-3", "b-2", "refines"),
        ],
    )
    assert validate_graph(graph) == []


def test_validate_output_sorted_and_duplicate_free():
    graph = graph_of(
        [pattern_obj("Bad_Id"), pattern_obj("a-1", card_text=" ")],
        [Relation("a-1", "a-1", "refines")],
    )
    out = validate_graph(graph)
    assert out == sorted(out)
    assert len(out) == len(set(out))


# ---------------------------------------------------------------------------
# queries


def test_queries_raise_on_unknown_pattern():
    graph = graph_of([pattern_obj("a-1")])
    for query in (resolve_alternatives, refinements, blends, next_steps):
        with pytest.raises(UnknownPatternError):
            query(graph, "nope")


def test_blends_symmetric():
    graph = graph_of(
        [pattern_obj("a-1"), pattern_obj("b-2")],
        [Relation("a-1", "b-2", "blends-with")],
    )
    assert blends(graph, "a-1") == ["b-2"]
    assert blends(graph, "b-2") == ["a-1"]


def test_queries_are_single_hop():
    graph = graph_of(
        [pattern_obj("a-1"), pattern_obj("b-2"), pattern_obj("c-3")],
        [
            Relation("b-2", "a-1", "refines"),
            Relation("c-3", "b-2", "refines"),
        ],
    )
    assert refinements(graph, "a-1") == ["b-2"]  # not c-3
    assert refinements(graph, "b-2") == ["c-3"]


ids = st.sampled_from([f"p-{i}" for i in range(8)])
kinds = st.sampled_from(["refines", "alternative-to", "blends-with", "followed-by"])


@given(st.lists(st.tuples(ids, ids, kinds), max_size=24))
def test_queries_sorted_and_duplicate_free(edges):
    graph = graph_of(
        [pattern_obj(f"p-{i}") for i in range(8)],
        [Relation(a, b, k) for a, b, k in edges],
    )
    for pid in graph.patterns:
        for query in (resolve_alternatives, refinements, blends, next_steps):
            out = query(graph, pid)
            assert out == sorted(set(out))
            assert all(o in graph.patterns for o in out)


@given(st.lists(st.tuples(ids, ids), max_size=24))
def test_blends_symmetry_property(edges):
    graph = graph_of(
        [pattern_obj(f"p-{i}") for i in range(8)],
        [Relation(a, b, "blends-with") for a, b in edges],
    )
    for pid in graph.patterns:
        for partner in blends(graph, pid):
            assert pid in blends(graph, partner)
