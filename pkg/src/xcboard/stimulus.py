"""Seeded stimulus generators and stepwise method wizards.

All randomness flows through :mod:`xcboard.rng`, so every draw is a pure
function of (inputs, seed) and reproduces bit-identically across runs and
ports.  Prompt wording lives in :data:`DEFAULT_TEMPLATES`; deployments may
pass their own table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Mapping

from .patterns import PatternGraph
from .rng import SplitMix64, sample_indices

DECK_KINDS = ("words", "images", "personas", "attributes")
DETAIL_LEVELS = ("card", "full")

DEFAULT_TEMPLATES: Mapping[str, str] = {
    "connect": "How does {a} connect to {b}?",
    "analogue": "What parts of {a} are analogue to {b}?",
    "persona": "What would {persona} do?",
    "persona_topic": "How would {persona} tackle {topic}?",
    "metaphor": "Imagine {topic} as {concept}.",
    "card_words": "Random impulse: {entry}.",
    "card_personas": "What would {entry} do?",
    "card_attributes": "What if it were {entry}?",
    "card_images": "{entry}",
}


class DeckError(ValueError):
    pass


class WizardError(ValueError):
    pass


@dataclass(frozen=True)
class Deck:
    id: str
    kind: str
    entries: tuple[str, ...]


@dataclass(frozen=True)
class StimulusCard:
    deck_id: str
    entry: str
    prompt: str
    pattern_id: str | None = None


@dataclass(frozen=True)
class WizardState:
    """Progress through one pattern's steps; a plain value, freely copyable."""

    pattern_id: str
    step_index: int
    total_steps: int
    detail_level: str
    finished: bool


def load_deck(source: str) -> Deck:
    """Parse a deck document: ``{"id", "kind", "entries"}``."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise DeckError(f"invalid deck document: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(doc, dict) or set(doc) != {"id", "kind", "entries"}:
        raise DeckError("deck document needs exactly the fields id, kind, entries")
    deck_id, kind, entries = doc["id"], doc["kind"], doc["entries"]
    if not isinstance(deck_id, str) or not deck_id:
        raise DeckError("deck id must be a non-empty string")
    if kind not in DECK_KINDS:
        raise DeckError(f"unknown deck kind {kind!r}; expected one of {DECK_KINDS}")
    if (
        not isinstance(entries, list)
        or not entries
        or any(not isinstance(e, str) or not e.strip() for e in entries)
    ):
        raise DeckError("entries must be a non-empty list of non-empty strings")
    if len(set(entries)) != len(entries):
        seen, dupes = set(), set()
        for e in entries:
            (dupes if e in seen else seen).add(e)
        raise DeckError(f"duplicate deck entries: {sorted(dupes)}")
    return Deck(id=deck_id, kind=kind, entries=tuple(entries))


def load_deck_file(path) -> Deck:
    """load_deck over the contents of a file path."""
    with open(path, encoding="utf-8") as fh:
        return load_deck(fh.read())


def render_card_prompt(
    kind: str, entry: str, templates: Mapping[str, str] = DEFAULT_TEMPLATES
) -> str:
    return templates[f"card_{kind}"].format(entry=entry)


def draw(deck: Deck, seed: int, n: int) -> list[StimulusCard]:
    """Draw n distinct entries without replacement; deterministic per seed."""
    if not 1 <= n <= len(deck.entries):
        raise ValueError(
            f"draw count {n} out of range 1..{len(deck.entries)} for deck {deck.id!r}"
        )
    picked = sample_indices(len(deck.entries), n, seed)
    return [
        StimulusCard(
            deck_id=deck.id,
            entry=deck.entries[i],
            prompt=render_card_prompt(deck.kind, deck.entries[i]),
        )
        for i in picked
    ]


def forced_connection(
    cards: list[StimulusCard],
    topic: str = "",
    templates: Mapping[str, str] = DEFAULT_TEMPLATES,
) -> str:
    """Chain the drawn entries (and the topic) into connection questions."""
    if not cards:
        raise ValueError("forced_connection needs at least one card")
    chain = [c.entry for c in cards]
    if topic.strip():
        chain.append(topic.strip())
    if len(chain) < 2:
        raise ValueError("forced_connection needs two cards, or one card and a topic")
    parts = [
        templates["connect"].format(a=a, b=b) for a, b in zip(chain, chain[1:])
    ]
    parts.append(templates["analogue"].format(a=chain[0], b=chain[-1]))
    return " ".join(parts)


def perspective_prompt(
    persona: str, topic: str = "", templates: Mapping[str, str] = DEFAULT_TEMPLATES
) -> str:
    persona = persona.strip()
    if not persona:
        raise ValueError("persona must be non-empty")
    prompt = templates["persona"].format(persona=persona)
    if topic.strip():
        prompt += " " + templates["persona_topic"].format(persona=persona, topic=topic.strip())
    return prompt


def metaphor_prompt(
    concept: str, topic: str, templates: Mapping[str, str] = DEFAULT_TEMPLATES
) -> str:
    concept, topic = concept.strip(), topic.strip()
    if not concept or not topic:
        raise ValueError("metaphor_prompt needs a non-empty concept and topic")
    return (
        templates["metaphor"].format(topic=topic, concept=concept)
        + " "
        + templates["analogue"].format(a=concept, b=topic)
    )


def recombine_attributes(groups: list[list[str]], seed: int) -> list[str]:
    """Pick one attribute per group with the seeded generator."""
    if any(not g for g in groups):
        raise ValueError("every attribute group must be non-empty")
    rng = SplitMix64(seed)
    return [group[rng.next_below(len(group))] for group in groups]


# ---------------------------------------------------------------------------
# wizards


def wizard_start(
    graph: PatternGraph, pattern_id: str, detail_level: str = "card"
) -> WizardState:
    if detail_level not in DETAIL_LEVELS:
        raise WizardError(f"unknown detail level {detail_level!r}")
    pattern = graph.require(pattern_id)
    total = len(pattern.detail.steps)
    if total == 0:
        raise WizardError(f"pattern {pattern_id!r} has no steps to walk")
    return WizardState(
        pattern_id=pattern_id,
        step_index=0,
        total_steps=total,
        detail_level=detail_level,
        finished=False,
    )


def wizard_advance(state: WizardState) -> WizardState:
    if state.finished:
        raise WizardError(f"wizard for {state.pattern_id!r} is already finished")
    nxt = state.step_index + 1
    return replace(state, step_index=nxt, finished=nxt == state.total_steps)


def render_step(graph: PatternGraph, state: WizardState) -> dict:
    """Text bundle for the current step; card view is a subset of full view."""
    if state.finished:
        raise WizardError(f"wizard for {state.pattern_id!r} is finished; nothing to render")
    pattern = graph.require(state.pattern_id)
    view = {
        "pattern_id": pattern.id,
        "name": pattern.name,
        "card_text": pattern.card_text,
        "step_index": state.step_index,
        "total_steps": state.total_steps,
        "step": pattern.detail.steps[state.step_index],
    }
    if state.detail_level == "full":
        view.update(
            examples=list(pattern.detail.examples),
            stimulating_questions=list(pattern.detail.stimulating_questions),
            reasoning=pattern.detail.reasoning,
        )
    return view
