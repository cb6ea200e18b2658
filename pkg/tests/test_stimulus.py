"""Stimulus engine: deck parsing, seeded draws, prompt builders, wizards."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from xcboard.patterns import load_catalog_file
from xcboard.resources import default_catalog_path, default_deck_paths
from xcboard.stimulus import (
    Deck,
    DeckError,
    WizardError,
    draw,
    forced_connection,
    load_deck,
    load_deck_file,
    metaphor_prompt,
    perspective_prompt,
    recombine_attributes,
    render_step,
    wizard_advance,
    wizard_start,
)


def deck_doc(deck_id="d", kind="words", entries=("alpha", "beta", "gamma")):
    return json.dumps({"id": deck_id, "kind": kind, "entries": list(entries)})


# ---------------------------------------------------------------------------
# deck parsing


def test_load_deck_happy_path():
    deck = load_deck(deck_doc())
    assert deck == Deck(id="d", kind="words", entries=("alpha", "beta", "gamma"))


def test_load_deck_rejects_extra_or_missing_fields():
    with pytest.raises(DeckError):
        load_deck(json.dumps({"id": "d", "kind": "words"}))
    doc = json.loads(deck_doc())
    doc["extra"] = 1
    with pytest.raises(DeckError):
        load_deck(json.dumps(doc))


def test_load_deck_rejects_unknown_kind():
    with pytest.raises(DeckError) as err:
        load_deck(deck_doc(kind="emotions"))
    assert "emotions" in str(err.value)


def test_load_deck_rejects_empty_and_duplicate_entries():
    with pytest.raises(DeckError):
        load_deck(deck_doc(entries=[]))
    with pytest.raises(DeckError):
        load_deck(deck_doc(entries=["a", "  "]))
    with pytest.raises(DeckError) as err:
        load_deck(deck_doc(entries=["a", "b", "a"]))
    assert "'a'" in str(err.value)


def test_load_deck_rejects_bad_json():
    with pytest.raises(DeckError):
        load_deck("{oops")


def test_shipped_decks_load():
    paths = default_deck_paths()
    decks = {d.id: d for d in map(load_deck_file, paths)}
    assert set(decks) == {"attributes", "personas", "words"}
    assert len(decks["attributes"].entries) == 40
    assert len(decks["personas"].entries) == 20
    assert len(decks["words"].entries) == 549


# ---------------------------------------------------------------------------
# seeded draws


def test_draw_is_deterministic_per_seed():
    deck = load_deck(deck_doc(entries=[f"w{i}" for i in range(20)]))
    first = draw(deck, seed=99, n=5)
    second = draw(deck, seed=99, n=5)
    assert first == second
    assert [c.entry for c in first] != [c.entry for c in draw(deck, seed=100, n=5)]


def test_draw_known_words():
    words = next(d for d in map(load_deck_file, default_deck_paths()) if d.id == "words")
    assert [c.entry for c in draw(words, seed=42, n=2)] == ["drawer", "mansion"]


def test_draw_without_replacement():
    deck = load_deck(deck_doc(entries=[f"w{i}" for i in range(10)]))
    cards = draw(deck, seed=3, n=10)
    assert sorted(c.entry for c in cards) == sorted(deck.entries)


def test_draw_range_checks():
    deck = load_deck(deck_doc())
    with pytest.raises(ValueError):
        draw(deck, seed=1, n=0)
    with pytest.raises(ValueError):
        draw(deck, seed=1, n=4)


def test_draw_prompt_varies_by_deck_kind():
    card = draw(load_deck(deck_doc(kind="personas", entries=["superman"])), 0, 1)[0]
    assert card.prompt == "What would superman do?"
    card = draw(load_deck(deck_doc(kind="attributes", entries=["weightless"])), 0, 1)[0]
    assert card.prompt == "What if it were weightless?"
    card = draw(load_deck(deck_doc(kind="words", entries=["anchor"])), 0, 1)[0]
    assert card.prompt == "Random impulse: anchor."


@settings(max_examples=30)
@given(seed=st.integers(min_value=0, max_value=2**64 - 1), n=st.integers(1, 12))
def test_draw_property_distinct_members(seed, n):
    deck = load_deck(deck_doc(entries=[f"w{i}" for i in range(12)]))
    cards = draw(deck, seed=seed, n=n)
    entries = [c.entry for c in cards]
    assert len(set(entries)) == n
    assert set(entries) <= set(deck.entries)


# ---------------------------------------------------------------------------
# prompt builders


def test_forced_connection_chains_cards_and_topic():
    deck = load_deck(deck_doc(entries=["anchor", "comet"]))
    cards = draw(deck, seed=0, n=2)
    a, b = cards[0].entry, cards[1].entry
    text = forced_connection(cards, topic="school lunches")
    assert f"How does {a} connect to {b}?" in text
    assert f"How does {b} connect to school lunches?" in text
    assert text.endswith(f"What parts of {a} are analogue to school lunches?")


def test_forced_connection_needs_two_points():
    deck = load_deck(deck_doc(entries=["solo"]))
    only = draw(deck, seed=0, n=1)
    with pytest.raises(ValueError):
        forced_connection(only)
    assert "solo" in forced_connection(only, topic="anything")
    with pytest.raises(ValueError):
        forced_connection([])


def test_perspective_prompt():
    assert perspective_prompt("MacGyver") == "What would MacGyver do?"
    both = perspective_prompt("MacGyver", topic="slow builds")
    assert both == "What would MacGyver do? How would MacGyver tackle slow builds?"
    with pytest.raises(ValueError):
        perspective_prompt("   ")


def test_metaphor_prompt():
    text = metaphor_prompt("a beehive", "our release process")
    assert text == (
        "Imagine our release process as a beehive. "
        "What parts of a beehive are analogue to our release process?"
    )
    with pytest.raises(ValueError):
        metaphor_prompt("", "x")
    with pytest.raises(ValueError):
        metaphor_prompt("x", " ")


def test_recombine_attributes_seeded():
    groups = [["red", "blue"], ["fast", "slow", "silent"],
              ["wood", "steel", "glass", "cloth"]]
    assert recombine_attributes(groups, 7) == ["blue", "fast", "glass"]
    assert recombine_attributes(groups, 7) == recombine_attributes(groups, 7)
    with pytest.raises(ValueError):
        recombine_attributes([["a"], []], 0)


@settings(max_examples=30)
@given(seed=st.integers(min_value=0, max_value=2**64 - 1))
def test_recombine_picks_one_per_group(seed):
    groups = [["a", "b"], ["c"], ["d", "e", "f"]]
    picks = recombine_attributes(groups, seed)
    assert len(picks) == 3
    for pick, group in zip(picks, groups):
        assert pick in group


# ---------------------------------------------------------------------------
# wizards


@pytest.fixture(scope="module")
def graph():
    return load_catalog_file(default_catalog_path())


def test_wizard_walks_all_steps(graph):
    state = wizard_start(graph, "random-impulse")
    assert state.total_steps == 4
    seen = []
    while not state.finished:
        view = render_step(graph, state)
        seen.append(view["step"])
        state = wizard_advance(state)
    assert seen == list(graph.patterns["random-impulse"].detail.steps)
    with pytest.raises(WizardError):
        wizard_advance(state)
    with pytest.raises(WizardError):
        render_step(graph, state)


def test_wizard_card_view_keys(graph):
    view = render_step(graph, wizard_start(graph, "random-impulse"))
    assert sorted(view) == [
        "card_text", "name", "pattern_id", "step", "step_index", "total_steps",
    ]


def test_wizard_full_view_superset(graph):
    card = render_step(graph, wizard_start(graph, "random-impulse", "card"))
    full = render_step(graph, wizard_start(graph, "random-impulse", "full"))
    for key, value in card.items():
        assert full[key] == value
    assert {"examples", "stimulating_questions", "reasoning"} <= set(full)


def test_wizard_rejects_unknown_inputs(graph):
    with pytest.raises(WizardError):
        wizard_start(graph, "random-impulse", detail_level="verbose")
    with pytest.raises(KeyError):
        wizard_start(graph, "no-such-pattern")


def test_wizard_covers_every_catalog_pattern(graph):
    for pid, pattern in graph.patterns.items():
        if not pattern.detail.steps:
            continue
        state = wizard_start(graph, pid, "full")
        count = 0
        while not state.finished:
            view = render_step(graph, state)
            assert view["pattern_id"] == pid
            assert view["step_index"] == count
            state = wizard_advance(state)
            count += 1
        assert count == len(pattern.detail.steps)
