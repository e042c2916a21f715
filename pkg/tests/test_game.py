"""Maze-game simulator: scripted/random policies, event extraction,
determinism, and seeded corruption.

Claims covered:
- the seven scripted routes produce exactly the published winning-type
  event sequences (three door orders in v1, plus four coin orders in v2);
- scripted-mixed rotation covers every distinct winning type;
- random play under the step cap wins or loses cleanly: winners carry a
  win marker and restrict to known types, losers end in the timeout
  marker with uncollected-item markers before it;
- every winning episode restricted to the analysis labels is simple and
  consistent with one of the two winning-strategy graphs;
- simulate is deterministic and episode streams are independent of the
  episode count;
- extract_events maps raw moves to event codes and drops non-events;
- corrupt mutates exactly ceil(fraction * n) episodes (one swap, delete,
  or insert each), preserves the rest bit for bit, and is seeded;
- relevance scores from a simulated v1 mix assign infinite scores to the
  win-prerequisite pairs.
"""

from __future__ import annotations

import dataclasses
import math

import pytest

from hassemine import (
    Digraph,
    EventSequence,
    InvalidPolicy,
    LabelTable,
    hasse_cluster,
    is_consistent,
    relevance_scores,
    restrict_sequence,
)
from hassemine.game import (
    Episode,
    GameConfig,
    V1_EVENTS,
    V2_EVENTS,
    corrupt,
    corrupt_sequences,
    extract_events,
    simulate,
    v1_config,
    v2_config,
)

J4 = ("e1", "e2", "e5", "e6")
J5 = ("e1", "e2", "e5", "e6", "e11")

V1_TYPES = {
    ("e1", "e2", "e5", "e6"),
    ("e2", "e1", "e5", "e6"),
    ("e2", "e5", "e1", "e6"),
}
COIN_TYPES = {
    ("e2", "e5", "e11"),
    ("e1", "e2", "e5", "e11"),
    ("e2", "e1", "e5", "e11"),
    ("e2", "e5", "e1", "e11"),
}
V2_TYPES = V1_TYPES | COIN_TYPES

DOOR_GRAPH = Digraph.from_arrows(
    LabelTable(J4), [("e1", "e6"), ("e2", "e5"), ("e5", "e6")]
)
COIN_GRAPH = Digraph.from_arrows(
    LabelTable(("e2", "e5", "e11")), [("e2", "e5"), ("e5", "e11")]
)


def test_scripted_route_sequences_v1():
    expected = {
        "scripted-door-1": ("e1", "e2", "e5", "e6", "e9"),
        "scripted-door-2": ("e2", "e1", "e5", "e6", "e9"),
        "scripted-door-3": ("e2", "e5", "e1", "e6", "e9"),
    }
    for policy, events in expected.items():
        (ep,) = simulate(v1_config(seed=0), 1, policy)
        assert ep.events.events == events
        assert ep.label == 1 and ep.win_route == "door"
        assert ep.policy == policy


def test_scripted_route_sequences_v2():
    expected = {
        "scripted-coin-1": ("e2", "e5", "e11", "e3", "e12"),
        "scripted-coin-2": ("e1", "e2", "e5", "e11", "e12"),
        "scripted-coin-3": ("e2", "e1", "e5", "e11", "e12"),
        "scripted-coin-4": ("e2", "e5", "e1", "e11", "e12"),
    }
    for policy, events in expected.items():
        (ep,) = simulate(v2_config(seed=0), 1, policy)
        assert ep.events.events == events
        assert ep.label == 1 and ep.win_route == "coin"
    (door,) = simulate(v2_config(seed=0), 1, "scripted-door-1")
    assert door.events.events == ("e1", "e2", "e5", "e6", "e9")
    assert door.events.universe is V2_EVENTS


def test_scripted_mixed_covers_all_types():
    v1 = simulate(v1_config(seed=5), 80, "scripted-mixed")
    assert {restrict_sequence(ep.events, J4).events for ep in v1} == V1_TYPES
    assert all(ep.label == 1 for ep in v1)

    v2 = simulate(v2_config(seed=5), 125, "scripted-mixed")
    assert {restrict_sequence(ep.events, J5).events for ep in v2} == V2_TYPES
    assert all(ep.label == 1 for ep in v2)


def test_invalid_policies():
    with pytest.raises(InvalidPolicy):
        simulate(v1_config(), 1, "scripted-coin-1")
    with pytest.raises(InvalidPolicy):
        simulate(v1_config(), 1, "scripted-nonsense")
    with pytest.raises(InvalidPolicy):
        simulate(v2_config(), 1, "greedy")
    with pytest.raises(ValueError):
        simulate(v1_config(), 0, "random")


def test_simulate_deterministic_and_prefix_stable():
    cfg = v2_config(seed=11)
    a = simulate(cfg, 20, "random")
    b = simulate(cfg, 20, "random")
    assert a == b
    assert simulate(cfg, 8, "random") == a[:8]
    assert simulate(v2_config(seed=12), 20, "random") != a


def test_tiny_step_cap_forces_loss():
    cfg = dataclasses.replace(v1_config(seed=0), step_cap=3)
    episodes = simulate(cfg, 10, "random")
    for ep in episodes:
        assert ep.label == 0 and ep.win_route == "none"
        events = ep.events.events
        assert events[-1] == "e10"
        assert ("e3" in events) == ("e1" not in events)
        assert ("e4" in events) == ("e2" not in events)


def test_episode_markers_and_tail_order():
    for version, cfg in ((1, v1_config(seed=2)), (2, v2_config(seed=2))):
        for ep in simulate(cfg, 60, "random"):
            events = ep.events.events
            if ep.label == 1:
                assert events[-1] == ("e9" if ep.win_route == "door" else "e12")
                assert "e10" not in events
            else:
                assert events[-1] == "e10"
                assert "e9" not in events and "e12" not in events
            # uncollected-item markers sit in the tail, after gameplay
            for marker, item_event in (("e3", "e1"), ("e4", "e2")):
                if marker in events:
                    assert item_event not in events


def test_winning_restrictions_simple_and_typed():
    v1 = [ep for ep in simulate(v1_config(seed=9), 150, "random") if ep.label]
    assert v1
    for ep in v1:
        r = restrict_sequence(ep.events, J4)
        assert r.is_simple and r.events in V1_TYPES
        assert is_consistent(ep.events, DOOR_GRAPH)

    v2 = [ep for ep in simulate(v2_config(seed=9), 200, "random") if ep.label]
    assert any(ep.win_route == "door" for ep in v2)
    assert any(ep.win_route == "coin" for ep in v2)
    for ep in v2:
        r = restrict_sequence(ep.events, J5)
        assert r.is_simple and r.events in V2_TYPES
        assert is_consistent(ep.events, DOOR_GRAPH) or is_consistent(
            ep.events, COIN_GRAPH
        )


def test_extract_events_worked_example():
    moves = [
        ("move", "north"),
        ("collect", "key"),
        ("blocked", "wall"),
        ("fail_use", "explosive"),
        ("collect", "explosive"),
        ("use_explosive", "rock"),
        ("end", "lose"),
    ]
    seq = extract_events(moves, 1)
    assert seq.universe is V1_EVENTS
    assert seq.events == ("e1", "e7", "e2", "e5", "e10")
    assert extract_events([("end", "key_missing")], 2).events == ("e3",)
    with pytest.raises(ValueError):
        extract_events(moves, 3)


def test_config_validation():
    with pytest.raises(ValueError):
        GameConfig.from_grid(1, ("###", "#K#", "###"), 10, 0)
    with pytest.raises(ValueError):
        GameConfig.from_grid(1, ("####", "#KK#", "####"), 10, 0)
    with pytest.raises(ValueError):
        GameConfig.from_grid(1, ("####", "#K?#", "####"), 10, 0)
    # coin/rock counts are tied to the version
    with pytest.raises(ValueError):
        dataclasses.replace(v1_config(), coin=(3, 1))
    with pytest.raises(ValueError):
        dataclasses.replace(v2_config(), coin=None)
    with pytest.raises(ValueError):
        dataclasses.replace(v1_config(), step_cap=0)
    with pytest.raises(ValueError):
        dataclasses.replace(v1_config(), key=v1_config().door)


def test_episode_validation():
    seq = EventSequence(V1_EVENTS, ("e9",))
    Episode(seq, 1, "door", 0, "scripted-door-1")
    with pytest.raises(ValueError):
        Episode(seq, 2, "door", 0, "p")
    with pytest.raises(ValueError):
        Episode(seq, 1, "hatch", 0, "p")
    with pytest.raises(ValueError):
        Episode(seq, 1, "none", 0, "p")
    with pytest.raises(ValueError):
        Episode(seq, 0, "door", 0, "p")


def test_mixed_types_mine_to_two_strategies():
    from hassemine import BoolMatrix

    episodes = simulate(v2_config(seed=1), 14, "scripted-mixed")
    out = hasse_cluster([ep.events for ep in episodes], J5, t=100, r=2)
    assert len(out.clusters) == 1
    table = LabelTable(J5)
    coin_chain = BoolMatrix.from_entries(
        table,
        [
            [0, 0, 0, 0, 0],
            [0, 0, 1, 0, 1],
            [0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
        ],
    )
    door_order = BoolMatrix.from_entries(
        table,
        [
            [0, 0, 0, 1, 0],
            [0, 0, 1, 1, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
        ],
    )
    assert set(out.clusters[0]) == {coin_chain, door_order}


def test_corrupt_counts_and_determinism():
    episodes = simulate(v2_config(seed=3), 125, "scripted-mixed")
    out = corrupt(episodes, 0.10, seed=0)
    assert len(out) == 125
    changed = [i for i in range(125) if out[i] != episodes[i]]
    assert len(changed) == math.ceil(0.10 * 125) == 13
    for i in set(range(125)) - set(changed):
        assert out[i] is episodes[i]
    for i in changed:
        assert out[i].events.events != episodes[i].events.events
        assert out[i].label == episodes[i].label
        assert out[i].win_route == episodes[i].win_route
        assert out[i].policy == episodes[i].policy
    assert corrupt(episodes, 0.10, seed=0) == out
    other = corrupt(episodes, 0.10, seed=1)
    assert [i for i in range(125) if other[i] != episodes[i]] != changed


def test_corrupt_fraction_edges():
    episodes = simulate(v1_config(seed=4), 10, "scripted-mixed")
    assert corrupt(episodes, 0, seed=0) == episodes
    everything = corrupt(episodes, 1, seed=0)
    assert all(a != b for a, b in zip(everything, episodes))
    with pytest.raises(ValueError):
        corrupt(episodes, 1.5, seed=0)
    with pytest.raises(ValueError):
        corrupt(episodes, -0.1, seed=0)
    with pytest.raises(ValueError):
        corrupt(episodes, 0.5, seed=0, ops=("scramble",))
    with pytest.raises(ValueError):
        corrupt(episodes, 0.5, seed=0, ops=())


def test_corrupt_single_ops():
    table = LabelTable(("a", "b", "c"))
    base = [EventSequence(table, ("a", "b", "c"))]
    for seed in range(6):
        (swapped,) = corrupt_sequences(base, 1, seed, ops=("swap",))
        assert sorted(swapped.events) == ["a", "b", "c"]
        assert swapped.events != ("a", "b", "c")
        (shorter,) = corrupt_sequences(base, 1, seed, ops=("delete",))
        assert len(shorter.events) == 2
        (longer,) = corrupt_sequences(base, 1, seed, ops=("insert",))
        assert len(longer.events) == 4
        assert set(longer.events) <= {"a", "b", "c"}
    # a swap-only mutation of an all-equal sequence cannot change it;
    # the bounded retry gives up and returns it unchanged
    twins = [EventSequence(table, ("a", "a"))]
    (same,) = corrupt_sequences(twins, 1, 0, ops=("swap",))
    assert same.events == ("a", "a")


def test_relevance_on_simulated_v1_mix():
    winners = simulate(v1_config(seed=21), 30, "scripted-mixed")
    randoms = simulate(v1_config(seed=22), 120, "random")
    episodes = [(ep.events, ep.label) for ep in winners + randoms]
    assert any(label == 0 for _, label in episodes)
    table = relevance_scores(episodes)
    for a, b in (
        ("e1", "e9"),
        ("e1", "e6"),
        ("e6", "e9"),
        ("e2", "e9"),
        ("e2", "e6"),
        ("e5", "e6"),
        ("e5", "e9"),
    ):
        assert table.score(a, b) == math.inf, (a, b)
    # a pair unrelated to winning stays finite: losers interleave it freely
    assert table.score("e7", "e10") != math.inf
