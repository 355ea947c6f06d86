"""Structure and soundness spot-checks of the hardness-gadget constructions."""

from __future__ import annotations

import pytest

from stablepairs import (
    Concept,
    Graph,
    PreconditionError,
    minimum_maximal_matching,
    mmm_to_marriage_ns,
    mmm_to_roommate_is,
    pad_bipartition,
    search_stable,
    subdivision_graph,
)
from support import SMALL_GRAPHS

SINGLE_EDGE = Graph.build(2, [(1, 2)])


def test_marriage_reduction_counts_single_edge():
    artifact = mmm_to_marriage_ns(SINGLE_EDGE, 1)
    assert artifact.n == 3 and artifact.r == 1
    assert artifact.game.n == 2 * 3 + (3 - 1) + 1 == 9
    kinds = [role.kind for role in artifact.roles.values()]
    assert kinds.count("A") == 3 and kinds.count("B") == 3
    assert kinds.count("X") == artifact.n - artifact.k == 2
    assert kinds.count("Y") == 1
    assert len(artifact.roles) == artifact.game.n


def test_marriage_reduction_role_map_is_total_and_sized():
    for k in (0, 2, 3):
        artifact = mmm_to_marriage_ns(SINGLE_EDGE, k)
        assert artifact.game.n == 2 * artifact.n + (artifact.n - k) + 1
        assert set(artifact.roles) == set(range(1, artifact.game.n + 1))


def test_roommate_reduction_counts():
    artifact = mmm_to_roommate_is(SINGLE_EDGE, 2)
    assert artifact.n == 3
    assert artifact.game.n == 2 * 3 + 3 * (3 - 2) == 9
    kinds = [role.kind for role in artifact.roles.values()]
    assert kinds.count("X") == 3 * (artifact.n - artifact.k)
    assert kinds.count("Y") == 0
    layers = sorted(
        role.layer for role in artifact.roles.values() if role.kind == "X"
    )
    assert layers == [0, 1, 2]


def test_reduction_games_satisfy_invariants():
    # Game construction re-validates same-sex acceptability; also check sides.
    artifact = mmm_to_marriage_ns(SMALL_GRAPHS["P3"], 2)
    game = artifact.game
    assert game.is_marriage
    assert len(game.men) == artifact.n + 1
    x_players = [p for p, role in artifact.roles.items() if role.kind == "X"]
    assert all(p in game.women for p in x_players)
    y = next(p for p, role in artifact.roles.items() if role.kind == "Y")
    assert y in game.men
    assert game.prefs(y).tiers == ()  # the loner lists nobody


def test_reduction_rejects_k_out_of_range():
    with pytest.raises(PreconditionError):
        mmm_to_marriage_ns(SINGLE_EDGE, 4)  # n = 3 after padding
    with pytest.raises(PreconditionError):
        mmm_to_roommate_is(SINGLE_EDGE, -1)


def test_marriage_reduction_soundness_single_edge_all_k():
    padded, _ = pad_bipartition(subdivision_graph(SINGLE_EDGE))
    mmm = minimum_maximal_matching(padded)
    for k in range(0, 4):
        artifact = mmm_to_marriage_ns(SINGLE_EDGE, k)
        status, found = search_stable(artifact.game, Concept.NS)
        assert status in ("found", "none")
        assert (status == "found") == (mmm <= k), k
        if found is not None:
            from stablepairs import find_deviation

            assert find_deviation(artifact.game, found, Concept.NS) is None


def test_marriage_reduction_k_equals_n_always_solvable():
    for name in ("K2", "P3", "C3"):
        artifact = mmm_to_marriage_ns(SMALL_GRAPHS[name], 0)
        # k = n means no filler players at all
        full = mmm_to_marriage_ns(SMALL_GRAPHS[name], artifact.n)
        assert not [r for r in full.roles.values() if r.kind == "X"]
        status, _ = search_stable(full.game, Concept.NS)
        assert status == "found"


def test_roommate_reduction_soundness_single_edge():
    padded, _ = pad_bipartition(subdivision_graph(SINGLE_EDGE))
    mmm = minimum_maximal_matching(padded)
    assert mmm == 2
    for k in (1, 2, 3):
        artifact = mmm_to_roommate_is(SINGLE_EDGE, k)
        status, _ = search_stable(artifact.game, Concept.IS)
        assert (status == "found") == (mmm <= k), k


def test_empty_graph_reductions():
    empty = SMALL_GRAPHS["empty"]
    marriage = mmm_to_marriage_ns(empty, 0)
    assert marriage.game.n == 1  # just the loner
    status, _ = search_stable(marriage.game, Concept.NS)
    assert status == "found"
    roommate = mmm_to_roommate_is(empty, 0)
    assert roommate.game.n == 0
    status, _ = search_stable(roommate.game, Concept.IS)
    assert status == "found"
