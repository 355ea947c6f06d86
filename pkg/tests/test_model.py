"""Parsing, preference semantics, the raise operation, and the generator."""

from __future__ import annotations

import random

import pytest

from stablepairs import (
    FormatError,
    GenParams,
    PreferenceList,
    has_no_unacceptability,
    is_mutual,
    parse_instance,
    raise_preferences,
    random_game,
    serialize_instance,
)
from support import CYCLIC3, random_marriage, random_roommate


def test_parse_two_player_mutual_top():
    game = parse_instance("roommate 2\n1: 2\n2: 1\n")
    assert game.n == 2
    assert game.prefs(1).likes(2)
    assert game.prefs(2).likes(1)


def test_parse_tie_groups_and_self():
    game = parse_instance("roommate 4\n1: 2 ( 3 self ) 4\n2: 1\n3:\n4: ( 1 2 )\n")
    pl = game.prefs(1)
    assert pl.rank_of(2) == 0
    assert pl.rank_of(3) == pl.self_rank == 1
    assert pl.rank_of(4) == 2  # listed below self: ranked but unacceptable
    assert pl.accepts(3) and not pl.likes(3)
    assert not pl.accepts(4)
    # unlisted players sit strictly below everything listed
    empty = game.prefs(3)
    assert empty.rank_of(1) == empty.rank_of(2) == empty.bottom_rank
    assert game.prefs(4).rank_of(1) == game.prefs(4).rank_of(2) == 0


def test_parse_bare_self_midway():
    game = parse_instance("roommate 3\n1: 2 self 3\n2: 1\n3: 1\n")
    pl = game.prefs(1)
    assert pl.likes(2)
    assert pl.rank_of(3) > pl.self_rank


@pytest.mark.parametrize(
    "text",
    [
        "roommate 3\n1: 2 2\n2: 1\n3:\n",  # duplicate entry
        "roommate 3\n1: 2 ( 3 2 )\n2: 1\n3:\n",  # duplicate across tiers
        "roommate 2\n1: 1\n2:\n",  # self-reference by id
        "roommate 2\n1: 3\n2:\n",  # out of range
        "roommate 2\n1: ( 2\n2:\n",  # unclosed group
        "roommate 2\n1: ( )\n2:\n",  # empty group
        "roommate 2\n1: 2 )\n2:\n",  # stray close
        "roommate 2\n1: self 2 self\n2:\n",  # duplicate self
        "roommate 2\n1: 2\n",  # missing player line
        "roommate 2\n1: 2\n1: 2\n2:\n",  # duplicate player line
        "roommate 2\n1 2\n2:\n",  # missing colon
        "roommate x\n",  # bad header count
        "party 2\n1: 2\n2: 1\n",  # unknown kind
        "",  # empty
        "marriage 1 1\n1: 1\n2: 1\n",  # man listing a man (himself)
        "marriage 2 1\n1: 2\n2: 3\n3: 1\n",  # man listing the other man
        "marriage 1 2\n1: 2\n2: 3\n3: 1\n",  # woman listing a woman
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_instance(text)


def test_parse_reports_line_numbers():
    with pytest.raises(FormatError) as err:
        parse_instance("roommate 3\n1: 2 3\n2: 3 3\n3:\n")
    assert err.value.line == 3


def test_roundtrip_random_instances():
    for seed in range(120):
        game = random_roommate(seed) if seed % 2 else random_marriage(seed)
        assert parse_instance(serialize_instance(game)) == game


def test_roundtrip_keeps_self_position():
    text = "roommate 4\n1: 2 ( 3 self ) 4\n2: self 1\n3: ( 1 2 4 )\n4:\n"
    game = parse_instance(text)
    assert parse_instance(serialize_instance(game)) == game


def test_raise_identity_on_strict_lists():
    game = parse_instance(CYCLIC3)
    assert raise_preferences(game) is game


def test_raise_moves_self_below_tied_peers():
    # "...; (5 self); ..." becomes "...; 5; self; ..."
    pl = PreferenceList(1, (frozenset({2}), frozenset({5}), frozenset({3})), 1, True)
    raised = pl.raised()
    assert raised.tiers == pl.tiers
    assert raised.self_tier == 2 and not raised.self_tied
    assert raised.rank_of(5) < raised.self_rank < raised.rank_of(3)
    assert pl.rank_of(5) == pl.self_rank


def test_raise_preserves_order_and_is_idempotent():
    for seed in range(100):
        game = random_roommate(seed, tie_probability=0.5)
        raised = raise_preferences(game)
        assert raise_preferences(raised) == raised
        rng = random.Random(seed)
        for _ in range(20):
            i = rng.randint(1, game.n)
            j = rng.randint(1, game.n)
            k = rng.randint(1, game.n)
            if i in (j, k):
                continue
            before = game.prefs(i)
            after = raised.prefs(i)
            assert before.weakly_prefers(j, k) == after.weakly_prefers(j, k)
            if before.rank_of(j) == before.self_rank and j != i:
                assert after.rank_of(j) < after.self_rank


def test_preference_is_total_preorder():
    for seed in range(40):
        game = random_roommate(seed, tie_probability=0.5)
        rng = random.Random(seed + 999)
        for _ in range(30):
            i = rng.randint(1, game.n)
            pl = game.prefs(i)
            x, y, z = (rng.randint(1, game.n) for _ in range(3))
            assert pl.weakly_prefers(x, x)  # reflexive
            assert pl.weakly_prefers(x, y) or pl.weakly_prefers(y, x)  # complete
            if pl.weakly_prefers(x, y) and pl.weakly_prefers(y, z):
                assert pl.weakly_prefers(x, z)  # transitive


def test_is_mutual_examples():
    assert is_mutual(parse_instance("roommate 2\n1: 2\n2: 1\n"))
    assert not is_mutual(parse_instance("roommate 2\n1: 2\n2:\n"))


def test_complete_games_are_mutual():
    for seed in range(100):
        game = random_roommate(seed, complete=True)
        assert has_no_unacceptability(game)
        assert is_mutual(game)


def test_has_no_unacceptability_examples():
    assert has_no_unacceptability(parse_instance(CYCLIC3))
    assert not has_no_unacceptability(parse_instance("roommate 2\n1: 2\n2:\n"))


def test_generator_is_deterministic():
    params = GenParams(kind="marriage", n_men=5, n_women=4, tie_probability=0.4,
                       acceptability_probability=0.5, seed=77)
    assert random_game(params) == random_game(params)


def test_generator_mutual_flag():
    for seed in range(200):
        game = random_roommate(seed, mutual=True)
        assert is_mutual(game)


def test_generator_complete_marriage():
    for seed in range(100):
        game = random_marriage(seed, complete=True)
        assert has_no_unacceptability(game)


def test_generator_rejects_bad_params():
    with pytest.raises(ValueError):
        random_game(GenParams(kind="roommate", n=3, tie_probability=1.5))
    with pytest.raises(ValueError):
        random_game(GenParams(kind="roommate", n=-1))
    with pytest.raises(ValueError):
        random_game(GenParams(kind="circle", n=3))


def test_marriage_same_sex_unacceptable():
    for seed in range(50):
        game = random_marriage(seed)
        men = sorted(game.men)
        for i in men:
            for j in men:
                if i != j:
                    assert not game.prefs(i).accepts(j)
