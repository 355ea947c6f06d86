"""Verifiers for the seven stability concepts, each returning a witness on failure.

Single-player deviations (NS, IS, CNS, CIS) move a player to an existing
singleton coalition or to the empty coalition; joining a pair would form a
size-3 coalition, which is unacceptable to the mover itself, so such moves
are pruned a priori.  Pair deviations (core, strict core) also cover the
degenerate one-player block of an individually irrational player, which is
what makes core stability imply individual rationality.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .matching import Matching
from .model import Game


class Concept(Enum):
    IR = "ir"
    NS = "ns"
    IS = "is"
    CNS = "cns"
    CIS = "cis"
    CORE = "core"
    STRICT_CORE = "strict-core"


DEVIATION_CONCEPTS = frozenset({Concept.NS, Concept.IS, Concept.CNS, Concept.CIS})

#: Concepts whose stable matchings are always individually rational, so the
#: search space may be restricted to mutually acceptable pairs.
IR_IMPLYING_CONCEPTS = frozenset(
    {Concept.IR, Concept.NS, Concept.IS, Concept.CORE, Concept.STRICT_CORE}
)


@dataclass(frozen=True)
class DeviationWitness:
    """A profitable single-player move; ``target is None`` means going alone."""

    mover: int
    target: int | None
    concept: Concept


@dataclass(frozen=True)
class PairBlockWitness:
    """A blocking pair; ``i == j`` encodes the degenerate one-player block."""

    i: int
    j: int


def is_individually_rational(game: Game, matching: Matching) -> bool:
    """True iff every player weakly prefers its coalition to being alone."""
    for i in game.players():
        pl = game.prefs(i)
        if pl.rank_of(matching.partner_of(i)) > pl.self_rank:
            return False
    return True


def find_deviation(
    game: Game, matching: Matching, concept: Concept
) -> DeviationWitness | None:
    """Search for a profitable consented move; ``None`` iff the matching is stable.

    Consent rules: IS requires the joined singleton not to become worse off,
    CNS requires the abandoned partner not to become worse off, CIS requires
    both, NS neither.  The witness is deterministic: smallest mover id, then
    the mover's most preferred target, ties broken by smallest target id with
    the empty coalition considered last among equally ranked targets.
    """
    if concept not in DEVIATION_CONCEPTS:
        raise ValueError(f"{concept} is not a single-player deviation concept")
    need_target_consent = concept in (Concept.IS, Concept.CIS)
    need_left_consent = concept in (Concept.CNS, Concept.CIS)

    for i in game.players():
        pl = game.prefs(i)
        partner = matching.partner_of(i)
        cur = pl.rank_of(partner)
        if cur == 0:
            continue
        if need_left_consent and partner != i:
            left = game.prefs(partner)
            if left.self_rank > left.rank_of(i):
                continue  # the abandoned partner would veto any move
        for rank, (players, has_self) in enumerate(pl.slots()):
            if rank >= cur:
                break
            for j in players:
                if matching.is_single(j):
                    if need_target_consent and not game.prefs(j).accepts(i):
                        continue
                    return DeviationWitness(i, j, concept)
            if has_self and partner != i:
                return DeviationWitness(i, None, concept)
    return None


def find_pair_block(
    game: Game, matching: Matching, strict: bool
) -> PairBlockWitness | None:
    """Search for a (strict-)core blocking pair; ``None`` iff stable.

    With ``strict=False`` both players must strictly prefer each other to
    their current coalitions; with ``strict=True`` both weakly and at least
    one strictly.  A player strictly preferring to be alone blocks by itself
    and is reported as the degenerate witness ``(i, i)``.  Scan order is by
    smallest first member, degenerate block first, then second member.
    """
    ranks = [None] + [game.prefs(i) for i in game.players()]
    current = [0] * (game.n + 1)
    for i in game.players():
        current[i] = ranks[i].rank_of(matching.partner_of(i))
    for i in game.players():
        if ranks[i].self_rank < current[i]:
            return PairBlockWitness(i, i)
        for j in range(i + 1, game.n + 1):
            if matching.partner_of(i) == j:
                continue
            a = ranks[i].rank_of(j) - current[i]
            b = ranks[j].rank_of(i) - current[j]
            if strict:
                if a <= 0 and b <= 0 and (a < 0 or b < 0):
                    return PairBlockWitness(i, j)
            elif a < 0 and b < 0:
                return PairBlockWitness(i, j)
    return None


def is_stable(game: Game, matching: Matching, concept: Concept) -> bool:
    """Dispatch to the verifier for ``concept``."""
    if concept is Concept.IR:
        return is_individually_rational(game, matching)
    if concept in DEVIATION_CONCEPTS:
        return find_deviation(game, matching, concept) is None
    if concept is Concept.CORE:
        return find_pair_block(game, matching, strict=False) is None
    if concept is Concept.STRICT_CORE:
        return find_pair_block(game, matching, strict=True) is None
    raise ValueError(f"unknown concept {concept}")


def replay(matching: Matching, witness: DeviationWitness) -> Matching:
    """Apply a deviation witness to a matching."""
    return matching.with_move(witness.mover, witness.target)
