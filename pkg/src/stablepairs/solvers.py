"""Constructive solvers, the brute-force oracle, and deviation dynamics.

The better-response solvers start from the all-singletons matching and apply
the deterministic deviation scheduler (lowest mover id, most preferred
target) until stable; their deviation counters double as loud bug signals
when a proved termination bound is crossed.

The brute-force search enumerates matchings in the documented order of
:func:`stablepairs.matching.enumerate_matchings` but skips, provably without
affecting which matchings are stable, (a) same-sex pairs in marriage games
(such a pair admits a deviation or block under every concept), (b) pairs
that are not mutually acceptable when the concept implies individual
rationality, and (c) branches in which two already-final singletons could
never coexist in a stable matching.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .errors import InternalCheckError, PreconditionError
from .graph_matching import Graph, max_matching
from .matching import Matching
from .model import (
    MARRIAGE,
    ROOMMATE,
    Game,
    has_no_unacceptability,
    raise_preferences,
)
from .stability import (
    Concept,
    DEVIATION_CONCEPTS,
    DeviationWitness,
    IR_IMPLYING_CONCEPTS,
    find_deviation,
    is_individually_rational,
)


@dataclass(frozen=True)
class SolverReport:
    matching: Matching
    deviation_count: int
    elapsed: float


@dataclass(frozen=True)
class DynamicsTrace:
    """A better-response run: ``steps[t]`` is the matching at time ``t`` and
    the witness applied to it.  ``cycle_start`` indexes the first occurrence
    of the repeated matching when the outcome is ``"cycle"``."""

    steps: tuple[tuple[Matching, DeviationWitness], ...]
    outcome: str  # "stable" | "cycle" | "step-limit"
    final: Matching
    cycle_start: int | None = None


def _rank_matrix(game: Game) -> list[list[int]]:
    """Dense rank lookup: ``R[i][j]`` ranks ``j`` for ``i``, ``R[i][i]`` ranks alone."""
    rows: list[list[int]] = [[0] * (game.n + 1)]
    for i in game.players():
        slots = game.prefs(i).slots()
        row = [len(slots)] * (game.n + 1)
        for r, (players, has_self) in enumerate(slots):
            for p in players:
                row[p] = r
            if has_self:
                row[i] = r
        rows.append(row)
    return rows


def _better_response(game: Game, concept: Concept, bound: int, label: str) -> SolverReport:
    start = time.perf_counter()
    current = Matching.singletons(game.n)
    count = 0
    while True:
        witness = find_deviation(game, current, concept)
        if witness is None:
            return SolverReport(current, count, time.perf_counter() - start)
        count += 1
        if count > bound:
            raise InternalCheckError(f"{label}: {count} deviations exceed {bound}")
        current = current.with_move(witness.mover, witness.target)


def compute_cis_ir(game: Game) -> SolverReport:
    """A matching that is both CIS and IR, from singletons by CIS deviations.

    Every CIS deviation strictly improves the mover and hurts nobody, so no
    player ever drops below its alone level and at most ``n(n-1)`` deviations
    can occur; exceeding that signals a bug.
    """
    n = game.n
    report = _better_response(
        game, Concept.CIS, max(n * (n - 1), 0), "CIS deviation bound n(n-1)"
    )
    if not is_individually_rational(game, report.matching):
        raise InternalCheckError("CIS better-response left an IR violation")
    return report


def compute_cns(game: Game) -> SolverReport:
    """A CNS matching, from singletons by CNS deviations.

    Termination is specific to the all-singletons start: a player who has
    moved once is in a pair its partner may never abandon without its
    consent, so movers only climb.  The ``2n^2`` cap turns any silent
    non-termination into a loud failure.
    """
    n = game.n
    return _better_response(
        game, Concept.CNS, 2 * n * n, "CNS deviation bound 2n^2"
    )


def gale_shapley(game: Game, proposers: str = "women") -> Matching:
    """Deferred acceptance on the lowest-id tie-broken strict instance.

    Proposers walk the players they strictly like in (rank, id) order; an
    acceptee takes a proposal iff it beats its current engagement (or, when
    unengaged, beats staying alone) in its own tie-broken order.  Players
    tied with being alone are neither proposed to nor accepted, so run
    :func:`stablepairs.model.raise_preferences` first when those ties matter.
    Output is the proposer-optimal stable matching of the tie-broken
    instance and admits no core block with respect to it.
    """
    if game.kind != MARRIAGE:
        raise PreconditionError("gale_shapley needs a marriage game")
    if proposers not in ("men", "women"):
        raise ValueError("proposers must be 'men' or 'women'")
    rank = _rank_matrix(game)
    side = sorted(game.men if proposers == "men" else game.women)
    wishlist: dict[int, list[int]] = {}
    for p in side:
        liked: list[int] = []
        for players, has_self in game.prefs(p).slots():
            if has_self:
                break
            liked.extend(players)
        wishlist[p] = liked
    match = [0] * (game.n + 1)
    cursor = dict.fromkeys(side, 0)
    free = deque(side)
    while free:
        p = free.popleft()
        row = wishlist[p]
        while cursor[p] < len(row):
            q = row[cursor[p]]
            cursor[p] += 1
            rq = rank[q]
            cur = match[q]
            if cur == 0:
                if rq[p] < rq[q]:
                    match[q] = p
                    match[p] = q
                    break
            elif (rq[p], p) < (rq[cur], cur):
                match[cur] = 0
                free.append(cur)
                match[q] = p
                match[p] = q
                break
    return Matching(match[i] if match[i] else i for i in game.players())


def compute_is_marriage(game: Game) -> Matching:
    """An individually stable (and IR) matching for any marriage game.

    Pipeline: raise the preferences so ties with being alone become strict
    acceptability, then run women-proposing deferred acceptance.  The result
    is verified against the original preferences; failure signals a bug, not
    bad input.
    """
    if game.kind != MARRIAGE:
        raise PreconditionError("compute_is_marriage needs a marriage game")
    result = gale_shapley(raise_preferences(game), proposers="women")
    if not is_individually_rational(game, result):
        raise InternalCheckError("IS pipeline produced an IR violation")
    if find_deviation(game, result, Concept.IS) is not None:
        raise InternalCheckError("IS pipeline produced an IS-unstable matching")
    return result


def compute_ns_marriage_complete(game: Game) -> Matching:
    """A Nash stable matching for a marriage game with no unacceptability.

    Complete lists make acceptability mutual, and under mutual preferences an
    IS matching is already NS: any profitable unilateral move targets either
    the empty coalition (never consent-bound) or a singleton who, accepting
    the mover, would not object.
    """
    if game.kind != MARRIAGE:
        raise PreconditionError("compute_ns_marriage_complete needs a marriage game")
    if not has_no_unacceptability(game):
        raise PreconditionError(
            "compute_ns_marriage_complete requires complete preference lists"
        )
    result = compute_is_marriage(game)
    if find_deviation(game, result, Concept.NS) is not None:
        raise InternalCheckError("complete-list NS pipeline left an NS deviation")
    return result


def exists_ns_is_roommate_complete(game: Game) -> Matching | None:
    """Decide NS (equivalently IS) existence for complete-list roommate games.

    Even n: any perfect matching is NS.  Odd n: for each candidate singleton
    ``i`` build the graph on the remaining players whose edges join pairs
    that both weakly prefer each other to ``i``; a perfect matching there
    extends to an NS matching with ``i`` alone, and if no candidate works no
    NS matching exists.  O(n) perfect-matching tests of O(n^3) each.
    """
    if game.kind != ROOMMATE:
        raise PreconditionError("exists_ns_is_roommate_complete needs a roommate game")
    if not has_no_unacceptability(game):
        raise PreconditionError(
            "exists_ns_is_roommate_complete requires complete preference lists"
        )
    n = game.n
    if n == 0:
        return Matching(())
    if n % 2 == 0:
        partner = [i + 1 if i % 2 else i - 1 for i in range(1, n + 1)]
        result = Matching(partner)
        _assert_ns(game, result)
        return result
    rank = _rank_matrix(game)
    for single in game.players():
        others = [j for j in game.players() if j != single]
        edges = []
        for a_pos, j in enumerate(others):
            rj = rank[j]
            for b_pos in range(a_pos + 1, len(others)):
                k = others[b_pos]
                if rj[k] <= rj[single] and rank[k][j] <= rank[k][single]:
                    edges.append((a_pos + 1, b_pos + 1))
        candidate = max_matching(Graph.build(n - 1, edges))
        if 2 * len(candidate) == n - 1:
            partner = list(range(n + 1))
            for u, v in candidate:
                ju, jv = others[u - 1], others[v - 1]
                partner[ju] = jv
                partner[jv] = ju
            result = Matching(partner[1:])
            _assert_ns(game, result)
            return result
    return None


def _assert_ns(game: Game, matching: Matching) -> None:
    if find_deviation(game, matching, Concept.NS) is not None:
        raise InternalCheckError("constructed matching failed NS verification")


def _pair_candidates(game: Game, concept: Concept, rank: list[list[int]]) -> list[list[int]]:
    restrict_ir = concept in IR_IMPLYING_CONCEPTS
    cand: list[list[int]] = [[] for _ in range(game.n + 1)]
    for i in game.players():
        ri = rank[i]
        for j in range(i + 1, game.n + 1):
            if game.same_side(i, j):
                continue
            if restrict_ir and not (ri[j] <= ri[i] and rank[j][i] <= rank[j][j]):
                continue
            cand[i].append(j)
    return cand


def _singles_conflict(concept: Concept, rank: list[list[int]]):
    """Predicate telling when two final singletons rule out stability."""
    if concept is Concept.IR:
        return None
    if concept in (Concept.NS, Concept.CNS):

        def conflict(s: int, j: int) -> bool:
            return rank[s][j] < rank[s][s] or rank[j][s] < rank[j][j]

    elif concept in (Concept.IS, Concept.CIS):

        def conflict(s: int, j: int) -> bool:
            a = rank[s][j] - rank[s][s]
            b = rank[j][s] - rank[j][j]
            return (a < 0 and b <= 0) or (b < 0 and a <= 0)

    elif concept is Concept.CORE:

        def conflict(s: int, j: int) -> bool:
            return rank[s][j] < rank[s][s] and rank[j][s] < rank[j][j]

    else:  # strict core

        def conflict(s: int, j: int) -> bool:
            a = rank[s][j] - rank[s][s]
            b = rank[j][s] - rank[j][j]
            return a <= 0 and b <= 0 and (a < 0 or b < 0)

    return conflict


def _leaf_checker(game: Game, concept: Concept, rank: list[list[int]]):
    players = range(1, game.n + 1)

    if concept is Concept.IR:

        def check(pi: list[int], singles: list[int]) -> bool:
            for i in players:
                if rank[i][pi[i]] > rank[i][i]:
                    return False
            return True

    elif concept in (Concept.NS, Concept.CNS):
        contractual = concept is Concept.CNS

        def check(pi: list[int], singles: list[int]) -> bool:
            for i in players:
                partner = pi[i]
                if contractual and partner != i and rank[partner][partner] > rank[partner][i]:
                    continue  # the abandoned partner vetoes every move
                ri = rank[i]
                cur = ri[partner]
                if ri[i] < cur:
                    return False
                for s in singles:
                    if s != i and ri[s] < cur:
                        return False
            return True

    elif concept in (Concept.IS, Concept.CIS):
        contractual = concept is Concept.CIS

        def check(pi: list[int], singles: list[int]) -> bool:
            for i in players:
                partner = pi[i]
                if contractual and partner != i and rank[partner][partner] > rank[partner][i]:
                    continue
                ri = rank[i]
                cur = ri[partner]
                if ri[i] < cur:
                    return False
                for s in singles:
                    if s != i and ri[s] < cur and rank[s][i] <= rank[s][s]:
                        return False
            return True

    else:  # core / strict core, including degenerate one-player blocks
        strict = concept is Concept.STRICT_CORE

        def check(pi: list[int], singles: list[int]) -> bool:
            n = game.n
            for i in players:
                ri = rank[i]
                cur_i = ri[pi[i]]
                if ri[i] < cur_i:
                    return False
                for j in range(i + 1, n + 1):
                    if pi[i] == j:
                        continue
                    a = ri[j] - cur_i
                    b = rank[j][i] - rank[j][pi[j]]
                    if strict:
                        if a <= 0 and b <= 0 and (a < 0 or b < 0):
                            return False
                    elif a < 0 and b < 0:
                        return False
            return True

    return check


def _run_search(
    game: Game,
    concept: Concept,
    stop_after: int | None = None,
    node_budget: int | None = None,
) -> tuple[Matching | None, int, bool]:
    """Depth-first enumeration of candidate matchings in the documented order.

    Returns ``(first stable matching or None, stable count, exhausted)``;
    ``exhausted`` is False when the search stopped early on ``stop_after``
    or ``node_budget``.
    """
    n = game.n
    rank = _rank_matrix(game)
    cand = _pair_candidates(game, concept, rank)
    conflict = _singles_conflict(concept, rank)
    check = _leaf_checker(game, concept, rank)

    pi = list(range(n + 1))
    decided = [False] * (n + 1)
    singles: list[int] = []
    found: tuple[int, ...] | None = None
    count = 0
    nodes = 0

    def at_leaf() -> bool:
        nonlocal found, count
        if check(pi, singles):
            count += 1
            if found is None:
                found = tuple(pi[1:])
            if stop_after is not None and count >= stop_after:
                return True
        return False

    def rec(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            return True
        while i <= n and decided[i]:
            i += 1
        if i > n:
            return at_leaf()
        decided[i] = True
        for j in cand[i]:
            if not decided[j]:
                decided[j] = True
                pi[i] = j
                pi[j] = i
                if rec(i + 1):
                    return True
                decided[j] = False
                pi[i] = i
                pi[j] = j
        viable = True
        if conflict is not None:
            for s in singles:
                if conflict(s, i):
                    viable = False
                    break
        if viable:
            singles.append(i)
            if rec(i + 1):
                return True
            singles.pop()
        decided[i] = False
        return False

    stopped = rec(1)
    result = Matching(found) if found is not None else None
    return result, count, not stopped


def brute_force(
    game: Game,
    concept: Concept,
    cap: int = 12,
    stop_after: int | None = None,
) -> tuple[Matching | None, int]:
    """First stable matching in enumeration order plus the total stable count.

    With ``stop_after`` the search stops once that many stable matchings have
    been seen, so the returned count is ``min(true count, stop_after)``.
    Refuses games with more than ``cap`` players.
    """
    if game.n > cap:
        raise PreconditionError(
            f"game has {game.n} players, above the brute-force cap {cap}"
        )
    found, count, _ = _run_search(game, concept, stop_after=stop_after)
    return found, count


def search_stable(
    game: Game, concept: Concept, node_budget: int | None = None
) -> tuple[str, Matching | None]:
    """Existence-only brute force with an optional work budget.

    Returns ``("found", matching)``, ``("none", None)`` after exhausting the
    space, or ``("budget", None)`` when the budget ran out undecided.
    """
    found, _, exhausted = _run_search(
        game, concept, stop_after=1, node_budget=node_budget
    )
    if found is not None:
        return "found", found
    if exhausted:
        return "none", None
    return "budget", None


def run_dynamics(
    game: Game, concept: Concept, initial: Matching, max_steps: int
) -> DynamicsTrace:
    """Iterate the deterministic deviation scheduler and watch for cycles.

    Stops at a stable matching, at the first repeated matching, or after
    ``max_steps`` deviations; the recorded witnesses replay exactly.
    """
    if concept not in DEVIATION_CONCEPTS:
        raise ValueError(f"{concept} is not a single-player deviation concept")
    if initial.n != game.n:
        raise ValueError("initial matching does not fit the game")
    current = initial
    seen = {initial: 0}
    steps: list[tuple[Matching, DeviationWitness]] = []
    while True:
        witness = find_deviation(game, current, concept)
        if witness is None:
            return DynamicsTrace(tuple(steps), "stable", current)
        if len(steps) >= max_steps:
            return DynamicsTrace(tuple(steps), "step-limit", current)
        steps.append((current, witness))
        current = current.with_move(witness.mover, witness.target)
        if current in seen:
            return DynamicsTrace(
                tuple(steps), "cycle", current, cycle_start=seen[current]
            )
        seen[current] = len(steps)
