"""Shared helpers and independent oracles for the test suite.

Oracles here deliberately avoid the library's optimized code paths: matching
counts come from the involution recurrence, maximum matchings from plain
exhaustive search, and stability counts from filtering the unrestricted
enumeration through the definitional verifiers.
"""

from __future__ import annotations

import random

from stablepairs import (
    Concept,
    Game,
    GenParams,
    Graph,
    Matching,
    enumerate_matchings,
    is_stable,
    random_game,
)

CYCLIC3 = "roommate 3\n1: 2 3\n2: 3 1\n3: 1 2\n"


def involution_count(n: int) -> int:
    """I(n) = I(n-1) + (n-1) * I(n-2), computed directly."""
    a, b = 1, 1  # I(0), I(1)
    if n == 0:
        return a
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b


def random_matching(n: int, rng: random.Random) -> Matching:
    """A random partition into pairs and singletons (no game constraints)."""
    players = list(range(1, n + 1))
    rng.shuffle(players)
    partner = list(range(n + 1))
    while len(players) >= 2:
        i = players.pop()
        if rng.random() < 0.7:
            j = players.pop()
            partner[i] = j
            partner[j] = i
    return Matching(partner[1:])


def naive_stable_count(game: Game, concept: Concept) -> tuple[Matching | None, int]:
    """Filter the full unrestricted enumeration through the verifier."""
    first = None
    count = 0
    for m in enumerate_matchings(game.n):
        if is_stable(game, m, concept):
            count += 1
            if first is None:
                first = m
    return first, count


def exhaustive_max_matching_size(g: Graph) -> int:
    """Maximum matching size by branching on the lowest uncovered vertex."""
    adj = g.adjacency()

    def best(v: int, used: set[int]) -> int:
        while v <= g.n and v in used:
            v += 1
        if v > g.n:
            return 0
        skip = best(v + 1, used)
        used.add(v)
        take = 0
        for u in adj[v]:
            if u not in used:
                used.add(u)
                take = max(take, 1 + best(v + 1, used))
                used.remove(u)
        used.remove(v)
        return max(skip, take)

    return best(1, set())


def random_graph(n: int, edge_prob: float, rng: random.Random) -> Graph:
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rng.random() < edge_prob
    ]
    return Graph.build(n, edges)


def random_roommate(seed: int, max_n: int = 8, **kwargs) -> Game:
    rng = random.Random(seed * 7919 + 13)
    params = GenParams(
        kind="roommate",
        n=rng.randint(1, max_n),
        tie_probability=kwargs.pop("tie_probability", 0.3),
        acceptability_probability=kwargs.pop("acceptability_probability", 0.6),
        seed=seed,
        **kwargs,
    )
    return random_game(params)


def random_marriage(seed: int, max_side: int = 8, **kwargs) -> Game:
    rng = random.Random(seed * 104729 + 7)
    params = GenParams(
        kind="marriage",
        n_men=rng.randint(1, max_side),
        n_women=rng.randint(1, max_side),
        tie_probability=kwargs.pop("tie_probability", 0.3),
        acceptability_probability=kwargs.pop("acceptability_probability", 0.6),
        seed=seed,
        **kwargs,
    )
    return random_game(params)


#: Every graph with at most 3 edges and no isolated vertices, up to
#: isomorphism, plus the empty graph.
SMALL_GRAPHS: dict[str, Graph] = {
    "empty": Graph.build(0, []),
    "K2": Graph.build(2, [(1, 2)]),
    "P3": Graph.build(3, [(1, 2), (2, 3)]),
    "2K2": Graph.build(4, [(1, 2), (3, 4)]),
    "C3": Graph.build(3, [(1, 2), (2, 3), (1, 3)]),
    "P4": Graph.build(4, [(1, 2), (2, 3), (3, 4)]),
    "K13": Graph.build(4, [(1, 2), (1, 3), (1, 4)]),
    "P3+K2": Graph.build(5, [(1, 2), (2, 3), (4, 5)]),
    "3K2": Graph.build(6, [(1, 2), (3, 4), (5, 6)]),
}
