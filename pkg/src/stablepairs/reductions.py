"""Game instances whose stable matchings encode minimum-maximal-matching bounds.

Both constructions take a graph ``g0`` and an integer ``k``, subdivide and
pad ``g0`` into a balanced bipartite graph with sides of size ``n``, and emit
a game whose stability question answers "does the padded subdivision have a
maximal matching of size at most ``k``?":

* the marriage construction has a Nash stable matching iff the answer is yes;
* the roommate construction has an individually stable matching iff the
  answer is yes.

The answer side of each game is a bank of filler players who must be absorbed
by graph players left exposed by a small maximal matching; in the roommate
variant each filler is a triplet of players wired into a deviation cycle that
only an outside partner can break.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .graph_matching import Graph, pad_bipartition, subdivision_graph
from .model import MARRIAGE, ROOMMATE, Game, PreferenceList


@dataclass(frozen=True)
class PlayerRole:
    """Where a reduction player came from.

    ``kind`` is ``"A"`` or ``"B"`` for the two sides of the padded
    subdivision (``vertex`` holds the graph vertex), ``"X"`` for filler
    players (``gadget`` counts gadgets from 1, ``layer`` is 0..2 in the
    roommate construction and ``None`` in the marriage one), and ``"Y"`` for
    the marriage construction's loner."""

    kind: str
    vertex: int | None = None
    gadget: int | None = None
    layer: int | None = None


@dataclass(frozen=True)
class ReductionArtifact:
    """A constructed game plus the metadata needed to validate it."""

    game: Game
    roles: dict[int, PlayerRole] = field(compare=False)
    graph: Graph  # the padded subdivision the game encodes
    n: int  # balanced side size
    k: int
    r: int  # padding gadget count


def _prepare(g0: Graph, k: int) -> tuple[Graph, int, list[int], list[int], int]:
    padded, record = pad_bipartition(subdivision_graph(g0))
    assert padded.parts is not None
    a_side = sorted(padded.parts[0])
    b_side = sorted(padded.parts[1])
    n = len(a_side)
    if not 0 <= k <= n:
        raise PreconditionError(f"k must lie in 0..{n}, got {k}")
    return padded, record.r, a_side, b_side, n


def mmm_to_marriage_ns(g0: Graph, k: int) -> ReductionArtifact:
    """Marriage game with an NS matching iff the padded subdivision has a
    maximal matching of size at most ``k``.

    Men are the A-side vertices (players ``1..n``) plus the loner ``y``
    (player ``n+1``); women are the B-side vertices and ``n - k`` filler
    players.  A-players want their graph neighbors, then any filler, then to
    be alone; B-players want their neighbors; fillers are indifferent among
    all men and the loner wants to stay alone, so a filler left without an
    A-partner chases ``y`` forever.
    """
    padded, r, a_side, b_side, n = _prepare(g0, k)
    x_count = n - k
    y_id = n + 1
    total = 2 * n + 1 + x_count
    player_of_a = {v: idx for idx, v in enumerate(a_side, 1)}
    player_of_b = {v: idx for idx, v in enumerate(b_side, n + 2)}
    x_ids = tuple(range(2 * n + 2, 2 * n + 2 + x_count))
    adjacency = padded.adjacency()

    profile: list[PreferenceList] = []
    roles: dict[int, PlayerRole] = {}
    for v in a_side:
        i = player_of_a[v]
        tiers = []
        neighbors = frozenset(player_of_b[u] for u in adjacency[v])
        if neighbors:
            tiers.append(neighbors)
        if x_ids:
            tiers.append(frozenset(x_ids))
        profile.append(PreferenceList(i, tuple(tiers), self_tier=len(tiers)))
        roles[i] = PlayerRole("A", vertex=v)
    profile.append(PreferenceList(y_id))
    roles[y_id] = PlayerRole("Y")
    for v in b_side:
        i = player_of_b[v]
        neighbors = frozenset(player_of_a[u] for u in adjacency[v])
        tiers = (neighbors,) if neighbors else ()
        profile.append(PreferenceList(i, tiers, self_tier=len(tiers)))
        roles[i] = PlayerRole("B", vertex=v)
    men = frozenset(range(1, n + 2))
    for t, i in enumerate(x_ids, 1):
        profile.append(PreferenceList(i, (men,), self_tier=1))
        roles[i] = PlayerRole("X", gadget=t)

    game = Game(
        total,
        tuple(profile),
        MARRIAGE,
        men=men,
        women=frozenset(range(n + 2, total + 1)),
    )
    return ReductionArtifact(game, roles, padded, n, k, r)


def mmm_to_roommate_is(g0: Graph, k: int) -> ReductionArtifact:
    """Roommate game with an IS matching iff the padded subdivision has a
    maximal matching of size at most ``k``.

    Players are the A side (``1..n``), the B side (``n+1..2n``), and
    ``n - k`` filler triplets.  Graph players behave as in the marriage
    construction; each triplet member is indifferent between any A-player
    and its cyclic successor, then prefers its cyclic predecessor, so an
    unbroken triplet chases itself in a perpetual three-step deviation cycle
    that only a free A-player can stop.
    """
    padded, r, a_side, b_side, n = _prepare(g0, k)
    x_count = n - k
    total = 2 * n + 3 * x_count
    player_of_a = {v: idx for idx, v in enumerate(a_side, 1)}
    player_of_b = {v: idx for idx, v in enumerate(b_side, n + 1)}
    adjacency = padded.adjacency()

    def x_id(gadget: int, layer: int) -> int:
        return 2 * n + 3 * (gadget - 1) + layer + 1

    all_x = frozenset(
        x_id(g, j) for g in range(1, x_count + 1) for j in range(3)
    )
    a_players = frozenset(player_of_a.values())

    profile: list[PreferenceList] = []
    roles: dict[int, PlayerRole] = {}
    for v in a_side:
        i = player_of_a[v]
        tiers = []
        neighbors = frozenset(player_of_b[u] for u in adjacency[v])
        if neighbors:
            tiers.append(neighbors)
        if all_x:
            tiers.append(all_x)
        profile.append(PreferenceList(i, tuple(tiers), self_tier=len(tiers)))
        roles[i] = PlayerRole("A", vertex=v)
    for v in b_side:
        i = player_of_b[v]
        neighbors = frozenset(player_of_a[u] for u in adjacency[v])
        tiers = (neighbors,) if neighbors else ()
        profile.append(PreferenceList(i, tiers, self_tier=len(tiers)))
        roles[i] = PlayerRole("B", vertex=v)
    for g in range(1, x_count + 1):
        for j in range(3):
            i = x_id(g, j)
            successor = x_id(g, (j + 1) % 3)
            predecessor = x_id(g, (j - 1) % 3)
            tiers = (a_players | {successor}, frozenset([predecessor]))
            profile.append(PreferenceList(i, tiers, self_tier=2))
            roles[i] = PlayerRole("X", gadget=g, layer=j)

    game = Game(total, tuple(profile), ROOMMATE)
    return ReductionArtifact(game, roles, padded, n, k, r)
