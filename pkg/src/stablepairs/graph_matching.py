"""General-graph maximum matching and the graph constructions feeding reductions.

The maximum matching routine is a plain O(n^3) augmenting-path search with
blossom contraction; instance sizes here are modest, so correctness and
simplicity win over scaling tricks.  The minimum-maximal-matching oracle is
deliberately exponential and guarded by a size cap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from collections.abc import Iterable

from .errors import FormatError, PreconditionError

Edge = tuple[int, int]


def _normalize(edges: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    out = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n`` with an optional bipartition."""

    n: int
    edges: frozenset[Edge]
    parts: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u}, {v}) is not a normalized in-range pair")
        if self.parts is not None:
            a, b = self.parts
            if a & b or a | b != frozenset(range(1, self.n + 1)):
                raise ValueError("bipartition must split the vertex set")
            for u, v in self.edges:
                if (u in a) == (v in a):
                    raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        parts: tuple[Iterable[int], Iterable[int]] | None = None,
    ) -> Graph:
        p = None if parts is None else (frozenset(parts[0]), frozenset(parts[1]))
        return cls(n, _normalize(edges), p)

    def adjacency(self) -> list[list[int]]:
        """Sorted adjacency lists, index 0 unused."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj


def parse_graph(text: str) -> Graph:
    """Parse ``graph <n> <m>`` followed by ``m`` lines ``u v``; ``#`` comments."""
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        fields = stripped.split()
        if header is None:
            if len(fields) != 3 or fields[0] != "graph":
                raise FormatError("expected header 'graph <n> <m>'", lineno)
            try:
                n, m = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError("non-numeric counts in header", lineno) from None
            if n < 0 or m < 0:
                raise FormatError("negative counts in header", lineno)
            header = (n, m)
            continue
        if len(fields) != 2:
            raise FormatError("expected edge line 'u v'", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError("non-numeric vertex id", lineno) from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex id out of range in edge ({u}, {v})", lineno)
        if u == v:
            raise FormatError(f"loop at vertex {u}", lineno)
        edges.append((u, v) if u < v else (v, u))
    if header is None:
        raise FormatError("empty graph file: missing header")
    if len(set(edges)) != header[1]:
        raise FormatError(
            f"header announces {header[1]} edges but {len(set(edges))} distinct edges given"
        )
    return Graph(header[0], frozenset(edges))


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def max_matching(g: Graph) -> frozenset[Edge]:
    """A maximum-cardinality matching; perfect iff ``2 * len(result) == g.n``.

    Augmenting-path search from each exposed vertex with blossom contraction
    via base pointers, O(n) phases of O(n^2) work each.
    """
    n = g.n
    adj = g.adjacency()
    match = [0] * (n + 1)
    parent = [0] * (n + 1)
    base = list(range(n + 1))

    def lowest_common_base(a: int, b: int) -> int:
        seen = [False] * (n + 1)
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == 0:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_blossom(v: int, stop: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stop:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> int:
        for v in range(n + 1):
            parent[v] = 0
            base[v] = v
        used = [False] * (n + 1)
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != 0 and parent[match[to]] != 0):
                    stop = lowest_common_base(v, to)
                    in_blossom = [False] * (n + 1)
                    mark_blossom(v, stop, to, in_blossom)
                    mark_blossom(to, stop, v, in_blossom)
                    for u in range(1, n + 1):
                        if in_blossom[base[u]]:
                            base[u] = stop
                            if not used[u]:
                                used[u] = True
                                queue.append(u)
                elif parent[to] == 0:
                    parent[to] = v
                    if match[to] == 0:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return 0

    # Greedy seed cuts the number of augmentation phases roughly in half.
    for v in range(1, n + 1):
        if match[v] == 0:
            for u in adj[v]:
                if match[u] == 0:
                    match[v] = u
                    match[u] = v
                    break
    for v in range(1, n + 1):
        if match[v] == 0:
            end = find_augmenting_path(v)
            while end != 0:
                prev = parent[end]
                nxt = match[prev]
                match[end] = prev
                match[prev] = end
                end = nxt
    return frozenset((v, match[v]) for v in range(1, n + 1) if v < match[v])


def is_maximal_matching(g: Graph, m: Iterable[tuple[int, int]]) -> bool:
    """True iff ``m`` is a matching of ``g`` to which no edge can be added."""
    edges = _normalize(m)
    covered: set[int] = set()
    for u, v in edges:
        if (u, v) not in g.edges:
            raise ValueError(f"({u}, {v}) is not an edge of the graph")
        if u in covered or v in covered:
            raise ValueError("edge set is not a matching")
        covered.update((u, v))
    return all(u in covered or v in covered for u, v in g.edges)


def minimum_maximal_matching(g: Graph, cap: int = 20) -> int:
    """Smallest size of a maximal matching, by exhaustive search.

    Exponential in the edge count; refuses graphs with more than ``cap``
    vertices.  This is a desk-scale oracle, not an algorithm.
    """
    if g.n > cap:
        raise PreconditionError(
            f"graph has {g.n} vertices, above the exhaustive-search cap {cap}"
        )
    edges = sorted(g.edges)
    if not edges:
        return 0

    # Greedy maximal matching bounds the search from above.
    covered: set[int] = set()
    greedy = 0
    for u, v in edges:
        if u not in covered and v not in covered:
            covered.update((u, v))
            greedy += 1
    best = greedy

    in_use: set[int] = set()

    def rec(idx: int, size: int) -> None:
        nonlocal best
        if size >= best:
            return
        if idx == len(edges):
            if all(u in in_use or v in in_use for u, v in edges):
                best = size
            return
        u, v = edges[idx]
        rec(idx + 1, size)
        if u not in in_use and v not in in_use:
            in_use.update((u, v))
            rec(idx + 1, size + 1)
            in_use.difference_update((u, v))

    rec(0, 0)
    return best


def subdivision_graph(g0: Graph) -> Graph:
    """Replace each edge by a length-2 path through a fresh vertex.

    The result is bipartite with the original vertices on one side and the
    edge-vertices on the other, and has twice as many edges as ``g0``.
    """
    n0 = g0.n
    edges: list[Edge] = []
    for idx, (u, v) in enumerate(sorted(g0.edges), 1):
        mid = n0 + idx
        edges.append((u, mid))
        edges.append((v, mid))
    return Graph.build(
        n0 + len(g0.edges),
        edges,
        parts=(range(1, n0 + 1), range(n0 + 1, n0 + len(g0.edges) + 1)),
    )


@dataclass(frozen=True)
class PaddingRecord:
    """What :func:`pad_bipartition` added.

    Each anchor vertex went to the larger side with exactly two fresh
    neighbors (its stubs) on the smaller side, so every maximal matching must
    use exactly one stub edge per anchor: minimum maximal matching sizes
    shift by exactly ``r``.
    """

    r: int
    anchors: tuple[int, ...]
    stubs: tuple[tuple[int, int], ...]


def pad_bipartition(g: Graph) -> tuple[Graph, PaddingRecord]:
    """Balance the two sides of a bipartite graph with anchor/stub gadgets.

    If one side is larger by ``r``, add ``r`` anchors to it and ``2r`` stubs
    to the other side, each anchor adjacent to its own two stubs.  A maximal
    matching of size ``k`` in the input corresponds to one of size ``k + r``
    in the output and vice versa.
    """
    if g.parts is None:
        raise ValueError("pad_bipartition needs a graph with a declared bipartition")
    a, b = g.parts
    if len(a) == len(b):
        return g, PaddingRecord(0, (), ())
    big, small = (a, b) if len(a) > len(b) else (b, a)
    r = len(big) - len(small)
    anchors = tuple(range(g.n + 1, g.n + r + 1))
    stubs = tuple(
        (g.n + r + 2 * t - 1, g.n + r + 2 * t) for t in range(1, r + 1)
    )
    edges = set(g.edges)
    for anchor, (s1, s2) in zip(anchors, stubs):
        edges.add((min(anchor, s1), max(anchor, s1)))
        edges.add((min(anchor, s2), max(anchor, s2)))
    new_big = big | frozenset(anchors)
    new_small = small | frozenset(x for pair in stubs for x in pair)
    parts = (new_big, new_small) if len(a) > len(b) else (new_small, new_big)
    padded = Graph(g.n + 3 * r, frozenset(edges), parts)
    return padded, PaddingRecord(r, anchors, stubs)
