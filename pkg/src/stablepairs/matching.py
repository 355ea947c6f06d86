"""Matchings as partitions into pairs and singletons, plus their enumeration."""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import FormatError
from .model import Game


class Matching:
    """A partition of players ``1..n`` into pairs and singletons.

    Stored as a self-inverse partner map: ``partner_of(i) == i`` encodes a
    singleton.  Immutable and hashable.
    """

    __slots__ = ("_partner",)

    def __init__(self, partner: Iterable[int]):
        p = tuple(partner)
        n = len(p)
        for i, j in enumerate(p, 1):
            if not 1 <= j <= n:
                raise ValueError(f"partner {j} of player {i} out of range")
            if p[j - 1] != i:
                raise ValueError(f"partner map is not an involution at player {i}")
        self._partner = p

    @classmethod
    def singletons(cls, n: int) -> Matching:
        return cls(range(1, n + 1))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Matching:
        partner = list(range(1, n + 1))
        for i, j in pairs:
            if i == j:
                raise ValueError("a pair must join two distinct players")
            if partner[i - 1] != i or partner[j - 1] != j:
                raise ValueError("player appears in more than one pair")
            partner[i - 1] = j
            partner[j - 1] = i
        return cls(partner)

    @property
    def n(self) -> int:
        return len(self._partner)

    def as_tuple(self) -> tuple[int, ...]:
        return self._partner

    def partner_of(self, i: int) -> int:
        return self._partner[i - 1]

    def is_single(self, i: int) -> bool:
        return self._partner[i - 1] == i

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self._partner, 1) if i < j]

    def singles(self) -> list[int]:
        return [i for i, j in enumerate(self._partner, 1) if i == j]

    def cells(self) -> list[tuple[int, ...]]:
        """All coalitions, ordered by their smallest member."""
        out: list[tuple[int, ...]] = []
        for i, j in enumerate(self._partner, 1):
            if i == j:
                out.append((i,))
            elif i < j:
                out.append((i, j))
        return out

    def with_move(self, mover: int, target: int | None) -> Matching:
        """Replay a single-player move: ``mover`` joins ``{target}`` or goes alone.

        The abandoned partner, if any, becomes a singleton.  ``target`` must
        currently be single; joining a pair would form a size-3 coalition.
        """
        if not 1 <= mover <= self.n:
            raise ValueError(f"mover {mover} out of range")
        p = list(self._partner)
        old = p[mover - 1]
        if old != mover:
            p[old - 1] = old
        if target is None:
            p[mover - 1] = mover
        else:
            if target == mover:
                raise ValueError("mover cannot target itself; use target=None")
            if self._partner[target - 1] != target:
                raise ValueError(f"target {target} is not single")
            p[mover - 1] = target
            p[target - 1] = mover
        return Matching(p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self._partner == other._partner

    def __hash__(self) -> int:
        return hash(self._partner)

    def __repr__(self) -> str:
        cells = " ".join(
            f"({cell[0]},{cell[1]})" if len(cell) == 2 else f"({cell[0]})"
            for cell in self.cells()
        )
        return f"Matching[{cells}]"


def parse_matching(text: str, game: Game | int) -> Matching:
    """Parse a matching file: one ``i j`` line per pair, ``i -`` per singleton."""
    n = game if isinstance(game, int) else game.n
    assigned: dict[int, int] = {}

    def take(i: int, j: int, lineno: int) -> None:
        if not 1 <= i <= n:
            raise FormatError(f"player id {i} out of range", lineno)
        if i in assigned:
            raise FormatError(
                f"player {i} appears more than once (matching must be an involution)",
                lineno,
            )
        assigned[i] = j

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise FormatError("expected 'i j' or 'i -'", lineno)
        try:
            i = int(fields[0])
        except ValueError:
            raise FormatError(f"bad player id {fields[0]!r}", lineno) from None
        if fields[1] == "-":
            take(i, i, lineno)
            continue
        try:
            j = int(fields[1])
        except ValueError:
            raise FormatError(f"bad player id {fields[1]!r}", lineno) from None
        if i == j:
            raise FormatError("a player cannot pair with itself; use '-'", lineno)
        take(i, j, lineno)
        take(j, i, lineno)

    missing = [i for i in range(1, n + 1) if i not in assigned]
    if missing:
        raise FormatError(f"player {missing[0]} is missing from the matching")
    try:
        return Matching(assigned[i] for i in range(1, n + 1))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_matching(matching: Matching) -> str:
    """Render a matching, one cell per line ordered by smallest member."""
    out = []
    for cell in matching.cells():
        if len(cell) == 1:
            out.append(f"{cell[0]} -")
        else:
            out.append(f"{cell[0]} {cell[1]}")
    return "\n".join(out) + ("\n" if out else "")


def enumerate_matchings(n: int) -> Iterator[Matching]:
    """Yield every partition of ``1..n`` into pairs and singletons exactly once.

    Order: the smallest undecided player is paired with each larger player in
    ascending order first, then left single, recursing on the rest.  The
    number of results is the involution number I(n) with
    ``I(n) = I(n-1) + (n-1) * I(n-2)``.
    """
    partner = list(range(n + 1))
    decided = [False] * (n + 1)

    def rec(i: int) -> Iterator[Matching]:
        while i <= n and decided[i]:
            i += 1
        if i > n:
            yield Matching(partner[1:])
            return
        decided[i] = True
        for j in range(i + 1, n + 1):
            if not decided[j]:
                decided[j] = True
                partner[i] = j
                partner[j] = i
                yield from rec(i + 1)
                decided[j] = False
                partner[i] = i
                partner[j] = j
        yield from rec(i + 1)
        decided[i] = False

    yield from rec(1)
