"""Players, weak preference orders with ties, and roommate/marriage games.

A preference list is a sequence of indifference tiers over other players,
most preferred first, together with a position for the owner's own singleton
("being alone").  Players ranked above that position are acceptable, players
below it are not, and every unlisted player sits in one implicit bottom tier
strictly below everything listed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .errors import FormatError

ROOMMATE = "roommate"
MARRIAGE = "marriage"

_SELF_TOKEN = "self"


@dataclass(frozen=True)
class PreferenceList:
    """One player's weak order over potential partners.

    ``tiers`` holds disjoint indifference classes of other players, most
    preferred first.  ``self_tier`` and ``self_tied`` place the owner's own
    singleton: tied with the members of ``tiers[self_tier]`` when
    ``self_tied`` is set, otherwise strictly between ``tiers[self_tier - 1]``
    and ``tiers[self_tier]`` (so ``self_tier == len(tiers)`` means below all
    listed players, the default for a plain list of acceptable partners).
    """

    owner: int
    tiers: tuple[frozenset[int], ...] = ()
    self_tier: int = 0
    self_tied: bool = False

    def __post_init__(self) -> None:
        if self.owner < 1:
            raise ValueError("player ids are 1-based")
        seen: set[int] = set()
        for tier in self.tiers:
            if not tier:
                raise ValueError("empty preference tier")
            if self.owner in tier:
                raise ValueError("owner may not appear in its own tiers")
            if seen & tier:
                raise ValueError("player listed in more than one tier")
            seen |= tier
        if self.self_tied:
            if not 0 <= self.self_tier < len(self.tiers):
                raise ValueError("self_tier out of range for a tied self")
        elif not 0 <= self.self_tier <= len(self.tiers):
            raise ValueError("self_tier out of range")

    def slots(self) -> tuple[tuple[tuple[int, ...], bool], ...]:
        """Rank slots, best first, as ``(sorted players, includes_self)``.

        Exactly one slot includes the owner's singleton; a bare self slot has
        no players.  The implicit bottom tier of unlisted players is not
        included.
        """
        cached = self.__dict__.get("_slots")
        if cached is None:
            out: list[tuple[tuple[int, ...], bool]] = []
            for t, tier in enumerate(self.tiers):
                if not self.self_tied and self.self_tier == t:
                    out.append(((), True))
                out.append((tuple(sorted(tier)), self.self_tied and self.self_tier == t))
            if not self.self_tied and self.self_tier == len(self.tiers):
                out.append(((), True))
            cached = tuple(out)
            object.__setattr__(self, "_slots", cached)
        return cached

    def _table(self) -> tuple[dict[int, int], int, int]:
        cached = self.__dict__.get("_table_cache")
        if cached is None:
            rank: dict[int, int] = {}
            self_rank = 0
            slots = self.slots()
            for r, (players, has_self) in enumerate(slots):
                for p in players:
                    rank[p] = r
                if has_self:
                    self_rank = r
            cached = (rank, self_rank, len(slots))
            object.__setattr__(self, "_table_cache", cached)
        return cached

    @property
    def self_rank(self) -> int:
        return self._table()[1]

    @property
    def bottom_rank(self) -> int:
        """Rank shared by every unlisted player; worse than any listed slot."""
        return self._table()[2]

    def rank_of(self, j: int) -> int:
        """Numeric rank of player ``j`` (lower is better); ``owner`` ranks as alone."""
        rank, self_rank, bottom = self._table()
        if j == self.owner:
            return self_rank
        return rank.get(j, bottom)

    def listed(self) -> frozenset[int]:
        return frozenset().union(*self.tiers) if self.tiers else frozenset()

    def accepts(self, j: int) -> bool:
        """True iff pairing with ``j`` is at least as good as staying alone."""
        return self.rank_of(j) <= self.self_rank

    def likes(self, j: int) -> bool:
        """True iff pairing with ``j`` beats staying alone strictly."""
        return self.rank_of(j) < self.self_rank

    def prefers(self, j: int, k: int) -> bool:
        return self.rank_of(j) < self.rank_of(k)

    def weakly_prefers(self, j: int, k: int) -> bool:
        return self.rank_of(j) <= self.rank_of(k)

    def raised(self) -> PreferenceList:
        """Push the owner's singleton strictly below any players tied with it."""
        if not self.self_tied:
            return self
        return replace(self, self_tier=self.self_tier + 1, self_tied=False)


@dataclass(frozen=True)
class Game:
    """A set of players with one preference list each.

    ``kind`` is ``"roommate"`` or ``"marriage"``; marriage games number men
    ``1..m`` and women ``m+1..m+w`` and reject any same-sex entry in a
    preference list.  All values are immutable after construction.
    """

    n: int
    profile: tuple[PreferenceList, ...]
    kind: str = ROOMMATE
    men: frozenset[int] = frozenset()
    women: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in (ROOMMATE, MARRIAGE):
            raise ValueError(f"unknown game kind {self.kind!r}")
        if self.n < 0:
            raise ValueError("player count must be non-negative")
        if len(self.profile) != self.n:
            raise ValueError("need exactly one preference list per player")
        for i, pl in enumerate(self.profile, 1):
            if pl.owner != i:
                raise ValueError("profile must be ordered by owner id 1..n")
        if self.kind == MARRIAGE:
            m = len(self.men)
            if self.men != frozenset(range(1, m + 1)):
                raise ValueError("men must be numbered 1..m")
            if self.women != frozenset(range(m + 1, self.n + 1)):
                raise ValueError("women must be numbered m+1..n")
            for pl in self.profile:
                own_side = pl.owner <= m
                for j in pl.listed():
                    if (j <= m) == own_side:
                        raise ValueError(
                            f"same-sex entry {j} in list of player {pl.owner}"
                        )
        elif self.men or self.women:
            raise ValueError("roommate games carry no side assignment")
        for pl in self.profile:
            for j in pl.listed():
                if not 1 <= j <= self.n:
                    raise ValueError(f"player id {j} out of range in list of {pl.owner}")

    def players(self) -> range:
        return range(1, self.n + 1)

    def prefs(self, i: int) -> PreferenceList:
        return self.profile[i - 1]

    @property
    def is_marriage(self) -> bool:
        return self.kind == MARRIAGE

    @property
    def num_men(self) -> int:
        return len(self.men)

    @property
    def num_women(self) -> int:
        return len(self.women)

    def same_side(self, i: int, j: int) -> bool:
        """True iff ``i`` and ``j`` are of the same sex (never, for roommates)."""
        if self.kind != MARRIAGE:
            return False
        m = len(self.men)
        return (i <= m) == (j <= m)


def raise_preferences(game: Game) -> Game:
    """Make every player tied with being-alone strictly acceptable instead.

    The relative order among distinct other players is untouched; only the
    owner's own singleton moves, strictly below its former tie partners.
    Idempotent; returns ``game`` itself when nothing is tied with alone.
    """
    raised = tuple(pl.raised() for pl in game.profile)
    if all(new is old for new, old in zip(raised, game.profile)):
        return game
    return replace(game, profile=raised)


def is_mutual(game: Game) -> bool:
    """True iff acceptability is symmetric between every pair of players."""
    for i in game.players():
        pi = game.prefs(i)
        for j in range(i + 1, game.n + 1):
            if pi.accepts(j) != game.prefs(j).accepts(i):
                return False
    return True


def has_no_unacceptability(game: Game) -> bool:
    """True iff everyone accepts every potential partner.

    For marriage games only opposite-sex players count as potential partners
    (same-sex players are unacceptable by definition).
    """
    for i in game.players():
        pi = game.prefs(i)
        for j in game.players():
            if j == i or game.same_side(i, j):
                continue
            if not pi.accepts(j):
                return False
    return True


@dataclass(frozen=True)
class GenParams:
    """Parameters for :func:`random_game`.

    ``n`` sizes a roommate game; ``n_men``/``n_women`` size a marriage game.
    ``complete`` makes every potential partner acceptable and switches the
    acceptability probability off; ``mutual`` samples acceptability per
    unordered pair so the relation comes out symmetric.
    """

    kind: str = ROOMMATE
    n: int = 0
    n_men: int = 0
    n_women: int = 0
    tie_probability: float = 0.0
    acceptability_probability: float = 1.0
    mutual: bool = False
    complete: bool = False
    seed: int = 0


def random_game(params: GenParams) -> Game:
    """Deterministically sample a game; identical params give identical games."""
    if params.kind not in (ROOMMATE, MARRIAGE):
        raise ValueError(f"unknown game kind {params.kind!r}")
    if not 0.0 <= params.tie_probability <= 1.0:
        raise ValueError("tie_probability must lie in [0, 1]")
    if not 0.0 <= params.acceptability_probability <= 1.0:
        raise ValueError("acceptability_probability must lie in [0, 1]")
    if min(params.n, params.n_men, params.n_women) < 0:
        raise ValueError("player counts must be non-negative")

    rng = random.Random(params.seed)
    if params.kind == ROOMMATE:
        n = params.n
        m = 0
    else:
        m = params.n_men
        n = m + params.n_women

    def candidates(i: int) -> list[int]:
        if params.kind == ROOMMATE:
            return [j for j in range(1, n + 1) if j != i]
        return [j for j in range(1, n + 1) if (j <= m) != (i <= m)]

    acceptable: dict[int, set[int]] = {i: set() for i in range(1, n + 1)}
    if params.complete:
        for i in range(1, n + 1):
            acceptable[i] = set(candidates(i))
    elif params.mutual:
        for i in range(1, n + 1):
            for j in candidates(i):
                if j < i:
                    continue
                if rng.random() < params.acceptability_probability:
                    acceptable[i].add(j)
                    acceptable[j].add(i)
    else:
        for i in range(1, n + 1):
            for j in candidates(i):
                if rng.random() < params.acceptability_probability:
                    acceptable[i].add(j)

    profile = []
    for i in range(1, n + 1):
        order = sorted(acceptable[i])
        rng.shuffle(order)
        tiers: list[frozenset[int]] = []
        current: list[int] = []
        for j in order:
            if current and rng.random() < params.tie_probability:
                current.append(j)
            else:
                if current:
                    tiers.append(frozenset(current))
                current = [j]
        if current:
            tiers.append(frozenset(current))
        if tiers and rng.random() < params.tie_probability:
            profile.append(
                PreferenceList(i, tuple(tiers), self_tier=len(tiers) - 1, self_tied=True)
            )
        else:
            profile.append(PreferenceList(i, tuple(tiers), self_tier=len(tiers)))

    if params.kind == ROOMMATE:
        return Game(n, tuple(profile), ROOMMATE)
    return Game(
        n,
        tuple(profile),
        MARRIAGE,
        men=frozenset(range(1, m + 1)),
        women=frozenset(range(m + 1, n + 1)),
    )


def parse_instance(text: str) -> Game:
    """Parse a game from its instance text.

    Grammar (UTF-8, ``#`` starts a comment): a header line ``roommate <n>`` or
    ``marriage <m> <w>``, then one line per player ``<id>: <entries>`` where
    entries are space-separated ids in decreasing preference, ``( a b ... )``
    groups a tie tier, and the bare token ``self`` marks where being alone
    ranks.  Entries after ``self`` are ranked but unacceptable; unlisted
    players are unacceptable and mutually indifferent.
    """
    header: tuple[str, int, int] | None = None
    lines: dict[int, tuple[int, str]] = {}
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if header is None:
            fields = stripped.split()
            if fields[0] == ROOMMATE and len(fields) == 2:
                kind = ROOMMATE
                counts = fields[1:]
            elif fields[0] == MARRIAGE and len(fields) == 3:
                kind = MARRIAGE
                counts = fields[1:]
            else:
                raise FormatError(
                    "expected header 'roommate <n>' or 'marriage <m> <w>'", lineno
                )
            try:
                nums = [int(c) for c in counts]
            except ValueError:
                raise FormatError("non-numeric player count in header", lineno) from None
            if any(c < 0 for c in nums):
                raise FormatError("negative player count in header", lineno)
            if kind == ROOMMATE:
                n, m = nums[0], 0
            else:
                m = nums[0]
                n = m + nums[1]
            header = (kind, n, m)
            continue
        if ":" not in stripped:
            raise FormatError("expected '<id>: <entries>'", lineno)
        lhs, rhs = stripped.split(":", 1)
        try:
            owner = int(lhs)
        except ValueError:
            raise FormatError(f"bad player id {lhs.strip()!r}", lineno) from None
        if not 1 <= owner <= n:
            raise FormatError(f"player id {owner} out of range", lineno)
        if owner in lines:
            raise FormatError(f"duplicate preference line for player {owner}", lineno)
        lines[owner] = (lineno, rhs)

    if header is None:
        raise FormatError("empty instance: missing header")
    kind = header[0]

    missing = [i for i in range(1, n + 1) if i not in lines]
    if missing:
        raise FormatError(f"missing preference line for player {missing[0]}")

    profile = []
    for owner in range(1, n + 1):
        lineno, rhs = lines[owner]
        profile.append(_parse_entries(owner, rhs, n, m if kind == MARRIAGE else 0, lineno))

    if kind == ROOMMATE:
        return Game(n, tuple(profile), ROOMMATE)
    return Game(
        n,
        tuple(profile),
        MARRIAGE,
        men=frozenset(range(1, m + 1)),
        women=frozenset(range(m + 1, n + 1)),
    )


def _parse_entries(owner: int, rhs: str, n: int, m: int, lineno: int) -> PreferenceList:
    tokens = rhs.replace("(", " ( ").replace(")", " ) ").split()
    tiers: list[frozenset[int]] = []
    group: list[int] | None = None
    group_has_self = False
    self_tier: int | None = None
    self_tied = False
    seen: set[int] = set()

    def add_id(token: str) -> int:
        try:
            j = int(token)
        except ValueError:
            raise FormatError(f"unexpected token {token!r}", lineno) from None
        if j == owner:
            raise FormatError(
                f"player {owner} lists itself by id; use 'self'", lineno
            )
        if not 1 <= j <= n:
            raise FormatError(f"player id {j} out of range", lineno)
        if j in seen:
            raise FormatError(f"duplicate entry {j} in list of player {owner}", lineno)
        if m and (j <= m) == (owner <= m):
            raise FormatError(
                f"same-sex entry {j} in list of player {owner}", lineno
            )
        seen.add(j)
        return j

    for token in tokens:
        if token == "(":
            if group is not None:
                raise FormatError("nested tie group", lineno)
            group = []
            group_has_self = False
        elif token == ")":
            if group is None:
                raise FormatError("')' without matching '('", lineno)
            if not group and not group_has_self:
                raise FormatError("empty tie group", lineno)
            if group_has_self:
                if group:
                    self_tier = len(tiers)
                    self_tied = True
                    tiers.append(frozenset(group))
                else:
                    self_tier = len(tiers)
            elif group:
                tiers.append(frozenset(group))
            group = None
        elif token == _SELF_TOKEN:
            if self_tier is not None or (group is not None and group_has_self):
                raise FormatError("'self' appears more than once", lineno)
            if group is not None:
                group_has_self = True
            else:
                self_tier = len(tiers)
        else:
            j = add_id(token)
            if group is not None:
                group.append(j)
            else:
                tiers.append(frozenset([j]))

    if group is not None:
        raise FormatError("unclosed tie group", lineno)
    if self_tier is None:
        self_tier = len(tiers)
        self_tied = False
    return PreferenceList(owner, tuple(tiers), self_tier, self_tied)


def serialize_instance(game: Game) -> str:
    """Render a game in the instance grammar; inverse of :func:`parse_instance`."""
    if game.kind == ROOMMATE:
        out = [f"roommate {game.n}"]
    else:
        out = [f"marriage {game.num_men} {game.num_women}"]
    for i in game.players():
        parts: list[str] = []
        for players, has_self in game.prefs(i).slots():
            if has_self and not players:
                parts.append(_SELF_TOKEN)
            elif has_self:
                parts.append("( " + " ".join(map(str, players)) + " self )")
            elif len(players) == 1:
                parts.append(str(players[0]))
            else:
                parts.append("( " + " ".join(map(str, players)) + " )")
        if parts and parts[-1] == _SELF_TOKEN:
            parts.pop()
        out.append(f"{i}: " + " ".join(parts) if parts else f"{i}:")
    return "\n".join(out) + "\n"
