"""Misère and normal-play outcomes of positions and disjunctive sums.

A disjunctive sum is represented canonically as a sorted tuple of position
ids with zeros removed; the empty tuple is the sum 0.
"""

from __future__ import annotations

import sys
from bisect import insort
from enum import Enum
from typing import Iterable, Iterator, Union

from .positions import STORE, ZERO

SumPosition = tuple

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Outcome(str, Enum):
    L = "L"
    R = "R"
    N = "N"
    P = "P"

    def swap(self) -> "Outcome":
        """Exchange the roles of the players (L <-> R, N and P fixed)."""
        return {Outcome.L: Outcome.R, Outcome.R: Outcome.L}.get(self, self)

    def __str__(self):
        return self.value


class Comparison(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


_RANK = {Outcome.R: 0, Outcome.N: 1, Outcome.P: 1, Outcome.L: 2}


def outcome_geq(a: Outcome, b: Outcome) -> bool:
    """a >= b in the diamond order L >= N, P >= R."""
    if a == b:
        return True
    return _RANK[a] > _RANK[b]


def outcome_cmp(a: Outcome, b: Outcome) -> Comparison:
    a, b = Outcome(a), Outcome(b)
    if a == b:
        return Comparison.EQUAL
    if outcome_geq(a, b):
        return Comparison.GREATER
    if outcome_geq(b, a):
        return Comparison.LESS
    return Comparison.INCOMPARABLE


def _from_wins(left_first: bool, right_first: bool) -> Outcome:
    if left_first and right_first:
        return Outcome.N
    if left_first:
        return Outcome.L
    if right_first:
        return Outcome.R
    return Outcome.P


def make_sum(components: Union[int, Iterable[int]]) -> SumPosition:
    """Canonical sum of the given components; a single id is accepted too."""
    if isinstance(components, int):
        components = (components,)
    return tuple(sorted(c for c in components if c != ZERO))


def add_sums(*sums: SumPosition) -> SumPosition:
    return tuple(sorted(c for s in sums for c in s))


def sum_options(s: SumPosition, left: bool) -> Iterator[SumPosition]:
    """Options of a sum for one player: one component replaced by an option.

    Equal components are only expanded once, so no duplicates arise from
    repeated summands.
    """
    get = STORE.left if left else STORE.right
    for i, comp in enumerate(s):
        if i and s[i - 1] == comp:
            continue
        moves = get(comp)
        if not moves:
            continue
        rest = list(s[:i] + s[i + 1:])
        for opt in moves:
            if opt == ZERO:
                yield tuple(rest)
            else:
                nxt = rest.copy()
                insort(nxt, opt)
                yield tuple(nxt)


def _has_option(s: SumPosition, left: bool) -> bool:
    get = STORE.left if left else STORE.right
    return any(get(c) for c in s)


class _Solver:
    """Memoized win/loss recursion for one play convention."""

    def __init__(self, misere: bool):
        self.misere = misere
        self.left_first: dict[SumPosition, bool] = {}
        self.right_first: dict[SumPosition, bool] = {}
        self.cap: int | None = None

    def clear(self):
        self.left_first.clear()
        self.right_first.clear()

    def wins_first(self, s: SumPosition, left: bool) -> bool:
        table = self.left_first if left else self.right_first
        found = table.get(s)
        if found is not None:
            return found
        if not _has_option(s, left):
            # The player with no move wins under misère play, loses otherwise.
            result = self.misere
        else:
            result = any(not self.wins_first(o, not left) for o in sum_options(s, left))
        if self.cap is not None and len(table) >= self.cap:
            table.clear()
        table[s] = result
        return result

    def outcome(self, s: SumPosition) -> Outcome:
        return _from_wins(self.wins_first(s, True), self.wins_first(s, False))


_MISERE = _Solver(misere=True)
_NORMAL = _Solver(misere=False)


def misere_outcome(s: Union[int, Iterable[int]]) -> Outcome:
    """Outcome of a position or sum when the last player to move loses."""
    return _MISERE.outcome(make_sum(s))


def normal_outcome(s: Union[int, Iterable[int]]) -> Outcome:
    """Outcome when the last player to move wins."""
    return _NORMAL.outcome(make_sum(s))


def left_wins_first(s: Union[int, Iterable[int]], misere: bool = True) -> bool:
    solver = _MISERE if misere else _NORMAL
    return solver.wins_first(make_sum(s), True)


def set_memo_cap(cap: int | None) -> None:
    """Bound each memo table; a full table is flushed before growing further."""
    _MISERE.cap = cap
    _NORMAL.cap = cap


def memo_size() -> int:
    return sum(len(t) for solver in (_MISERE, _NORMAL)
               for t in (solver.left_first, solver.right_first))


def clear_memo() -> None:
    _MISERE.clear()
    _NORMAL.clear()
