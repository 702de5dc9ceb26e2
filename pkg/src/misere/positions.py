"""Interned game positions and structural constructions.

A position is stored once per distinct structure: two builds with the same
Left and Right option sets return the same integer id. Option sets are kept
as sorted tuples of ids, so the store is a hash-consed DAG.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional


class StoreIntegrityError(ValueError):
    """Raised when a build refers to an id that is not in the store."""


class PositionStore:
    """Append-only table of canonical positions."""

    def __init__(self):
        self._left: list[tuple[int, ...]] = []
        self._right: list[tuple[int, ...]] = []
        self._index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._left)

    def build(self, left: Iterable[int], right: Iterable[int]) -> int:
        lt = tuple(sorted(set(left)))
        rt = tuple(sorted(set(right)))
        key = (lt, rt)
        found = self._index.get(key)
        if found is not None:
            return found
        size = len(self._left)
        for option in lt + rt:
            if not 0 <= option < size:
                raise StoreIntegrityError(f"unknown position id {option}")
        with self._lock:
            found = self._index.get(key)
            if found is not None:
                return found
            pid = len(self._left)
            self._left.append(lt)
            self._right.append(rt)
            self._index[key] = pid
            return pid

    def left(self, pid: int) -> tuple[int, ...]:
        return self._left[pid]

    def right(self, pid: int) -> tuple[int, ...]:
        return self._right[pid]


STORE = PositionStore()
ZERO = STORE.build((), ())


def build(left: Iterable[int] = (), right: Iterable[int] = ()) -> int:
    """Return the interned id of {left | right}."""
    return STORE.build(left, right)


def left_options(pid: int) -> tuple[int, ...]:
    return STORE.left(pid)


def right_options(pid: int) -> tuple[int, ...]:
    return STORE.right(pid)


def options(pid: int, left: bool) -> tuple[int, ...]:
    """Options for Left when `left` is true, otherwise for Right."""
    return STORE.left(pid) if left else STORE.right(pid)


def _memoized(fn):
    cache: dict = {}

    def wrapper(pid):
        try:
            return cache[pid]
        except KeyError:
            value = fn(pid)
            cache[pid] = value
            return value

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.cache = cache
    return wrapper


# ---------------------------------------------------------------------------
# Elementary constructions


def left_move_to(target: int) -> int:
    """The position {target | .} where only Left can move, to `target`."""
    return build([target], [])


def right_move_to(target: int) -> int:
    """The position {. | target} where only Right can move, to `target`."""
    return build([], [target])


def nimber(n: int) -> int:
    """Nim heap of size n: both players may move to any smaller heap."""
    if n < 0:
        raise ValueError("nim heap size must be nonnegative")
    heaps = [ZERO]
    for _ in range(n):
        heaps.append(build(heaps, heaps))
    return heaps[n]


def tau_power(n: int) -> int:
    """tau^0 is star; tau^n has one move for each player, to tau^(n-1)."""
    if n < 0:
        raise ValueError("tau power must be nonnegative")
    current = STAR
    for _ in range(n):
        current = build([current], [current])
    return current


@_memoized
def conjugate(pid: int) -> int:
    """Swap the roles of Left and Right throughout the game tree."""
    return build(
        [conjugate(r) for r in STORE.right(pid)],
        [conjugate(l) for l in STORE.left(pid)],
    )


@_memoized
def adjoint(pid: int) -> int:
    """Adjoint construction: sums p + adjoint(p) are previous-player wins."""
    lefts = STORE.left(pid)
    rights = STORE.right(pid)
    if not lefts and not rights:
        return STAR
    if not lefts:
        return build([adjoint(r) for r in rights], [ZERO])
    if not rights:
        return build([ZERO], [adjoint(l) for l in lefts])
    return build([adjoint(r) for r in rights], [adjoint(l) for l in lefts])


STAR = build([ZERO], [ZERO])
ONE = build([ZERO], [])
ONE_BAR = build([], [ZERO])
SIGMA = build([STAR], [])
SIGMA_BAR = build([], [STAR])
RHO = build([STAR], [ZERO])
RHO_BAR = build([ZERO], [STAR])
TAU = build([STAR], [STAR])
ETA = build([build([ZERO], [RHO])], [STAR])
THETA = build([build([STAR], [RHO])], [build([RHO_BAR], [STAR])])

_SIMPLE_NAMES = {
    "zero": ZERO,
    "star": STAR,
    "one": ONE,
    "one_bar": ONE_BAR,
    "sigma": SIGMA,
    "sigma_bar": SIGMA_BAR,
    "rho": RHO,
    "rho_bar": RHO_BAR,
    "tau": TAU,
    "eta": ETA,
    "theta": THETA,
}

NAMES = tuple(_SIMPLE_NAMES) + ("star_n", "tau_n")


def named(name: str, k: Optional[int] = None) -> int:
    """Look up one of the frequently used positions by name.

    `star_n` needs k >= 1 and `tau_n` needs k >= 0; the other names take no k.
    """
    if name == "star_n":
        if k is None or k < 1:
            raise ValueError("star_n needs an integer k >= 1")
        return nimber(k)
    if name == "tau_n":
        if k is None or k < 0:
            raise ValueError("tau_n needs an integer k >= 0")
        return tau_power(k)
    if name not in _SIMPLE_NAMES:
        raise ValueError(f"unknown position name {name!r}")
    if k is not None:
        raise ValueError(f"{name} takes no index")
    return _SIMPLE_NAMES[name]


def compile_sum(components: Iterable[int]) -> int:
    """Build the game tree of a disjunctive sum as a single position."""
    key = tuple(sorted(c for c in components if c != ZERO))
    return _compile_sorted(key)


_compiled_sums: dict[tuple[int, ...], int] = {}


def _compile_sorted(key: tuple[int, ...]) -> int:
    if not key:
        return ZERO
    if len(key) == 1:
        return key[0]
    found = _compiled_sums.get(key)
    if found is not None:
        return found
    sides = []
    for get in (STORE.left, STORE.right):
        side = set()
        for i, comp in enumerate(key):
            if i and key[i - 1] == comp:
                continue
            rest = key[:i] + key[i + 1:]
            for opt in get(comp):
                side.add(_compile_sorted(tuple(sorted(rest + ((opt,) if opt else ())))))
        sides.append(side)
    pid = build(sides[0], sides[1])
    _compiled_sums[key] = pid
    return pid


# ---------------------------------------------------------------------------
# Structural profile


@_memoized
def birthday(pid: int) -> int:
    opts = STORE.left(pid) + STORE.right(pid)
    if not opts:
        return 0
    return 1 + max(birthday(o) for o in opts)


@_memoized
def is_impartial(pid: int) -> bool:
    lefts = STORE.left(pid)
    return lefts == STORE.right(pid) and all(is_impartial(o) for o in lefts)


@_memoized
def is_all_small(pid: int) -> bool:
    lefts = STORE.left(pid)
    rights = STORE.right(pid)
    if bool(lefts) != bool(rights):
        return False
    return all(is_all_small(o) for o in lefts + rights)


@_memoized
def is_binary(pid: int) -> bool:
    lefts = STORE.left(pid)
    rights = STORE.right(pid)
    if len(lefts) > 1 or len(rights) > 1:
        return False
    return all(is_binary(o) for o in lefts + rights)


@_memoized
def _alternating_from_left(pid: int) -> int:
    # Longest alternating path starting with a Left move.
    lefts = STORE.left(pid)
    if not lefts:
        return 0
    return 1 + max(_alternating_from_right(o) for o in lefts)


@_memoized
def _alternating_from_right(pid: int) -> int:
    rights = STORE.right(pid)
    if not rights:
        return 0
    return 1 + max(_alternating_from_left(o) for o in rights)


@_memoized
def _longest_alternating(pid: int) -> int:
    best = max(_alternating_from_left(pid), _alternating_from_right(pid))
    for o in STORE.left(pid) + STORE.right(pid):
        best = max(best, _longest_alternating(o))
    return best


def ab_rank(pid: int) -> Optional[int]:
    """Least n with the position ab-n, or None if it is not all-small and binary.

    Alternating paths are counted wherever they start in the game tree, so
    every option of an ab-n position is again ab-n.
    """
    if not (is_all_small(pid) and is_binary(pid)):
        return None
    return _longest_alternating(pid)


@dataclass(frozen=True)
class StructuralProfile:
    birthday: int
    impartial: bool
    all_small: bool
    binary: bool
    ab_rank: Optional[int]
    left_end: bool
    right_end: bool

    def to_dict(self) -> dict:
        return {
            "birthday": self.birthday,
            "impartial": self.impartial,
            "all_small": self.all_small,
            "binary": self.binary,
            "ab_rank": self.ab_rank,
            "left_end": self.left_end,
            "right_end": self.right_end,
        }


def profile(pid: int) -> StructuralProfile:
    return StructuralProfile(
        birthday=birthday(pid),
        impartial=is_impartial(pid),
        all_small=is_all_small(pid),
        binary=is_binary(pid),
        ab_rank=ab_rank(pid),
        left_end=not STORE.left(pid),
        right_end=not STORE.right(pid),
    )


@_memoized
def structural_key(pid: int) -> tuple:
    """Deterministic sort key that does not depend on store insertion order."""
    return (
        birthday(pid),
        tuple(sorted(structural_key(o) for o in STORE.left(pid))),
        tuple(sorted(structural_key(o) for o in STORE.right(pid))),
    )


def subpositions(pid: int) -> list[int]:
    """Every position reachable from `pid`, including itself, by structural key."""
    seen = {pid}
    stack = [pid]
    while stack:
        p = stack.pop()
        for o in STORE.left(p) + STORE.right(p):
            if o not in seen:
                seen.add(o)
                stack.append(o)
    return sorted(seen, key=structural_key)


# ---------------------------------------------------------------------------
# Alternative sums


class SumKind(str, Enum):
    DISJUNCTIVE = "disjunctive"
    AND = "and"
    OR = "or"
    DISAND = "disand"
    DISOR = "disor"
    SEQJOIN = "seq"
    ORDINAL = "ord"


_alt_cache: dict[tuple[SumKind, int, int], int] = {}


def alt_sum(kind: SumKind, a: int, b: int) -> int:
    """Compile a two-component compound game into a plain position."""
    kind = SumKind(kind)
    if kind is SumKind.DISJUNCTIVE:
        raise ValueError("disjunctive sums are handled as multisets, not compiled here")
    key = (kind, a, b)
    found = _alt_cache.get(key)
    if found is not None:
        return found
    if kind is SumKind.ORDINAL and b == ZERO:
        # a:0 has exactly the options of a; in particular 0:0 = 0.
        result = a
    else:
        result = build(_alt_side(kind, a, b, True), _alt_side(kind, a, b, False))
    _alt_cache[key] = result
    return result


def _alt_side(kind: SumKind, a: int, b: int, left: bool) -> set[int]:
    oa = options(a, left)
    ob = options(b, left)
    if kind is SumKind.AND:
        # Move in both components; play ends if the mover is stuck in either.
        return {alt_sum(kind, x, y) for x in oa for y in ob}
    if kind is SumKind.OR:
        # Move in one or both; play also ends if the mover is stuck in either.
        if not oa or not ob:
            return set()
        return _one_or_both(kind, a, b, oa, ob)
    if kind is SumKind.DISAND:
        if not oa:
            return set(ob)
        if not ob:
            return set(oa)
        return {alt_sum(kind, x, y) for x in oa for y in ob}
    if kind is SumKind.DISOR:
        if not oa:
            return set(ob)
        if not ob:
            return set(oa)
        return _one_or_both(kind, a, b, oa, ob)
    if kind is SumKind.SEQJOIN:
        if oa:
            return {alt_sum(kind, x, b) for x in oa}
        return set(ob)
    if kind is SumKind.ORDINAL:
        return set(oa) | {alt_sum(kind, a, y) for y in ob}
    raise ValueError(f"unsupported sum kind {kind}")


def _one_or_both(kind, a, b, oa, ob):
    result = {alt_sum(kind, x, b) for x in oa}
    result |= {alt_sum(kind, a, y) for y in ob}
    result |= {alt_sum(kind, x, y) for x in oa for y in ob}
    return result


# ---------------------------------------------------------------------------
# Text and DOT rendering

_name_table: dict[int, str] = {}
_NAMED_RANGE = 12


def _names() -> dict[int, str]:
    if not _name_table:
        table = {
            ZERO: "0",
            STAR: "star",
            ONE: "one",
            ONE_BAR: "conj(one)",
            SIGMA: "sigma",
            SIGMA_BAR: "conj(sigma)",
            RHO: "rho",
            RHO_BAR: "conj(rho)",
            TAU: "tau",
            ETA: "eta",
            conjugate(ETA): "conj(eta)",
            THETA: "theta",
        }
        for k in range(2, _NAMED_RANGE + 1):
            table.setdefault(nimber(k), f"star({k})")
        for k in range(2, _NAMED_RANGE + 1):
            table.setdefault(tau_power(k), f"tau({k})")
        _name_table.update(table)
    return _name_table


def format_position(pid: int) -> str:
    """Canonical text form; named constants are folded where they match exactly."""
    names = _names()
    if pid in names:
        return names[pid]
    lefts = STORE.left(pid)
    rights = STORE.right(pid)
    if len(lefts) == 1 and not rights:
        return f"L({format_position(lefts[0])})"
    if len(rights) == 1 and not lefts:
        return f"R({format_position(rights[0])})"
    return "{%s|%s}" % (_format_side(lefts), _format_side(rights))


def _format_side(opts: tuple[int, ...]) -> str:
    return ",".join(format_position(o) for o in sorted(opts, key=structural_key))


def to_dot(pid: int, label: Optional[Callable[[int], str]] = None) -> str:
    """DOT digraph of the game DAG; edges are labelled L or R."""
    label = label or format_position
    order = []
    seen = {pid}
    queue = [pid]
    while queue:
        p = queue.pop(0)
        order.append(p)
        for o in sorted(STORE.left(p) + STORE.right(p), key=structural_key):
            if o not in seen:
                seen.add(o)
                queue.append(o)
    ids = {p: f"n{i}" for i, p in enumerate(order)}
    lines = ["digraph game {"]
    for p in order:
        text = label(p).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {ids[p]} [label="{text}"];')
    for p in order:
        for tag, opts in (("L", STORE.left(p)), ("R", STORE.right(p))):
            for o in sorted(opts, key=structural_key):
                lines.append(f'  {ids[p]} -> {ids[o]} [label="{tag}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Corpora


def positions_born_by(day: int) -> list[int]:
    """All positions of birthday at most `day` (only days 0, 1 and 2 are feasible)."""
    if day > 2:
        raise ValueError("more than 2^512 positions are born by day 3")
    current = [ZERO]
    for _ in range(day):
        subsets = _all_subsets(current)
        current = [build(l, r) for l in subsets for r in subsets]
    return sorted(set(current), key=structural_key)


def _all_subsets(items):
    result = [()]
    for item in items:
        result += [s + (item,) for s in result]
    return result


def random_position(rng, max_birthday: int, max_options: int = 2) -> int:
    """Random position with birthday at most `max_birthday`."""
    if max_birthday <= 0:
        return ZERO
    sides = []
    for _ in range(2):
        count = rng.randint(0, max_options)
        sides.append([random_position(rng, rng.randint(0, max_birthday - 1), max_options)
                      for _ in range(count)])
    return build(sides[0], sides[1])
