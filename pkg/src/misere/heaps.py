"""Partizan subtraction games played on several heaps.

A position is a count vector (x_1, x_2, ...) where x_i is the number of heaps
of size i. Left removes an amount from her subtraction set from one heap,
Right from his; a heap reduced to 0 disappears.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from .outcomes import Outcome, _from_wins
from .positions import ZERO, build
from .quotient import NOT_STABILIZED, QuotientReport, quotient_from_oracle


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SubtractionGameSpec:
    left_set: frozenset
    right_set: frozenset
    max_heap: int = 6

    def __post_init__(self):
        object.__setattr__(self, "left_set", frozenset(self.left_set))
        object.__setattr__(self, "right_set", frozenset(self.right_set))
        if not self.left_set or not self.right_set:
            raise ValueError("subtraction sets must be nonempty")
        if min(self.left_set | self.right_set) < 1:
            raise ValueError("subtraction amounts must be positive")
        if self.max_heap < 1:
            raise ValueError("max_heap must be positive")

    def label(self) -> str:
        def fmt(s):
            return ",".join(str(x) for x in sorted(s))
        return f"L({fmt(self.left_set)})/R({fmt(self.right_set)})"


def canonical(v: Sequence[int]) -> tuple:
    """Drop trailing zero counts."""
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _moves(spec: SubtractionGameSpec, v: tuple, left: bool):
    amounts = spec.left_set if left else spec.right_set
    for size in range(1, len(v) + 1):
        if not v[size - 1]:
            continue
        for s in amounts:
            if s > size:
                continue
            nxt = list(v)
            nxt[size - 1] -= 1
            if size - s:
                nxt[size - s - 1] += 1
            yield canonical(nxt)


_win_memo: dict = {}


def _wins_first(spec, v, left) -> bool:
    key = (spec, v, left)
    found = _win_memo.get(key)
    if found is not None:
        return found
    result = True
    for nxt in _moves(spec, v, left):
        result = False
        if not _wins_first(spec, nxt, not left):
            result = True
            break
    _win_memo[key] = result
    return result


def heap_outcome(spec: SubtractionGameSpec, v: Sequence[int]) -> Outcome:
    """Misère outcome of the heap vector v."""
    v = canonical(v)
    if len(v) > spec.max_heap:
        raise PreconditionError(f"heap size {len(v)} exceeds max_heap {spec.max_heap}")
    if any(x < 0 for x in v):
        raise PreconditionError("heap counts must be nonnegative")
    return _from_wins(_wins_first(spec, v, True), _wins_first(spec, v, False))


def colex_vectors(maxima: Sequence[int]):
    """All vectors with 0 <= x_i <= maxima[i], first coordinate varying fastest."""
    for rev in product(*(range(m + 1) for m in reversed(maxima))):
        yield tuple(reversed(rev))


@dataclass
class OutcomeTable:
    spec: SubtractionGameSpec
    maxima: tuple
    entries: list  # (vector, outcome) in colexicographic order

    def get(self, v: Sequence[int]) -> Outcome:
        return dict(self.entries)[tuple(v)]

    def grid(self) -> list[list[str]]:
        """Rows indexed by x_2 (if present), columns by x_1."""
        lookup = dict(self.entries)
        if not self.maxima:
            return [[lookup[()].value]]
        cols = range(self.maxima[0] + 1)
        if len(self.maxima) == 1:
            return [[lookup[(x,)].value for x in cols]]
        rest = self.maxima[2:]
        rows = []
        for tail in colex_vectors(rest):
            for y in range(self.maxima[1] + 1):
                rows.append([lookup[(x, y) + tail].value for x in cols])
        return rows

    def render(self) -> str:
        lookup = dict(self.entries)
        if len(self.maxima) <= 1:
            xs = range((self.maxima[0] if self.maxima else 0) + 1)
            head = "x1: " + " ".join(f"{x:>2}" for x in xs)
            vals = "    " + " ".join(f"{(lookup[(x,)] if self.maxima else lookup[()]).value:>2}"
                                      for x in xs)
            return head + "\n" + vals + "\n"
        lines = []
        for tail in colex_vectors(self.maxima[2:]):
            if tail:
                lines.append("with (x3..) = " + ",".join(map(str, tail)))
            lines.append("x2\\x1 " + " ".join(f"{x:>2}" for x in range(self.maxima[0] + 1)))
            for y in range(self.maxima[1] + 1):
                row = " ".join(f"{lookup[(x, y) + tail].value:>2}"
                               for x in range(self.maxima[0] + 1))
                lines.append(f"{y:>5} {row}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.label(),
            "maxima": list(self.maxima),
            "entries": [[",".join(map(str, v)), o.value] for v, o in self.entries],
        }


def outcome_table(spec: SubtractionGameSpec, maxima: Sequence[int]) -> OutcomeTable:
    maxima = tuple(maxima)
    entries = [(v, heap_outcome(spec, v)) for v in colex_vectors(maxima)]
    return OutcomeTable(spec, maxima, entries)


# ---------------------------------------------------------------------------
# Periodicity


@dataclass
class CoordinateResult:
    size: int
    status: str  # FOUND or NOT_FOUND
    pre_period: Optional[tuple] = None
    period: Optional[tuple] = None
    condition_a: bool = False
    condition_b: bool = False
    diagonal: bool = False

    def to_dict(self) -> dict:
        return {
            "heap_size": self.size,
            "status": self.status,
            "pre_period": None if self.pre_period is None else list(self.pre_period),
            "period": None if self.period is None else list(self.period),
            "shift_condition": self.condition_a,
            "lower_coordinates_condition": self.condition_b,
            "diagonal_relation": self.diagonal,
        }


@dataclass
class PeriodicityReport:
    spec: SubtractionGameSpec
    coordinates: list
    u_bound: int
    search_bound: int
    candidate_monoid: Optional[QuotientReport] = field(default=None, repr=False)

    def vectors(self, i: int) -> tuple:
        c = self.coordinates[i - 1]
        return c.pre_period, c.period

    def reduce(self, v: Sequence[int]) -> tuple:
        """Map a vector into the verified box using the found periods."""
        v = list(v)
        found = [c for c in self.coordinates if c.status == "FOUND"]
        if not found:
            return tuple(v)
        top = found[-1]
        for j in range(min(len(v), len(top.pre_period))):
            r, d = top.pre_period[j], top.period[j]
            if v[j] >= r + d:
                v[j] = r + (v[j] - r) % d
        return tuple(v)

    def to_dict(self) -> dict:
        data = {
            "spec": self.spec.label(),
            "u_bound": self.u_bound,
            "search_bound": self.search_bound,
            "coordinates": [c.to_dict() for c in self.coordinates],
        }
        if self.candidate_monoid is not None:
            data["candidate_monoid"] = self.candidate_monoid.to_dict()
        return data


def _vec(prefix: tuple, i: int, value: int) -> tuple:
    v = list(prefix) + [0] * (i - 1 - len(prefix)) + [value]
    return tuple(v)


def detect_periodicity(spec: SubtractionGameSpec, coordinates: Optional[int] = None,
                       search_bound: int = 8, u_bound: int = 4) -> PeriodicityReport:
    """Search pre-periods and periods for heap sizes 1, 2, ... in turn.

    For heap size i with earlier vectors R, D, a pair (r, d) is accepted when
      - shifting x_i from r + u to r + d + u never changes the outcome, for
        every earlier coordinate vector in the box x_j <= R_j + D_j and every
        u <= u_bound, and
      - the earlier periodicities still hold with up to r + d + u_bound heaps
        of size i present.
    The search tries r first, then d, both up to `search_bound`.
    """
    n = coordinates or spec.max_heap
    results: list[CoordinateResult] = []
    pre: tuple = ()
    per: tuple = ()
    for i in range(1, n + 1):
        box = [r + d for r, d in zip(pre, per)]
        prefixes = list(colex_vectors(box))
        chosen = None
        shift_ok_any = False
        for r in range(search_bound + 1):
            for d in range(1, search_bound + 1):
                if not _shift_holds(spec, prefixes, i, r, d, u_bound):
                    continue
                shift_ok_any = True
                if _lower_hold(spec, pre, per, i, r + d + u_bound, u_bound):
                    chosen = (r, d)
                    break
            if chosen:
                break
        if chosen is None:
            diag = i == 2 and _diagonal(spec, search_bound)
            results.append(CoordinateResult(i, "NOT_FOUND", condition_a=shift_ok_any,
                                            diagonal=diag))
            break
        pre = pre + (chosen[0],)
        per = per + (chosen[1],)
        results.append(CoordinateResult(i, "FOUND", pre, per, True, True))
    return PeriodicityReport(spec, results, u_bound, search_bound)


def _shift_holds(spec, prefixes, i, r, d, u_bound) -> bool:
    for prefix in prefixes:
        for u in range(u_bound + 1):
            a = _vec(prefix, i, r + u)
            b = _vec(prefix, i, r + d + u)
            if heap_outcome(spec, a) != heap_outcome(spec, b):
                return False
    return True


def _lower_hold(spec, pre, per, i, top_max, u_bound) -> bool:
    # Earlier coordinate j stays periodic whatever the later counts are.
    for j in range(len(pre)):
        r, d = pre[j], per[j]
        maxima = [a + b for a, b in zip(pre, per)] + [top_max]
        for v in colex_vectors(maxima[:j] + [0] + maxima[j + 1:]):
            if v[-1] == 0:
                continue  # already covered when coordinate j was found
            for u in range(u_bound + 1):
                a = list(v)
                b = list(v)
                a[j] = r + u
                b[j] = r + d + u
                if heap_outcome(spec, a) != heap_outcome(spec, b):
                    return False
    return True


def _diagonal(spec, bound) -> bool:
    """o(x1, x2) == o(x1 + 1, x2 + 1) throughout the box."""
    return all(
        heap_outcome(spec, (x, y)) == heap_outcome(spec, (x + 1, y + 1))
        for x in range(bound + 1) for y in range(bound + 1)
    )


# ---------------------------------------------------------------------------
# Quotients and compiled positions


def heap_quotient(spec: SubtractionGameSpec, sum_bound: int = 6, context_bound: int = 6,
                  max_size: Optional[int] = None) -> QuotientReport:
    """Bounded misère quotient of the closure of heaps 1..max_size."""
    k = max_size or spec.max_heap
    symbols = [chr(ord("a") + i) for i in range(k)]

    def outcome_fn(vec):
        return heap_outcome(spec, vec)

    report = quotient_from_oracle(outcome_fn, k, symbols, [f"h{i + 1}" for i in range(k)],
                                  sum_bound, context_bound,
                                  [f"h{i + 1}" for i in range(k)])
    return report


def distinguished_chain(report: QuotientReport, symbol: str, length: int) -> list:
    """Powers symbol^0..symbol^length that fall in pairwise different classes."""
    idx = report.symbols.index(symbol)
    classes = []
    for m in range(length + 1):
        vec = tuple(m if i == idx else 0 for i in range(len(report.symbols)))
        classes.append(report.class_of_vector.get(vec))
    return classes


_compiled: dict = {}


def compile_heap_position(spec: SubtractionGameSpec, n: int) -> int:
    """The single heap of size n as an ordinary position."""
    if n > spec.max_heap:
        raise PreconditionError(f"heap size {n} exceeds max_heap {spec.max_heap}")
    if n == 0:
        return ZERO
    key = (spec.left_set, spec.right_set, n)
    found = _compiled.get(key)
    if found is None:
        lefts = [compile_heap_position(spec, n - s) for s in spec.left_set if s <= n]
        rights = [compile_heap_position(spec, n - s) for s in spec.right_set if s <= n]
        found = _compiled[key] = build(lefts, rights)
    return found


def vector_as_sum(spec: SubtractionGameSpec, v: Sequence[int]) -> list:
    return [compile_heap_position(spec, i + 1) for i, x in enumerate(v) for _ in range(x)]


__all__ = [
    "SubtractionGameSpec", "heap_outcome", "outcome_table", "detect_periodicity",
    "heap_quotient", "compile_heap_position", "PeriodicityReport", "OutcomeTable",
    "NOT_STABILIZED", "colex_vectors", "vector_as_sum", "distinguished_chain",
]
