"""Positions whose misère quotient looks like that of a single star.

The quotient of cl(star) is the two-element group {1, a} with a*a = 1.
"Star-built" positions are the ones built up from star by repeatedly taking
all options of one outcome type; sums of them behave like words in that group.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

from .outcomes import Outcome, make_sum, misere_outcome, sum_options
from .positions import STAR, STORE, ZERO, birthday, build, structural_key
from .quotient import _vector_to_sum, enumerate_multisets, format_sum, option_closure


class ClassificationError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    pass


class StarImage(str, Enum):
    ONE = "1"
    A = "a"

    def __mul__(self, other: "StarImage") -> "StarImage":
        return StarImage.ONE if self == other else StarImage.A


_built_cache: dict[int, bool] = {}


def is_star_built(p: int) -> bool:
    found = _built_cache.get(p)
    if found is not None:
        return found
    result = _classify(p)
    _built_cache[p] = result
    return result


def _classify(p: int) -> bool:
    if p == STAR:
        return True
    if p == ZERO:
        return False
    lefts, rights = STORE.left(p), STORE.right(p)
    opts = lefts + rights
    outcome = misere_outcome(p)
    if outcome == Outcome.P:
        if not lefts or not rights:
            return False
        return all(o == ZERO or (misere_outcome(o) == Outcome.N and is_star_built(o))
                   for o in opts)
    if outcome == Outcome.N:
        return all(o != ZERO and misere_outcome(o) == Outcome.P and is_star_built(o)
                   for o in opts)
    return False


def star_image(p: int) -> StarImage:
    if p != ZERO and not is_star_built(p):
        raise ClassificationError("position is neither 0 nor star-built")
    return StarImage.ONE if misere_outcome(p) == Outcome.N else StarImage.A


def sum_outcome_via_star(components: Sequence[int]) -> Outcome:
    """Outcome of a sum of star-built positions by multiplying their images."""
    image = StarImage.ONE
    for c in components:
        image = image * star_image(c)
    return Outcome.N if image == StarImage.ONE else Outcome.P


DEFAULT_DAY_CAP = 3


def enumerate_star_built(day: int, cap: int = DEFAULT_DAY_CAP) -> list[int]:
    """Star-built positions born exactly on `day`.

    P-type positions take nonempty option sets from {0} and earlier N-type
    positions; N-type positions take option sets (not both empty) from
    earlier P-type positions.
    """
    if day > cap:
        raise ResourceLimitError(f"day {day} exceeds the enumeration cap {cap}")
    if day < 1:
        return []
    by_day = {1: [STAR]}
    for d in range(2, day + 1):
        earlier = [p for k in range(1, d) for p in by_day[k]]
        n_type = [p for p in earlier if misere_outcome(p) == Outcome.N]
        p_type = [p for p in earlier if misere_outcome(p) == Outcome.P]
        found = set()
        pool = [ZERO] + n_type
        nonempty = _subsets(pool, allow_empty=False)
        for a in nonempty:
            for b in nonempty:
                found.add(build(a, b))
        subsets = _subsets(p_type, allow_empty=True)
        for a in subsets:
            for b in subsets:
                if a or b:
                    found.add(build(a, b))
        by_day[d] = sorted((p for p in found if birthday(p) == d), key=structural_key)
    return by_day[day]


def _subsets(items, allow_empty):
    start = 0 if allow_empty else 1
    return [c for r in range(start, len(items) + 1) for c in combinations(items, r)]


@dataclass(frozen=True)
class StarIsoResult:
    passes: bool
    condition: Optional[int] = None
    witness: Optional[tuple] = None
    witness_option: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {
            "passes": self.passes,
            "failed_condition": self.condition,
            "witness": None if self.witness is None else format_sum(self.witness),
            "witness_option": (None if self.witness_option is None
                               else format_sum(self.witness_option)),
        }


def star_iso_check(generators: Sequence[int], sum_bound: int = 5) -> StarIsoResult:
    """Bounded check that cl(generators) has the same quotient as cl(star).

    Conditions, in order: some generator is nonzero; every element has
    outcome N or P; no N element has an option with outcome N.
    """
    if not any(g != ZERO for g in generators):
        return StarIsoResult(False, 1)
    atoms = option_closure(generators).atoms
    for vec in enumerate_multisets(len(atoms), sum_bound):
        s = _vector_to_sum(atoms, vec)
        o = misere_outcome(s)
        if o not in (Outcome.N, Outcome.P):
            return StarIsoResult(False, 2, s)
        if o == Outcome.N:
            for left in (True, False):
                for opt in sum_options(s, left):
                    if misere_outcome(opt) == Outcome.N:
                        return StarIsoResult(False, 3, s, make_sum(opt))
    return StarIsoResult(True)
