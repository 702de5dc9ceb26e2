"""Grundy values and genus symbols for impartial positions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .outcomes import SumPosition, make_sum, sum_options
from .positions import is_impartial, left_options, nimber


class NotImpartialError(ValueError):
    pass


class GenusDiagnosticsError(RuntimeError):
    """No alternating tail was found within the digit cap."""


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not in `values`."""
    present = set(values)
    n = 0
    while n in present:
        n += 1
    return n


_normal_grundy: dict[SumPosition, int] = {}
_misere_grundy: dict[SumPosition, int] = {}


def normal_grundy(s) -> int:
    """Sprague-Grundy value of an impartial sum."""
    s = make_sum(s)
    found = _normal_grundy.get(s)
    if found is None:
        found = mex(normal_grundy(o) for o in sum_options(s, True))
        _normal_grundy[s] = found
    return found


def misere_grundy(s) -> int:
    """Misère Grundy value: 1 for a position with no options, else the mex."""
    s = make_sum(s)
    found = _misere_grundy.get(s)
    if found is None:
        opts = list(sum_options(s, True))
        found = 1 if not opts else mex(misere_grundy(o) for o in opts)
        _misere_grundy[s] = found
    return found


@dataclass(frozen=True)
class Genus:
    g_plus: int
    digits: tuple

    def __str__(self):
        sep = "," if any(d >= 10 for d in self.digits) else ""
        return f"{self.g_plus}^{{{sep.join(str(d) for d in self.digits)}}}"

    def expand(self, length: int) -> list[int]:
        """Digits re-expanded using the repeating two-digit tail."""
        out = list(self.digits[:length])
        while len(out) < length:
            out.append(self.digits[-2] if (len(out) - len(self.digits)) % 2 == 0
                       else self.digits[-1])
        return out

    def to_dict(self) -> dict:
        return {"g_plus": self.g_plus, "digits": list(self.digits), "text": str(self)}


def _truncate(digits: list[int], min_tail: int) -> tuple | None:
    # Earliest start k after which the digits alternate with period 2.
    n = len(digits)
    k = n - 2
    while k > 0 and digits[k - 1] == digits[k + 1]:
        k -= 1
    if n - k < min_tail:
        return None
    return tuple(digits[: k + 2])


def genus(p: int, max_digits: int = 40, min_tail: int = 6) -> Genus:
    """Genus of an impartial position.

    Digit n is the misère Grundy value of p plus n copies of star(2). The
    list stops once the last `min_tail` digits alternate, and is truncated
    to end with one copy of the repeating pair.
    """
    if not is_impartial(p):
        raise NotImpartialError("genus is only defined for impartial positions")
    star2 = nimber(2)
    digits: list[int] = []
    for n in range(max_digits):
        digits.append(misere_grundy((p,) + (star2,) * n))
        if len(digits) >= min_tail + 2:
            tail = digits[-min_tail:]
            if all(tail[i] == tail[i % 2] for i in range(len(tail))):
                break
    result = _truncate(digits, min_tail)
    if result is None:
        raise GenusDiagnosticsError(f"no alternating tail within {max_digits} digits")
    return Genus(normal_grundy(p), result)


def nim_xor_two(n: int) -> int:
    return n ^ 2


def nim_heap_genus(n: int) -> Genus:
    """Closed-form genus of a nim heap of size n."""
    if n < 0:
        raise ValueError("heap size must be nonnegative")
    if n == 0:
        return Genus(0, (1, 2, 0))
    if n == 1:
        return Genus(1, (0, 3, 1))
    return Genus(n, (n, nim_xor_two(n)))


EXTRA_TAME = (Genus(0, (0, 2)), Genus(1, (1, 3)))

_tame_cache: dict[int, bool] = {}


def is_tame(p: int) -> bool:
    """Tame: genus is a nim-heap genus or one of two exceptions, recursively."""
    if not is_impartial(p):
        raise NotImpartialError("tameness is only defined for impartial positions")
    found = _tame_cache.get(p)
    if found is not None:
        return found
    g = genus(p)
    result = (g == nim_heap_genus(g.g_plus) or g in EXTRA_TAME) and all(
        is_tame(o) for o in left_options(p))
    _tame_cache[p] = result
    return result
