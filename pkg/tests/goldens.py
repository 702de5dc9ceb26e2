"""Frozen expected values shared by unit and acceptance tests."""

from misere.positions import ONE_BAR, ONE, STAR, ZERO, build, compile_sum, nimber

STAR2 = nimber(2)
DOUBLE_STAR2 = compile_sum([STAR2, STAR2])
LEFT_STAR_ZERO = build([STAR, ZERO], [])      # {*, 0 | .}
RIGHT_STAR_ZERO = build([], [STAR, ZERO])     # {. | *, 0}
BIG = build([DOUBLE_STAR2], [STAR2])          # {*2+*2 | *2}
BIG_BAR = build([STAR2], [DOUBLE_STAR2])      # {*2 | *2+*2}

# Positions of the outcome table, keyed by (misere, normal) outcome.
OUTCOME_TABLE = {
    ("N", "N"): STAR2,
    ("N", "P"): ZERO,
    ("N", "L"): LEFT_STAR_ZERO,
    ("N", "R"): RIGHT_STAR_ZERO,
    ("P", "N"): STAR,
    ("P", "P"): DOUBLE_STAR2,
    ("P", "L"): build([LEFT_STAR_ZERO], [STAR2]),
    ("P", "R"): build([STAR2], [RIGHT_STAR_ZERO]),
    ("L", "N"): build([BIG], [ZERO]),
    ("L", "P"): build([ZERO], [STAR2]),
    ("L", "L"): BIG,
    ("L", "R"): ONE_BAR,
    ("R", "N"): build([ZERO], [BIG]),
    ("R", "P"): build([STAR2], [ZERO]),
    ("R", "L"): ONE,
    ("R", "R"): BIG_BAR,
}

# Three printed cells cannot hold: hand analysis gives these outcomes instead
# (Left's only move in {0|*2} is to 0, after which Right is stuck and wins).
OUTCOME_TABLE_ACTUAL = {
    ("L", "P"): ("P", "L"),
    ("R", "N"): ("P", "L"),
    ("R", "P"): ("P", "R"),
}

# Corrected positions realizing the three intended outcome pairs.
OUTCOME_TABLE_CORRECTED = {
    ("L", "P"): build([], [STAR2]),
    ("R", "N"): build([ZERO], [BIG_BAR]),
    ("R", "P"): build([STAR2], []),
}


def rho_table(n: int, m: int) -> str:
    """Misere outcome of n* + m rho."""
    if m >= 4:
        return "R"
    even, odd = {0: ("N", "P"), 1: ("L", "N"), 2: ("P", "N"), 3: ("R", "N")}[m]
    return even if n % 2 == 0 else odd


def rho_rho_bar_table(n: int, m: int, l: int) -> str:
    """Misere outcome of n* + m rho + l conj(rho)."""
    if m <= l - 4:
        return "L"
    if m >= l + 4:
        return "R"
    return rho_table(n, (m - l) % 4)
