import itertools

import pytest

from misere.heaps import (
    PreconditionError, SubtractionGameSpec, colex_vectors, compile_heap_position,
    detect_periodicity, heap_outcome, heap_quotient, outcome_table, vector_as_sum,
)
from misere.outcomes import misere_outcome
from misere.positions import ONE, STAR, ZERO
from misere.quotient import FINITE, NOT_STABILIZED

TWO_ONE = SubtractionGameSpec({1, 2}, {1}, 6)
ONE_TWO = SubtractionGameSpec({1}, {2}, 6)

TABLE_TWO_ONE = [  # rows x2 = 0..3, columns x1 = 0..3
    "NPNP",
    "NLNL",
    "LLLL",
    "LLLL",
]

TABLE_ONE_TWO = [  # rows x2 = 0..6, columns x1 = 0..7
    "NRRRRRRR",
    "PNRRRRRR",
    "RPNRRRRR",
    "NRPNRRRR",
    "PNRPNRRR",
    "RPNRPNRR",
    "NRPNRPNR",
]


def closed_form_one_two(x1, x2):
    if x1 > x2 or (x1 - x2) % 3 == 1:
        return "R"
    return "N" if (x1 - x2) % 3 == 0 else "P"


def test_single_heaps():
    assert [heap_outcome(TWO_ONE, (0,) * (n - 1) + (1,)).value for n in range(1, 7)] == \
        ["P", "N", "L", "L", "L", "L"]
    assert heap_outcome(TWO_ONE, ()).value == "N"


def test_vector_examples():
    assert heap_outcome(TWO_ONE, (0, 2)).value == "L"
    assert heap_outcome(ONE_TWO, (3,)).value == "R"
    assert heap_outcome(ONE_TWO, (1, 2)).value == "P"


def test_oversize_heap_rejected():
    with pytest.raises(PreconditionError):
        heap_outcome(SubtractionGameSpec({1}, {1}, 2), (0, 0, 1))


def test_colex_order():
    assert list(colex_vectors((1, 1))) == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_tables():
    assert ["".join(r) for r in outcome_table(TWO_ONE, (3, 3)).grid()] == TABLE_TWO_ONE
    assert ["".join(r) for r in outcome_table(ONE_TWO, (7, 6)).grid()] == TABLE_ONE_TWO
    assert outcome_table(TWO_ONE, ()).entries[0][1].value == "N"
    row = "".join(r for r in outcome_table(TWO_ONE, (7,)).grid()[0])
    assert row == "NPNPNPNP"


def test_three_coordinate_table():
    grid = outcome_table(TWO_ONE, (2, 3, 2)).grid()
    assert ["".join(r) for r in grid[:4]] == [r[:3] for r in TABLE_TWO_ONE]
    assert all(set(r) == {"L"} for r in grid[4:])


def test_closed_form_one_two():
    for x1 in range(13):
        for x2 in range(13):
            assert heap_outcome(ONE_TWO, (x1, x2)).value == closed_form_one_two(x1, x2)


def test_large_heaps_are_left_wins():
    for v in itertools.product(range(8), range(5), range(4), range(1, 4)):
        if sum((i + 1) * x for i, x in enumerate(v)) <= 14:
            assert heap_outcome(TWO_ONE, v).value == "L", v


def test_periodicity_two_one():
    rep = detect_periodicity(TWO_ONE, coordinates=3)
    assert rep.vectors(1) == ((0,), (2,))
    assert rep.vectors(2) == ((0, 2), (2, 1))
    assert rep.vectors(3) == ((0, 2, 1), (2, 1, 1))


def test_periodicity_reproduces_larger_prefix():
    rep = detect_periodicity(TWO_ONE, coordinates=3)
    for v in colex_vectors((9, 7, 5)):
        assert heap_outcome(TWO_ONE, v) == heap_outcome(TWO_ONE, rep.reduce(v)), v


def test_periodicity_one_two():
    rep = detect_periodicity(ONE_TWO)
    assert rep.vectors(1) == ((1,), (1,))
    second = rep.coordinates[1]
    assert second.status == "NOT_FOUND" and second.diagonal


@pytest.fixture(scope="module")
def two_one_quotient():
    return heap_quotient(TWO_ONE)


def test_two_one_quotient(two_one_quotient):
    q = two_one_quotient
    assert q.status == FINITE
    assert q.words == ["1", "a", "b", "ab", "b^2"]
    assert q.tetrapartition == {"L": ["ab", "b^2"], "R": [], "N": ["1", "b"], "P": ["a"]}
    assert ("a^2", "1") in q.relations and ("b^3", "b^2") in q.relations
    assert ("ab^2", "b^2") in q.relations
    for sym in "cdef":
        assert (sym, "b^2") in q.relations


def test_one_two_quotient():
    q = heap_quotient(ONE_TWO, max_size=2)
    assert q.status == NOT_STABILIZED
    assert q.relations == [("ab", "1")]
    powers = [q.class_of_vector[(m, 0)] for m in range(7)]
    assert len(set(powers)) == 7
    # b^m separates a^m from every higher power of a.
    for m in range(7):
        for k in range(m + 1, 7):
            assert q.outcome_fn((m, m)) != q.outcome_fn((k, m))


def test_trivial_heap_game_is_star():
    spec = SubtractionGameSpec({1}, {1}, 1)
    assert compile_heap_position(spec, 1) == STAR
    q = heap_quotient(spec, 4, 4)
    assert q.words == ["1", "a"] and q.relations == [("a^2", "1")]


def test_compiled_heaps():
    assert compile_heap_position(ONE_TWO, 1) == ONE
    assert compile_heap_position(TWO_ONE, 1) == STAR
    assert compile_heap_position(TWO_ONE, 0) == ZERO


@pytest.mark.parametrize("spec", [TWO_ONE, ONE_TWO])
def test_cross_oracle(spec):
    for v in colex_vectors((12, 6, 4, 3, 2, 2)):
        if sum((i + 1) * x for i, x in enumerate(v)) <= 12:
            assert heap_outcome(spec, v) == misere_outcome(vector_as_sum(spec, v)), v
