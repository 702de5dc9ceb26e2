import pytest
from hypothesis import given, settings

from misere import positions as pos
from misere.positions import (
    ETA, ONE, ONE_BAR, RHO, RHO_BAR, SIGMA, STAR, TAU, THETA, ZERO,
    SumKind, adjoint, alt_sum, build, conjugate, named, profile,
)
from strategies import all_small_positions, positions


def test_build_interns_and_dedups():
    assert build([], []) == ZERO
    assert build([ZERO], [ZERO]) == STAR
    assert build([ZERO, ZERO], [ZERO]) == STAR


def test_build_rejects_unknown_ids():
    with pytest.raises(pos.StoreIntegrityError):
        build([10 ** 9], [])


def test_named_positions():
    assert named("rho") == build([STAR], [ZERO])
    assert named("star_n", 1) == STAR
    assert named("tau_n", 0) == STAR
    assert named("tau_n", 1) == TAU
    assert named("eta") == build([build([ZERO], [build([STAR], [ZERO])])], [STAR])
    assert named("theta") == build([build([STAR], [RHO])], [build([RHO_BAR], [STAR])])
    star2 = named("star_n", 2)
    assert pos.left_options(star2) == tuple(sorted((ZERO, STAR)))


@pytest.mark.parametrize("name,k", [("nope", None), ("star_n", 0), ("tau_n", -1), ("rho", 2)])
def test_named_errors(name, k):
    with pytest.raises(ValueError):
        named(name, k)


def test_conjugates():
    assert conjugate(ONE) == ONE_BAR
    assert conjugate(STAR) == STAR
    assert conjugate(RHO) == RHO_BAR


def test_adjoint_examples():
    assert adjoint(ZERO) == STAR
    assert adjoint(STAR) == TAU
    assert adjoint(ONE) == RHO_BAR
    assert adjoint(SIGMA) == build([ZERO], [TAU])
    assert adjoint(RHO) == build([STAR], [TAU])


def test_profiles():
    p = profile(STAR)
    assert (p.birthday, p.impartial, p.all_small, p.binary, p.ab_rank) == (1, True, True, True, 1)
    p = profile(RHO)
    assert (p.birthday, p.impartial, p.all_small, p.binary, p.ab_rank) == (2, False, True, True, 2)
    assert profile(THETA).ab_rank == 4
    assert profile(ETA).ab_rank == 4
    assert profile(TAU).ab_rank == 2
    assert profile(ONE).ab_rank is None and profile(ONE).left_end is False
    assert profile(ONE).right_end is True
    assert [profile(pos.tau_power(n)).ab_rank for n in range(5)] == [1, 2, 3, 4, 5]


def test_alt_sum_examples():
    assert alt_sum(SumKind.AND, ZERO, ZERO) == ZERO
    assert alt_sum(SumKind.ORDINAL, ZERO, ZERO) == ZERO
    seq = alt_sum(SumKind.SEQJOIN, ZERO, STAR)
    assert pos.left_options(seq) == (ZERO,) and pos.right_options(seq) == (ZERO,)
    with pytest.raises(ValueError):
        alt_sum(SumKind.DISJUNCTIVE, STAR, STAR)


def test_or_ends_when_mover_stuck_in_a_component():
    # After Left moves * v * to 0 v *, Right has no move in the first component.
    compound = alt_sum(SumKind.OR, STAR, STAR)
    for opt in pos.left_options(compound):
        assert pos.right_options(opt) == ()


def test_disand_discards_stuck_component():
    # Right cannot move in 1, so 1 disand * plays as * for Right.
    compound = alt_sum(SumKind.DISAND, ONE, STAR)
    assert pos.right_options(compound) == (ZERO,)
    assert pos.left_options(compound) == (alt_sum(SumKind.DISAND, ZERO, ZERO),)


def test_ordinal_sum_options():
    compound = alt_sum(SumKind.ORDINAL, ONE, STAR)
    assert set(pos.left_options(compound)) == {ZERO, ONE}
    assert set(pos.right_options(compound)) == {ONE}


def test_to_dot():
    assert pos.to_dot(ZERO).count("->") == 0
    dot = pos.to_dot(STAR)
    assert dot.count("[label=\"L\"]") == 1 and dot.count("[label=\"R\"]") == 1
    assert dot.count("label=") == 4  # two nodes, two edges
    assert pos.to_dot(TAU).count("->") == 4
    assert pos.to_dot(TAU) == pos.to_dot(TAU)


def test_format_folds_names():
    assert pos.format_position(STAR) == "star"
    assert pos.format_position(build([STAR], [ZERO])) == "rho"
    assert pos.format_position(ETA) == "eta"
    assert pos.format_position(build([ZERO, ONE], [])) == "{0,one|}"


def test_compile_sum_matches_tree():
    assert pos.compile_sum([STAR, STAR]) == TAU
    assert pos.compile_sum([]) == ZERO
    assert pos.compile_sum([RHO]) == RHO


def test_born_by_counts():
    assert len(pos.positions_born_by(0)) == 1
    assert len(pos.positions_born_by(1)) == 4
    assert len(pos.positions_born_by(2)) == 256


@settings(max_examples=200, deadline=None)
@given(positions())
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == p
    assert pos.left_options(conjugate(p)) == tuple(
        sorted(conjugate(r) for r in pos.right_options(p)))


@settings(max_examples=200, deadline=None)
@given(positions())
def test_interning_is_structural(p):
    rebuilt = build(list(pos.left_options(p)), list(reversed(pos.right_options(p))))
    assert rebuilt == p


@settings(max_examples=200, deadline=None)
@given(positions())
def test_birthday_decreases_along_edges(p):
    for o in pos.left_options(p) + pos.right_options(p):
        assert pos.birthday(o) < pos.birthday(p)


@settings(max_examples=200, deadline=None)
@given(positions())
def test_profile_invariants(p):
    prof = profile(p)
    if prof.impartial:
        assert prof.all_small
    assert (prof.ab_rank is not None) == (prof.all_small and prof.binary)


@settings(max_examples=150, deadline=None)
@given(all_small_positions(), all_small_positions())
def test_sum_of_all_small_is_all_small(a, b):
    assert pos.is_all_small(pos.compile_sum([a, b]))


@settings(max_examples=150, deadline=None)
@given(all_small_positions())
def test_ab_rank_is_monotone(p):
    rank = pos.ab_rank(p)
    if rank is None:
        return
    for o in pos.left_options(p) + pos.right_options(p):
        assert pos.ab_rank(o) <= rank
