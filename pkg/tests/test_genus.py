import pytest

from misere.genus import (
    Genus, NotImpartialError, genus, is_tame, mex, misere_grundy, nim_heap_genus, normal_grundy,
)
from misere.outcomes import Outcome, misere_outcome, normal_outcome
from misere.positions import RHO, STAR, ZERO, build, compile_sum, nimber, positions_born_by


def test_mex():
    assert mex({1, 2, 4, 6}) == 0
    assert mex(set()) == 0
    assert mex({0, 1, 2}) == 3


def test_genus_examples():
    assert str(genus(ZERO)) == "0^{120}"
    assert str(genus(STAR)) == "1^{031}"
    assert str(genus(nimber(2))) == "2^{20}"


def test_genus_formatting_with_large_digits():
    assert str(nim_heap_genus(8)) == "8^{8,10}"
    assert str(nim_heap_genus(5)) == "5^{57}"


def test_genus_expand():
    assert genus(ZERO).expand(6) == [1, 2, 0, 2, 0, 2]
    assert Genus(2, (2, 0)).expand(3) == [2, 0, 2]


@pytest.mark.parametrize("n", range(9))
def test_nim_heaps_match_closed_form(n):
    assert genus(nimber(n)) == nim_heap_genus(n)


def test_genus_requires_impartial():
    with pytest.raises(NotImpartialError):
        genus(RHO)
    with pytest.raises(NotImpartialError):
        is_tame(RHO)


def test_tame_examples():
    assert is_tame(ZERO) and is_tame(STAR) and is_tame(nimber(2))


def _impartial_corpus():
    corpus = [p for p in positions_born_by(2) if build_is_impartial(p)]
    star2 = nimber(2)
    corpus += [compile_sum([star2, star2]), compile_sum([nimber(3), STAR]),
               build([nimber(2), nimber(3)], [nimber(2), nimber(3)])]
    return corpus


def build_is_impartial(p):
    from misere.positions import is_impartial
    return is_impartial(p)


@pytest.mark.parametrize("p", _impartial_corpus())
def test_grundy_values_agree_with_outcomes(p):
    assert (misere_grundy(p) == 0) == (misere_outcome(p) == Outcome.P)
    assert (normal_grundy(p) == 0) == (normal_outcome(p) == Outcome.P)
    assert genus(p).g_plus == normal_grundy(p)
    assert genus(p).digits[0] == misere_grundy(p)


def test_double_star_two_is_a_tame_exception():
    # *2 + *2 has genus 0^{02}, one of the tame exceptions.
    g = genus(compile_sum([nimber(2), nimber(2)]))
    assert str(g) == "0^{02}"
    assert is_tame(compile_sum([nimber(2), nimber(2)]))
