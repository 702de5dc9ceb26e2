import itertools
import random

import pytest

from misere import positions as pos
from misere.identities import (
    Move, StrategyState, TerminalSignal, initial_state, is_ab3, playout_matches_outcome,
    random_ab3, tweedle_move, tweedle_playout, verify_conjugate_pair_zero,
    verify_star_square_zero,
)
from misere.outcomes import Outcome, misere_outcome
from misere.positions import ETA, ONE, RHO, RHO_BAR, SIGMA, STAR, TAU, THETA, ZERO, left_move_to
from misere.quotient import PreconditionError, option_closure, verify_relation


def test_star_square_zero():
    assert verify_star_square_zero([ETA]).holds
    assert verify_star_square_zero([TAU]).holds
    assert verify_star_square_zero([RHO]).holds
    assert verify_star_square_zero([ONE, STAR]).context == (ONE,)
    ls = left_move_to(SIGMA)
    assert verify_star_square_zero([ls]).context == (ls,)
    le = left_move_to(ETA)
    assert verify_star_square_zero([le]).context == (le,)


def test_star_square_zero_needs_star():
    with pytest.raises(PreconditionError):
        verify_star_square_zero([ONE])


def test_nimber_doubles_are_p():
    for n in range(2, 7):
        assert misere_outcome([pos.nimber(n)] * 2) == Outcome.P
    assert misere_outcome([THETA, THETA]) == Outcome.P


def test_conjugate_pair_zero():
    assert verify_conjugate_pair_zero(RHO).holds
    assert verify_conjugate_pair_zero(THETA).context == ()
    assert verify_conjugate_pair_zero(pos.nimber(2)).context == ()


def test_random_ab3_sampler():
    rng = random.Random(5)
    for _ in range(20):
        p = random_ab3(rng)
        assert is_ab3(p) and pos.birthday(p) <= 6


def test_random_ab3_pairs_are_n():
    rng = random.Random(11)
    for _ in range(100):
        p = random_ab3(rng)
        assert misere_outcome([p, pos.conjugate(p)]) == Outcome.N


def test_ab3_with_short_replies_is_zero():
    # x^{LR} = x^{RL} = 0 with single options.
    samples = [RHO, TAU, pos.build([RHO], [RHO_BAR]), pos.build([TAU], [RHO_BAR])]
    closure = option_closure(samples + [pos.conjugate(p) for p in samples])
    checked = 0
    for xi in samples:
        lefts, rights = pos.left_options(xi), pos.right_options(xi)
        if all(pos.right_options(l) == (ZERO,) for l in lefts) and \
                all(pos.left_options(r) == (ZERO,) for r in rights):
            assert verify_relation((xi,), (), closure, 4).holds
            checked += 1
    assert checked >= 2


def test_strategy_first_moves():
    move, _ = tweedle_move(initial_state([TAU]))
    assert (move.before, move.after) == (TAU, STAR)
    move, _ = tweedle_move(initial_state([RHO]))
    assert (move.before, move.after) == (RHO_BAR, ZERO)


def test_strategy_terminal_signal():
    with pytest.raises(TerminalSignal):
        tweedle_move(StrategyState())


def test_strategy_rejects_non_ab3():
    with pytest.raises(PreconditionError):
        initial_state([THETA])


def test_strategy_mirrors_pair_moves():
    state = StrategyState(((TAU, TAU), (RHO, RHO_BAR)), "await_zero", (STAR,))
    reply, new = tweedle_move(state, Move(("pair", 1, 0), RHO, ZERO))
    assert (reply.before, reply.after) == (RHO_BAR, ZERO)
    assert new.phase == "await_zero" and len(new.pairs) == 1


@pytest.mark.parametrize("mover", ["Left", "Right"])
def test_playouts(mover):
    for comps in ([RHO], [TAU], [RHO, TAU]):
        result = tweedle_playout(comps, mover)
        assert result.win, (comps, mover)
        assert playout_matches_outcome(comps)


def test_playout_covers_sampled_sums():
    rng = random.Random(3)
    pool = [RHO, TAU]
    while len(pool) < 5:
        p = random_ab3(rng)
        if p not in pool:
            pool.append(p)
    for comps in itertools.combinations_with_replacement(pool, 2):
        for mover in ("Left", "Right"):
            assert tweedle_playout(list(comps), mover).win
