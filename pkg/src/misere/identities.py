"""Zero identities in misère quotients and a mirroring strategy for ab3 sums.

The strategy plays a sum of positions x_1 + conj(x_1) + ... as the first
player. It always reasons as Left; a Right strategist is handled by
conjugating the whole game and conjugating the moves back when reporting.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .outcomes import Outcome, make_sum, misere_outcome
from .positions import (
    STAR,
    STORE,
    ZERO,
    ab_rank,
    build,
    conjugate,
    format_position,
    structural_key,
)
from .quotient import PreconditionError, RelationCheck, option_closure, verify_relation


def verify_star_square_zero(generators: Sequence[int], context_bound: int = 6) -> RelationCheck:
    """Check star + star == 0 modulo cl(generators)."""
    base = option_closure(generators)
    if STAR not in base.base:
        raise PreconditionError("star is not in the option closure of the generators")
    return verify_relation((STAR, STAR), (), base, context_bound)


def verify_conjugate_pair_zero(p: int, context_bound: int = 6) -> RelationCheck:
    """Check p + conj(p) == 0 modulo cl(p, conj(p))."""
    base = option_closure([p, conjugate(p)])
    return verify_relation(make_sum((p, conjugate(p))), (), base, context_bound)


def random_ab3(rng: _random.Random, max_birthday: int = 6, attempts: int = 10000) -> int:
    """A random nonzero ab3 position (all-small, binary, short alternations)."""
    for _ in range(attempts):
        p = _random_binary_all_small(rng, max_birthday)
        if p != ZERO and ab_rank(p) is not None and ab_rank(p) <= 3:
            return p
    raise RuntimeError("could not sample an ab3 position")


def _random_binary_all_small(rng, depth):
    if depth <= 0 or rng.random() < 0.25:
        return ZERO
    left = _random_binary_all_small(rng, depth - 1)
    right = _random_binary_all_small(rng, depth - 1)
    return build([left], [right])


def is_ab3(p: int) -> bool:
    rank = ab_rank(p)
    return rank is not None and rank <= 3


# ---------------------------------------------------------------------------
# Strategy


class TerminalSignal(Exception):
    """The strategist has no move; under misère play that is a win."""


class StrategyError(RuntimeError):
    pass


# Phases of the component group the strategist is currently working on.
AWAIT_ZERO = "await_zero"    # (z,): Right will eventually move z to 0
CASE2 = "case2"              # (u, t): u has a Right option whose Left option is 0
CHAIN = "chain"              # (t,): answer t -> tR with tR -> tRL
CASE3 = "case3"              # (u, t): the only Right option of u is 0


@dataclass(frozen=True)
class StrategyState:
    """Balanced pairs (x, conj x) plus at most one group in progress.

    All positions are in the strategist's frame, where the strategist is Left.
    """

    pairs: tuple = ()
    phase: Optional[str] = None
    group: tuple = ()

    def components(self) -> list[int]:
        comps = [c for pair in self.pairs for c in pair]
        comps.extend(self.group)
        return [c for c in comps if c != ZERO]

    def as_sum(self) -> tuple:
        return make_sum(self.components())


@dataclass(frozen=True)
class Move:
    """A move replacing one component by an option; slots name the component."""

    slot: tuple  # ("pair", index, side) or ("group", index)
    before: int
    after: int

    def describe(self, conjugated: bool = False) -> str:
        f = (lambda p: format_position(conjugate(p))) if conjugated else format_position
        return f"{f(self.before)} -> {f(self.after)}"


def _norm_pairs(pairs) -> tuple:
    kept = [p for p in pairs if p[0] != ZERO]
    return tuple(sorted(kept, key=lambda pr: structural_key(pr[0])))


def initial_state(components: Sequence[int]) -> StrategyState:
    for c in components:
        if not is_ab3(c):
            raise PreconditionError(f"{format_position(c)} is not ab3")
    return StrategyState(_norm_pairs((c, conjugate(c)) for c in components))


def _only(options: tuple) -> Optional[int]:
    return options[0] if options else None


def _start_move(state: StrategyState) -> tuple[Move, StrategyState]:
    """Move from a balanced position: pick a case by scanning every component."""
    pairs = state.pairs
    if not pairs:
        raise TerminalSignal()
    slots = [(i, side) for i in range(len(pairs)) for side in (0, 1)]

    def rest_without(i):
        return pairs[:i] + pairs[i + 1:]

    # Case 1: a Left move straight to 0.
    for i, side in slots:
        c = pairs[i][side]
        if ZERO in STORE.left(c):
            twin = pairs[i][1 - side]
            new = StrategyState(rest_without(i), AWAIT_ZERO, (twin,))
            return Move(("pair", i, side), c, ZERO), new
    # Case 2: a Left move to u where u -> uR -> 0 is possible.
    for i, side in slots:
        c = pairs[i][side]
        u = _only(STORE.left(c))
        x = _only(STORE.right(u)) if u is not None else None
        if x is not None and ZERO in STORE.left(x):
            twin = pairs[i][1 - side]
            new = StrategyState(rest_without(i), CASE2, (u, twin))
            return Move(("pair", i, side), c, u), new
    # Case 3: every component now has cLR = 0.
    i, side = slots[0]
    c = pairs[i][side]
    u = _only(STORE.left(c))
    if u is None or STORE.right(u) != (ZERO,):
        raise StrategyError("component outside the ab3 case analysis")
    twin = pairs[i][1 - side]
    return Move(("pair", i, side), c, u), StrategyState(rest_without(i), CASE3, (u, twin))


def tweedle_move(state: StrategyState, opponent_move: Optional[Move] = None
                 ) -> tuple[Move, StrategyState]:
    """The strategist's reply to `opponent_move` (None for a fresh start).

    Raises TerminalSignal when the strategist has no move, which wins.
    """
    if opponent_move is None:
        if state.phase is not None:
            raise StrategyError("a fresh start needs a balanced state")
        return _start_move(state)
    kind = opponent_move.slot[0]
    after = opponent_move.after
    if kind == "pair":
        _, i, side = opponent_move.slot
        pair = state.pairs[i]
        if opponent_move.before != pair[side] or after not in STORE.right(pair[side]):
            raise StrategyError("opponent move does not match the state")
        mirror_before = pair[1 - side]
        mirror_after = conjugate(after)
        new_pairs = list(state.pairs)
        new_pairs[i] = (after, mirror_after) if side == 0 else (mirror_after, after)
        move = Move(("pair", i, 1 - side), mirror_before, mirror_after)
        return move, replace(state, pairs=_norm_pairs(new_pairs))
    if kind != "group":
        raise StrategyError(f"unknown slot {opponent_move.slot}")
    _, j = opponent_move.slot
    if opponent_move.before != state.group[j] or after not in STORE.right(state.group[j]):
        raise StrategyError("opponent move does not match the state")
    phase = state.phase
    balanced = StrategyState(state.pairs)
    if phase == AWAIT_ZERO:
        if after != ZERO:
            raise StrategyError("unexpected Right option in an awaited component")
        return _start_move(balanced)
    if phase in (CASE2, CASE3) and j == 1:
        # Right answered in the twin, recreating a conjugate pair.
        u = state.group[0]
        if after != conjugate(u):
            raise StrategyError("twin move does not recreate a pair")
        return _start_move(StrategyState(_norm_pairs(state.pairs + ((u, after),))))
    if phase == CASE2 and j == 0:
        # Right played u -> x; Left takes x -> 0 and then tracks the twin.
        x = after
        if ZERO not in STORE.left(x):
            raise StrategyError("expected a Left move to 0")
        twin = state.group[1]
        new = StrategyState(state.pairs, CHAIN, (twin,))
        return Move(("group", 0), x, ZERO), new
    if phase == CASE3 and j == 0:
        if after != ZERO:
            raise StrategyError("expected Right to move to 0")
        twin = state.group[1]
        t_left = _only(STORE.left(twin))
        if t_left is None:
            raise StrategyError("twin has no Left option")
        new = StrategyState(state.pairs, AWAIT_ZERO, (t_left,))
        return Move(("group", 1), twin, t_left), new
    if phase == CHAIN:
        y = after
        y_left = _only(STORE.left(y))
        if y_left is None:
            raise StrategyError("chained component has no Left option")
        new = StrategyState(state.pairs, AWAIT_ZERO, (y_left,))
        return Move(("group", 0), y, y_left), new
    raise StrategyError(f"no rule for phase {phase}")


def adversary_moves(state: StrategyState) -> list[Move]:
    """Every Right move available in the state, with its slot."""
    moves = []
    for i, pair in enumerate(state.pairs):
        for side in (0, 1):
            if side == 1 and pair[0] == pair[1]:
                continue  # symmetric pair: the second slot is a duplicate
            for opt in STORE.right(pair[side]):
                moves.append(Move(("pair", i, side), pair[side], opt))
    for j, comp in enumerate(state.group):
        for opt in STORE.right(comp):
            moves.append(Move(("group", j), comp, opt))
    return moves


@dataclass
class PlayoutResult:
    win: bool
    trace: list = field(default_factory=list)
    states_explored: int = 0

    def to_dict(self) -> dict:
        return {"result": "win" if self.win else "loss", "trace": self.trace,
                "states_explored": self.states_explored}


def tweedle_playout(components: Sequence[int], mover: str = "Left") -> PlayoutResult:
    """Play the strategy first on sum(c + conj c) against every Right defence.

    The result is a win only if every adversary line ends with the
    strategist unable to move (or the adversary forced to make the last move).
    """
    if mover not in ("Left", "Right"):
        raise ValueError("mover must be Left or Right")
    flipped = mover == "Right"
    frame = [conjugate(c) for c in components] if flipped else list(components)
    state = initial_state(frame)
    memo: dict = {}

    def after_strategist(st: StrategyState) -> bool:
        # Right to move in `st`.
        found = memo.get(st)
        if found is not None:
            return found
        memo[st] = True  # states cannot repeat along a line (birthdays drop)
        replies = adversary_moves(st)
        if not replies:
            result = False  # Right cannot move, so Right wins under misère play
        else:
            result = True
            for reply in replies:
                try:
                    _, nxt = tweedle_move(st, reply)
                except TerminalSignal:
                    continue
                if not after_strategist(nxt):
                    result = False
                    break
        memo[st] = result
        return result

    trace = []
    try:
        first, st = tweedle_move(state)
    except TerminalSignal:
        return PlayoutResult(True, ["strategist has no move"], 0)
    win = after_strategist(st)
    trace.append(f"{mover}: {first.describe(flipped)}")
    # Record one representative line: the adversary's first reply each time.
    other = "Right" if mover == "Left" else "Left"
    while True:
        replies = adversary_moves(st)
        if not replies:
            trace.append(f"{other}: no move")
            break
        reply = replies[0]
        trace.append(f"{other}: {reply.describe(flipped)}")
        try:
            mv, st = tweedle_move(st, reply)
        except TerminalSignal:
            trace.append(f"{mover}: no move")
            break
        trace.append(f"{mover}: {mv.describe(flipped)}")
    return PlayoutResult(win, trace, len(memo))


def conjugate_pair_sum(components: Sequence[int]) -> tuple:
    return make_sum([c for comp in components for c in (comp, conjugate(comp))])


def playout_matches_outcome(components: Sequence[int]) -> bool:
    """Cross-check: a win for either mover means the sum is an N position."""
    return misere_outcome(conjugate_pair_sum(components)) == Outcome.N
