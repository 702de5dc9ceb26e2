"""Text syntax for positions and disjunctive sums.

    expr := term ('+' term)*
    term := [INT '*'] atom
    atom := '0' | NAME | 'star(' INT ')' | 'tau(' INT ')'
          | ('conj' | 'L' | 'R' | 'adj') '(' expr ')'
          | ('and' | 'or' | 'disand' | 'disor' | 'seq' | 'ord') '(' expr ',' expr ')'
          | '{' [expr (',' expr)*] '|' [expr (',' expr)*] '}'

Whitespace is ignored. Where a single position is needed (inside braces or
as an argument), a sum is compiled into one game tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import positions as pos
from .outcomes import SumPosition, make_sum

NAMES = {
    "zero": pos.ZERO,
    "star": pos.STAR,
    "one": pos.ONE,
    "one_bar": pos.ONE_BAR,
    "sigma": pos.SIGMA,
    "sigma_bar": pos.SIGMA_BAR,
    "rho": pos.RHO,
    "rho_bar": pos.RHO_BAR,
    "tau": pos.TAU,
    "eta": pos.ETA,
    "theta": pos.THETA,
}

UNARY = {
    "conj": pos.conjugate,
    "L": pos.left_move_to,
    "R": pos.right_move_to,
    "adj": pos.adjoint,
}

BINARY = {
    "and": pos.SumKind.AND,
    "or": pos.SumKind.OR,
    "disand": pos.SumKind.DISAND,
    "disor": pos.SumKind.DISOR,
    "seq": pos.SumKind.SEQJOIN,
    "ord": pos.SumKind.ORDINAL,
}

GRAMMAR = __doc__.split("\n\n")[1]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExpressionError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass
class _Token:
    kind: str  # int, name, sym, end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m.group(0).strip() == "":
            break
        if m.group(1):
            tokens.append(_Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(_Token("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "{}|(),+*":
                raise ExpressionError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(_Token("sym", ch, m.start(3)))
        i = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym: str) -> _Token:
        tok = self.take()
        if tok.kind != "sym" or tok.text != sym:
            found = tok.text or "end of input"
            raise ExpressionError(f"expected {sym!r}, found {found!r}", tok.offset)
        return tok

    def at(self, sym: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.text == sym

    def expr(self) -> list[int]:
        comps = self.term()
        while self.at("+"):
            self.take()
            comps += self.term()
        return comps

    def term(self) -> list[int]:
        tok = self.peek()
        nxt = self.tokens[min(self.i + 1, len(self.tokens) - 1)]
        if tok.kind == "int" and nxt.kind == "sym" and nxt.text == "*":
            self.take()
            self.take()
            count = int(tok.text)
            return [self.atom()] * count
        return [self.atom()]

    def single(self) -> int:
        return pos.compile_sum(self.expr())

    def atom(self) -> int:
        tok = self.take()
        if tok.kind == "int":
            if tok.text != "0":
                raise ExpressionError("only 0 is a numeric position; use k*term for multiples",
                                      tok.offset)
            return pos.ZERO
        if tok.kind == "sym" and tok.text == "{":
            left = self.side("|")
            self.expect("|")
            right = self.side("}")
            self.expect("}")
            return pos.build(left, right)
        if tok.kind != "name":
            raise ExpressionError(f"unexpected {tok.text or 'end of input'!r}", tok.offset)
        name = tok.text
        if name in ("star", "tau") and self.at("("):
            self.take()
            k = self.take()
            if k.kind != "int":
                raise ExpressionError("expected an integer index", k.offset)
            self.expect(")")
            n = int(k.text)
            try:
                return pos.named("star_n" if name == "star" else "tau_n", n)
            except ValueError as err:
                raise ExpressionError(str(err), k.offset) from None
        if name in NAMES:
            return NAMES[name]
        if name in UNARY:
            self.expect("(")
            arg = self.single()
            self.expect(")")
            return UNARY[name](arg)
        if name in BINARY:
            self.expect("(")
            a = self.single()
            self.expect(",")
            b = self.single()
            self.expect(")")
            return pos.alt_sum(BINARY[name], a, b)
        raise ExpressionError(f"unknown name {name!r}", tok.offset)

    def side(self, stop: str) -> list[int]:
        items = []
        if self.at(stop):
            return items
        items.append(self.single())
        while self.at(","):
            self.take()
            items.append(self.single())
        return items


def parse_expression(text: str) -> SumPosition:
    """Parse text into a canonical disjunctive sum."""
    parser = _Parser(text)
    comps = parser.expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ExpressionError(f"unexpected {tok.text!r}", tok.offset)
    return make_sum(comps)


def parse_position(text: str) -> int:
    """Parse text into one position, compiling a sum into a single game tree."""
    return pos.compile_sum(parse_expression(text))


def format_expression(s: SumPosition) -> str:
    from .quotient import format_sum

    return format_sum(make_sum(s))
