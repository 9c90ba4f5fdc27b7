"""Recursive-descent parser for class expressions and rational series.

Grammar (whitespace is insignificant)::

    sum      := product (('+' | '-') product)*
    product  := signed ('*' signed)*
    signed   := ('+' | '-') signed | power
    power    := atom ('^' exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ')'
    atom     := INT | 'L' | 'mu' '(' INT ')' | W<identifier> | '(' sum ')'
              | 'A(' nu ',' m ')/(1-A(' nu ',' m '))'      (series only)
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import L, RationalSeries, RingElem, mu
from .errors import ParseError, ZetaError

_WORD_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)")


def _tokenize(text):
    tokens = []
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _WORD_RE.match(text, pos)
        if m:
            kind = "int" if m.group(1) else "name"
            tokens.append((kind, m.group(0), pos))
            pos = m.end()
            continue
        ch = text[pos]
        if ch not in "+-*^/(),":
            raise ParseError(f"unexpected character {ch!r}", _location(text, pos))
        tokens.append(("op", ch, pos))
        pos += 1
    tokens.append(("end", "", n))
    return tokens


def _location(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return f"line {line}, column {col}"


class _Parser:
    def __init__(self, text, mode, names=None, one=None):
        self.text = text
        self.mode = mode
        self.names = names or {}
        self.one = one
        self.tokens = _tokenize(text)
        self.i = 0

    # token helpers

    def peek(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, _location(self.text, tok[2]))

    def accept(self, value):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        tok = self.peek()
        if not (tok[0] in ("op", "name", "int") and tok[1] == value):
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected {value!r}, found {found}")
        self.i += 1

    def expect_int(self, signed=False):
        neg = signed and self.accept("-")
        tok = self.peek()
        if tok[0] != "int":
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected integer, found {found}")
        self.i += 1
        return -int(tok[1]) if neg else int(tok[1])

    # grammar

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.sum()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def sum(self):
        value = self.product()
        while True:
            if self.accept("+"):
                value = value + self.product()
            elif self.accept("-"):
                value = value - self.product()
            else:
                return value

    def product(self):
        value = self.signed()
        while self.accept("*"):
            value = value * self.signed()
        return value

    def signed(self):
        if self.accept("-"):
            return -self.signed()
        if self.accept("+"):
            return self.signed()
        return self.power()

    def power(self):
        value = self.atom()
        tok = self.peek()
        if self.accept("^"):
            if self.accept("("):
                n = self.expect_int(signed=True)
                self.expect(")")
            else:
                n = self.expect_int(signed=True)
            try:
                value = value ** n
            except (ZetaError, ZeroDivisionError) as exc:
                raise self.error(str(exc), tok) from None
        return value

    def lift(self, n):
        if self.mode == "ring":
            return RingElem.const(n)
        if self.mode == "series":
            return RationalSeries.constant(n)
        return self.one * n

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.i += 1
            return self.lift(int(tok[1]))
        if self.accept("("):
            value = self.sum()
            self.expect(")")
            return value
        if tok[0] == "name":
            self.i += 1
            return self.named(tok)
        if tok[0] == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok[1]!r}")

    def named(self, tok):
        name = tok[1]
        if self.mode == "target":
            if name not in self.names:
                raise self.error(f"unknown variable {name!r}", tok)
            return self.names[name]
        if name == "L":
            value = L
        elif name == "mu":
            self.expect("(")
            k = self.expect_int()
            if k < 1:
                raise self.error("mu(k) needs k >= 1", tok)
            self.expect(")")
            value = mu(k)
        elif name.startswith("W") and len(name) > 1:
            value = RingElem.var(name)
        elif name == "A" and self.mode == "series":
            return self.factor(tok)
        else:
            raise self.error(f"unknown symbol {name!r}", tok)
        if self.mode == "series":
            return RationalSeries.constant(value)
        return value

    def _pair(self):
        self.expect("(")
        nu = self.expect_int(signed=True)
        self.expect(",")
        m = self.expect_int(signed=True)
        self.expect(")")
        return nu, m

    def factor(self, tok):
        nu, m = self._pair()
        self.expect("/")
        self.expect("(")
        t1 = self.peek()
        if self.expect_int() != 1:
            raise self.error("expected '1'", t1)
        self.expect("-")
        self.expect("A")
        t2 = self.peek()
        if self._pair() != (nu, m):
            raise self.error("factor denominator does not match numerator", t2)
        self.expect(")")
        if m < 1:
            raise self.error("finite-type: m must be >= 1", tok)
        return RationalSeries.factor(nu, m)


def parse_ring(text: str) -> RingElem:
    """Parse a class expression such as ``mu(2)*(L - 1) + W1``."""
    return _Parser(text, "ring").parse()


def parse_series(text: str) -> RationalSeries:
    return _Parser(text, "series").parse()


def parse_target(text: str, names: dict, one=Fraction(1)):
    """Parse a polynomial in caller-supplied variables (e.g. ``u``, ``v``)."""
    return _Parser(text, "target", names=names, one=one).parse()
