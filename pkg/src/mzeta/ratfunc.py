"""Exact rational functions over Q, backed by sympy's sparse fraction fields."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from sympy.polys.domains import QQ
from sympy.polys.fields import field

S_FIELD, S = field("s", QQ)
UV_FIELD, U, V = field("u,v", QQ)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _text(poly) -> str:
    return str(poly.as_expr()).replace("**", "^")


class RationalFunction:
    """An element of Q(s) or Q(u, v).

    The numerator and denominator are scaled to integer coefficients with no
    common content, and the leading denominator coefficient is positive.
    """

    __slots__ = ("value", "numerator", "denominator")

    def __init__(self, value):
        self.value = value
        num, den = value.numer, value.denom
        coeffs = [_frac(c) for c in list(num.values()) + list(den.values())]
        scale = Fraction(reduce(lcm, (c.denominator for c in coeffs), 1))
        content = reduce(gcd, (int(c * scale) for c in coeffs), 0) or 1
        scale /= content
        if den.LC < 0:
            scale = -scale
        k = QQ(scale.numerator, scale.denominator)
        self.numerator = num * k
        self.denominator = den * k

    @property
    def field(self):
        return self.value.field

    def is_zero(self) -> bool:
        return not self.numerator

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        num = _text(self.numerator) if self.numerator else "0"
        if self.denominator == 1:
            return num
        if len(self.numerator) > 1:
            num = f"({num})"
        den = _text(self.denominator)
        if len(self.denominator) > 1 or not self.denominator.is_monomial or self.denominator.LC != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RationalFunction({self})"

    def __call__(self, *point):
        """Exact value at a rational point (one coordinate per field generator)."""
        pt = [Fraction(x) for x in point]

        def ev(p):
            total = Fraction(0)
            for monom, c in p.terms():
                t = _frac(c)
                for x, e in zip(pt, monom):
                    t *= x ** e
                total += t
            return total

        d = ev(self.denominator)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return ev(self.numerator) / d

    def pole_orders(self) -> dict:
        """Rational roots of the (univariate) denominator with multiplicities."""
        if len(self.field.gens) != 1:
            raise ValueError("poles are defined here for univariate functions only")
        out = {}
        _, factors = self.denominator.factor_list()
        for f, mult in factors:
            if f.degree() == 1:
                a = _frac(f.coeff(f.ring.gens[0]))
                b = _frac(f.coeff(1))
                root = -b / a
                out[root] = out.get(root, 0) + mult
        return out

    def poles(self) -> list:
        return sorted(self.pole_orders())
