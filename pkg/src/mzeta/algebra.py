"""Exact arithmetic for classes in the free model of the localized Grothendieck ring.

A :class:`RingElem` is a Laurent polynomial in ``L`` with integer coefficients
and with opaque commuting symbols ``mu(k)`` (the class of the group of k-th
roots of unity) and ``W<name>`` (any other class supplied by the user).  No
relations hold among the symbols.  The series variable ``T`` may also occur
internally, when a rational series is brought over a common denominator.

A :class:`RationalSeries` is a finite sum of ``coeff * prod A/(1-A)`` with
``A = L^-nu * T^m``, each factor identified by its :class:`FactorKey`.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .errors import AlgebraError, LimitError, NonInvertibleError, SubstitutionError

L_NAME = "L"
T_NAME = "T"

_MU_RE = re.compile(r"mu\(([1-9][0-9]*)\)\Z")
_W_RE = re.compile(r"W[A-Za-z0-9_]+\Z")

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by symbol_key


@lru_cache(maxsize=None)
def symbol_key(name: str) -> tuple:
    """Sort key for variable names: mu(k) by k, then W symbols, then T, then L."""
    m = _MU_RE.match(name)
    if m:
        return (0, int(m.group(1)), "")
    if name == T_NAME:
        return (2, 0, "")
    if name == L_NAME:
        return (3, 0, "")
    return (1, 0, name)


def is_mu(name: str) -> bool:
    return _MU_RE.match(name) is not None


def mu_order(name: str) -> int:
    return int(_MU_RE.match(name).group(1))


def is_w(name: str) -> bool:
    return _W_RE.match(name) is not None


def check_symbol(name: str) -> str:
    if name in (L_NAME, T_NAME) or is_mu(name) or is_w(name):
        return name
    raise AlgebraError(f"invalid symbol name {name!r}")


@lru_cache(maxsize=1 << 18)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        e2 = d.get(name, 0) + e
        if e2:
            d[name] = e2
        else:
            del d[name]
    return tuple(sorted(d.items(), key=lambda t: symbol_key(t[0])))


def _mono_pow(a: Monomial, n: int) -> Monomial:
    if n == 0:
        return ()
    return tuple((name, e * n) for name, e in a)


def _term_sort_key(mono: Monomial):
    syms = tuple((symbol_key(n), -e) for n, e in mono if n not in (L_NAME, T_NAME))
    d = dict(mono)
    return (syms, -d.get(T_NAME, 0), -d.get(L_NAME, 0))


class RingElem:
    """Immutable element of Z[L, L^-1, T, mu(k), W...] in canonical sparse form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for mono, c in items:
            mono = tuple(sorted(((check_symbol(n), int(e)) for n, e in mono if e),
                                key=lambda t: symbol_key(t[0])))
            for n, e in mono:
                if e < 0 and n != L_NAME:
                    raise AlgebraError(f"negative exponent on {n}")
            acc[mono] = acc.get(mono, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "RingElem":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def const(cls, n: int) -> "RingElem":
        return cls._raw({(): int(n)} if n else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "RingElem":
        return cls({((name, exp),): 1})

    @classmethod
    def coerce(cls, x) -> "RingElem":
        if isinstance(x, RingElem):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RingElem")

    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(monomial, coefficient) pairs in canonical order."""
        return [(m, self._terms[m]) for m in sorted(self._terms, key=_term_sort_key)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def variables(self) -> set:
        return {n for mono in self._terms for n, _ in mono}

    def symbols(self) -> set:
        """Opaque symbols (everything except L and T)."""
        return {n for n in self.variables() if n not in (L_NAME, T_NAME)}

    def min_exponent(self, name: str) -> int:
        return min((dict(m).get(name, 0) for m in self._terms), default=0)

    def max_exponent(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (mono, c), = self._terms.items()
        return c in (1, -1) and all(n == L_NAME for n, _ in mono)

    def shift_L(self, k: int) -> "RingElem":
        if k == 0:
            return self
        lk = ((L_NAME, k),)
        return RingElem._raw({_mono_mul(m, lk): c for m, c in self._terms.items()})

    # arithmetic

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElem.const(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return RingElem._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, (RingElem, int)):
            return NotImplemented
        other = RingElem.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return RingElem._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (RingElem, int)):
            return NotImplemented
        return self + (-RingElem.coerce(other))

    def __rsub__(self, other):
        return RingElem.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return RingElem._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, RingElem):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return RingElem._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return poly_pow(self, n)

    # display

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(self.items()):
            body = format_monomial(mono)
            a = abs(c)
            if not body:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            if i == 0:
                out.append(("-" if c < 0 else "") + text)
            else:
                out.append((" - " if c < 0 else " + ") + text)
        return "".join(out)

    def __repr__(self):
        return f"RingElem({str(self)!r})"

    def is_monomial(self) -> bool:
        return len(self._terms) == 1


def format_monomial(mono: Monomial) -> str:
    parts = []
    for name, e in mono:
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


ZERO = RingElem.const(0)
ONE = RingElem.const(1)
L = RingElem.var(L_NAME)
T = RingElem.var(T_NAME)


def mu(k: int) -> RingElem:
    if k < 1:
        raise AlgebraError(f"mu({k}): order must be a positive integer")
    return RingElem.var(f"mu({k})")


def W(name: str) -> RingElem:
    if not name.startswith("W"):
        name = "W" + name
    return RingElem.var(name)


def poly_arith(a: RingElem, b: RingElem, op: str) -> RingElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_pow(a: RingElem, n: int) -> RingElem:
    """Exact power; negative ``n`` only for the units +-L^k."""
    a = RingElem.coerce(a)
    if n < 0:
        if not a.is_unit():
            raise NonInvertibleError(str(a))
        (mono, c), = a._terms.items()
        return RingElem._raw({_mono_pow(mono, n): c if n % 2 else 1})
    if len(a._terms) == 1:
        (mono, c), = a._terms.items()
        return RingElem._raw({_mono_pow(mono, n): c ** n})
    result, base = ONE, a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def _is_polynomial_ring_element(x) -> bool:
    # sympy PolyElement: not a field, so only its units may be inverted
    return type(x).__name__ == "PolyElement"


def poly_substitute(a: RingElem, table: Mapping, one=1):
    """Evaluate ``a`` by replacing each variable through ``table``.

    Values may be ints, Fractions or sympy ring/field elements.  ``one`` fixes
    the target of the empty monomial, so that the zero polynomial maps into the
    right domain.
    """
    total = one * 0
    for mono, c in RingElem.coerce(a)._terms.items():
        val = one
        for name, e in mono:
            if name not in table:
                raise SubstitutionError(f"no substitution given for symbol {name}")
            x = table[name]
            if isinstance(x, int) and not isinstance(x, bool):
                x = Fraction(x)
            if e < 0:
                if x == 0:
                    raise NonInvertibleError(f"image of {name} is zero")
                if _is_polynomial_ring_element(x):
                    raise NonInvertibleError(f"image of {name} in a polynomial ring")
            val = val * x ** e
        total = total + c * val
    return total


class FactorKey(NamedTuple):
    """The factor A/(1-A) with A = L^-nu T^m."""

    nu: int
    m: int

    def monomial(self) -> RingElem:
        """A itself, as an element of Z[L^+-1, T]."""
        return RingElem._raw({_mono_mul(((L_NAME, -self.nu),) if self.nu else (),
                                        ((T_NAME, self.m),) if self.m else ()): 1})

    def __str__(self):
        return f"A({self.nu},{self.m})/(1-A({self.nu},{self.m}))"


class RationalTerm(NamedTuple):
    coeff: RingElem
    factors: tuple  # sorted tuple of FactorKey


def _factors(fs: Iterable) -> tuple:
    return tuple(sorted(FactorKey(int(f[0]), int(f[1])) for f in fs))


class RationalSeries:
    """Finite sum of ``coeff * prod_{f} A_f/(1-A_f)``, merged by factor multiset.

    ``==`` is structural (same canonical terms).  Semantic equality of the
    represented rational functions is :func:`series_equal`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable = ()):
        acc: dict = {}
        for t in terms:
            coeff, fs = t
            key = _factors(fs)
            acc[key] = acc.get(key, ZERO) + RingElem.coerce(coeff)
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "RationalSeries":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c) -> "RationalSeries":
        return cls([(c, ())])

    @classmethod
    def factor(cls, nu: int, m: int, coeff=1) -> "RationalSeries":
        return cls([(coeff, [(nu, m)])])

    @classmethod
    def coerce(cls, x) -> "RationalSeries":
        if isinstance(x, RationalSeries):
            return x
        return cls.constant(RingElem.coerce(x))

    @property
    def terms(self) -> list:
        """Terms in canonical order."""
        return [RationalTerm(self._terms[k], k)
                for k in sorted(self._terms, key=lambda k: (k, str(self._terms[k])))]

    def coefficient(self, factors: Iterable) -> RingElem:
        return self._terms.get(_factors(factors), ZERO)

    def factor_sets(self) -> list:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not k for k in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, RingElem)):
            other = RationalSeries.coerce(other)
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, (RationalSeries, RingElem, int)):
            return NotImplemented
        return series_add(self, RationalSeries.coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (RationalSeries, RingElem, int)):
            return NotImplemented
        return self + (-RationalSeries.coerce(other))

    def __rsub__(self, other):
        return RationalSeries.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (RingElem, int)):
            c = RingElem.coerce(other)
            return RationalSeries._raw({k: p for k, v in self._terms.items()
                                        if (p := v * c)})
        if not isinstance(other, RationalSeries):
            return NotImplemented
        out: dict = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = tuple(sorted(k1 + k2))
                out[k] = out.get(k, ZERO) + v1 * v2
        return RationalSeries._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_constant():
                raise NonInvertibleError("rational series with factors")
            return RationalSeries.constant(poly_pow(self.coefficient(()), n))
        result = RationalSeries.constant(ONE)
        for _ in range(n):
            result = result * self
        return result

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"RationalSeries({format_series(self)!r})"


def _format_coeff(c: RingElem) -> str:
    if c.is_monomial():
        (mono, k), = c._terms.items()
        if k > 0:
            return str(c)
    return f"({c})"


def format_series(z: RationalSeries) -> str:
    """Canonical text: one term per line, ``coeff * A(nu,m)/(1-A(nu,m)) * ...``."""
    if z.is_zero():
        return "0"
    lines = []
    for term in z.terms:
        parts = [_format_coeff(term.coeff)] + [str(f) for f in term.factors]
        lines.append(" * ".join(parts))
    return "\n+ ".join(lines)


def series_add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    out = dict(a._terms)
    for k, v in b._terms.items():
        s = out.get(k, ZERO) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return RationalSeries._raw(out)


def series_numerator(z: RationalSeries) -> tuple:
    """Bring ``z`` over D = prod (1-A_k)^e_k (e_k the largest multiplicity of k).

    Returns ``(numerator, denominator)`` with the numerator in Z[L^+-1, T,
    symbols] and the denominator a Counter of FactorKey.
    """
    denom: Counter = Counter()
    for key in z._terms:
        for k, n in Counter(key).items():
            if k.m <= 0:
                raise AlgebraError(f"factor {k} has non-positive multiplicity")
            denom[k] = max(denom[k], n)
    one_minus = {k: ONE - k.monomial() for k in denom}
    powers: dict = {}

    def power(k, n):
        if (k, n) not in powers:
            powers[(k, n)] = poly_pow(one_minus[k], n)
        return powers[(k, n)]

    num = ZERO
    for key, coeff in z._terms.items():
        counts = Counter(key)
        t = coeff
        for k, n in counts.items():
            t = t * poly_pow(k.monomial(), n)
        for k, e in denom.items():
            rest = e - counts.get(k, 0)
            if rest:
                t = t * power(k, rest)
        num = num + t
    return num, denom


def series_difference_numerator(a: RationalSeries, b: RationalSeries) -> RingElem:
    """Numerator of a - b over the common denominator; zero iff a and b agree."""
    return series_numerator(a - b)[0]


def series_equal(a: RationalSeries, b: RationalSeries) -> bool:
    return series_difference_numerator(a, b).is_zero()


def series_limit(z: RationalSeries) -> RingElem:
    """The M-linear limit T -> infinity: each factor A/(1-A) tends to -1."""
    total = ZERO
    for key, coeff in z._terms.items():
        for k in key:
            if k.m <= 0:
                raise LimitError(f"limit undefined for non-positive multiplicity in {k}")
        total = total + (coeff if len(key) % 2 == 0 else -coeff)
    return total


def series_evaluate(z: RationalSeries, values: Mapping) -> Fraction:
    """Numeric value of ``z`` at exact rational L, T and symbol values."""
    Lv = Fraction(values[L_NAME])
    Tv = Fraction(values[T_NAME])
    total = Fraction(0)
    for key, coeff in z._terms.items():
        v = Fraction(poly_substitute(coeff, values, Fraction(1)))
        for k in key:
            A = Lv ** (-k.nu) * Tv ** k.m
            v *= A / (1 - A)
        total += v
    return total


def exact_divide(numerator: RingElem, divisor: RingElem):
    """Exact quotient in Z[L^+-1, T, symbols], or None when not divisible."""
    numerator = RingElem.coerce(numerator)
    divisor = RingElem.coerce(divisor)
    if divisor.is_zero():
        raise ZeroDivisionError("exact_divide by zero")
    if numerator.is_zero():
        return ZERO
    nshift = numerator.min_exponent(L_NAME)
    dshift = divisor.min_exponent(L_NAME)
    f = numerator.shift_L(-nshift)
    g = divisor.shift_L(-dshift)
    names = sorted(f.variables() | g.variables(), key=symbol_key)

    def vec(mono):
        d = dict(mono)
        return tuple(d.get(n, 0) for n in names)

    fv = {vec(m): c for m, c in f._terms.items()}
    gv = {vec(m): c for m, c in g._terms.items()}
    glead = max(gv)
    gc = gv[glead]
    q: dict = {}
    while fv:
        lead = max(fv)
        c = fv[lead]
        diff = tuple(a - b for a, b in zip(lead, glead))
        if any(x < 0 for x in diff) or c % gc:
            return None
        qc = c // gc
        q[diff] = q.get(diff, 0) + qc
        for gm, gcoef in gv.items():
            mm = tuple(a + b for a, b in zip(diff, gm))
            s = fv.get(mm, 0) - qc * gcoef
            if s:
                fv[mm] = s
            else:
                fv.pop(mm, None)
    quotient = RingElem._raw({
        tuple((n, e) for n, e in zip(names, v) if e): c for v, c in q.items() if c
    })
    return quotient.shift_L(nshift - dshift)
