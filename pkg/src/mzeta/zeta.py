"""Zeta functions of a configuration and their specializations."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Mapping

from .algebra import (
    L, L_NAME, ONE, ZERO, FactorKey, RationalSeries, RingElem, exact_divide,
    is_mu, mu_order, poly_substitute, series_limit, series_numerator,
)
from .errors import HigherOrderPoleError, ZetaError
from .expr import parse_target
from .model import DivisorConfiguration, check, selected_strata
from .ratfunc import S, S_FIELD, U, UV_FIELD, V, RationalFunction


def _factors(config, comps):
    return [FactorKey(config.component(i).nu, config.component(i).m) for i in comps]


def compute_zeta(config: DivisorConfiguration) -> RationalSeries:
    """Z^A(T) = sum over strata meeting A of [cover] (L-1)^(|I|-1) prod A_i/(1-A_i)."""
    check(config)
    return RationalSeries(
        (s.cover * (L - 1) ** (len(s.comps) - 1), _factors(config, s.comps))
        for s in selected_strata(config)
    )


def compute_micc(config: DivisorConfiguration) -> RingElem:
    """The motivic infinite cyclic cover S^A, summed directly from the strata."""
    check(config)
    total = ZERO
    for s in selected_strata(config):
        k = len(s.comps)
        term = s.cover * (L - 1) ** (k - 1)
        total = total + (term if k % 2 == 1 else -term)
    return total


def check_limit_relation(config: DivisorConfiguration) -> bool:
    return compute_micc(config) == -series_limit(compute_zeta(config))


def compute_naive(config: DivisorConfiguration) -> RationalSeries:
    """Naive zeta: plain classes with (L-1)^|I|."""
    check(config)
    return RationalSeries(
        (s.geom * (L - 1) ** len(s.comps), _factors(config, s.comps))
        for s in selected_strata(config)
    )


# Hodge realization -----------------------------------------------------------


def _uv_value(x):
    if isinstance(x, str):
        return parse_target(x, {"u": U, "v": V}, UV_FIELD.one)
    if isinstance(x, (int, Fraction)):
        return UV_FIELD.one * x
    return UV_FIELD.field_new(x)


def hodge_table(symbol_table: Mapping) -> dict:
    """Substitution table L -> uv plus the user's W -> H(u, v) entries."""
    table = {name: _uv_value(val) for name, val in symbol_table.items()}
    table[L_NAME] = U * V
    return table


class HodgeSeries:
    """Sum of ``coeff(u,v) * prod (uv)^-nu T^m / (1 - (uv)^-nu T^m)``."""

    def __init__(self, terms: dict):
        self.terms = {k: v for k, v in terms.items() if v}

    def __eq__(self, other):
        if not isinstance(other, HodgeSeries):
            return NotImplemented
        return self.terms == other.terms

    def coefficient(self, factors) -> object:
        return self.terms.get(tuple(sorted(factors)), UV_FIELD.zero)

    def as_function(self, T):
        """Evaluate the series at ``T`` (an element of a field containing u, v)."""
        uv = U * V
        total = 0
        for key, c in self.terms.items():
            t = c
            for k in key:
                A = uv ** (-k.nu) * T ** k.m
                t = t * A / (1 - A)
            total = total + t
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        lines = []
        for key in sorted(self.terms):
            parts = [f"({RationalFunction(self.terms[key])})"]
            for k in key:
                a = f"(u*v)^{-k.nu}*T^{k.m}" if k.nu else f"T^{k.m}"
                parts.append(f"{a}/(1-{a})")
            lines.append(" * ".join(parts))
        return "\n+ ".join(lines)


def hodge_zeta(config: DivisorConfiguration, symbol_table: Mapping) -> HodgeSeries:
    """Hodge-Deligne specialization of the naive zeta, coefficients in Q(u, v).

    Each stratum contributes H(E_I^o; u, v) (uv-1)^|I| on its factor multiset.
    """
    check(config)
    table = hodge_table(symbol_table)
    terms: dict = {}
    for s in selected_strata(config):
        key = tuple(sorted(_factors(config, s.comps)))
        h = poly_substitute(s.geom, table, UV_FIELD.one)
        c = h * (U * V - 1) ** len(s.comps)
        terms[key] = terms.get(key, UV_FIELD.zero) + c
    return HodgeSeries(terms)


# Euler characteristic realizations ------------------------------------------


def _int_table(chi_table: Mapping) -> dict:
    return {name: Fraction(val) for name, val in chi_table.items()}


def _inv_linear(k: FactorKey):
    d = k.nu + S * k.m
    if d == 0:
        raise ZetaError(f"factor {k} gives the zero denominator nu + s m")
    return 1 / d


def topological_zeta(config: DivisorConfiguration, int_table: Mapping) -> RationalFunction:
    """sum chi_top(E_I^o) prod 1/(nu_i + s m_i), chi_top being the class at L = 1."""
    check(config)
    table = _int_table(int_table)
    table[L_NAME] = Fraction(1)
    total = S_FIELD.zero
    for s in selected_strata(config):
        chi = poly_substitute(s.geom, table, Fraction(1))
        t = S_FIELD.one * chi
        for k in _factors(config, s.comps):
            t = t * _inv_linear(k)
        total = total + t
    return RationalFunction(total)


def twisted_character_table(element: RingElem, order: int, chi_table: Mapping) -> dict:
    """L -> 1, mu(k) -> 1 if order | k else 0, W -> chi_table[W]."""
    table = _int_table(chi_table)
    table[L_NAME] = Fraction(1)
    for name in element.symbols():
        if is_mu(name):
            table[name] = Fraction(1 if mu_order(name) % order == 0 else 0)
    return table


def twisted_topological_zeta(config: DivisorConfiguration, e: int,
                             chi_table: Mapping) -> RationalFunction:
    """Twisted topological zeta for a character of order ``e``."""
    if not isinstance(e, int) or e < 1:
        raise ZetaError(f"character order must be a positive integer, got {e}")
    check(config)
    total = S_FIELD.zero
    for s in selected_strata(config):
        chi = poly_substitute(s.cover, twisted_character_table(s.cover, e, chi_table),
                              Fraction(1))
        t = S_FIELD.one * chi
        for k in _factors(config, s.comps):
            t = t * _inv_linear(k)
        total = total + t
    return RationalFunction(total)


def stringy_residue(config: DivisorConfiguration, symbol_table: Mapping) -> RationalFunction:
    """-1/(uv(uv-1)) * H(T)(T - uv) at T = uv, via the simple-pole limit per factor."""
    series = hodge_zeta(config, symbol_table)
    uv = U * V
    total = UV_FIELD.zero
    for key, h in series.terms.items():
        vanishing = [k for k in key if k.nu == k.m]
        if not vanishing:
            continue
        if len(vanishing) > 1:
            raise HigherOrderPoleError(
                f"higher-order pole at T = uv: factors {', '.join(map(str, vanishing))}")
        (k0,) = vanishing
        # h already carries (uv-1)^|I|; one (uv-1) per factor is used below
        t = h / (uv - 1) ** len(key)
        for k in key:
            if k.nu == k.m:
                t = t * (-(uv - 1) * uv / k.m)
            else:
                t = t * (uv - 1) * uv ** k.m / (uv ** k.nu - uv ** k.m)
        total = total + t
    return RationalFunction(-total / (uv * (uv - 1)))


# Poles -----------------------------------------------------------------------


def cancel_denominator(numerator: RingElem, denominator: Counter) -> Counter:
    """Strike factors (1 - L^-a T^b) that divide the numerator exactly."""
    denominator = Counter(denominator)
    if numerator.is_zero():
        return Counter()
    changed = True
    while changed:
        changed = False
        for k in sorted(denominator):
            while denominator[k] > 0:
                q = exact_divide(numerator, ONE - k.monomial())
                if q is None:
                    break
                numerator = q
                denominator[k] -= 1
                changed = True
    return +denominator


def pole_candidates(z: RationalSeries) -> list:
    """Candidate poles (a, b) of z: denominator factors surviving free-ring cancellation.

    A superset of the poles of any specialization; repeated pairs carry
    multiplicity.
    """
    num, den = series_numerator(z)
    remaining = cancel_denominator(num, den)
    return sorted((k.nu, k.m) for k in remaining.elements())


def candidate_s_poles(pairs) -> set:
    """Map candidate pairs (a, b) to s-values -a/b."""
    return {Fraction(-a, b) for a, b in pairs}

