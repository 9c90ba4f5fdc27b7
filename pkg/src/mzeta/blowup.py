"""Blow-ups of a divisor configuration along combinatorial centers.

A center Z lies in E_I for a maximal set I and has codimension ``codim`` in
E_I; the components listed in ``transversal`` cross Z transversally.  The
exceptional divisor gets multiplicity sum(m_i) and log discrepancy
sum(nu_i) + codim, and its strata are read off from the projectivized normal
bundle over each stratum Z o E_{I u K}^o of the center.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, NamedTuple

from .algebra import L, ONE, ZERO, RingElem, is_mu, mu, series_difference_numerator
from .errors import InvalidConfiguration
from .model import Component, DivisorConfiguration, Stratum, stratum_gcd, validate
from .zeta import compute_naive, compute_zeta


class CenterStratum(NamedTuple):
    extra: frozenset  # K, a subset of the transversal components
    cover: RingElem
    geom: RingElem


@dataclass(frozen=True)
class BlowupSpec:
    center_in: frozenset
    codim: int
    transversal: frozenset = frozenset()
    center_strata: tuple = ()
    new_id: str = "E*"

    def __post_init__(self):
        object.__setattr__(self, "center_in", frozenset(self.center_in))
        object.__setattr__(self, "transversal", frozenset(self.transversal))
        object.__setattr__(self, "center_strata", tuple(
            CenterStratum(frozenset(e), RingElem.coerce(c), RingElem.coerce(g))
            for e, c, g in self.center_strata))

    def center_map(self) -> dict:
        return {cs.extra: (cs.cover, cs.geom) for cs in self.center_strata}


class BlowupError(InvalidConfiguration):
    def __init__(self, violations, index=None):
        self.index = index
        what = "blow-up" if index is None else f"blow-up #{index}"
        super().__init__(violations, what=what)


def _subsets(ids: Iterable, proper=False):
    ids = sorted(ids)
    sizes = range(len(ids)) if proper else range(len(ids) + 1)
    return [frozenset(c) for r in sizes for c in combinations(ids, r)]


def projective_class(n: int) -> RingElem:
    """[P^n] = L^n + ... + L + 1 (zero for n < 0)."""
    total = ZERO
    for i in range(n + 1):
        total = total + L ** i
    return total


def validate_blowup(config: DivisorConfiguration, spec: BlowupSpec) -> list:
    out = list(validate(config))
    ids = set(config.by_id)
    I, c = spec.center_in, spec.codim
    label = "{" + ",".join(config.sorted_ids(I)) + "}"
    if not I:
        out.append("center_in must be nonempty")
    for i in config.sorted_ids(I - ids):
        out.append(f"dangling component id {i!r} in center_in")
    for i in config.sorted_ids(spec.transversal - ids):
        out.append(f"dangling component id {i!r} in transversal")
    if I & spec.transversal:
        out.append("transversal components must not contain the center")
    if not isinstance(c, int) or c < 0:
        out.append(f"codim must be a nonnegative integer, got {c}")
        return out
    if len(I) + c < 2:
        out.append(f"ambient codimension < 2 (|I| + codim = {len(I) + c})")
    if len(I) + c > config.ambient_dim:
        out.append(f"ambient codimension {len(I) + c} exceeds ambient_dim = {config.ambient_dim}")
    if not spec.new_id:
        out.append("new_id must be a nonempty identifier")
    elif spec.new_id in ids:
        out.append(f"new_id {spec.new_id!r} collides with an existing component")
    if out:
        return out
    if config.stratum(I) is None:
        out.append(f"stratum {label} is empty, so no center can lie densely in E_I")
    entries = [cs.extra for cs in spec.center_strata]
    if len(set(entries)) != len(entries):
        out.append("center_strata lists the same extra set twice")
    if c == 0:
        for s in config.strata:
            if I <= s.comps and not (s.comps - I) <= spec.transversal:
                bad = config.sorted_ids(s.comps - I - spec.transversal)
                out.append(f"component {bad[0]!r} meets the center E_I but is not transversal")
        for cs in spec.center_strata:
            s = config.stratum(I | cs.extra)
            if s is None or (s.cover, s.geom) != (cs.cover, cs.geom):
                out.append("codim 0: center_strata must match the existing strata classes")
    else:
        given = spec.center_map()
        for K in _subsets(spec.transversal):
            if config.stratum(I | K) is not None and K not in given:
                extra = ",".join(config.sorted_ids(K))
                out.append(f"center_strata entry missing for extra set {{{extra}}}")
        for cs in spec.center_strata:
            extra = "{" + ",".join(config.sorted_ids(cs.extra)) + "}"
            if not cs.extra <= spec.transversal:
                out.append(f"center_strata extra set {extra} is not transversal")
                continue
            nonzero = bool(cs.cover) or bool(cs.geom)
            if config.stratum(I | cs.extra) is None and nonzero:
                out.append(f"center stratum for {extra} lies in an empty stratum")
            if nonzero and len(I) + len(cs.extra) + c > config.ambient_dim:
                out.append(f"center stratum for {extra} is nonempty but has negative dimension")
            if any(is_mu(n) for n in cs.geom.symbols()):
                out.append(f"geometric class of center stratum {extra} contains a mu symbol")
    return out


def _center_classes(config, spec) -> dict:
    I = spec.center_in
    if spec.codim == 0:
        return {s.comps - I: (s.cover, s.geom) for s in config.strata if I <= s.comps}
    return spec.center_map()


def apply_blowup(config: DivisorConfiguration, spec: BlowupSpec,
                 nu_star: int | None = None) -> DivisorConfiguration:
    """Configuration after blowing up the center described by ``spec``.

    ``nu_star`` overrides the log discrepancy of the exceptional divisor; it
    exists for negative controls only.
    """
    violations = validate_blowup(config, spec)
    if violations:
        raise BlowupError(violations)
    I, c, star = spec.center_in, spec.codim, spec.new_id
    k = len(I)
    comps = [config.component(i) for i in I]
    m_star = sum(x.m for x in comps)
    if nu_star is None:
        nu_star = sum(x.nu for x in comps) + c
    center = _center_classes(config, spec)

    strata = []
    for s in config.strata:
        K = s.comps - I
        if not (I <= s.comps and K in center):
            strata.append(s)
            continue
        if c == 0:
            continue
        zc, zg = center[K]
        cover, geom = s.cover - zc, s.geom - zg
        if cover or geom:
            strata.append(Stratum(s.comps, cover, geom))

    added = []
    for K, (zc, zg) in center.items():
        if not (zc or zg):
            continue
        for G in _subsets(I, proper=True):
            mult = L ** c * (L - 1) ** (k - len(G) - 1)
            added.append(Stratum(G | K | {star}, zc * mult, zg * mult))
        if c >= 1:
            mult = projective_class(c - 1)
            added.append(Stratum(I | K | {star}, zc * mult, zg * mult))

    components = list(config.components) + [Component(star, m_star, nu_star)]
    order = {x.id: n for n, x in enumerate(components)}
    added.sort(key=lambda s: (len(s.comps), sorted(order[i] for i in s.comps)))
    selection = config.selection
    if I & selection:
        selection = selection | {star}
    return DivisorConfiguration(config.ambient_dim, components, strata + added, selection)


class Invariance(NamedTuple):
    equal: bool
    witness: RingElem  # numerator of Z_before - Z_after over the common denominator
    naive_equal: bool
    naive_witness: RingElem

    @property
    def holds(self) -> bool:
        return self.equal and self.naive_equal


def verify_invariance(config: DivisorConfiguration, spec: BlowupSpec,
                      nu_star: int | None = None) -> Invariance:
    after = apply_blowup(config, spec, nu_star=nu_star)
    w = series_difference_numerator(compute_zeta(config), compute_zeta(after))
    nw = series_difference_numerator(compute_naive(config), compute_naive(after))
    return Invariance(w.is_zero(), w, nw.is_zero(), nw)


def apply_script(config: DivisorConfiguration, specs: Iterable[BlowupSpec]) -> DivisorConfiguration:
    for n, spec in enumerate(specs):
        violations = validate_blowup(config, spec)
        if violations:
            raise BlowupError(violations, index=n)
        config = apply_blowup(config, spec)
    return config


# random cases ----------------------------------------------------------------


def _random_class(rng: random.Random, symbols: list) -> RingElem:
    total = ZERO
    while not total:
        for _ in range(rng.randint(1, 3)):
            t = RingElem.const(rng.choice([-2, -1, 1, 1, 2, 3]))
            t = t * L ** rng.randint(0, 2)
            if symbols and rng.random() < 0.7:
                t = t * rng.choice(symbols)
            total = total + t
    return total


def _random_pair(rng, g, tag):
    cover = _random_class(rng, [mu(g), RingElem.var(f"W{tag}c")])
    geom = _random_class(rng, [RingElem.var(f"W{tag}g"), ONE])
    return cover, geom


def random_configuration(rng: random.Random, max_components: int = 4,
                         max_dim: int = 4) -> DivisorConfiguration:
    dim = rng.randint(2, max_dim)
    n = rng.randint(1, max_components)
    comps = [Component(f"E{i + 1}", rng.randint(1, 6), rng.randint(-1, 4)) for i in range(n)]
    base = DivisorConfiguration(dim, comps, [])
    subsets = [frozenset(s) for r in range(1, min(n, dim) + 1)
               for s in combinations([c.id for c in comps], r)]
    chosen = [s for s in subsets if rng.random() < 0.6] or [rng.choice(subsets)]
    strata = []
    for j, s in enumerate(chosen):
        cover, geom = _random_pair(rng, stratum_gcd(base, s), j)
        strata.append(Stratum(s, cover, geom))
    ids = [c.id for c in comps]
    selection = rng.sample(ids, rng.randint(1, n))
    return DivisorConfiguration(dim, comps, strata, selection)


def random_blowup(rng: random.Random, config: DivisorConfiguration,
                  new_id: str = "E*", relevant: bool = False) -> BlowupSpec | None:
    """A random valid blow-up of ``config``, or None if no center fits.

    With ``relevant`` the center lies on a selected component, so the zeta
    function actually sees the exceptional divisor.
    """
    dim = config.ambient_dim
    options = []
    for s in config.strata:
        if relevant and not s.comps & config.selection:
            continue
        k = len(s.comps)
        lo, hi = max(0, 2 - k), dim - k
        if lo <= hi:
            options.append((s.comps, lo, hi))
    if not options:
        return None
    I, lo, hi = rng.choice(options)
    c = rng.randint(lo, hi)
    neighbours = set(chain.from_iterable(s.comps - I for s in config.strata if I <= s.comps))
    if c == 0:
        return BlowupSpec(I, 0, neighbours, (), new_id)
    transversal = frozenset(j for j in sorted(neighbours) if rng.random() < 0.6)
    g = stratum_gcd(config, I)
    entries = []
    for n, K in enumerate(_subsets(transversal)):
        if config.stratum(I | K) is None:
            continue
        if len(I) + len(K) + c > dim:
            entries.append((K, ZERO, ZERO))
        else:
            cover, geom = _random_pair(rng, stratum_gcd(config, I | K) if K else g, f"z{n}")
            entries.append((K, cover, geom))
    return BlowupSpec(I, c, transversal, tuple(entries), new_id)


def random_case(rng: random.Random, max_components: int = 4, max_dim: int = 4,
                relevant: bool = False):
    """(configuration, blow-up spec) drawn until a valid center exists."""
    while True:
        config = random_configuration(rng, max_components, max_dim)
        spec = random_blowup(rng, config, relevant=relevant)
        if spec is not None:
            return config, spec
