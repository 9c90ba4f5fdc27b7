"""Combinatorial data of a simple normal crossing divisor with holonomy.

Only what the zeta function sees is kept: for every component its holonomy
multiplicity ``m`` and log discrepancy ``nu``; for every nonempty stratum
``E_I^o`` the class of its unramified cover (with the group action, as a free
ring element) and its plain class.  Strata not listed are empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable

from .algebra import ZERO, RingElem, is_mu
from .errors import InvalidConfiguration


@dataclass(frozen=True)
class Component:
    id: str
    m: int
    nu: int


@dataclass(frozen=True)
class Stratum:
    comps: frozenset
    cover: RingElem
    geom: RingElem

    def __init__(self, comps: Iterable[str], cover, geom):
        object.__setattr__(self, "comps", frozenset(comps))
        object.__setattr__(self, "cover", RingElem.coerce(cover))
        object.__setattr__(self, "geom", RingElem.coerce(geom))


@dataclass(frozen=True)
class DivisorConfiguration:
    ambient_dim: int
    components: tuple
    strata: tuple
    selection: frozenset = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "strata", tuple(self.strata))
        sel = self.selection
        if sel is None:
            sel = [c.id for c in self.components]
        object.__setattr__(self, "selection", frozenset(sel))

    @cached_property
    def by_id(self) -> dict:
        return {c.id: c for c in self.components}

    @cached_property
    def by_comps(self) -> dict:
        return {s.comps: s for s in self.strata}

    @cached_property
    def order(self) -> dict:
        """Position of each component id, used to print id sets stably."""
        return {c.id: i for i, c in enumerate(self.components)}

    def component(self, cid: str) -> Component:
        return self.by_id[cid]

    def stratum(self, comps) -> Stratum | None:
        return self.by_comps.get(frozenset(comps))

    def sorted_ids(self, ids) -> list:
        n = len(self.order)
        return sorted(ids, key=lambda i: (self.order.get(i, n), i))

    def replace(self, **changes) -> "DivisorConfiguration":
        data = dict(ambient_dim=self.ambient_dim, components=self.components,
                    strata=self.strata, selection=self.selection)
        data.update(changes)
        return DivisorConfiguration(**data)


def validate(config: DivisorConfiguration) -> list:
    """List every violated rule; an empty list means the configuration is valid."""
    out = []
    if not isinstance(config.ambient_dim, int) or config.ambient_dim < 1:
        out.append(f"ambient_dim must be >= 1, got {config.ambient_dim}")
    seen = set()
    for c in config.components:
        if c.id in seen:
            out.append(f"duplicate component id {c.id!r}")
        seen.add(c.id)
        if c.m < 1:
            out.append(f"finite-type: m must be >= 1 (component {c.id!r} has m = {c.m})")
    seen_strata = set()
    for s in config.strata:
        label = "{" + ",".join(config.sorted_ids(s.comps)) + "}"
        if not s.comps:
            out.append("empty stratum: component set must be nonempty")
        if s.comps in seen_strata:
            out.append(f"duplicate stratum {label}")
        seen_strata.add(s.comps)
        missing = [i for i in config.sorted_ids(s.comps) if i not in seen]
        if missing:
            out.append(f"dangling component id {missing[0]!r} in stratum {label}")
        if len(s.comps) > config.ambient_dim:
            out.append(f"stratum {label} has {len(s.comps)} components, more than "
                       f"ambient_dim = {config.ambient_dim}")
        mus = sorted(n for n in s.geom.symbols() if is_mu(n))
        if mus:
            out.append(f"geometric class of stratum {label} contains {mus[0]}")
    for i in sorted(config.selection - seen):
        out.append(f"dangling component id {i!r} in selection")
    return out


def check(config: DivisorConfiguration) -> DivisorConfiguration:
    violations = validate(config)
    if violations:
        raise InvalidConfiguration(violations)
    return config


def stratum_gcd(config: DivisorConfiguration, comps) -> int:
    """m_I = gcd of the multiplicities over I."""
    comps = list(comps)
    if not comps:
        raise ValueError("stratum_gcd of an empty set")
    return reduce(gcd, (config.component(i).m for i in comps))


def selected_strata(config: DivisorConfiguration) -> list:
    """Strata meeting the selection set A, in configuration order."""
    return [s for s in config.strata if s.comps & config.selection]


def stratum_class(config, comps, which="cover") -> RingElem:
    s = config.stratum(comps)
    if s is None:
        return ZERO
    return getattr(s, which)
