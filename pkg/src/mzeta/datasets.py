"""Builders for the shipped example corpus.

Every builder returns a :class:`ConfigDocument` holding a local model of the
situation, one blow-up, and symbol tables for the specializations.  The JSON
files under ``corpus/`` are produced by :func:`write_corpus` and are checked
against these builders by the test suite.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations
from math import gcd
from pathlib import Path

from .algebra import L, ONE, RingElem, mu
from .blowup import BlowupSpec
from .io import ConfigDocument, format_config
from .model import Component, DivisorConfiguration, Stratum
from .ratfunc import U, V

CORPUS_DIR = Path(__file__).parent / "corpus"

# (m_1, m_2, m_3; nu_1, nu_2, nu_3), truncated to the arity of each example
INSTANCES = (
    ((1, 1, 1), (0, 0, 0)),
    ((2, 3, 5), (1, 2, 3)),
    ((6, 4, 10), (0, 1, 2)),
)

W = RingElem.var


def _components(k, instance):
    ms, nus = instance
    return [Component(f"E{i + 1}", ms[i], nus[i]) for i in range(k)]


def _g(comps, idx):
    return reduce(gcd, (comps[i].m for i in idx))


def _tag(idx):
    return "".join(str(i + 1) for i in idx)


def example_a(instance) -> ConfigDocument:
    """Two curves on a surface crossing at a point; blow up the point."""
    c = _components(2, instance)
    strata = [
        Stratum(["E1"], W("W1"), L - 1),
        Stratum(["E2"], W("W2"), W("Wg2")),
        Stratum(["E1", "E2"], mu(_g(c, [0, 1])), ONE),
    ]
    spec = BlowupSpec(["E1", "E2"], 0)
    return ConfigDocument(DivisorConfiguration(2, c, strata), (spec,),
                          {"Wg2": U * V - 1}, {"W1": 0, "W2": -1, "Wg2": 0})


def example_a_point_on_curve(instance) -> ConfigDocument:
    """A point on a single curve in a surface (codimension 1 inside E_1)."""
    c = _components(1, instance)
    strata = [Stratum(["E1"], W("W1"), L)]
    spec = BlowupSpec(["E1"], 1, (), [((), mu(c[0].m), ONE)])
    return ConfigDocument(DivisorConfiguration(2, c, strata), (spec,), {}, {"W1": 1})


def example_b(instance) -> ConfigDocument:
    """Three surfaces in a threefold meeting transversally at a point."""
    c = _components(3, instance)
    strata = []
    for r in (1, 2, 3):
        for idx in combinations(range(3), r):
            ids = [f"E{i + 1}" for i in idx]
            if r == 1:
                cover, geom = W(f"W{_tag(idx)}"), (L - 1) ** 2
            else:
                cover, geom = mu(_g(c, idx)) * (L - 1) ** (3 - r), (L - 1) ** (3 - r)
            strata.append(Stratum(ids, cover, geom))
    spec = BlowupSpec(["E1", "E2", "E3"], 0)
    chi = {"W1": 0, "W2": 0, "W3": 0}
    return ConfigDocument(DivisorConfiguration(3, c, strata), (spec,), {}, chi)


def example_c(instance) -> ConfigDocument:
    """A point on the double curve where E_1 and E_2 meet in a threefold."""
    c = _components(2, instance)
    strata = [
        Stratum(["E1"], W("W1"), W("Wg1")),
        Stratum(["E2"], W("W2"), L ** 2),
        Stratum(["E1", "E2"], W("W12"), W("Wg12")),
    ]
    spec = BlowupSpec(["E1", "E2"], 1, (), [((), mu(_g(c, [0, 1])), ONE)])
    hodge = {"Wg1": U ** 2 * V ** 2 - U * V, "Wg12": U * V}
    chi = {"W1": 0, "W2": 1, "W12": 1, "Wg1": 0, "Wg12": 1}
    return ConfigDocument(DivisorConfiguration(3, c, strata), (spec,), hodge, chi)


def example_point_on_surface(instance) -> ConfigDocument:
    """A point on a single surface in a threefold (codimension 2 inside E_1)."""
    c = _components(1, instance)
    strata = [Stratum(["E1"], W("W1"), L ** 2)]
    spec = BlowupSpec(["E1"], 2, (), [((), mu(c[0].m), ONE)])
    return ConfigDocument(DivisorConfiguration(3, c, strata), (spec,), {}, {"W1": 1})


def example_d(instance) -> ConfigDocument:
    """The double curve of E_1 and E_2 in a threefold, crossed by a third surface E_3."""
    c = _components(3, instance)
    strata = [
        Stratum(["E1"], W("W1"), W("Wg1")),
        Stratum(["E2"], W("W2"), W("Wg2")),
        Stratum(["E3"], W("W3"), L ** 2 - 2 * L + 1),
        Stratum(["E1", "E2"], W("W12"), L - 1),
        Stratum(["E1", "E3"], mu(_g(c, [0, 2])) * (L - 1), L - 1),
        Stratum(["E2", "E3"], mu(_g(c, [1, 2])) * (L - 1), L - 1),
        Stratum(["E1", "E2", "E3"], mu(_g(c, [0, 1, 2])), ONE),
    ]
    spec = BlowupSpec(["E1", "E2"], 0, ["E3"])
    hodge = {"Wg1": (U * V - 1) ** 2, "Wg2": U ** 2 * V ** 2}
    chi = {"W1": 0, "W2": 1, "W3": 0, "W12": 0, "Wg1": 0, "Wg2": 1}
    return ConfigDocument(DivisorConfiguration(3, c, strata), (spec,), hodge, chi)


def cusp() -> ConfigDocument:
    """Minimal embedded resolution of the cusp y^2 = x^3, localized at the origin.

    ``S`` is the strict transform; E1, E2, E3 are the exceptional curves of
    the three point blow-ups, with (m, nu) = (2, 2), (3, 3), (6, 5).  E3 is a
    projective line meeting the other three curves, so E3^o has class L - 2.
    Only strata meeting the exceptional locus are selected.
    """
    comps = [Component("S", 1, 1), Component("E1", 2, 2),
             Component("E2", 3, 3), Component("E3", 6, 5)]
    strata = [
        Stratum(["S"], L - 1, L - 1),
        Stratum(["E1"], mu(2) * L, L),
        Stratum(["E2"], mu(3) * L, L),
        Stratum(["E3"], W("Wc"), L - 2),
        Stratum(["E1", "E3"], mu(2), ONE),
        Stratum(["E2", "E3"], mu(3), ONE),
        Stratum(["S", "E3"], ONE, ONE),
    ]
    config = DivisorConfiguration(2, comps, strata, ["E1", "E2", "E3"])
    return ConfigDocument(config, (), {}, {"Wc": -1})


BUILDERS = {
    "example_A": example_a,
    "example_A_curve_point": example_a_point_on_curve,
    "example_B": example_b,
    "example_C": example_c,
    "example_C_surface_point": example_point_on_surface,
    "example_D": example_d,
}


def corpus() -> dict:
    """Every shipped document keyed by file stem."""
    out = {}
    for name, build in BUILDERS.items():
        for n, instance in enumerate(INSTANCES, start=1):
            out[f"{name}_{n}"] = build(instance)
    out["cusp"] = cusp()
    return out


def write_corpus(directory: Path = CORPUS_DIR) -> list:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, doc in corpus().items():
        path = directory / f"{name}.json"
        path.write_text(format_config(doc), encoding="utf-8")
        paths.append(path)
    return paths


if __name__ == "__main__":
    for p in write_corpus():
        print(p)
