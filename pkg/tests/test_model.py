import pytest
from hypothesis import given
from hypothesis import strategies as st

from mzeta.algebra import L, ONE, RingElem, mu
from mzeta.datasets import INSTANCES, example_a
from mzeta.errors import InvalidConfiguration
from mzeta.model import Component, DivisorConfiguration, Stratum, check, stratum_gcd, validate


def config(comps, strata, dim=2, selection=None):
    return DivisorConfiguration(dim, [Component(*c) for c in comps], strata, selection)


def test_zero_multiplicity_is_not_finite_type():
    (v,) = validate(config([("E1", 0, 1)], []))
    assert v.startswith("finite-type: m must be >= 1")


def test_example_a_is_valid():
    assert validate(example_a(INSTANCES[1]).config) == []


def test_dangling_component():
    problems = validate(config([("E1", 1, 0)], [Stratum(["E1", "E9"], ONE, ONE)]))
    assert any("dangling component id 'E9'" in p for p in problems)


def test_other_violations():
    c = config([("E1", 1, 0), ("E1", 2, 0), ("E2", 1, 1), ("E3", 1, 1)],
               [Stratum(["E2"], ONE, mu(2)), Stratum(["E2"], ONE, ONE),
                Stratum(["E1", "E2", "E3"], ONE, ONE)],
               selection=["E7"])
    text = "\n".join(validate(c))
    assert "duplicate component id 'E1'" in text
    assert "contains mu(2)" in text
    assert "duplicate stratum {E2}" in text
    assert "more than ambient_dim" in text
    assert "dangling component id 'E7' in selection" in text
    with pytest.raises(InvalidConfiguration) as info:
        check(c)
    assert info.value.violations == validate(c)


def test_validate_is_pure():
    c = config([("E1", 0, 1)], [Stratum(["E2"], ONE, mu(3))])
    first = validate(c)
    assert validate(c) == first


def test_selection_defaults_to_everything():
    c = config([("E1", 1, 0), ("E2", 2, 0)], [])
    assert c.selection == {"E1", "E2"}


@pytest.mark.parametrize("ms,expected", [((2, 3), 1), ((6, 4, 10), 2), ((5,), 5)])
def test_stratum_gcd(ms, expected):
    c = config([(f"E{i}", m, 0) for i, m in enumerate(ms)], [], dim=3)
    assert stratum_gcd(c, [x.id for x in c.components]) == expected


def test_stratum_gcd_empty():
    with pytest.raises(ValueError):
        stratum_gcd(config([("E1", 1, 0)], []), [])


@given(st.lists(st.integers(1, 60), min_size=2, max_size=5), st.data())
def test_gcd_of_superset_divides(ms, data):
    c = config([(f"E{i}", m, 0) for i, m in enumerate(ms)], [], dim=5)
    ids = [x.id for x in c.components]
    small = data.draw(st.lists(st.sampled_from(ids), min_size=1, unique=True))
    extra = data.draw(st.lists(st.sampled_from(ids), unique=True))
    assert stratum_gcd(c, small) % stratum_gcd(c, set(small) | set(extra)) == 0


def test_classes_are_coerced():
    s = Stratum(["E1"], 3, L)
    assert s.cover == RingElem.const(3) and s.comps == frozenset({"E1"})
