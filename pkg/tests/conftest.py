import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mzeta.algebra import L, RationalSeries, RingElem, mu  # noqa: E402
from mzeta.datasets import CORPUS_DIR  # noqa: E402

SYMBOLS = [mu(2), mu(3), RingElem.var("W1"), RingElem.var("W2")]


@st.composite
def ring_elems(draw, max_terms=4):
    total = RingElem.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        t = RingElem.const(draw(st.integers(-5, 5)))
        t = t * L ** draw(st.integers(-3, 3))
        for sym in SYMBOLS:
            t = t * sym ** draw(st.integers(0, 2))
        total = total + t
    return total


factor_keys = st.tuples(st.integers(-2, 4), st.integers(1, 4))


@st.composite
def series(draw, max_terms=3):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        coeff = draw(ring_elems(max_terms=2))
        fs = draw(st.lists(factor_keys, max_size=3))
        terms.append((coeff, fs))
    return RationalSeries(terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def corpus_files():
    return sorted(CORPUS_DIR.glob("*.json"))
