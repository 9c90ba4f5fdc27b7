import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_files
from mzeta.blowup import random_case
from mzeta.datasets import corpus
from mzeta.errors import ParseError, SchemaError
from mzeta.io import ConfigDocument, format_config, format_uv, parse_config
from mzeta.ratfunc import U, V

MINIMAL = '{"ambient_dim": 1, "components": [{"id": "E1", "m": 1, "nu": 0}], "strata": []}'


def doc_with(**changes):
    data = json.loads(MINIMAL)
    data.update(changes)
    return json.dumps(data)


def test_minimal_document():
    doc = parse_config(MINIMAL)
    assert doc.config.selection == {"E1"}
    assert doc.blowups == () and doc.hodge_table == {} and doc.chi_table == {}


def test_zero_multiplicity_cites_finite_type():
    text = doc_with(components=[{"id": "E1", "m": 0, "nu": 0}])
    with pytest.raises(SchemaError, match="finite-type") as info:
        parse_config(text)
    assert info.value.location == "$.components[0].m"


def test_malformed_expression_has_column():
    text = doc_with(strata=[{"components": ["E1"], "cover": "mu(2", "geom": "1"}])
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert "column 5" in info.value.location
    assert info.value.location.startswith("$.strata[0].cover")


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_config('{\n  "ambient_dim": 1,\n  oops\n}')
    assert info.value.location == "line 3, column 3"


@pytest.mark.parametrize("text,fragment", [
    (doc_with(extra=1), "unknown key 'extra'"),
    (doc_with(components=[{"id": "E1", "m": 1, "nu": 0, "w": 2}]), "unknown key 'w'"),
    (doc_with(ambient_dim="2"), "expected an integer"),
    (doc_with(ambient_dim=True), "expected an integer"),
    (doc_with(strata=[{"components": ["E1", "E1"], "cover": "1", "geom": "1"}]), "repeated"),
    (doc_with(strata=[{"components": ["E2"], "cover": "1", "geom": "1"}]), "dangling"),
    (doc_with(chi_table={"Q": 1}), "W symbols"),
    (doc_with(chi_table={"W1": "1 + "}), "unexpected end"),
    (doc_with(hodge_table={"W1": "u^-1"}), "negative powers"),
    ('{"ambient_dim": 1, "ambient_dim": 2, "components": [], "strata": []}', "duplicate key"),
    ('{"components": [], "strata": []}', "missing required key 'ambient_dim'"),
])
def test_schema_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_config(text)


def test_tables_accept_expressions():
    doc = parse_config(doc_with(hodge_table={"W1": "(u*v - 1)^2", "W2": 3},
                                chi_table={"W1": "2 - 3", "W2": 4}))
    assert doc.hodge_table["W1"] == (U * V - 1) ** 2
    assert doc.chi_table == {"W1": -1, "W2": 4}


def test_format_uv():
    assert format_uv((U * V - 1) ** 2) == "u^2*v^2 - 2*u*v + 1"
    assert format_uv(-3 * U + V ** 2) == "v^2 - 3*u"
    assert format_uv(U.field.zero) == "0"


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    text = path.read_text()
    doc = parse_config(text)
    assert format_config(doc) == text
    assert parse_config(format_config(doc)) == doc


def test_corpus_files_match_builders():
    files = {p.stem: p.read_text() for p in corpus_files()}
    built = {name: format_config(doc) for name, doc in corpus().items()}
    assert files == built


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_random_round_trip(seed):
    config, spec = random_case(random.Random(seed))
    doc = ConfigDocument(config, (spec,))
    assert parse_config(format_config(doc)) == doc
