"""JSON configuration documents: parsing with located errors, canonical output.

A document looks like::

    {
      "ambient_dim": 2,
      "components": [{"id": "E1", "m": 2, "nu": 1}, ...],
      "strata": [{"components": ["E1", "E2"], "cover": "mu(1)", "geom": "1"}, ...],
      "selection": ["E1", "E2"],
      "blowups": [{"center_in": ["E1", "E2"], "codim": 0, "transversal": [],
                   "center_strata": [], "new_id": "E*"}],
      "hodge_table": {"W1": "u*v + 1"},
      "chi_table": {"W1": 2}
    }

``selection`` defaults to every component; ``blowups`` and the two tables
are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import RingElem
from .blowup import BlowupSpec, CenterStratum
from .errors import ParseError, SchemaError, ZetaError
from .expr import parse_ring, parse_target
from .model import Component, DivisorConfiguration, Stratum, validate
from .ratfunc import U, UV_FIELD, V

_TOP_KEYS = {"ambient_dim", "components", "strata", "selection", "blowups",
             "hodge_table", "chi_table"}
_REQUIRED_TOP = ("ambient_dim", "components", "strata")


@dataclass(frozen=True)
class ConfigDocument:
    config: DivisorConfiguration
    blowups: tuple = ()
    hodge_table: dict = field(default_factory=dict)  # W name -> polynomial in u, v
    chi_table: dict = field(default_factory=dict)  # W name -> int


def _unique_pairs(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


class _Reader:
    """Walks the decoded JSON value, tracking a JSON path for messages."""

    def fail(self, path, message):
        return SchemaError(message, path)

    def obj(self, value, path, required=(), optional=()):
        if not isinstance(value, dict):
            raise self.fail(path, f"expected an object, got {type(value).__name__}")
        allowed = set(required) | set(optional)
        for key in value:
            if key not in allowed:
                raise self.fail(f"{path}.{key}", f"unknown key {key!r}")
        for key in required:
            if key not in value:
                raise self.fail(path, f"missing required key {key!r}")
        return value

    def int(self, value, path):
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(path, f"expected an integer, got {json.dumps(value)}")
        return value

    def str(self, value, path):
        if not isinstance(value, str) or not value:
            raise self.fail(path, f"expected a nonempty string, got {json.dumps(value)}")
        return value

    def list(self, value, path):
        if not isinstance(value, list):
            raise self.fail(path, f"expected a list, got {type(value).__name__}")
        return value

    def ids(self, value, path):
        out = [self.str(x, f"{path}[{n}]") for n, x in enumerate(self.list(value, path))]
        if len(set(out)) != len(out):
            raise self.fail(path, "repeated component id")
        return out

    def expr(self, value, path):
        if isinstance(value, bool):
            raise self.fail(path, "expected an expression string or integer")
        if isinstance(value, int):
            return RingElem.const(value)
        text = self.str(value, path)
        try:
            return parse_ring(text)
        except ParseError as exc:
            raise ParseError(exc.message, f"{path}, {exc.location}") from None
        except ZetaError as exc:
            raise ParseError(str(exc), path) from None


def _config(r: _Reader, doc) -> DivisorConfiguration:
    dim = r.int(doc["ambient_dim"], "$.ambient_dim")
    components = []
    for n, c in enumerate(r.list(doc["components"], "$.components")):
        path = f"$.components[{n}]"
        r.obj(c, path, required=("id", "m", "nu"))
        m = r.int(c["m"], f"{path}.m")
        if m < 1:
            raise r.fail(f"{path}.m", f"finite-type: m must be >= 1, got {m}")
        components.append(Component(r.str(c["id"], f"{path}.id"), m, r.int(c["nu"], f"{path}.nu")))
    strata = []
    for n, s in enumerate(r.list(doc["strata"], "$.strata")):
        path = f"$.strata[{n}]"
        r.obj(s, path, required=("components", "cover", "geom"))
        strata.append(Stratum(r.ids(s["components"], f"{path}.components"),
                              r.expr(s["cover"], f"{path}.cover"),
                              r.expr(s["geom"], f"{path}.geom")))
    selection = None
    if "selection" in doc:
        selection = r.ids(doc["selection"], "$.selection")
    config = DivisorConfiguration(dim, components, strata, selection)
    violations = validate(config)
    if violations:
        raise SchemaError("; ".join(violations), "$", violations)
    return config


def _blowup(r: _Reader, b, path) -> BlowupSpec:
    r.obj(b, path, required=("center_in", "codim"),
          optional=("transversal", "center_strata", "new_id"))
    entries = []
    for n, cs in enumerate(r.list(b.get("center_strata", []), f"{path}.center_strata")):
        p = f"{path}.center_strata[{n}]"
        r.obj(cs, p, required=("extra", "cover", "geom"))
        entries.append(CenterStratum(frozenset(r.ids(cs["extra"], f"{p}.extra")),
                                     r.expr(cs["cover"], f"{p}.cover"),
                                     r.expr(cs["geom"], f"{p}.geom")))
    return BlowupSpec(
        center_in=r.ids(b["center_in"], f"{path}.center_in"),
        codim=r.int(b["codim"], f"{path}.codim"),
        transversal=r.ids(b.get("transversal", []), f"{path}.transversal"),
        center_strata=tuple(entries),
        new_id=r.str(b.get("new_id", "E*"), f"{path}.new_id"),
    )


def _table(r: _Reader, value, path, convert) -> dict:
    r.obj(value, path, optional=value.keys() if isinstance(value, dict) else ())
    out = {}
    for name, v in value.items():
        if not (name.startswith("W") and len(name) > 1):
            raise r.fail(f"{path}.{name}", f"table keys must be W symbols, got {name!r}")
        out[name] = convert(v, f"{path}.{name}")
    return out


def _uv_entry(r: _Reader, value, path):
    if isinstance(value, bool):
        raise r.fail(path, "expected a polynomial in u, v")
    if isinstance(value, int):
        return UV_FIELD.one * value
    text = r.str(value, path)
    try:
        p = parse_target(text, {"u": U, "v": V}, UV_FIELD.one)
    except ParseError as exc:
        raise ParseError(exc.message, f"{path}, {exc.location}") from None
    except ZetaError as exc:
        raise ParseError(str(exc), path) from None
    if p.denom != 1 or any(c.denominator != 1 for c in p.numer.values()):
        raise r.fail(path, "Hodge polynomial must have integer coefficients and no negative powers")
    return p


def _chi_entry(r: _Reader, value, path) -> int:
    if isinstance(value, bool):
        raise r.fail(path, "expected an integer")
    if isinstance(value, int):
        return value
    text = r.str(value, path)
    try:
        x = parse_target(text, {}, Fraction(1))
    except ParseError as exc:
        raise ParseError(exc.message, f"{path}, {exc.location}") from None
    except ZetaError as exc:
        raise ParseError(str(exc), path) from None
    if x.denominator != 1:
        raise r.fail(path, f"Euler characteristic must be an integer, got {x}")
    return int(x)


def load_document(data: Any) -> ConfigDocument:
    """Build a document from an already decoded JSON value."""
    r = _Reader()
    r.obj(data, "$", required=_REQUIRED_TOP, optional=_TOP_KEYS)
    config = _config(r, data)
    blowups = tuple(_blowup(r, b, f"$.blowups[{n}]")
                    for n, b in enumerate(r.list(data.get("blowups", []), "$.blowups")))
    hodge = _table(r, data.get("hodge_table", {}), "$.hodge_table",
                   lambda v, p: _uv_entry(r, v, p))
    chi = _table(r, data.get("chi_table", {}), "$.chi_table",
                 lambda v, p: _chi_entry(r, v, p))
    return ConfigDocument(config, blowups, hodge, chi)


def parse_config(text: str) -> ConfigDocument:
    """Parse a JSON document.

    Raises ParseError for JSON syntax and expression errors and SchemaError
    for structural problems; ``location`` is a line/column or a JSON path.
    """
    try:
        data = json.loads(text, object_pairs_hook=_unique_pairs)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    except ValueError as exc:
        raise SchemaError(str(exc), "$") from None
    return load_document(data)


# formatting ------------------------------------------------------------------


def format_uv(p) -> str:
    """Canonical text of a polynomial in u, v (integer coefficients)."""
    if p.denom != 1:
        raise ValueError("hodge table entries must be polynomials")
    num = p.numer
    if not num:
        return "0"
    parts = []
    for (i, j), c in sorted(num.terms(), key=lambda t: (-sum(t[0]), -t[0][0])):
        c = int(c)
        mono = "*".join(x if e == 1 else f"{x}^{e}" for x, e in (("u", i), ("v", j)) if e)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _ordered(config, ids):
    return config.sorted_ids(ids)


def document_to_data(doc: ConfigDocument) -> dict:
    c = doc.config
    data: dict = {
        "ambient_dim": c.ambient_dim,
        "components": [{"id": x.id, "m": x.m, "nu": x.nu} for x in c.components],
        "strata": [{"components": _ordered(c, s.comps), "cover": str(s.cover),
                    "geom": str(s.geom)} for s in c.strata],
        "selection": _ordered(c, c.selection),
    }
    if doc.blowups:
        data["blowups"] = [{
            "center_in": _ordered(c, b.center_in),
            "codim": b.codim,
            "transversal": _ordered(c, b.transversal),
            "center_strata": [{"extra": _ordered(c, e.extra), "cover": str(e.cover),
                               "geom": str(e.geom)} for e in b.center_strata],
            "new_id": b.new_id,
        } for b in doc.blowups]
    if doc.hodge_table:
        data["hodge_table"] = {k: format_uv(v) for k, v in sorted(doc.hodge_table.items())}
    if doc.chi_table:
        data["chi_table"] = dict(sorted(doc.chi_table.items()))
    return data


def format_config(doc: ConfigDocument | DivisorConfiguration) -> str:
    if isinstance(doc, DivisorConfiguration):
        doc = ConfigDocument(doc)
    return json.dumps(document_to_data(doc), indent=2, ensure_ascii=False) + "\n"


def read_config(path) -> ConfigDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
