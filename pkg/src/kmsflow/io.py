"""JSON and CSV formats.

Graph JSON::

    {"levels": [["1"], ["a", "b"]],
     "edges": [{"from": [0, "1"], "to": [1, "a"], "m": 1}, ...]}

Flow JSON adds ``"beta"`` and, per edge, one of ``"spectrum": [...]`` or
``"Z": value``. A spectrum may carry ``"boltzmann": [...]``, the exact
weights exp(-beta * lambda) at the file's beta. Link specs carry ``"kappa"``
per edge. Coherent systems and level measures are maps ``{"[n,label]": value}``.
Rationals are written as ``"p/q"`` strings, floats with 17 significant digits,
infinity as ``"inf"``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any

from . import numeric as num
from .errors import NumericModeConflict, SpecParseError
from .flow import FlowSpec, PartitionOnly, Spectrum
from .graph import GradedGraph, Vertex
from .harmonic import CoherentSystem, LevelMeasure
from .links import LinkMatrix
from .realize import AbstractLink


def dumps(obj: Any, indent: int | None = None) -> str:
    """json.dumps with Fractions as strings and floats at 17 significant digits."""
    return _encode(obj, indent, 0)


def _encode(obj, indent, depth) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isinf(obj) and obj > 0:
            return '"inf"'
        if math.isnan(obj) or math.isinf(obj):
            raise ValueError(f"cannot encode {obj}")
        text = format(obj, ".17g")
        if not any(c in text for c in ".en"):
            text += ".0"
        return text
    if isinstance(obj, dict):
        items = [(_encode(str(k), None, 0), _encode(v, indent, depth + 1)) for k, v in obj.items()]
        if indent is None or not items:
            return "{" + ", ".join(f"{k}: {v}" for k, v in items) + "}"
        pad = " " * (indent * (depth + 1))
        return "{\n" + ",\n".join(f"{pad}{k}: {v}" for k, v in items) + "\n" + " " * (indent * depth) + "}"
    if isinstance(obj, (list, tuple)):
        parts = [_encode(v, indent, depth + 1) for v in obj]
        flat = all(not isinstance(v, (dict, list, tuple)) for v in obj)
        if indent is None or flat or not parts:
            return "[" + ", ".join(parts) + "]"
        pad = " " * (indent * (depth + 1))
        return "[\n" + ",\n".join(pad + p for p in parts) + "\n" + " " * (indent * depth) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def vertex_key(z: Vertex) -> str:
    return json.dumps([z.level, z.label], ensure_ascii=False, separators=(",", ":"))


def parse_vertex(obj) -> Vertex:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"bad vertex key {obj!r}") from exc
    if not isinstance(obj, (list, tuple)) or len(obj) != 2 or not isinstance(obj[0], int):
        raise SpecParseError(f"vertex must be [level, label], got {obj!r}")
    return Vertex(obj[0], str(obj[1]))


def graph_to_dict(g: GradedGraph) -> dict:
    return {
        "levels": [[v.label for v in level] for level in g.levels],
        "edges": [{"from": [e.source.level, e.source.label], "to": [e.target.level, e.target.label],
                   "m": e.multiplicity} for e in g.all_edges()],
    }


def graph_from_dict(d: dict) -> GradedGraph:
    try:
        levels = d["levels"]
        raw = d.get("edges", [])
        triples = []
        for item in raw:
            s, t = parse_vertex(item["from"]), parse_vertex(item["to"])
            m = item.get("m", 1)
            if not isinstance(m, int) or isinstance(m, bool):
                raise SpecParseError(f"multiplicity must be an integer, got {m!r}")
            triples.append(((s.level, s.label), (t.level, t.label), m))
        if not isinstance(levels, list) or not all(isinstance(lv, list) for lv in levels):
            raise SpecParseError("'levels' must be a list of label lists")
        return GradedGraph.build(levels, triples)
    except (KeyError, TypeError) as exc:
        raise SpecParseError(f"malformed graph spec: {exc}") from exc


def _edge_records(g: GradedGraph, d: dict):
    recs = {}
    for item in d.get("edges", []):
        s, t = parse_vertex(item["from"]), parse_vertex(item["to"])
        e = g.edge_between(t, s)
        recs[e] = item
    return recs


def flow_to_dict(f: FlowSpec) -> dict:
    d = {"beta": num.json_number(f.beta)}
    d.update(graph_to_dict(f.graph))
    for rec, e in zip(d["edges"], f.graph.all_edges()):
        t = f.thermal[e]
        if isinstance(t, PartitionOnly):
            rec["Z"] = num.json_number(t.value)
        else:
            rec["spectrum"] = [num.json_number(x) for x in t.eigenvalues]
            if t.weights is not None and t.weights_beta == f.beta:
                rec["boltzmann"] = [num.json_number(w) for w in t.weights]
    return d


def flow_from_dict(d: dict, mode: str = "auto") -> FlowSpec:
    """Parse a flow; ``mode="auto"`` picks exact arithmetic when it is possible."""
    g = graph_from_dict(d)
    if "beta" not in d:
        raise SpecParseError("flow spec needs 'beta'")
    beta = num.parse_number(d["beta"])
    thermal = {}
    try:
        for e, rec in _edge_records(g, d).items():
            if e is None:
                continue
            if "spectrum" in rec:
                eig = tuple(num.parse_number(x) for x in rec["spectrum"])
                weights = rec.get("boltzmann")
                if weights is not None:
                    thermal[e] = Spectrum(eig, tuple(num.parse_number(w) for w in weights), beta)
                else:
                    thermal[e] = Spectrum(eig)
            elif "Z" in rec:
                thermal[e] = PartitionOnly(num.parse_number(rec["Z"]))
            else:
                raise SpecParseError(f"edge {e} needs 'spectrum' or 'Z'")
    except (KeyError, TypeError) as exc:
        raise SpecParseError(f"malformed flow spec: {exc}") from exc
    try:
        if mode == "auto":
            try:
                f = FlowSpec(g, beta, thermal, num.EXACT)
                f.table
                return f
            except NumericModeConflict:
                return FlowSpec(g, beta, thermal, num.FLOAT)
        f = FlowSpec(g, beta, thermal, mode)
        f.table
        return f
    except (ValueError,) as exc:
        if isinstance(exc, NumericModeConflict):
            raise
        raise SpecParseError(str(exc)) from exc


def values_to_dict(values: dict) -> dict:
    return {vertex_key(z): num.json_number(v) for z, v in values.items()}


def values_from_dict(d: dict, mode: str) -> dict:
    if not isinstance(d, dict):
        raise SpecParseError("expected a JSON object mapping '[n,label]' to values")
    return {parse_vertex(k): num.coerce(num.parse_number(v), mode) for k, v in d.items()}


def system_to_dict(nu: CoherentSystem) -> dict:
    return values_to_dict({z: nu[z] for n in range(nu.depth + 1) for z in nu.graph.levels[n]})


def system_from_dict(d: dict, g: GradedGraph, mode: str) -> CoherentSystem:
    vals = values_from_dict(d, mode)
    for z in vals:
        g.require(z)
    depth = max((z.level for z in vals), default=0)
    return CoherentSystem(g, depth, vals)


def measure_from_dict(d: dict, g: GradedGraph, mode: str) -> LevelMeasure:
    vals = values_from_dict(d, mode)
    levels = {z.level for z in vals}
    if len(levels) != 1:
        raise SpecParseError("a level measure must live on exactly one level")
    for z in vals:
        g.require(z)
    return LevelMeasure(levels.pop(), vals)


def link_from_dict(d: dict, mode: str = num.EXACT) -> AbstractLink:
    g = graph_from_dict(d)
    weights = {}
    for e, rec in _edge_records(g, d).items():
        if e is None:
            continue
        if "kappa" not in rec:
            raise SpecParseError(f"edge {e} needs 'kappa'")
        weights[e] = num.coerce(num.parse_number(rec["kappa"]), mode)
    return AbstractLink(g, weights)


def link_to_dict(k: AbstractLink) -> dict:
    d = graph_to_dict(k.graph)
    for rec, e in zip(d["edges"], k.graph.all_edges()):
        rec["kappa"] = num.json_number(k.weights[e])
    return d


def link_matrix_to_dict(mat: LinkMatrix) -> dict:
    return {
        "upper": mat.upper,
        "lower": mat.lower,
        "rows": [[z.level, z.label] for z in mat.rows],
        "cols": [[z.level, z.label] for z in mat.cols],
        "entries": [[num.json_number(x) for x in row] for row in mat.entries],
    }


def link_matrix_from_dict(d: dict, mode: str) -> LinkMatrix:
    rows = tuple(parse_vertex(r) for r in d["rows"])
    cols = tuple(parse_vertex(c) for c in d["cols"])
    entries = tuple(tuple(num.coerce(num.parse_number(x), mode) for x in row) for row in d["entries"])
    return LinkMatrix(d["upper"], d["lower"], rows, cols, entries)


def write_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([x if isinstance(x, str) else num.format_number(x) for x in r])
    return buf.getvalue()


def csv_vertex(z: Vertex) -> str:
    return f"{z.level}:{z.label}"


def link_matrix_to_csv(mat: LinkMatrix) -> str:
    """Rows are upper vertices, columns lower vertices, cells ``n:label``-keyed."""
    header = ["vertex"] + [csv_vertex(c) for c in mat.cols]
    return write_csv(header, [[csv_vertex(z), *row] for z, row in zip(mat.rows, mat.entries)])
