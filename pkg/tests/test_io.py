import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kmsflow import catalog, io, numeric as num
from kmsflow.errors import SpecParseError
from kmsflow.links import link_matrix
from kmsflow.realize import realize_link


@given(st.fractions(max_denominator=1000))
def test_number_round_trip_exact(x):
    assert num.parse_number(num.format_number(x)) == x


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_number_round_trip_float(x):
    assert float(num.parse_number(num.format_number(x))) == x


def test_infinity_text():
    assert num.is_inf(num.parse_number("inf"))
    assert json.loads(io.dumps({"z": math.inf}))["z"] == "inf"


def test_graph_round_trip():
    g = catalog.young(5)
    h = io.graph_from_dict(json.loads(io.dumps(io.graph_to_dict(g))))
    assert h.levels == g.levels and list(h.all_edges()) == list(g.all_edges())


def test_flow_round_trip_preserves_exactness():
    f = catalog.q_pascal(4, "1/3", 2)
    h = io.flow_from_dict(json.loads(io.dumps(io.flow_to_dict(f))))
    assert h.mode == num.EXACT
    assert link_matrix(h, 4, 3).entries == link_matrix(f, 4, 3).entries


def test_auto_mode_falls_back_to_float():
    d = io.flow_to_dict(catalog.random_flow(catalog.pascal(2), 1.0, np.random.default_rng(0)))
    for rec in d["edges"]:
        rec.pop("boltzmann", None)
    assert io.flow_from_dict(d).mode == num.FLOAT


def test_realized_flow_round_trip():
    rng = np.random.default_rng(4)
    k = catalog.random_link(catalog.random_graph(3, rng, max_mult=2), rng)
    f = realize_link(k, 2, mode=num.EXACT)
    h = io.flow_from_dict(json.loads(io.dumps(io.flow_to_dict(f))))
    assert h.mode == num.EXACT
    assert all(v == 1 for v in h.table.vertex_z.values())


def test_link_round_trip():
    rng = np.random.default_rng(2)
    k = catalog.random_link(catalog.random_graph(3, rng), rng)
    k2 = io.link_from_dict(json.loads(io.dumps(io.link_to_dict(k))))
    assert dict(k2.weights) == dict(k.weights)


def test_link_matrix_round_trip(pascal8):
    mat = link_matrix(pascal8, 5, 3)
    back = io.link_matrix_from_dict(json.loads(io.dumps(io.link_matrix_to_dict(mat))), num.EXACT)
    assert back.entries == mat.entries and back.rows == mat.rows


def test_system_round_trip():
    nu = catalog.plancherel_system(4)
    back = io.system_from_dict(json.loads(io.dumps(io.system_to_dict(nu))), nu.graph, num.EXACT)
    assert back.values == nu.values


def test_malformed_specs():
    with pytest.raises(SpecParseError):
        io.graph_from_dict({"edges": []})
    with pytest.raises(SpecParseError):
        io.graph_from_dict({"levels": [["r"], ["a"]], "edges": [{"from": [0, "r"], "to": [1, "a"], "m": 1.5}]})
    with pytest.raises(SpecParseError):
        io.flow_from_dict({"levels": [["r"]]})
    with pytest.raises(SpecParseError):
        io.measure_from_dict({'[1,"0"]': "1/2", '[2,"0"]': "1/2"}, catalog.pascal(2), num.EXACT)


def test_csv_layout(pascal8):
    text = io.link_matrix_to_csv(link_matrix(pascal8, 3, 2))
    lines = text.strip().split("\n")
    assert lines[0] == "vertex,2:0,2:1,2:2"
    assert lines[2] == "3:1,1/3,2/3,0"
