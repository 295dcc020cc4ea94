import json

import pytest

from kmsflow import catalog, io
from kmsflow.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(io.dumps(obj))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pascal_files(tmp_path):
    flow = write(tmp_path, "flow.json", io.flow_to_dict(catalog.pascal_flow(4)))
    system = write(tmp_path, "nu.json", io.system_to_dict(catalog.bernoulli_system(4, "1/2")))
    return flow, system


def test_validate_ok_and_failure(tmp_path, capsys, pascal_files):
    flow, _ = pascal_files
    code, out, _ = run(capsys, ["validate", "-i", flow])
    assert code == 0 and json.loads(out)["valid"]
    bad = write(tmp_path, "bad.json", {"levels": [["r"], ["a", "b"]],
                                       "edges": [{"from": [0, "r"], "to": [1, "a"]}]})
    code, out, err = run(capsys, ["validate", "-i", bad])
    assert code == 3
    assert json.loads(out)["violations"][0]["axiom"] == "iv"
    assert json.loads(err)["error"] == "validation-failure"


def test_link_csv(capsys, pascal_files):
    flow, _ = pascal_files
    code, out, _ = run(capsys, ["link", "-i", flow, "--upper", "3", "--lower", "2"])
    assert code == 0
    assert out.splitlines()[2] == "3:1,1/3,2/3,0"


def test_partition_json(capsys, pascal_files):
    flow, _ = pascal_files
    code, out, _ = run(capsys, ["partition", "-i", flow])
    d = json.loads(out)
    assert code == 0 and d["mode"] == "exact" and d["vertex_Z"]['[4,"2"]'] == "6"


def test_harmonic_check_and_extend(tmp_path, capsys, pascal_files):
    flow, system = pascal_files
    code, out, _ = run(capsys, ["harmonic", "check", "-i", flow, "--system", system])
    assert code == 0 and json.loads(out)["passed"]
    measure = write(tmp_path, "mu.json", {'[4,"0"]': "1/2", '[4,"4"]': "1/2"})
    code, out, _ = run(capsys, ["harmonic", "extend", "-i", flow, "--measure", measure])
    assert code == 0 and json.loads(out)['[1,"1"]'] == "1/2"
    code, _, err = run(capsys, ["harmonic", "check", "-i", flow])
    assert code == 2


def test_sample_is_reproducible(capsys, pascal_files):
    flow, system = pascal_files
    argv = ["sample", "-i", flow, "--system", system, "--level", "4", "--count", "3", "--seed", "9"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    lines = [json.loads(x) for x in first.splitlines()]
    assert first == second and len(lines) == 3 and len(lines[0]["path"]) == 4


def test_converge(tmp_path, capsys, pascal_files):
    flow, system = pascal_files
    path = write(tmp_path, "path.json", [[1, "0"], [2, "1"], [3, "1"], [4, "2"]])
    code, out, _ = run(capsys, ["converge", "-i", flow, "--system", system,
                                "--targets", '[[1, "1"]]', "--path", path])
    assert code == 0
    assert out.splitlines() == ["m,1:1,deviation", "2,1/2,0", "3,1/3,1/6", "4,1/2,0"]


def test_realize(tmp_path, capsys):
    import numpy as np
    rng = np.random.default_rng(0)
    k = catalog.random_link(catalog.random_graph(3, rng, max_mult=2), rng)
    spec = write(tmp_path, "link.json", io.link_to_dict(k))
    code, out, _ = run(capsys, ["realize", spec, "--beta", "2", "--style", "geometric:1/3"])
    assert code == 0
    f = io.flow_from_dict(json.loads(out))
    assert all(v == 1 for v in f.table.vertex_z.values())
    code, _, err = run(capsys, ["realize", spec, "--beta", "1", "--style", "nope"])
    assert code == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, ["catalog", "young", "--depth", "3"])
    assert code == 0 and json.loads(out)["levels"][3] == ["3", "2,1", "1,1,1"]
    code, out, _ = run(capsys, ["catalog", "plancherel", "--depth", "3"])
    assert json.loads(out)['[3,"2,1"]'] == "2/3"


def test_error_codes(tmp_path, capsys):
    code, _, err = run(capsys, ["validate", "-i", str(tmp_path / "missing.json")])
    assert code == 5 and json.loads(err)["error"] == "io-error"
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    code, _, _ = run(capsys, ["validate", "-i", str(junk)])
    assert code == 2
    irr = write(tmp_path, "irr.json", {"beta": 1, "levels": [["r"], ["a"]],
                                       "edges": [{"from": [0, "r"], "to": [1, "a"], "spectrum": [1]}]})
    code, _, _ = run(capsys, ["partition", "-i", irr, "--mode", "exact"])
    assert code == 4
    code, _, _ = run(capsys, ["partition", "-i", irr])
    assert code == 0
