import json
import subprocess
import sys

import pytest


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "algdyn", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def report(*args):
    code, out, err = run(*args)
    assert code == 0, err
    return json.loads(out)


def test_analyze_identity_map():
    r = report("analyze-map", '{"N": 3, "table": [0, 1, 2]}')
    assert r["ok"] and r["result"]["iteration"]["N_image"] == 0
    assert r["command"] == "analyze-map"
    assert len(r["input_sha256"]) == 64


def test_construct_shift():
    r = report("construct-shift", '{"p": 2, "h_order": 3, "base_size": 2}')
    orbit = r["result"]["orbit"]
    assert (orbit["index"], orbit["period"], orbit["order"]) == (2, 3, 4)


def test_output_is_deterministic():
    args = ("construct-product", '{"nu": [0, 1, 1], "h": [0, 2], "j": [0, 1], "base_size": 2}')
    assert run(*args)[1] == run(*args)[1]


def test_polynomial_map_with_dot():
    r = report("analyze-map", '{"p": 3, "n": 1, "polys": ["x0^2", "x1^2"], "space": "projective"}',
               "--emit-dot")
    assert r["result"]["table"] == [0, 1, 2, 2]
    assert r["result"]["dot"].startswith("digraph")


def test_analyze_matrix_infinite_group_part():
    r = report("analyze-matrix", '{"n": 2, "entries": [[1, 1], [0, 1]]}')
    assert r["result"]["group_part_order"] == "infinite"


def test_analyze_matrix_rational_entries():
    r = report("analyze-matrix", '{"entries": [["1/2", 0], [0, 0]]}')
    assert r["result"]["fitting"]["m"] == 1
    assert r["result"]["fitting"]["g"] == [["1/2", 0], [0, 0]]


def test_budget_exit_code():
    code, _, err = run("analyze-matrix", '{"entries": [[1, 1], [0, 1]], "field": {"Fp": 7}}', "--budget", "3")
    assert code == 3
    assert json.loads(err)["error"] == "OrderExceedsBudget"


@pytest.mark.parametrize("args", [
    ("analyze-map", '{"N": 2, "table": [0, 5]}'),
    ("analyze-map", "not json"),
    ("analyze-matrix", '{"entries": [[0.5]]}'),
    ("analyze-map", '{"p": 4, "n": 1, "polys": ["x0"]}'),
    ("construct-product", '{"nu": [0, 0], "h": [0, 1], "j": [0, 1], "base_size": 2}'),
])
def test_input_errors_exit_1(args):
    code, out, err = run(*args)
    assert code == 1 and out == ""
    assert json.loads(err)["exit_code"] == 1


def test_cone_extremal_witness():
    r = report("cone", "extremal", json.dumps({"cone": {"d": 2, "generators": [[1, 0], [0, 1]]},
                                               "subcone": {"d": 2, "generators": [[1, 1]]}}))
    assert r["result"]["extremal"] is False
    assert r["result"]["witness"] == {"a": ["1", "0"], "b": ["0", "1"]}


def test_cone_chain():
    chain = [{"d": 2, "generators": []}, {"d": 2, "generators": [[1, 0]]},
             {"d": 2, "generators": [[1, 0], [0, 1]]}]
    r = report("cone", "chain", json.dumps({"cone": chain[-1], "chain": chain}))
    assert r["result"]["stabilizes_at"] == 2


def test_elliptic_decide_no():
    r = report("elliptic", "decide", '{"a": 0, "b": 17, "fibers": [[["-2", "3"], ["-1", "4"]]]}')
    assert r["result"]["decision"] == {"answer": "no", "fiber_index": 0, "witness_difference": ["52", "-375"]}


def test_elliptic_fixed_point():
    r = report("elliptic", "fixed-point", '{"field": {"Fp": 11}, "a": 1, "b": 1, "k": 0, "z0": ["0", "1"]}')
    assert r["result"]["fixed_point"] == ["0", "1"]


def test_witness_gl2(tmp_path):
    out = tmp_path / "w.json"
    code, stdout, _ = run("witness-gl2", "--nmax", "7", "--output", str(out))
    assert code == 0 and stdout == ""
    r = json.loads(out.read_text())
    assert r["result"]["fg_power_nmax"] == [[1, 7], [0, 1]]


def test_input_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"N": 2, "table": [1, 0]}')
    r = report("analyze-map", "--input", str(path))
    assert r["result"]["iteration"]["orbit"]["period"] == 2
