import json

import pytest

import _helium as he

AFFINE = """\
input a: int @K <= P1;
input x: int @K <= P1;
input b: int @K <= P2;
output y => Q @K: a * x + b;
"""


def test_compile_and_run():
    circuit = json.loads(he.compile(AFFINE))
    assert circuit["metrics"]["mult_depth"] == 1
    assert [i["opcode"] for i in circuit["instructions"]][-1] == "STORE"

    inputs = json.dumps({"P1": {"a": 3, "x": 4}, "P2": {"b": 5}})
    result = he.run(he.compile(AFFINE), inputs)
    assert result["outputs"]["y"] == [17]
    assert result["max_depth"] == 1


def test_oracle_agrees():
    inputs = json.dumps({"P1": {"a": 2, "x": 7}, "P2": {"b": 1}})
    assert he.oracle(AFFINE, inputs)["y"] == he.run(he.compile(AFFINE), inputs)["outputs"]["y"]


def test_format_is_canonical():
    text = he.format("output   o:1+2 * 3;")
    assert text == he.format(text)
    assert "1 + 2 * 3" in text


def test_pre_counts_on_benchmark_family():
    circuit = json.loads(he.compile(he.tumor_source(4, 2, 8)))
    assert circuit["metrics"]["pre_count"] == 4
    naive = json.loads(he.compile(he.tumor_source(4, 2, 8), no_opt=True))
    assert naive["metrics"]["pre_count"] == 8


def test_sweep_csv():
    rows = he.sweep([8], [1, 2, 4, 8]).strip().splitlines()
    assert rows[0].startswith("n,k,p_naive,p_opt,reduction_pct")
    reductions = [float(r.split(",")[4]) for r in rows[1:]]
    assert reductions == [0.0, 50.0, 75.0, 87.5]


def test_errors_surface_as_exceptions():
    with pytest.raises(he.CompileError):
        he.compile("output o: nosuch;")
    with pytest.raises(he.CompileError):
        he.format("var : int;")
