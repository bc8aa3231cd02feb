import json
import subprocess
import sys
from fractions import Fraction

import pytest

from petrikit import catalog
from petrikit.cli import main
from petrikit.deform import LaurentPolynomial
from petrikit.fixtures_runner import FIXTURE_DIR
from petrikit.io import (
    InputError,
    curve_from_json,
    curve_to_json,
    divisor_from_json,
    divisor_to_json,
    dumps,
    schiffer_from_json,
    schiffer_to_json,
)

CURVES = FIXTURE_DIR / "curves"
DIVS = FIXTURE_DIR / "divisors"
SCH = FIXTURE_DIR / "schiffer"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


# wire formats


def test_curve_roundtrip():
    c = catalog.curve("g3_x7mxp1")
    assert curve_from_json(curve_to_json(c)) == c


@pytest.mark.parametrize(
    "obj",
    [
        {"model": "hyperelliptic-even", "f": ["1", "0", "1"]},
        {"model": "hyperelliptic-odd", "f": [1.5, "0", "0", "1"]},
        {"model": "hyperelliptic-odd", "f": ["0", "0", "1", "1"]},
        {"model": "hyperelliptic-odd"},
    ],
)
def test_curve_validation(obj):
    with pytest.raises(InputError):
        curve_from_json(obj)


def test_divisor_roundtrip():
    c = catalog.curve("g1_x3p1")
    obj = {"support": [{"x": "2", "y": "-3", "mult": 2}, {"place": "infinity", "mult": -1}]}
    d = divisor_from_json(c, obj)
    assert d.degree == 1
    assert divisor_from_json(c, divisor_to_json(d)) == d


@pytest.mark.parametrize(
    "obj",
    [
        {"support": [{"x": "2", "y": "4", "mult": 1}]},
        {"support": [{"x": "2", "y": "3"}]},
        {"support": [{"x": "2", "y": "3", "mult": "one"}]},
        {"points": []},
    ],
)
def test_divisor_validation(obj):
    with pytest.raises(InputError):
        divisor_from_json(catalog.curve("g1_x3p1"), obj)


def test_schiffer_roundtrip():
    c = catalog.curve("g1_x3p1")
    obj = json.loads((SCH / "g1_generic.json").read_text())
    lift = schiffer_from_json(c, obj)
    assert lift.b(2) == LaurentPolynomial({-2: Fraction(1, 2)}) and lift.a(1) == LaurentPolynomial({-1: 3})
    assert schiffer_from_json(c, schiffer_to_json(lift)) == lift


@pytest.mark.parametrize(
    "obj",
    [
        {"place": {"place": "infinity"}, "beta": []},
        {"place": {"x": "-1", "y": "0"}, "beta": []},
        {"place": {"x": "2", "y": "3"}, "beta": [{"t_order": 0, "tail": []}]},
        {"place": {"x": "2", "y": "3"}, "beta": [{"t_order": 1, "tail": [["-1"]]}]},
        {"place": {"x": "2", "y": "3"}, "beta": [{"t_order": 1, "tail": []}, {"t_order": 1, "tail": []}]},
    ],
)
def test_schiffer_validation(obj):
    with pytest.raises(InputError):
        schiffer_from_json(catalog.curve("g1_x3p1"), obj)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")


# commands


def test_rr_report(capsys):
    code, rep, _ = run(capsys, "rr", CURVES / "g1_x3mx.json", DIVS / "inf2.json")
    assert code == 0
    assert set(rep) == {"command", "inputs", "seed", "results", "version"}
    assert rep["results"]["dimension"] == 2
    assert [b["text"] for b in rep["results"]["basis"]] == ["1", "x"]
    assert rep["results"]["basis"][1]["a"] == {"num": ["0", "1"], "den": ["1"]}


@pytest.mark.parametrize("div,dim", [("zero.json", 1), ("inf_neg1.json", 0)])
def test_rr_trivial_cases(capsys, div, dim):
    code, rep, _ = run(capsys, "rr", CURVES / "g1_x3mx.json", DIVS / div)
    assert code == 0 and rep["results"]["dimension"] == dim


def test_petri_report(capsys):
    code, rep, _ = run(capsys, "petri", CURVES / "g3_x7m1.json", DIVS / "inf2.json", "--tower-depth", "2")
    r = rep["results"]
    assert code == 0 and r["kernel_dim"] == 1 and r["mu0_rank"] == 3
    assert r["tower"] == [{"level": 1, "kappa": "s1*e2 - s2*e1", "nonzero": True, "value": "(-y) (dx/y)^2"}]


@pytest.mark.parametrize("curve", ["g1_x3mx.json", "g2_x5m1.json"])
def test_petri_unobstructed(capsys, curve):
    code, rep, _ = run(capsys, "petri", CURVES / curve, DIVS / "inf2.json")
    assert code == 0 and rep["results"]["kernel_dim"] == 0 and rep["results"]["tower"] == []


def test_schiffer_extend(capsys):
    code, rep, _ = run(
        capsys, "schiffer", CURVES / "g1_x3p1.json", DIVS / "inf2.json", SCH / "g1_generic.json", "--t-order", "4"
    )
    assert code == 0 and rep["results"]["achieved_order"] == 3 and not rep["results"]["obstructed"]


def test_schiffer_extend_obstructed(capsys):
    code, rep, _ = run(
        capsys, "schiffer", CURVES / "g3_x7mxp1.json", DIVS / "inf2.json", SCH / "g3_pole1.json", "--t-order", "3"
    )
    secs = rep["results"]["sections"]
    assert code == 0 and rep["results"]["obstructed"]
    assert "obstruction_tail" not in secs[0] and secs[1]["obstruction_tail"]["terms"] == [["-1", "-1"]]


def test_schiffer_pair(capsys):
    args = ["schiffer", CURVES / "g3_x7mxp1.json", DIVS / "inf2.json", SCH / "g3_pole1.json", "--mode", "pair"]
    code, rep, _ = run(capsys, *args)
    assert code == 0 and rep["results"]["value"] == "-1" == rep["results"]["contraction"]
    code, rep, _ = run(capsys, *args, "--oracle")
    assert rep["results"]["first_order_extendable_dim"] == 1


def test_schiffer_kernel_zero_lift(capsys):
    code, rep, _ = run(
        capsys, "schiffer", CURVES / "g3_x7mxp1.json", DIVS / "inf2.json", SCH / "g3_zero.json",
        "--mode", "kernel", "--t-order", "3",
    )
    assert rep["results"]["dims"] == [2, 2, 2] and rep["results"]["h0"] == 2


def test_schiffer_symbol(capsys):
    code, rep, _ = run(
        capsys, "schiffer", CURVES / "g3_x7mxp1.json", DIVS / "inf2.json", SCH / "g3_pole1.json",
        "--mode", "symbol", "--t-order", "1",
    )
    assert code == 0 and rep["results"]["series"]["terms"] == [["-2", "1/2"]]


def test_verify_exit_and_payload(capsys):
    code, rep, _ = run(capsys, "verify", "--suite", "algebra", "--trials", "5", "--seed", "3")
    assert code == 0 and rep["seed"] == "3" and rep["results"]["passed"]
    names = [p["name"] for p in rep["results"]["properties"]]
    assert "matrix_kernel_rank_nullity" in names


def test_seed_before_subcommand_is_kept(capsys):
    _, rep, _ = run(capsys, "--seed", "17", "verify", "--suite", "algebra", "--trials", "1")
    assert rep["seed"] == "17"


def test_json_out_and_timing(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["rr", str(CURVES / "g1_x3mx.json"), str(DIVS / "inf2.json"), "--json-out", str(out), "--timing"])
    assert code == 0 and capsys.readouterr().out == ""
    rep = json.loads(out.read_text())
    assert "timing_ms" in rep


def test_reports_are_reproducible(capsys):
    args = ["petri", CURVES / "g3_x7m1.json", DIVS / "inf2.json"]
    main([str(a) for a in args])
    first = capsys.readouterr().out
    main([str(a) for a in args])
    assert capsys.readouterr().out == first


@pytest.mark.parametrize(
    "argv",
    [
        ["rr", "missing.json", "missing.json"],
        ["rr", str(CURVES / "g1_x3mx.json")],
        ["verify", "--suite", "nope"],
        ["verify", "--seed", "-1"],
        ["verify", "--seed", str(2**64)],
        ["schiffer", str(CURVES / "g1_x3p1.json"), str(DIVS / "inf2.json"), str(SCH / "g1_generic.json"), "--mode", "symbol"],
        ["schiffer", str(CURVES / "g1_x3p1.json"), str(DIVS / "inf2.json"), str(SCH / "g1_zero.json"), "--t-order", "0"],
        ["petri", str(CURVES / "g3_x7m1.json"), str(DIVS / "inf_neg1.json")],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    code = main(argv)
    _, err = capsys.readouterr()
    assert code == 2
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_marked_place_in_support_rejected(tmp_path, capsys):
    d = tmp_path / "d.json"
    d.write_text(json.dumps({"support": [{"x": "2", "y": "3", "mult": 1}]}))
    code = main(["schiffer", str(CURVES / "g1_x3p1.json"), str(d), str(SCH / "g1_generic.json")])
    assert code == 2 and "marked" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "petrikit", "rr", str(CURVES / "g1_x3mx.json"), str(DIVS / "zero.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["dimension"] == 1
