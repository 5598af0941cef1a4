import json

import pytest
from click.testing import CliRunner

from mwt.cli import main
from mwt.parse import EvalError, ParseError, eval_expr
from mwt.suites import REGISTRY


def run(*args):
    return CliRunner().invoke(main, list(args))


def ev(src):
    r = run("eval", src)
    assert r.exit_code == 0, r.output
    return json.loads(r.output)


# -- eval ---------------------------------------------------------------------

@pytest.mark.parametrize("src,want", [
    ("n_eps(GF(3),2)", "h"),
    ("n_eps(GF(5),3)", "3"),
    ("transfer(geo, GF(9)/GF(3) by t^2+1, gw<1>)", "h"),
    ("transfer(bt, GF(3) -> t^2+t+2, gw<1>)", "h"),
    ("residue(t, [t,2] over GF(3)(t))", "[2]"),
    ("[2]+[3] over GF(5)", "[1]"),
])
def test_eval_values(src, want):
    out = ev(src)
    assert out["value"] == want
    assert out["expr"] == src


def test_eval_function_field_equality():
    assert ev("equal([t,1-t], [t,2]-[t,2] over GF(5)(t))")["equal"] is True
    assert ev("equal([t], [2*t] over GF(5)(t))")["equal"] is False


@pytest.mark.parametrize("src", ["foo(", "[2 over GF(5)", "n_eps(GF(4),2)", ""])
def test_eval_parse_errors_exit_2(src):
    r = run("eval", src)
    assert r.exit_code == 2


def test_eval_semantic_error_exits_1():
    r = run("eval", "equal([t,1-t], 0 over GF(5)(t))")
    assert r.exit_code == 1
    assert "degree" in r.output


def test_eval_expr_error_types():
    with pytest.raises(ParseError):
        eval_expr("n_eps(")
    with pytest.raises(EvalError):
        eval_expr("residue(t, [t] over GF(3))")


def test_eval_pretty():
    r = run("eval", "--pretty", "n_eps(GF(3),2)")
    assert r.exit_code == 0 and "value: h" in r.output


# -- suite --------------------------------------------------------------------

def test_suite_report_shape():
    r = run("suite", "nilpotence", "--q", "5", "--no-timing")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert set(rep) == {"suite", "params", "seed", "cases_run", "failures", "elapsed_ms", "pass"}
    assert rep["pass"] and rep["elapsed_ms"] == 0 and rep["seed"] == 1


def test_suite_is_deterministic():
    a = run("suite", "characterization", "--q", "3", "--samples", "10", "--seed", "7", "--no-timing")
    b = run("suite", "characterization", "--q", "3", "--samples", "10", "--seed", "7", "--no-timing")
    assert a.exit_code == 0 and a.output == b.output


def test_failing_suite_exits_1():
    r = run("suite", "lam-formulas", "--q", "3", "--no-timing")
    assert r.exit_code == 1
    rep = json.loads(r.output)
    assert not rep["pass"] and rep["failures"]
    f = rep["failures"][0]
    assert {"case", "expected", "got"} <= set(f)


def test_corrected_lam_variant_passes():
    r = run("suite", "lam-formulas", "--q", "3", "--variant", "corrected", "--no-timing")
    assert r.exit_code == 0


@pytest.mark.parametrize("args", [
    ("suite", "nope"),
    ("suite", "nilpotence", "--mode", "bt"),
    ("suite", "nilpotence", "--q", "4"),
    ("suite", "nilpotence", "--q", "abc"),
    ("table", "gw"),
    ("table", "gw", "--q", "6"),
    ("frobnicate",),
])
def test_usage_errors_exit_2(args):
    assert run(*args).exit_code == 2


def test_suite_output_file(tmp_path):
    out = tmp_path / "rep.json"
    r = run("suite", "nilpotence", "--q", "3", "--no-timing", "--output", str(out))
    assert r.exit_code == 0
    assert json.loads(out.read_text()) == json.loads(r.output)


# -- tables and listing ---------------------------------------------------------

def test_gw_table():
    r = run("table", "gw", "--q", "5")
    t = json.loads(r.output)
    assert t["minus_one"] == "square"
    assert t["square_classes"] == {"square": ["1", "4"], "nonsquare": ["2", "3"]}
    assert t["n_eps"]["2"] == "h"


@pytest.mark.parametrize("q,order", [(3, 4), (5, 2)])
def test_witt_table(q, order):
    t = json.loads(run("table", "witt", "--q", str(q)).output)
    assert t["order_of_<1>"] == order
    assert len(t["elements"]) == 4


def test_list_suites_complete():
    r = run("list-suites")
    names = [s["name"] for s in json.loads(r.output)]
    assert names == list(REGISTRY)
    assert len(names) == 14
    assert {"kato-morel", "characterization", "lam-formulas", "nilpotence", "r3a", "r1c-strong",
            "homotopy-ses", "coprime-kill", "generation", "prime-generation"} <= set(names)
