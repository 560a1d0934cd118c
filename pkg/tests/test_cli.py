import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from supersym.cli import SCHEMA, parse_expression, run
from supersym.coeffs import ALPHA
from supersym.spar import parse


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = run(list(argv), out=out, err=err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_spar_count():
    assert call("spar", "count", "--sector", "2,1,1") == (0, "11\n", "")


def test_spar_json():
    code, out, _ = call("spar", "list", "--sector", "1,1,0", "--json")
    doc = json.loads(out)
    assert doc == {"schema": SCHEMA, "sector": "(1|1,0)", "count": 2,
                   "superpartitions": ["[1o]", "[1,0o]"]}


def test_expand_power_sum():
    code, out, _ = call("expand", "--basis", "p", "--spar", "[2o,0o,0u]")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == SCHEMA
    assert doc["m"] == [{"spar": "[2b,0o]", "coeff": "-1/1"},
                        {"spar": "[2o,0b]", "coeff": "1/1"},
                        {"spar": "[2o,0o,0u]", "coeff": "1/1"}]


def test_expand_g_symbolic():
    code, out, _ = call("expand", "--basis", "g", "--spar", "[1o]", "--alpha", "alpha")
    doc = json.loads(out)
    assert code == 0
    assert {t["spar"]: t["coeff"] for t in doc["m"]} == {"[1o]": "(alpha + 1)/(alpha**2)",
                                                          "[1,0o]": "(1)/(alpha**2)"}


def test_parse_error_exit_code():
    code, _, err = call("expand", "--basis", "p", "--spar", "[2q,1]")
    assert code == 2 and "'2q'" in err
    code, _, err = call("spar", "count", "--sector", "2,x,1")
    assert code == 2 and "'x'" in err
    code, _, err = call("inner", "--left", "m[1o] + ?", "--right", "h[1o]")
    assert code == 2 and "'?'" in err
    code, _, err = call("expand", "--basis", "g", "--spar", "[1]", "--alpha", "1/0")
    assert code == 2 and "1/0" in err


def test_convert_from_stdin_json():
    doc = {"basis": "m", "terms": [{"spar": "[2o,0o,0u]", "coeff": "1"}]}
    code, out, _ = call("convert", "--from", "m", "--to", "p", "--input", "-", stdin=json.dumps(doc))
    assert code == 0
    got = {t["spar"]: t["coeff"] for t in json.loads(out)["terms"]}
    assert got == {"[2b,0o]": "1/1", "[2o,0b]": "-1/1", "[2o,0o,0u]": "1/1"}


def test_convert_roundtrip_via_file(tmp_path):
    src = tmp_path / "f.txt"
    src.write_text("2*h[2o,1u] - 1/3 h[1b,1,0o]")
    code, out, _ = call("convert", "--from", "h", "--to", "e", "--input", str(src))
    assert code == 0
    back = tmp_path / "e.json"
    back.write_text(out)
    code, out, _ = call("convert", "--from", "e", "--to", "h", "--input", str(back))
    got = {t["spar"]: t["coeff"] for t in json.loads(out)["terms"]}
    assert got == {"[2o,1u]": "2/1", "[1b,1,0o]": "-1/3"}


def test_inner_duality():
    code, out, _ = call("inner", "--left", "m[1o,1u]", "--right", "h[1o,1u]")
    assert json.loads(out)["value"] == "-1/1"
    code, out, _ = call("inner", "--left", "m[1o]", "--right", "g[1o]", "--alpha", "2")
    assert json.loads(out)["value"] == "1/1"


def test_expression_parser():
    f = parse_expression("p[1o] - 2/3*p[1o] + (alpha+1) p[0o]")
    assert f.coeffs[parse("[1o]")] == Fraction(1, 3)
    assert f.coeffs[parse("[0o]")] == ALPHA + 1
    assert len(f) == 2


@pytest.mark.parametrize("check", ["kernel", "duality", "involution", "triangularity",
                                   "table2", "generic-n"])
def test_verify_suites_pass(check):
    code, out, _ = call("verify", check, "--bound", "1")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass" and doc["schema"] == SCHEMA


def test_verify_gate_bound_3():
    assert call("verify", "duality", "--bound", "3")[0] == 0


def test_output_is_deterministic():
    a = call("expand", "--basis", "e", "--spar", "[2b,1,0o]")
    b = call("expand", "--basis", "e", "--spar", "[2b,1,0o]")
    assert a == b


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "supersym", "spar", "count", "--sector", "2,1,1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "11\n"


def test_verify_failure_exit_code(monkeypatch):
    from supersym import cli
    from supersym.transforms import Report

    bad = Report("fake", "(0|0,0)")
    bad.add("k", 1, 0)
    monkeypatch.setattr(cli, "run_check", lambda check, bound, alpha=None: [bad])
    code, out, _ = call("verify", "kernel", "--bound", "0")
    assert code == 1 and json.loads(out)["status"] == "fail"
