import csv
import io
import json
import subprocess
import sys

import pytest

from polyan.algebra import ZB, Z
from polyan.cli import run
from polyan.parse import parse_expression
from polyan.report import EXISTENCE_NOTE, report_all
from polyan.special import hermite, hermite_particular_solution


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_solve_then_verify(monkeypatch):
    code, out, _ = call("solve", "--expr", "F(3,w)")
    assert code == 0
    code, out2, _ = call("verify", "--input", "-", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out2)["verified"] is True


def test_verify_with_datum(tmp_path):
    p = tmp_path / "u.txt"
    p.write_text("zb*z")
    assert call("verify", "--input", str(p), "--datum", "z")[0] == 0
    code, out, err = call("verify", "--input", str(p), "--datum", "zb")
    assert code == 1 and json.loads(out)["verified"] is False and "failed" in err
    assert call("verify", "--input", str(p))[0] == 2


def test_determinism():
    a = call("report", "--expr", "F(2,w)", "--w", "1,1")[1]
    b = call("report", "--expr", "F(2,w)", "--w", "1,1")[1]
    assert a == b


def test_solve_order_flag():
    code, out, _ = call("solve", "--expr", "z", "--order", "3")
    assert code == 0 and json.loads(out)["order"] == 3
    code, _, err = call("solve", "--expr", "zb^3", "--order", "1")
    assert code == 1 and "OrderTooSmall" in err


def test_exit_codes():
    assert call("solve", "--expr", "exp(zb*w)")[0] == 1
    assert call("solve", "--expr", "z +")[0] == 2
    assert call("solve")[0] == 2
    assert call("nosuch")[0] == 2
    assert call("solve", "--input", "/nonexistent/file")[0] == 2
    assert call("kernel", "--n", "0")[0] == 2
    assert call("norm", "--expr", "z", "--weight", "power")[0] == 2
    assert call("norm", "--expr", "z", "--w", "1,2,3")[0] == 2


def test_decompose():
    code, out, _ = call("decompose", "--expr", "z*zb + 1")
    d = json.loads(out)
    assert code == 0 and d["order"] == 2


def test_kernel_hermite_laguerre():
    code, out, _ = call("kernel", "--n", "2")
    assert code == 0 and parse_expression(out).isclose(parse_expression("F(2)"))
    code, out, _ = call("kernel", "--n", "3", "--table")
    assert out.splitlines()[0] == "index,polynomial" and len(out.splitlines()) == 4
    code, out, _ = call("hermite", "--m", "2", "--n", "2", "--rodrigues")
    assert parse_expression(out).isclose(hermite(2, 2))
    code, out, _ = call("hermite", "--m", "1", "--n", "1", "--table")
    assert len(out.splitlines()) == 5
    code, out, _ = call("laguerre", "--m", "2", "--alpha", "1")
    assert [c["re"] for c in json.loads(out)["coefficients"]] == [3, -3, 0.5]


def test_moments():
    code, out, _ = call("moments", "--eta", "20")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,eta,factorial,eta_le_factorial,abs_error_bound"
    assert len(lines) == 22 and all(",true," in l for l in lines[1:])
    code, out, _ = call("moments", "--eta", "2", "--format", "markdown")
    assert out.startswith("| n |")


def test_norm():
    code, out, _ = call("norm", "--expr", "z^3")
    assert code == 0 and out.splitlines()[0] == "name,value,abs_error_bound,method"
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][0] == "norm[gaussian,n=0]" and rows[1][1] == "6"
    code, out, _ = call("norm", "--expr", "exp(z*wb)", "--w", "1,0", "--format", "json")
    assert abs(json.loads(out)["value"] - 2.718281828459045) < 1e-8
    code, out, _ = call("norm", "--expr", "z^2", "--weight", "power", "--rho", "1.5", "--format", "json")
    assert abs(json.loads(out)["value"] - 8) < 1e-8


def test_estimate():
    code, out, _ = call("estimate", "--expr", "H(2,2)", "--w", "1,1")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = call("estimate", "--expr", "z*zb", "--which", "remainder_bound", "--solution", "z*zb^2/2 + z")
    d = json.loads(out)
    assert code == 0 and d["lhs"]["value"] == pytest.approx(eta_h1_z(), rel=1e-12)
    code, out, _ = call("estimate", "--expr", "z", "--constant", "hspace")
    assert json.loads(out)["bound_constant"] == 3
    assert call("estimate", "--expr", "z", "--constant", "bogus")[0] == 2
    code, out, _ = call("estimate", "--expr", "z", "--format", "csv")
    assert out.startswith("which,lhs")


def eta_h1_z():
    # remainder u_0 = z, so |u_0|^2 = t in the radial variable
    from polyan.measures import radial_moment

    return radial_moment(1, 2).value


def test_report_formats():
    for fmt in ("json", "markdown", "csv"):
        code, out, _ = call("report", "--expr", "z^2*zb^2", "--order", "3", "--format", fmt)
        assert code == 0 and "Out of scope" in out


def test_report_examples():
    r = report_all((Z * ZB) ** 2, 3).to_dict()
    assert parse_expression(json.dumps(r["particular_solution"])).isclose(ZB * (Z * ZB) ** 2 / 3, 1e-14)
    r0 = report_all(parse_expression("0"))
    d0 = r0.to_dict()
    assert all(row["value"] == 0 for row in d0["sobolev_norms"])
    assert all(row["passed"] for row in d0["estimates"])
    rh = report_all(hermite(2, 2), 3).to_dict()
    u = parse_expression(json.dumps(rh["particular_solution"]))
    assert u.isclose(hermite_particular_solution(2, 2), 1e-12)
    assert EXISTENCE_NOTE in rh["notes"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polyan", "hermite", "--m", "1", "--n", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["terms"][0]["a"] == 1
