import csv
import io
import json
import math
import subprocess
import sys

import pytest

from paraherm import hermite
from paraherm.cli import main
from paraherm.poly import Poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_hermite_text(capsys):
    assert run(capsys, "hermite", "--n", "2", "--p", "3", "--format", "text")[:2] == (0, "4*x^2 - 6\n")


def test_hermite_json(capsys):
    code, out, _ = run(capsys, "hermite", "--n", "0", "--p", "7", "--format", "json")
    assert code == 0 and json.loads(out) == {"coeffs": ["1"]}


def test_hermite_rational_p(capsys):
    code, out, _ = run(capsys, "hermite", "--n", "3", "--p", "1/2", "--format", "json")
    assert json.loads(out)["coeffs"] == ["0", "-10", "0", "8"]


def test_hermite_p1_default(capsys):
    code, out, _ = run(capsys, "hermite", "--n", "6", "--format", "csv")
    assert code == 0
    assert [r["coefficient"] for r in rows(out)] == ["-120", "0", "720", "0", "-480", "0", "64"]


@pytest.mark.parametrize("argv", [
    ["hermite", "--n", "2", "--p", "0"],
    ["hermite", "--n", "2", "--p", "1,2"],
    ["hermite", "--n", "-1"],
    ["verify", "--suite", "fock", "--dim", "1"],
    ["verify", "--suite", "hermite", "--p", "abc"],
    ["squeeze-sweep", "--r-min", "1", "--r-max", "0"],
    ["minunc-sweep", "--lambda-min", "0"],
])
def test_configuration_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [["bogus"], ["verify", "--suite", "nope"], ["hermite"]])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_verify_hermite_report(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, _ = run(capsys, "verify", "--suite", "hermite", "--p", "1,2,3,5", "--nmax", "20", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0 and rep["passed"] is True
    assert list(rep) == ["suite", "version", "config", "cases", "passed"]
    assert all(c["max_error"] == "exact" and c["status"] == "pass" for c in rep["cases"])
    assert all(c["equation_tag"] for c in rep["cases"])


def test_verify_fock_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fock", "--dim", "128", "--tol", "1e-8", "--p", "1,2")
    rep = json.loads(out)
    assert code == 0
    tagged = [c for c in rep["cases"] if c["equation_tag"] in {"Eq. 57", "Eq. 58", "Eq. 65/66"}]
    assert len(tagged) == 6 and all(c["max_error"] < 1e-8 for c in tagged)


def test_verify_reports_are_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        run(capsys, "verify", "--suite", "fock", "--p", "3", "--out", str(path))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_corrupted_build_exits_1(monkeypatch, capsys):
    def broken(n, p):
        good = hermite.hermite_explicit(n, p)
        return hermite.HermiteP(n, good.p, good.poly + Poly.const(1) if n else good.poly)

    monkeypatch.setitem(hermite.ROUTES, "rodrigues", broken)
    code, out, _ = run(capsys, "verify", "--suite", "all", "--nmax", "3")
    rep = json.loads(out)
    assert code == 1 and rep["passed"] is False
    failed = [c["name"] for c in rep["cases"] if c["status"] != "pass"]
    assert failed and all("five-route" in name for name in failed)


def test_squeeze_sweep(capsys):
    code, out, _ = run(capsys, "squeeze-sweep", "--n", "2", "--p", "3", "--r-min", "0", "--r-max", "0.5", "--steps", "6")
    data = rows(out)
    assert code == 0 and len(data) == 6
    assert list(data[0])[:7] == ["r", "var_x", "var_P", "var_x_analytic", "var_P_analytic", "product", "leakage"]
    assert float(data[0]["var_x"]) == pytest.approx(3.5, abs=1e-12)
    assert float(data[0]["var_P"]) == pytest.approx(3.5, abs=1e-12)
    rs = [float(d["r"]) for d in data]
    assert rs == sorted(rs)
    for d in data:
        r = float(d["r"])
        assert abs(float(d["product"]) - 3.5 ** 2) < 1e-8
        assert abs(float(d["var_x"]) * math.exp(2 * r) - 3.5) < 1e-8
        assert d["trusted"] == "true"


def test_squeeze_sweep_flags_untrusted_rows(capsys):
    code, out, _ = run(capsys, "squeeze-sweep", "--r-min", "0.1", "--r-max", "2.5", "--steps", "2", "--dim", "32")
    assert code == 0
    assert [d["trusted"] for d in rows(out)] == ["true", "false"]


def test_minunc_sweep(capsys):
    code, out, _ = run(capsys, "minunc-sweep", "--m", "1", "--p", "1", "--lambda-min", "0.5", "--lambda-max", "1", "--steps", "2")
    data = rows(out)
    assert code == 0
    first, second = data
    assert float(first["N_avg"]) == pytest.approx(3, abs=1e-8)
    assert float(first["varY1"]) == pytest.approx(1.5, abs=1e-8)
    assert float(first["varY2"]) == pytest.approx(6, abs=1e-8)
    assert float(second["N_avg"]) == pytest.approx(1.5, abs=1e-12)
    assert float(second["varY1"]) == pytest.approx(1.5, abs=1e-12)
    assert float(second["varY2"]) == pytest.approx(1.5, abs=1e-12)
    for d in data:
        n = float(d["N_avg"])
        assert abs(float(d["varY1"]) * float(d["varY2"]) - n * n) < 1e-7
        assert float(d["eigen_residual"]) < 1e-8


def test_minunc_sweep_analytic_columns_only_for_small_m(capsys):
    _, out, _ = run(capsys, "minunc-sweep", "--m", "3", "--lambda-min", "2", "--lambda-max", "2", "--steps", "1")
    (row,) = rows(out)
    assert row["varY1_analytic"] == "" and row["varY2_analytic"] == ""


def test_minunc_sweep_small_dim_is_untrusted(capsys):
    _, out, _ = run(capsys, "minunc-sweep", "--m", "0", "--lambda-min", "0.05", "--lambda-max", "0.05",
                    "--steps", "1", "--dim", "64")
    assert rows(out)[0]["trusted"] == "false"


def test_csv_uses_17_significant_digits(capsys):
    _, out, _ = run(capsys, "squeeze-sweep", "--r-min", "0.1", "--r-max", "0.1", "--steps", "1")
    value = rows(out)[0]["var_x"]
    assert float(value) == float(f"{float(value):.17g}") and len(value.replace(".", "").lstrip("0")) >= 15


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "paraherm", "hermite", "--n", "3", "--p", "2"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "8*x^3 - 16*x\n"
