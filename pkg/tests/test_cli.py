import io
import json
import subprocess
import sys

import pytest

from clifford_spectrum import cli, report, spectrum
from clifford_spectrum.errors import InconsistencyError
from clifford_spectrum.exact import QS2, Poly
from clifford_spectrum.operators import OperatorKind


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


def test_spectrum_i2():
    data = run_json("spectrum", "--operator", "i2", "--cutoff", "4")
    assert (data["index"], data["nullity"]) == (1, 11)
    assert data["cutoff"] == 4 and data["basis_order"] == spectrum.BASIS_ORDER
    assert data["command"][:3] == ["spectrum", "--operator", "i2"]
    assert data["nullity_contributions"] == {"0,0": 3, "1,0": 2, "0,1": 2, "1,1": 4}


def test_spectrum_jp_three():
    data = run_json("spectrum", "--operator", "jp", "--p", "3", "--cutoff", "3")
    assert (data["index"], data["nullity"]) == (4, 7)
    assert data["mode"] == "exact"


def test_spectrum_j_reports_composition():
    data = run_json("spectrum", "--operator", "j", "--cutoff", "3")
    comp = data["composition_condition"]
    assert comp["holds"] is False
    assert QS2.from_json(comp["witness"]["exact"]) == QS2(4, -4)


def test_spectrum_i2proj():
    data = run_json("spectrum", "--operator", "i2proj", "--cutoff", "3")
    assert (data["index"], data["nullity"]) == (0, 7)
    assert data["composition_condition"]["holds"] is False


def test_char_poly_json_round_trip():
    data = run_json("spectrum", "--operator", "i2", "--cutoff", "2", "--with-polys")
    for blk in data["blocks"]:
        label = spectrum.BlockLabel(blk["m"], blk["n"], OperatorKind.i2())
        assert Poly.from_json(blk["char_poly"]) == spectrum.block_info(label).char_poly


def test_report_dumps_is_json():
    rep = spectrum.index_nullity(OperatorKind.j(), 2)
    data = json.loads(report.dumps(report.spectrum_to_json(rep)))
    assert data["index"] == 4


def test_kernel_command():
    data = run_json("kernel")
    assert data["gram_rank"] == 11 and data["pairwise_orthogonal"]
    assert all(data["i2_residual_zero"].values())


def test_oracle_commands():
    h = run_json("oracle", "hessian", "--i", "3", "--j", "7")
    assert h["agree"]
    v = run_json("oracle", "variation", "--order", "4")
    assert v["derivatives"][0]["agree"] and v["derivatives"][0]["closed_form_over_pi2"] == "-48/1"
    c = run_json("oracle", "conformal", "--a", "0,0,1,1")
    assert float(c["quotient"]) == pytest.approx(-4 / 3, rel=1e-8)


def test_equivariant_command():
    data = run_json("equivariant")
    assert data["unique"] and len(data["critical_points"]) == 1
    assert data["critical_points"][0]["index"] == 1


def test_text_output():
    code, text = run("kernel", "--output", "text")
    assert code == 0 and "gram_rank: 11" in text


@pytest.mark.parametrize("argv", [
    ["spectrum"],
    ["spectrum", "--operator", "jp"],
    ["spectrum", "--operator", "i2", "--p", "3"],
    ["spectrum", "--operator", "jp", "--p", "0.5"],
    ["spectrum", "--operator", "i2", "--cutoff", "1"],
    ["oracle", "hessian", "--i", "12", "--j", "1"],
    ["oracle", "conformal", "--a", "1,2"],
    ["oracle", "conformal", "--a", "0,0,0,0"],
    ["oracle", "variation", "--order", "5"],
    ["oracle", "variation", "--grid-n", "12"],
    ["equivariant", "--r1", "-1"],
    ["nonsense"],
    ["kernel", "--unknown-flag"],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_inconsistency_exits_1(monkeypatch):
    def broken():
        raise InconsistencyError("forced mismatch")
    monkeypatch.setattr(cli.kernel, "verify_kernel", broken)
    assert run("kernel")[0] == 1


def test_selftest_command():
    data = run_json("selftest", "--cutoff", "3", "--seed", "2")
    assert data["passed"], [c for c in data["checks"] if not c["ok"]]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clifford_spectrum", "spectrum", "--operator", "jp",
                           "--p", "5", "--cutoff", "2"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert (json.loads(proc.stdout)["index"], json.loads(proc.stdout)["nullity"]) == (0, 7)
