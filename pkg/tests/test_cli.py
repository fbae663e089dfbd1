import json
import subprocess
import sys

import pytest

from mtckit.cli import run
from mtckit.hopf import QuasiTriangular, builtin_hopf, dump_hopf, load_hopf
from mtckit.modular_data import ModularData, gen_sl2


def call(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def sl2_4(tmp_path, capsys):
    path = tmp_path / "sl2_4.mtc.json"
    code, _ = call(capsys, "builtin", "--name", "sl2", "--level", "4", "--out", str(path))
    assert code == 0
    return path


def test_builtin_round_trip(sl2_4):
    text = sl2_4.read_text()
    md = ModularData.loads(text)
    assert md == gen_sl2(4)
    assert md.dumps() == text


def test_builtin_to_stdout(capsys):
    code, out = call(capsys, "builtin", "--name", "pointed", "--n", "3", "--q", "0,2,2")
    assert code == 0
    assert ModularData.loads(out).rank == 3
    code, out = call(capsys, "builtin", "--name", "fibonacci")
    assert code == 0


def test_verify(sl2_4, capsys):
    code, out = call(capsys, "verify", "--input", str(sl2_4))
    assert code == 0
    obj = json.loads(out)
    assert obj["checks"]["ok"]
    assert obj["scalars"]["dual"] == [0, 1, 2, 3, 4]


def test_verify_failure_has_witness(tmp_path, capsys):
    md = gen_sl2(2)
    obj = json.loads(md.dumps())
    obj["T"][1] = {"order": 1, "coeffs": {"0": "0/1"}}
    path = tmp_path / "bad.mtc.json"
    path.write_text(json.dumps(obj))
    code, out = call(capsys, "verify", "--input", str(path))
    assert code == 1
    err = json.loads(out)["error"]
    assert err["kind"] == "ValidationFailure"
    assert "witness" in err


def test_fusion(sl2_4, capsys):
    code, out = call(capsys, "fusion", "--input", str(sl2_4))
    assert code == 0
    N = json.loads(out)["N"]
    assert N["1,1,0"] == 1 and N["1,1,2"] == 1 and "1,1,1" not in N


def test_invariants_sl2_4(sl2_4, capsys):
    code, out = call(capsys, "invariants", "--input", str(sl2_4))
    assert code == 0
    assert len(json.loads(out)) == 2


def test_jobs_give_identical_bytes(tmp_path, capsys):
    src = tmp_path / "sl2_10.mtc.json"
    assert call(capsys, "builtin", "--name", "sl2", "--level", "10", "--out", str(src))[0] == 0
    outs = []
    for jobs in ("1", "2", "4"):
        out = tmp_path / f"inv{jobs}.json"
        assert call(capsys, "invariants", "--input", str(src), "--jobs", jobs, "--out", str(out))[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_hopf_verify_and_round_trip(tmp_path, capsys):
    path = tmp_path / "z3.hopf.json"
    assert call(capsys, "builtin", "--hopf", "Z3_form1", "--out", str(path))[0] == 0
    h, qt = load_hopf(path.read_text())
    assert dump_hopf(h, qt) == path.read_text()
    code, out = call(capsys, "hopf-verify", "--hopf", str(path))
    assert code == 0
    obj = json.loads(out)
    assert obj["factorizable"] is True and obj["monodromy_rank"] == 3
    assert obj["semisimple"] is True


def test_hopf_verify_failure(tmp_path, capsys):
    h, _ = builtin_hopf("sweedler")
    path = tmp_path / "bad.hopf.json"
    path.write_text(dump_hopf(h, QuasiTriangular.build(h, h.one2(), h.one())))
    code, out = call(capsys, "hopf-verify", "--hopf", str(path))
    assert code == 1
    obj = json.loads(out)
    assert obj["error"]["kind"] == "ValidationFailure"
    assert not obj["rmatrix"]["ok"]


def test_coend_build_and_sl2z(tmp_path, capsys):
    path = tmp_path / "z3.hopf.json"
    call(capsys, "builtin", "--hopf", "Z3_form1", "--out", str(path))
    code, out = call(capsys, "coend-build", "--hopf", str(path))
    assert code == 0
    assert json.loads(out)["omega_rank"] == 3
    code, out = call(capsys, "coend-sl2z", "--hopf", str(path))
    assert code == 0
    obj = json.loads(out)
    assert obj["omega_rank"] == 3 and obj["factorizable_rank"] == 3
    assert obj["kappa"] == "1/9"
    assert all(obj["relations"].values())


def test_coend_sl2z_degenerate(tmp_path, capsys):
    path = tmp_path / "triv.hopf.json"
    call(capsys, "builtin", "--hopf", "Z2_trivial", "--out", str(path))
    code, out = call(capsys, "coend-sl2z", "--hopf", str(path))
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "Degenerate"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["verify"],
        ["verify", "--input", "x", "--bogus"],
        ["invariants", "--input", "x", "--jobs", "0"],
        ["builtin", "--name", "sl2"],
        ["builtin", "--name", "pointed", "--n", "3", "--q", "a,b"],
        ["verify", "--input", "/nonexistent/file.json"],
    ],
)
def test_usage_errors(argv, capsys):
    code, out = call(capsys, *argv)
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "UsageError"


def test_non_json_input(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("not json")
    assert call(capsys, "verify", "--input", str(path))[0] == 2


def test_domain_errors_exit_1(capsys):
    code, out = call(capsys, "builtin", "--name", "pointed", "--n", "2", "--q", "0,0")
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "DegenerateForm"
    code, out = call(capsys, "builtin", "--name", "nonexistent")
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "UnknownName"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mtckit", "builtin", "--name", "semion"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert ModularData.loads(proc.stdout).rank == 2
