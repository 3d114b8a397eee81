import json
import subprocess
import sys

import pytest

from csalg.algebra import inner_automorphism, matrix_algebra, matrix_to_elem
from csalg.cli import main
from csalg.exactfield import QQ
from csalg.involutions import transpose_map
from csalg.wedderburn import elementary_decomposition


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def hamilton(tmp_path, capsys):
    path = tmp_path / "hamilton.alg"
    assert run(capsys, "quat", "make", "-1", "-1", "--out", str(path))[0] == 0
    return path


@pytest.fixture
def m2(tmp_path):
    A = matrix_algebra(QQ, 2)
    path = tmp_path / "m2.alg"
    path.write_text(json.dumps(A.to_json()))
    return A, path


def test_check(hamilton, capsys):
    code, out, _ = run(capsys, "check", str(hamilton))
    assert code == 0
    assert out.strip() == "central simple: yes (rank 16/16)"


def test_check_non_simple(tmp_path, capsys):
    from csalg.algebra import commutative_algebra_from_poly
    from csalg.exactfield import Poly
    path = tmp_path / "n.alg"
    path.write_text(json.dumps(commutative_algebra_from_poly(Poly.from_ints(QQ, [0, 0, 1])).to_json()))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0 and out.startswith("central simple: no")


def test_split_and_verify(hamilton, tmp_path, capsys):
    cert = tmp_path / "split.json"
    code, out, _ = run(capsys, "split", str(hamilton), "--out", str(cert))
    assert code == 0
    assert "tower: QQ[x1]/(X1^2 + 1)" in out and "q = 2" in out
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0 and out.startswith("verified")


def test_quat_split_and_verify(tmp_path, capsys):
    cert = tmp_path / "q.json"
    code, out, _ = run(capsys, "quat", "split", "1", "1", "--out", str(cert))
    assert code == 0 and "q = 2" in out
    assert json.loads(cert.read_text())["q"] == 2
    assert run(capsys, "verify", str(cert))[0] == 0


def test_quat_split_partial_and_division(capsys):
    code, out, _ = run(capsys, "quat", "split", "3", "5", "--height-bound", "5")
    assert code == 2 and "height <= 5" in out
    code, out, _ = run(capsys, "quat", "split", "-1", "-1")
    assert code == 0 and out.startswith("division algebra")


def test_quat_over_prime_field(capsys):
    code, out, _ = run(capsys, "quat", "split", "-1", "-1", "--prime", "7")
    assert code == 0 and "q = 2" in out


def test_quat_recognize(m2, capsys):
    _, path = m2
    code, out, _ = run(capsys, "quat", "recognize", str(path))
    assert code == 0 and out.startswith("h(")


def test_decompose(m2, hamilton, tmp_path, capsys):
    _, path = m2
    cert = tmp_path / "d.json"
    code, out, _ = run(capsys, "decompose", str(path), "--out", str(cert))
    assert code == 0 and "q = 2" in out
    assert run(capsys, "verify", str(cert))[0] == 0
    code, out, _ = run(capsys, "decompose", str(hamilton))
    assert code == 2 and "division relative to probes" in out


def test_cprd(hamilton, capsys):
    code, out, _ = run(capsys, "cprd", str(hamilton), '["1", "2", "3", "4"]')
    assert code == 0
    assert out.splitlines() == ["P = X^2 - 2*X + 30", "trd = 2", "nrd = 30"]


def test_sn_and_verify(m2, tmp_path, capsys):
    A, path = m2
    sigma = inner_automorphism(matrix_to_elem(A, 2, [[1, 1], [0, 1]]))
    mpath = tmp_path / "sigma.json"
    mpath.write_text(json.dumps(sigma.to_json()))
    cert = tmp_path / "sn.json"
    code, out, _ = run(capsys, "sn", str(path), str(mpath), "--out", str(cert))
    assert code == 0 and out.startswith("w = ")
    assert run(capsys, "verify", str(cert))[0] == 0


def test_inv_classify(m2, tmp_path, capsys):
    A, path = m2
    t = transpose_map(elementary_decomposition(A, 2))
    mpath = tmp_path / "t.json"
    mpath.write_text(json.dumps(t.to_json()))
    cert = tmp_path / "inv.json"
    code, out, _ = run(capsys, "inv", "classify", str(path), str(mpath), "--out", str(cert))
    assert code == 0 and out.startswith("Orthogonal (dim A+ = 3")
    assert run(capsys, "verify", str(cert))[0] == 0


def test_becher_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "becher", "msless", "5,5,4", "5,4,4,4")
    assert code == 0 and out.strip() == "false"
    code, out, _ = run(capsys, "becher", "msless", "5,4,4,4", "5,5,4")
    assert out.strip() == "true"
    cert = tmp_path / "cr.json"
    code, out, _ = run(capsys, "becher", "pair", "3", "1", "1", "2", "1", "--out", str(cert))
    assert code == 0 and "Q1 = h(1, -12)" in out
    obj = json.loads(cert.read_text())
    assert obj["Q1"] == ["1", "-12"] and len(obj["x"]) == 16
    assert run(capsys, "verify", str(cert))[0] == 0


def test_contract_violation_exit_code(capsys):
    code, _, err = run(capsys, "quat", "make", "0", "1")
    assert code == 1 and "nonzero" in err
    code, _, err = run(capsys, "becher", "corestrict", "4", "1", "1", "1", "1")
    assert code == 1


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text('{\n  "field": {"kind": "rationals"},\n  "table": [1, 2,,]\n}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1
    assert f"{bad}:3:" in err


def test_determinism(tmp_path, capsys):
    outs = []
    for k in range(2):
        p = tmp_path / f"d{k}.json"
        run(capsys, "quat", "split", "2", "-1", "--out", str(p), "--seed", "7")
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "csalg", "becher", "msless", "4", "5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "true"
