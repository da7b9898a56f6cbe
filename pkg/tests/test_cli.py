import json
import subprocess
import sys

import pytest

from klrcrystal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def lam_file(tmp_path):
    def write(values):
        p = tmp_path / "lam.json"
        p.write_text(json.dumps(values))
        return str(p)
    return write


def test_validate_preset_and_file(capsys, tmp_path):
    assert run(capsys, "datum", "validate", "--datum", "rank2")[0] == 0
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"indices": [{"id": "a", "r": 1}], "cartan": [[2]]}))
    assert run(capsys, "datum", "validate", "--datum", str(p))[0] == 0


@pytest.mark.parametrize("argv,code", [
    (["uq", "rank", "--nu", "i:1"], 2),
    (["uq", "rank", "--datum", "rank2", "--nu", "i:x"], 2),
    (["uq", "rank", "--datum", "rank2", "--nu", "z:1"], 2),
    (["crystal", "binf", "--datum", "sl2", "--depth", "9", "--ht-cap", "4"], 2),
    (["datum", "validate", "--datum", "/nonexistent/datum.json"], 4),
])
def test_usage_and_io_errors(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_invalid_datum_exits_three(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"indices": [{"id": "a", "r": 1}], "cartan": [[3]]}))
    code, _, err = run(capsys, "datum", "validate", "--datum", str(p))
    assert code == 3 and err


def test_negative_lambda_names_the_entry(capsys, lam_file):
    code, _, err = run(capsys, "crystal", "blambda", "--datum", "rank2", "--lambda", lam_file({"j": -1}))
    assert code == 3 and "j" in err


def test_uq_rank(capsys):
    code, out, _ = run(capsys, "uq", "rank", "--datum", "rank2", "--nu", "i:2,j:1")
    assert code == 0 and out.strip().endswith("2")


def test_sl2_crystal_dot(capsys):
    code, out, _ = run(capsys, "crystal", "binf", "--datum", "sl2", "--depth", "3")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("[label=\"wt") == 4 and out.count("->") == 3


def test_exports_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(capsys, "crystal", "binf", "--datum", "mixed", "--depth", "3", "--out", str(d))[0] == 0
    for name in ("graph.dot", "graph.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_cyclotomic_dimension(capsys, lam_file, tmp_path):
    code, out, _ = run(capsys, "cyclo", "dim", "--datum", "sl2", "--preset", "modified", "--nu", "i:2",
                       "--lambda", lam_file({"i": 2}), "--out", str(tmp_path))
    assert code == 0 and "q^-2 + 2 + q^2" in out
    assert json.loads((tmp_path / "cyclo.json").read_text())["certified"] is True


def test_sl2check_undefined_on_uncertified_quotients(capsys, lam_file):
    code, out, _ = run(capsys, "cyclo", "sl2check", "--datum", "imaginary", "--nu", "i:1",
                       "--lambda", lam_file({"i": 1}))
    assert code == 0 and "undefined" in out


def test_klr_commands(capsys, tmp_path):
    assert run(capsys, "klr", "dim", "--datum", "rank2", "--nu", "i:1,j:1", "--out", str(tmp_path))[0] == 0
    assert (tmp_path / "dims.json").exists()
    assert run(capsys, "klr", "check", "--datum", "sl2", "--nu", "i:2")[0] == 0


def test_module_characters(capsys):
    code, out, _ = run(capsys, "module", "char", "--datum", "rank2", "--word", "i,j")
    assert code == 0 and "i" in out


def test_verify_subset_writes_a_report(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "all", "--only", "2,3", "--out", str(tmp_path))
    assert code == 0 and "nilHecke" in out and "[FAIL]" not in out
    report = json.loads((tmp_path / "report.json").read_text())
    assert [c["check"] for c in report["checks"]] == [2, 3]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "klrcrystal", "uq", "rank", "--datum", "sl2", "--nu", "i:3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip().endswith("1")
