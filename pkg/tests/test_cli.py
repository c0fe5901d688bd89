from __future__ import annotations

import subprocess
import sys

import pytest

from fmb.cli import run_cli


def test_dims_h2(capsys):
    assert run_cli(["dims", "H_2", "--p", "3", "--field", "p=3"]) == 0
    out = capsys.readouterr().out
    assert "dim A^2/A^3 = 7" in out and "dim A^3/A^4 = 10" in out and "PASS" in out


def test_construct_then_verify_fresh_process(tmp_path):
    cert = tmp_path / "cert_d8.fmb"
    assert run_cli(["construct", "D", "--n", "3", "--field", "p=2", "-o", str(cert)]) == 0
    proc = subprocess.run([sys.executable, "-m", "fmb.cli", "verify", str(cert)], capture_output=True, text=True)
    assert proc.returncode == 0 and "BASIS" in proc.stdout


def test_verify_truncated_is_usage_error(tmp_path, capsys):
    good = tmp_path / "d8.fmb"
    assert run_cli(["construct", "D8", "-o", str(good)]) == 0
    bad = tmp_path / "garbage.fmb"
    bad.write_text(good.read_text()[:150])
    assert run_cli(["verify", str(bad)]) == 2
    assert "line" in capsys.readouterr().err


def test_verify_rejects_broken_basis(tmp_path):
    good = tmp_path / "d8.fmb"
    assert run_cli(["construct", "D8", "-o", str(good)]) == 0
    lines = good.read_text().splitlines()
    i = next(k for k, l in enumerate(lines) if l.startswith("order")) + 2
    row = lines[i].split()
    row[0] = str(1 - int(row[0]))
    lines[i] = " ".join(row)
    good.write_text("\n".join(lines) + "\n")
    assert run_cli(["verify", str(good)]) == 1


def test_search_exit_codes(tmp_path):
    assert run_cli(["search", "Q8", "--field", "GF(4)", "-o", str(tmp_path / "q8.fmb")]) == 0
    assert run_cli(["verify", str(tmp_path / "q8.fmb")]) == 0
    assert run_cli(["search", "Q8", "--exhaustive"]) == 1
    assert run_cli(["search", "H16", "--exhaustive", "--budget", "2"]) == 3


def test_obstruct_exit_codes(tmp_path):
    report = tmp_path / "r.txt"
    assert run_cli(["obstruct", "G_24", "--trunc", "3", "--report", str(report)]) == 0
    assert "NonExistenceCertified" in report.read_text()
    assert run_cli(["obstruct", "D8", "--trunc", "3"]) == 1
    assert run_cli(["obstruct", "G_23", "--trunc", "4", "--budget", "3"]) == 3


def test_env_budget(monkeypatch):
    monkeypatch.setenv("FMB_BUDGET", "3")
    assert run_cli(["obstruct", "G_23", "--trunc", "4"]) == 3


def test_group_file(tmp_path, capsys):
    spec = tmp_path / "d8.txt"
    spec.write_text("gen a order 2 power b\ngen b order 2\ngen c order 2\ncomm c a b\n")
    assert run_cli(["dims", "--group-file", str(spec)]) == 0
    assert "dim A^1/A^2 = 2" in capsys.readouterr().out


def test_construct_negative():
    assert run_cli(["construct", "G_49", "--budget", "1000"]) == 1


@pytest.mark.parametrize("argv", [["bogus"], ["dims", "nonsense"], ["verify", "/no/such/file"], [],
                                  ["dims", "D8", "--field", "p=3"]])
def test_usage_errors(argv):
    assert run_cli(argv) == 2


def test_catalog_and_profile(capsys):
    assert run_cli(["catalog"]) == 0
    assert "G_49" in capsys.readouterr().out
    assert run_cli(["profile", "D8"]) == 0
    assert "Loewy length 5" in capsys.readouterr().out


def test_console_script_selftest():
    proc = subprocess.run(["fmb", "selftest", "--samples", "1"], capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0 and "selftest: PASS" in proc.stdout
