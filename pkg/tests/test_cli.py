from __future__ import annotations

import csv
import json
import math
import subprocess
import sys

import pytest

from jmcs import harmonic as ho
from jmcs.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, main
from jmcs.config import ConfigError, RunConfig, load_config, parse_assignment


def _read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    rows = list(csv.reader(ln for ln in lines if not ln.startswith("#")))
    return header, rows[0], [[float(v) for v in r] for r in rows[1:]]


class TestVerify:
    def test_harmonic_default_passes(self, tmp_path, capsys):
        assert main(["verify", "--out", str(tmp_path)]) == EXIT_OK
        report = json.loads((tmp_path / "verify_harmonic.json").read_text())
        assert report["summary"]["total"] == len(report["entries"]) == report["summary"]["passed"]
        for e in report["entries"]:
            assert e["passed"] == (e["abs_error"] <= e["tolerance"])
            assert e["identity"]
        assert "checks passed" in capsys.readouterr().out
        assert (tmp_path / "verify_harmonic.txt").exists()

    def test_morse_default_passes(self, tmp_path):
        assert main(["verify", "--model", "morse", "--out", str(tmp_path)]) == EXIT_OK

    def test_forced_failure(self, tmp_path):
        assert main(["verify", "--model", "morse", "--tol", "all=1e-30", "--out", str(tmp_path)]) == EXIT_FAIL
        report = json.loads((tmp_path / "verify_morse.json").read_text())
        assert report["summary"]["passed"] < report["summary"]["total"]

    def test_invalid_morse_config(self, tmp_path, capsys):
        out = tmp_path / "bad"
        assert main(["verify", "--model", "morse", "--v0", "0.01", "--out", str(out)]) == EXIT_CONFIG
        assert not out.exists()
        assert "config error" in capsys.readouterr().err

    def test_bad_tolerance_syntax(self, tmp_path):
        assert main(["verify", "--tol", "oops", "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_deterministic_report(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for d in (a, b):
            main(["verify", "--model", "morse", "--out", str(d)])
        ra = json.loads((a / "verify_morse.json").read_text())
        rb = json.loads((b / "verify_morse.json").read_text())
        ra["summary"].pop("wall_time_seconds")
        rb["summary"].pop("wall_time_seconds")
        assert ra == rb


class TestTabulate:
    def test_phi_origin_matches_psi(self, tmp_path):
        args = ["--z-re", "0", "--z-im", "0", "--index", "0"]
        assert main(["tabulate", "phi", *args, "--out", str(tmp_path / "p")]) == EXIT_OK
        assert main(["tabulate", "psi", *args, "--out", str(tmp_path / "q")]) == EXIT_OK
        _, cols, phi = _read_csv(tmp_path / "p" / "phi.csv")
        _, _, psi = _read_csv(tmp_path / "q" / "psi.csv")
        assert cols == ["xi", "re", "im", "modulus"]
        assert all(len(r) == 4 for r in phi)
        for rp, rq in zip(phi, psi):
            assert rp[0] == rq[0]
            assert abs(rp[1] - rq[1]) < 1e-12 and abs(rp[2]) < 1e-12

    def test_values_round_trip(self, tmp_path):
        main(["tabulate", "phi", "--index", "2", "--points", "11", "--out", str(tmp_path)])
        header, _, rows = _read_csv(tmp_path / "phi.csv")
        assert any("Phi_m" in h for h in header)
        lab = ho.GCSLabel(0.7 + 0.3j, 2, ho.HarmonicParams(1.0))
        for x, re, im, mod in rows:
            val = complex(ho.gcs_phi(lab, x))
            assert (re, im) == (val.real, val.imag)
            assert mod == pytest.approx(abs(val), rel=1e-15)

    def test_byte_identical(self, tmp_path):
        for d in ("a", "b"):
            main(["tabulate", "glauber", "--model", "morse", "--out", str(tmp_path / d)])
        assert (tmp_path / "a" / "glauber.csv").read_bytes() == (tmp_path / "b" / "glauber.csv").read_bytes()

    def test_coefficients(self, tmp_path):
        assert main(["tabulate", "coefficients", "--index", "1", "--out", str(tmp_path)]) == EXIT_OK
        _, cols, rows = _read_csv(tmp_path / "coefficients.csv")
        assert cols[0] == "s" and len(rows) == 200

    def test_morse_psi(self, tmp_path):
        assert main(["tabulate", "psi", "--model", "morse", "--index", "3", "--out", str(tmp_path)]) == EXIT_OK

    def test_bad_grid(self, tmp_path):
        assert main(["tabulate", "phi", "--points", "0", "--out", str(tmp_path)]) == EXIT_CONFIG


class TestKernel:
    def _run(self, capsys, *args):
        code = main(["kernel", *args])
        return code, json.loads(capsys.readouterr().out)

    def test_diagonal_m0(self, capsys):
        code, entry = self._run(capsys, "--z-re", "0.5", "--z-im", "0.5", "--w-re", "0.5", "--w-im", "0.5")
        assert code == EXIT_OK
        assert entry["target"][0] == pytest.approx(math.exp(0.5) / math.pi, rel=1e-15)
        assert entry["passed"] and entry["relative_gap"] < 1e-12

    def test_gap_decreases(self, capsys):
        gaps = []
        for n in (10, 20, 40):
            _, entry = self._run(capsys, "--z-re", "3", "--z-im", "1", "--w-re", "-2.5", "--index", "1", "--terms", str(n))
            gaps.append(entry["relative_gap"])
        assert gaps[0] > gaps[1] > gaps[2]

    def test_zero_terms(self, capsys):
        assert main(["kernel", "--terms", "0"]) in (EXIT_OK, EXIT_CONFIG)


class TestLimitStudy:
    def test_single_beta(self, tmp_path, capsys):
        code = main(["limit-study", "--betas", "0.25", "--out", str(tmp_path)])
        header, cols, rows = _read_csv(tmp_path / "limit_study.csv")
        assert cols == ["beta", "distance", "phase"] and len(rows) == 1
        report = json.loads((tmp_path / "limit_study.json").read_text())
        ids = [e["check_id"] for e in report["entries"]]
        assert ids == ["limit.final_distance"]
        assert code == (EXIT_OK if rows[0][1] < 0.05 else EXIT_FAIL)
        assert any("-z*" in h for h in header)

    def test_default_path_m0(self, tmp_path):
        assert main(["limit-study", "--out", str(tmp_path)]) == EXIT_OK
        _, _, rows = _read_csv(tmp_path / "limit_study.csv")
        d = [r[1] for r in rows]
        assert [r[0] for r in rows] == [0.5, 0.25, 0.125, 0.0625]
        assert all(b < a for a, b in zip(d, d[1:]))

    def test_bad_path(self, tmp_path):
        out = tmp_path / "bad"
        assert main(["limit-study", "--betas", "0.1,0.2", "--out", str(out)]) == EXIT_CONFIG
        assert not out.exists()


class TestConfig:
    def test_file_and_override(self, tmp_path):
        cfg_path = tmp_path / "run.ini"
        cfg_path.write_text(
            "[run]\nmodel = morse\n[morse]\nbeta = 0.4\nz_re = 0.1\n[tolerances]\nmorse.d1 = 1e-6\n[truncations]\nkernel_terms = 50\n",
            encoding="utf-8",
        )
        cfg = load_config(cfg_path)
        assert cfg.model == "morse" and cfg.beta == 0.4
        assert cfg.resolved_z() == complex(0.1, 0.2)
        assert cfg.tolerance("morse.d1", 1.0) == 1e-6
        assert cfg.truncations["kernel_terms"] == 50

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "none.ini")

    def test_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(model="other").validate()
        with pytest.raises(ConfigError):
            RunConfig(tolerances={"x": -1.0}).validate()
        with pytest.raises(ConfigError):
            RunConfig(model="morse", gamma=-0.7).validate()

    def test_parse_assignment(self):
        assert parse_assignment("a.b = 1e-3") == ("a.b", 1e-3)
        with pytest.raises(ConfigError):
            parse_assignment("=3")

    def test_cli_flags_override_file(self, tmp_path, capsys):
        cfg_path = tmp_path / "run.ini"
        cfg_path.write_text("[harmonic]\nz_re = 0.2\nz_im = 0.1\n", encoding="utf-8")
        main(["tabulate", "phi", "--config", str(cfg_path), "--z-im", "0", "--points", "3", "--out", str(tmp_path)])
        header, _, _ = _read_csv(tmp_path / "phi.csv")
        assert "z=(0.2,0.0)" in header[0]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "jmcs", "kernel", "--terms", "20"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["check_id"] == "kernel"


def test_numeric_failure_status(tmp_path, monkeypatch):
    from jmcs import cli

    def boom(*args, **kwargs):
        raise FloatingPointError("overflow")

    monkeypatch.setattr(cli.ho, "gcs_phi", boom)
    assert main(["tabulate", "phi", "--out", str(tmp_path)]) == cli.EXIT_NUMERIC
