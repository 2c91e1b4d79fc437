"""Command-line drivers: presets, exit codes, file formats, resume."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from vortexwaves.cli import main
from vortexwaves.presets import ConfigError, ScenarioConfig, preset
from vortexwaves.runner import (DIAG_COLUMNS, DIAG_SCHEMA,
                                SNAPSHOT_SCHEMA, SWEEP_SCHEMA)


def test_config_roundtrip(tmp_path):
    config = preset("pair-longtime")
    path = tmp_path / "c.json"
    config.save(path)
    assert ScenarioConfig.load(path) == config


def test_config_validation():
    with pytest.raises(ConfigError):
        ScenarioConfig(name="bad", vortex_kind="pair", x0=-1.0, y0=-1.0,
                       lam=-0.1)
    with pytest.raises(ConfigError):
        ScenarioConfig(name="bad", n=7)
    with pytest.raises(ConfigError):
        preset("no-such-preset")


def test_rest_preset_runs_clean(tmp_path):
    out = tmp_path / "rest"
    assert main(["simulate", "--preset", "rest", "--out", str(out)]) == 0
    lines = (out / "diagnostics.csv").read_text().splitlines()
    assert lines[0] == "# " + DIAG_SCHEMA
    assert lines[1] == ",".join(DIAG_COLUMNS)
    rows = list(csv.DictReader(lines[1:]))
    assert len(rows) == 11                   # t = 0 .. 1 at dt = 0.1
    for row in rows:
        assert float(row["E"]) == 0.0
        assert float(row["E_s"]) == 0.0
        assert float(row["sym_residual"]) == 0.0
    status = json.loads((out / "status.json").read_text())
    assert status["status"] == "completed"
    snaps = json.loads((out / "snapshots.json").read_text())
    assert snaps["schema"] == SNAPSHOT_SCHEMA
    assert len(snaps["snapshots"]) >= 2
    check = json.loads((out / "checkpoint.json").read_text())
    assert check["schema"].startswith("vortexwaves-checkpoint")


def test_taylor_fail_preset_exits_3(tmp_path):
    out = tmp_path / "tf"
    assert main(["simulate", "--preset", "taylor-fail",
                 "--out", str(out)]) == 3
    status = json.loads((out / "status.json").read_text())
    assert status["status"] == "taylor_sign_failed"
    assert status["t"] == 0.0


def test_simulate_requires_exactly_one_source(tmp_path):
    assert main(["simulate", "--out", str(tmp_path / "x")]) == 2
    assert main(["simulate", "--preset", "rest", "--config", "c.json",
                 "--out", str(tmp_path / "x")]) == 2


def test_missing_config_file_is_io_error(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "x")]) == 4


def test_sweep_taylor_files(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep-taylor", "--kind", "single",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# " + SWEEP_SCHEMA
    rows = list(csv.DictReader(lines[1:]))
    assert len(rows) == 100
    signs = [np.sign(float(r["a1"])) for r in rows]
    assert 1.0 in signs and -1.0 in signs
    # empty grid: header only
    empty = tmp_path / "empty.csv"
    assert main(["sweep-taylor", "--count", "0", "--out",
                 str(empty)]) == 0
    lines = empty.read_text().splitlines()
    assert len(lines) == 2


def test_verify_selectors():
    assert main(["verify", "quadrature"]) == 0
    assert main(["verify", "definitely-not-a-battery"]) == 2


def test_determinism_identical_csv(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    wavy = preset("rest").with_overrides(
        name="wavy", n=128, wave_amplitudes=((3, 1e-3),), t_end=0.5)
    cfg_path = tmp_path / "wavy.json"
    wavy.save(cfg_path)
    for out in (a, b):
        assert main(["simulate", "--config", str(cfg_path),
                     "--out", str(out), "--seed", "42"]) == 0
    assert (a / "diagnostics.csv").read_bytes() \
        == (b / "diagnostics.csv").read_bytes()


def test_resume_matches_uninterrupted(tmp_path):
    wavy = preset("rest").with_overrides(
        name="wavy", n=128, wave_amplitudes=((3, 1e-3),), t_end=1.0)
    cfg_path = tmp_path / "wavy.json"
    wavy.save(cfg_path)
    full, split = tmp_path / "full", tmp_path / "split"
    assert main(["simulate", "--config", str(cfg_path),
                 "--out", str(full)]) == 0
    assert main(["simulate", "--config", str(cfg_path),
                 "--out", str(split), "--until", "0.5"]) == 0
    assert main(["resume", "--out", str(split), "--until", "1.0"]) == 0
    za = json.loads((full / "checkpoint.json").read_text())
    zb = json.loads((split / "checkpoint.json").read_text())
    assert za["t"] == zb["t"]
    for key in ("zeta", "u"):
        diff = np.max(np.abs(np.asarray(za[key], dtype=float)
                             - np.asarray(zb[key], dtype=float)))
        assert diff <= 1e-12


def test_entry_point_subprocess(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "vortexwaves.cli", "verify", "quadrature"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
