"""Experiment runner: config parsing, CSV artifacts, CLI exit codes."""
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from nevlab.errors import ConfigError
from nevlab.runner import (CSV_HEADER, KINDS, ExperimentConfig,
                           exceptional_set_measure, parse_config,
                           run_experiment, write_table_csv)

CLI = [sys.executable, "-m", "nevlab.cli"]

FMT_CFG = """\
[experiment]
kind = fmt
map = z2
targets = 0.25, inf

[grid]
r_min = 1
r_max = 20
points = 10
"""

def write_cfg(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_parse_config_roundtrip(tmp_path):
    cfg = parse_config(write_cfg(tmp_path, FMT_CFG))
    assert isinstance(cfg, ExperimentConfig)
    assert cfg.kind == "fmt"
    assert cfg.map_name == "z2"
    assert cfg.targets[0] == 0.25 + 0j
    assert math.isinf(cfg.targets[1].real)
    assert len(cfg.grid.arrays()) == 10


def test_parse_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(tmp_path / "missing.cfg")
    with pytest.raises(ConfigError):
        parse_config(write_cfg(tmp_path, "[grid]\npoints = 4\n"))
    with pytest.raises(ConfigError):
        parse_config(write_cfg(
            tmp_path, "[experiment]\nkind = not-a-kind\nmap = z\n"))
    with pytest.raises(ConfigError):
        parse_config(write_cfg(
            tmp_path, "[experiment]\nkind = fmt\nmap = no-such-map\n"))


def test_run_experiment_fmt(tmp_path):
    cfg = parse_config(write_cfg(tmp_path, FMT_CFG))
    out = run_experiment(cfg, tmp_path / "out")
    assert out["ok"]
    table = out["table"]
    assert len(table["r"]) == 10
    assert np.all(np.isfinite(table["T"]))
    assert np.all(np.isnan(table["S_k"]))
    csv_path = tmp_path / "out" / "table.csv"
    lines = csv_path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 11
    # every row carries the full column count
    assert all(len(line.split(",")) == 9 for line in lines[1:])
    assert (tmp_path / "out" / "summary.txt").exists()


def test_csv_float_format(tmp_path):
    cfg = parse_config(write_cfg(tmp_path, FMT_CFG))
    out = run_experiment(cfg, tmp_path / "out")
    lines = (tmp_path / "out" / "table.csv").read_text().splitlines()
    first = lines[1].split(",")
    # radii round-trip exactly through %.17g
    assert float(first[0]) == out["table"]["r"][0]
    # nan cells spelled literally, exceptional flag an integer
    assert first[6] == "nan"
    assert first[8] in ("0", "1")


def test_exceptional_set_measure():
    table = {
        "r": np.linspace(1.0, 2.0, 11),
        "T": np.zeros(11),
        "slack": np.zeros(11),
    }
    summ = exceptional_set_measure(table, 0.0, 0.1)
    assert summ.measure == 0.0 and summ.finite
    assert len(summ.flagged_radii) == 0
    table["slack"] = np.where(np.arange(11) == 5, -1.0, 1.0)
    summ = exceptional_set_measure(table, 0.0, 0.1)
    assert len(summ.flagged_radii) == 1
    assert 0.0 < summ.measure <= 10.0


def test_every_kind_has_runner():
    assert set(KINDS) == {"fmt", "smt-riemann", "cartan", "nochka",
                          "ahlfors", "plucker", "ldl", "growth-index",
                          "calculus-lemma"}


def test_determinism_same_bytes(tmp_path):
    cfg_path = write_cfg(tmp_path, FMT_CFG)
    for sub in ("a", "b"):
        cfg = parse_config(cfg_path)
        run_experiment(cfg, tmp_path / sub)
    a = (tmp_path / "a" / "table.csv").read_bytes()
    b = (tmp_path / "b" / "table.csv").read_bytes()
    assert a == b


def test_threads_do_not_change_bytes(tmp_path):
    text = """\
[experiment]
kind = cartan
curve = conic
hyperplanes = 1 0 0, 0 1 0, 0 0 1, 1 1 1

[grid]
r_min = 0.5
r_max = 5
points = 8
"""
    cfg_path = write_cfg(tmp_path, text)
    for sub, threads in (("t1", 1), ("t4", 4)):
        run_experiment(parse_config(cfg_path), tmp_path / sub,
                       threads=threads)
    assert (tmp_path / "t1" / "table.csv").read_bytes() == \
        (tmp_path / "t4" / "table.csv").read_bytes()


def test_cli_list():
    proc = subprocess.run(CLI + ["list"], capture_output=True, text=True,
                          check=True)
    doc = json.loads(proc.stdout)
    assert "maps" in doc and "curves" in doc and "precision" in doc
    names = [entry["name"] for entry in doc["maps"]]
    assert "exp" in names and "lambda-poincare" in names
    curve_names = [entry["name"] for entry in doc["curves"]]
    assert "exp-conic" in curve_names


def test_cli_run_success(tmp_path):
    cfg_path = write_cfg(tmp_path, FMT_CFG)
    out_dir = tmp_path / "out"
    proc = subprocess.run(
        CLI + ["run", "--config", str(cfg_path), "--out", str(out_dir),
               "--svg"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (out_dir / "table.csv").exists()
    assert (out_dir / "summary.txt").exists()
    svg = (out_dir / "plot.svg").read_text()
    assert svg.startswith("<svg") and "</svg>" in svg


def test_cli_config_error_exit_2(tmp_path):
    proc = subprocess.run(
        CLI + ["run", "--config", str(tmp_path / "nope.cfg"),
               "--out", str(tmp_path / "o")],
        capture_output=True, text=True)
    assert proc.returncode == 2
    record = json.loads(proc.stderr.strip().splitlines()[-1])
    assert record["error"] == "config"

    bad = write_cfg(tmp_path, "[experiment]\nkind = bogus\nmap = z\n")
    proc = subprocess.run(
        CLI + ["run", "--config", str(bad), "--out", str(tmp_path / "o2")],
        capture_output=True, text=True)
    assert proc.returncode == 2


def test_cli_computation_error_exit_3(tmp_path):
    text = """\
[experiment]
kind = ahlfors
curve = line
hyperplane = 1 0
k = 0
lam = 1.5

[grid]
r_min = 0.2
r_max = 5
points = 8
"""
    cfg_path = write_cfg(tmp_path, text)
    proc = subprocess.run(
        CLI + ["run", "--config", str(cfg_path),
               "--out", str(tmp_path / "o")],
        capture_output=True, text=True)
    assert proc.returncode == 3
    record = json.loads(proc.stderr.strip().splitlines()[-1])
    assert record["error"] == "computation"


def test_cli_assert_failure_exit_4(tmp_path):
    text = """\
[experiment]
kind = growth-index
map = z

[params]
c_min = 5.0

[grid]
r_min = 1
r_max = 20
points = 10
"""
    cfg_path = write_cfg(tmp_path, text)
    proc = subprocess.run(
        CLI + ["run", "--config", str(cfg_path),
               "--out", str(tmp_path / "o"), "--assert"],
        capture_output=True, text=True)
    assert proc.returncode == 4
    # without --assert the same run reports the failure but exits 0
    proc = subprocess.run(
        CLI + ["run", "--config", str(cfg_path),
               "--out", str(tmp_path / "o2")],
        capture_output=True, text=True)
    assert proc.returncode == 0


def test_repo_configs_parse_and_run(tmp_path):
    import pathlib
    cfg_dir = pathlib.Path(__file__).resolve().parents[1] / "configs"
    cfgs = sorted(cfg_dir.glob("*.cfg"))
    assert len(cfgs) >= 8
    for path in cfgs:
        cfg = parse_config(path)
        assert cfg.kind in KINDS


def test_write_table_csv_header_is_stable(tmp_path):
    table = {
        "r": np.array([1.0, 2.0]),
        "T": np.array([0.5, np.nan]),
        "T_area": np.array([np.nan, np.nan]),
        "m_total": np.array([0.1, 0.2]),
        "N_total": np.array([np.nan, np.nan]),
        "N_ram": np.array([np.nan, np.nan]),
        "S_k": np.array([np.nan, np.nan]),
        "slack": np.array([np.nan, np.nan]),
        "exceptional": np.array([0.0, 1.0]),
    }
    path = tmp_path / "t.csv"
    write_table_csv(path, table)
    lines = path.read_text().splitlines()
    assert lines[0] == "r,T,T_area,m_total,N_total,N_ram,S_k,slack,exceptional"
    assert lines[1].split(",")[0] == "1"
    assert lines[2].split(",")[-1] == "1"
