"""End-to-end command line checks on small, fast scenarios."""

import copy
import csv
import json
import math
from pathlib import Path

import pytest

from blochsim import ConfigError
from blochsim.cli import emit_svg, load_config, main

# a deliberately small scenario: strong force -> short period -> thin window
FAST = {
    "version": 1,
    "model": {"type": "hatano_nelson", "kappa": 1.0, "mu": 0.05, "a": 1.0, "F": 1.0},
    "profile": {"kind": "gaussian", "gamma": 0.5},
    "run": {"t_max": None, "snapshots": 16, "method": "spectral", "dt": None,
            "window": "auto"},
    "compare": {"times": 4, "tolerance": 1e-6},
    "outputs": {"csv": True, "json": True, "svg": False, "normalize_snapshots": True},
}


def write_cfg(tmp_path, cfg, name="scenario.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg), encoding="utf-8")
    return str(p)


def read(path):
    return Path(path).read_bytes()


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "blochsim" in capsys.readouterr().out


def test_builtin_names_resolve():
    for name in ("fig2", "fig3", "fig4", "fig5", "fig6"):
        cfg, origin = load_config(name)
        assert origin == f"builtin:{name}"
        assert cfg["version"] == 1
    with pytest.raises(ConfigError):
        load_config("fig7")


def test_config_validation_rejects_unknown_keys(tmp_path):
    bad = copy.deepcopy(FAST)
    bad["run"]["stepsize"] = 0.1
    with pytest.raises(ConfigError, match="stepsize"):
        load_config(write_cfg(tmp_path, bad))
    bad2 = copy.deepcopy(FAST)
    bad2["model"]["mru"] = 0.1
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, bad2))
    bad3 = copy.deepcopy(FAST)
    bad3["version"] = 2
    with pytest.raises(ConfigError):
        load_config(write_cfg(tmp_path, bad3))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(broken))


def test_run_writes_artifacts(tmp_path):
    out = tmp_path / "out"
    assert main(["run", write_cfg(tmp_path, FAST), "--out", str(out)]) == 0
    assert (out / "snapshots.csv").exists()
    assert (out / "observables.csv").exists()
    meta = json.loads((out / "meta.json").read_text())
    assert meta["command"] == "run"
    assert meta["resolved_config"]["run"]["t_max"] == pytest.approx(2.0 * math.pi)
    lo, hi = meta["resolved_config"]["run"]["window"]
    assert lo == -hi and hi > 20
    assert meta["t_bloch"] == pytest.approx(2.0 * math.pi)
    assert meta["hermitian"] is False

    header = (out / "observables.csv").read_text().splitlines()[0]
    assert header == ("t,norm,centroid_n,width,centroid_q_unwrapped,"
                      "theta_measured,boundary_fraction,width_centered")
    snap_header = (out / "snapshots.csv").read_text().splitlines()[0]
    assert snap_header == "t,n,re,im,prob,prob_normalized"


def test_snapshot_normalization_column(tmp_path):
    out = tmp_path / "out"
    main(["run", write_cfg(tmp_path, FAST), "--out", str(out)])
    by_t = {}
    with open(out / "snapshots.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            by_t.setdefault(row["t"], []).append(float(row["prob_normalized"]))
    assert len(by_t) == 16
    for vals in by_t.values():
        assert sum(vals) == pytest.approx(1.0, abs=1e-9)


def test_run_determinism_byte_identical(tmp_path):
    cfg_path = write_cfg(tmp_path, FAST)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", cfg_path, "--out", str(a), "--svg"]) == 0
    assert main(["run", cfg_path, "--out", str(b), "--svg"]) == 0
    for name in ("snapshots.csv", "observables.csv", "centroid.svg",
                 "momentum.svg", "width.svg", "norm.svg", "heatmap.svg"):
        assert read(a / name) == read(b / name), name
    # meta carries the only timestamp; everything else in it matches
    ma = json.loads((a / "meta.json").read_text())
    mb = json.loads((b / "meta.json").read_text())
    for volatile in ("timestamp_utc", "wall_time_s"):
        ma.pop(volatile), mb.pop(volatile)
    assert ma == mb


def test_config_round_trip_through_meta(tmp_path):
    out1 = tmp_path / "first"
    main(["run", write_cfg(tmp_path, FAST), "--out", str(out1)])
    resolved = json.loads((out1 / "meta.json").read_text())["resolved_config"]
    out2 = tmp_path / "second"
    assert main(["run", write_cfg(tmp_path, resolved, "resolved.json"),
                 "--out", str(out2)]) == 0
    assert read(out1 / "snapshots.csv") == read(out2 / "snapshots.csv")
    assert read(out1 / "observables.csv") == read(out2 / "observables.csv")


def test_run_exit_codes(tmp_path, capsys):
    bad = copy.deepcopy(FAST)
    bad["model"]["F"] = "strong"
    assert main(["run", write_cfg(tmp_path, bad, "bad.json")]) == 1
    assert "error:" in capsys.readouterr().err

    cramped = copy.deepcopy(FAST)
    cramped["run"]["window"] = [-6, 6]
    assert main(["run", write_cfg(tmp_path, cramped, "cramped.json"),
                 "--out", str(tmp_path / "cramped_out")]) == 2
    assert "window" in capsys.readouterr().err


def test_compare_passes_and_reports(tmp_path):
    out = tmp_path / "cmp"
    assert main(["compare", write_cfg(tmp_path, FAST), "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["pass"] is True
    assert set(rep["pairs"]) == {"rk4_vs_spectral", "rk4_vs_propagator",
                                 "spectral_vs_propagator"}
    for d in rep["pairs"].values():
        assert len(d["per_time"]) == 4
        assert d["max"] < 1e-6
    assert rep["final_return_mismatch"] < 1e-6
    assert rep["worst"]["pair"] in rep["pairs"]
    assert "predicted_profile_centroid_dev" in rep


def test_compare_hermitian_norm_drift(tmp_path):
    herm = copy.deepcopy(FAST)
    herm["model"]["mu"] = 0.0
    out = tmp_path / "cmp"
    assert main(["compare", write_cfg(tmp_path, herm), "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["norm_drift_ok"] is True
    assert rep["norm_drift_rk4"] < 1e-8


def test_compare_single_time_full_period_return(tmp_path):
    solo = copy.deepcopy(FAST)
    solo["compare"]["times"] = 1
    out = tmp_path / "cmp"
    assert main(["compare", write_cfg(tmp_path, solo), "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["times"] == [pytest.approx(2.0 * math.pi)]
    for d in rep["pairs"].values():
        assert d["max"] < 1e-6


def test_compare_tolerance_breach_exits_3(tmp_path, capsys):
    strict = copy.deepcopy(FAST)
    strict["compare"]["tolerance"] = 1e-16
    out = tmp_path / "cmp"
    assert main(["compare", write_cfg(tmp_path, strict), "--out", str(out)]) == 3
    err = capsys.readouterr().err
    assert "worst discrepancy" in err and "exceeds" in err
    rep = json.loads((out / "report.json").read_text())
    assert rep["pass"] is False
    assert rep["worst"]["value"] > 1e-16


def test_wannier_stark_artifacts(tmp_path):
    cfg = copy.deepcopy(FAST)
    cfg["ladder"] = {"l_max": 3, "window": "auto"}
    out = tmp_path / "ws"
    assert main(["wannier-stark", write_cfg(tmp_path, cfg), "--out", str(out),
                 "--svg"]) == 0
    with open(out / "ladder.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["l"]) for r in rows] == list(range(-3, 4))
    energies = [float(r["energy"]) for r in rows]
    assert energies == [l * 1.0 for l in range(-3, 4)]  # spacing exactly F*a
    for r in rows:
        assert float(r["residual_generic"]) < 1e-8
        assert float(r["residual_closed"]) < 1e-8  # model is of the closed family
    meta = json.loads((out / "meta.json").read_text())
    assert meta["ladder_spacing"] == 1.0
    assert (out / "ladder.svg").exists()
    assert (out / "state_l0.svg").exists()
    with open(out / "states.csv", newline="") as fh:
        srows = list(csv.DictReader(fh))
    assert {"l", "n", "re_generic", "im_generic", "prob_generic",
            "re_closed", "im_closed", "prob_closed"} <= set(srows[0])


def test_wannier_stark_generic_only_for_general_hoppings(tmp_path):
    cfg = copy.deepcopy(FAST)
    cfg["model"] = {"type": "custom", "hoppings": {"1": [0.5, 0.1], "-1": 0.5},
                    "a": 1.0, "F": 1.0}
    cfg["ladder"] = {"l_max": 2, "window": "auto"}
    out = tmp_path / "ws"
    assert main(["wannier-stark", write_cfg(tmp_path, cfg), "--out", str(out)]) == 0
    with open(out / "ladder.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        assert float(r["residual_generic"]) < 1e-8
        assert r["residual_closed"] == ""


def test_sweep(tmp_path, monkeypatch):
    monkeypatch.setenv("BLOCHSIM_THREADS", "2")
    sweep_cfg = {
        "version": 1,
        "sweep": {
            "command": "run",
            "scenarios": [
                {"name": "base", "config": FAST},
                {"name": "hermitian", "config": {**copy.deepcopy(FAST),
                                                 "model": {**FAST["model"], "mu": 0.0}}},
            ],
        },
    }
    out = tmp_path / "sweep_out"
    assert main(["sweep", write_cfg(tmp_path, sweep_cfg, "sweep.json"),
                 "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["pass"] is True
    assert [s["name"] for s in summary["scenarios"]] == ["base", "hermitian"]
    assert all(s["exit_code"] == 0 for s in summary["scenarios"])
    assert (out / "base" / "snapshots.csv").exists()
    assert (out / "hermitian" / "observables.csv").exists()


def test_sweep_propagates_failure(tmp_path, monkeypatch):
    monkeypatch.setenv("BLOCHSIM_THREADS", "1")
    cramped = copy.deepcopy(FAST)
    cramped["run"]["window"] = [-6, 6]
    sweep_cfg = {
        "version": 1,
        "sweep": {"command": "run",
                  "scenarios": [{"name": "ok", "config": FAST},
                                {"name": "cramped", "config": cramped}]},
    }
    out = tmp_path / "sweep_out"
    assert main(["sweep", write_cfg(tmp_path, sweep_cfg, "sweep.json"),
                 "--out", str(out)]) == 2
    summary = json.loads((out / "summary.json").read_text())
    assert summary["pass"] is False
    codes = {s["name"]: s["exit_code"] for s in summary["scenarios"]}
    assert codes == {"ok": 0, "cramped": 2}


def test_sweep_thread_env_validation(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("BLOCHSIM_THREADS", "many")
    sweep_cfg = {"version": 1,
                 "sweep": {"command": "run",
                           "scenarios": [{"name": "one", "config": FAST}]}}
    assert main(["sweep", write_cfg(tmp_path, sweep_cfg, "sweep.json"),
                 "--out", str(tmp_path / "o")]) == 1
    assert "BLOCHSIM_THREADS" in capsys.readouterr().err


def test_emit_svg_rejects_empty_series(tmp_path):
    with pytest.raises(ValueError):
        emit_svg([], "centroid", tmp_path / "x.svg")


def test_svg_files_are_svg(tmp_path):
    out = tmp_path / "out"
    main(["run", write_cfg(tmp_path, FAST), "--out", str(out), "--svg"])
    for name in ("centroid.svg", "heatmap.svg"):
        head = (out / name).read_text()[:200]
        assert "<svg" in head
