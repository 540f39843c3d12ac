"""Command-line front end.

Subcommands::

    blochsim run           <config.json> [--out DIR] [--svg]
    blochsim compare       <config.json> [--out DIR] [--svg]
    blochsim wannier-stark <config.json> [--out DIR] [--svg]
    blochsim sweep         <config.json> [--out DIR] [--svg]

A config is JSON with a mandatory ``"version": 1``; unknown keys anywhere are
rejected so a typo cannot silently fall back to a default.  The bundled
scenario names ``fig2`` .. ``fig6`` resolve to packaged files when no local
file of that name exists.

Data files (CSV, report.json, ladder.csv, ...) are written with shortest
round-trip float formatting and contain no timestamps, so a rerun of the same
config is byte-identical; meta.json carries the wall time and the only
timestamp, plus the fully resolved config for reproducing the run.

Exit codes: 0 success, 1 configuration error, 2 window guard tripped,
3 comparison tolerance exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__, svg
from .analytic import (complex_orbit, predicted_profile, propagator_apply,
                       suggested_window, ws_state_generic, ws_state_hn)
from .errors import BlochsimError, ConfigError, WindowTooSmallError, ZeroForceError
from .evolve import EvolveSettings, hamiltonian_apply, run as run_evolution
from .model import (LatticeModel, bloch_period, hatano_nelson_parameters,
                    is_hermitian, make_hatano_nelson, make_imaginary_hopping)
from .observe import record
from .state import ProfileSpec, build_state

_BUILTIN_SCENARIOS = ("fig2", "fig3", "fig4", "fig5", "fig6")


# ---------------------------------------------------------------------------
# config loading and validation


def _fail(where: str, msg: str):
    raise ConfigError(f"{where}: {msg}")


def _check_keys(block: dict, allowed: tuple, where: str) -> None:
    for k in block:
        if k not in allowed:
            _fail(where, f"unknown key {k!r}")


def _num(block: dict, key: str, where: str, default=None, required=False,
         positive=False, nonnegative=False, allow_null=False):
    if key not in block or block[key] is None:
        if key in block and block[key] is None and allow_null:
            return None
        if required:
            _fail(where, f"missing required key {key!r}")
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fail(where, f"{key!r} must be a number")
    v = float(v)
    if not math.isfinite(v):
        _fail(where, f"{key!r} must be finite")
    if positive and v <= 0:
        _fail(where, f"{key!r} must be positive")
    if nonnegative and v < 0:
        _fail(where, f"{key!r} must be nonnegative")
    return v


def _int(block: dict, key: str, where: str, default=None, required=False, minimum=None):
    if key not in block:
        if required:
            _fail(where, f"missing required key {key!r}")
        return default
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, int):
        _fail(where, f"{key!r} must be an integer")
    if minimum is not None and v < minimum:
        _fail(where, f"{key!r} must be >= {minimum}")
    return v


def _bool(block: dict, key: str, where: str, default: bool) -> bool:
    if key not in block:
        return default
    v = block[key]
    if not isinstance(v, bool):
        _fail(where, f"{key!r} must be a boolean")
    return v


def _validate_model(block) -> dict:
    if not isinstance(block, dict):
        _fail("model", "must be an object")
    kind = block.get("type")
    if kind == "hatano_nelson":
        _check_keys(block, ("type", "kappa", "mu", "a", "F"), "model")
        out = {"type": kind,
               "kappa": _num(block, "kappa", "model", required=True, positive=True),
               "mu": _num(block, "mu", "model", default=0.0)}
    elif kind == "imaginary_hopping":
        _check_keys(block, ("type", "kappa", "a", "F"), "model")
        out = {"type": kind,
               "kappa": _num(block, "kappa", "model", required=True, positive=True)}
    elif kind == "custom":
        _check_keys(block, ("type", "hoppings", "a", "F"), "model")
        hops = block.get("hoppings")
        if not isinstance(hops, dict) or not hops:
            _fail("model", "custom model needs a nonempty 'hoppings' object")
        parsed = {}
        for key, val in hops.items():
            try:
                off = int(key)
            except ValueError:
                _fail("model.hoppings", f"offset key {key!r} is not an integer")
            if isinstance(val, (int, float)) and not isinstance(val, bool):
                amp = [float(val), 0.0]
            elif (isinstance(val, list) and len(val) == 2
                  and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in val)):
                amp = [float(val[0]), float(val[1])]
            else:
                _fail("model.hoppings", f"amplitude for offset {key!r} must be a number or [re, im]")
            if not all(math.isfinite(x) for x in amp):
                _fail("model.hoppings", f"amplitude for offset {key!r} must be finite")
            parsed[str(off)] = amp
        out = {"type": kind, "hoppings": parsed}
    else:
        _fail("model", "type must be 'hatano_nelson', 'imaginary_hopping', or 'custom'")
    out["a"] = _num(block, "a", "model", default=1.0, positive=True)
    out["F"] = _num(block, "F", "model", default=0.0)
    return out


def _validate_profile(block) -> dict:
    if not isinstance(block, dict):
        _fail("profile", "must be an object")
    kind = block.get("kind")
    common = {"center": _int(block, "center", "profile", default=0),
              "normalize": _bool(block, "normalize", "profile", True)}
    if kind == "gaussian":
        _check_keys(block, ("kind", "gamma", "center", "normalize"), "profile")
        return {"kind": kind,
                "gamma": _num(block, "gamma", "profile", required=True, positive=True),
                **common}
    if kind == "two_humped":
        _check_keys(block, ("kind", "alpha", "beta", "center", "normalize"), "profile")
        return {"kind": kind,
                "alpha": _num(block, "alpha", "profile", required=True, positive=True),
                "beta": _num(block, "beta", "profile", required=True),
                **common}
    if kind == "single_site":
        _check_keys(block, ("kind", "center", "normalize"), "profile")
        return {"kind": kind, **common}
    _fail("profile", "kind must be 'gaussian', 'two_humped', or 'single_site'")


def _validate_window(value, where: str):
    if value == "auto" or value is None:
        return "auto"
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in value)
            and value[0] <= value[1]):
        return [value[0], value[1]]
    _fail(where, "window must be \"auto\" or [n_min, n_max] with n_min <= n_max")


def _validate_scenario(raw: dict) -> dict:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    _check_keys(raw, ("version", "model", "profile", "run", "compare", "ladder",
                      "outputs"), "config")
    version = raw.get("version")
    if isinstance(version, bool) or version != 1:
        raise ConfigError("config must declare \"version\": 1")
    if "model" not in raw:
        raise ConfigError("config: missing required key 'model'")
    cfg = {"version": 1, "model": _validate_model(raw["model"])}

    if "profile" in raw:
        cfg["profile"] = _validate_profile(raw["profile"])

    rb = raw.get("run", {})
    if not isinstance(rb, dict):
        _fail("run", "must be an object")
    _check_keys(rb, ("t_max", "snapshots", "method", "dt", "window",
                     "boundary_guard", "boundary_tol"), "run")
    method = rb.get("method", "spectral")
    if method not in ("spectral", "rk4"):
        _fail("run", "method must be 'spectral' or 'rk4'")
    cfg["run"] = {
        "t_max": _num(rb, "t_max", "run", default=None, positive=True, allow_null=True),
        "snapshots": _int(rb, "snapshots", "run", default=256, minimum=1),
        "method": method,
        "dt": _num(rb, "dt", "run", default=None, positive=True, allow_null=True),
        "window": _validate_window(rb.get("window", "auto"), "run"),
        "boundary_guard": _int(rb, "boundary_guard", "run", default=8, minimum=0),
        "boundary_tol": _num(rb, "boundary_tol", "run", default=1e-10, positive=True),
    }

    cb = raw.get("compare", {})
    if not isinstance(cb, dict):
        _fail("compare", "must be an object")
    _check_keys(cb, ("times", "tolerance"), "compare")
    cfg["compare"] = {
        "times": _int(cb, "times", "compare", default=16, minimum=1),
        "tolerance": _num(cb, "tolerance", "compare", default=1e-6, positive=True),
    }

    lb = raw.get("ladder", {})
    if not isinstance(lb, dict):
        _fail("ladder", "must be an object")
    _check_keys(lb, ("l_max", "window"), "ladder")
    cfg["ladder"] = {
        "l_max": _int(lb, "l_max", "ladder", default=10, minimum=0),
        "window": _validate_window(lb.get("window", "auto"), "ladder"),
    }

    ob = raw.get("outputs", {})
    if not isinstance(ob, dict):
        _fail("outputs", "must be an object")
    _check_keys(ob, ("csv", "json", "svg", "normalize_snapshots"), "outputs")
    cfg["outputs"] = {
        "csv": _bool(ob, "csv", "outputs", True),
        "json": _bool(ob, "json", "outputs", True),
        "svg": _bool(ob, "svg", "outputs", False),
        "normalize_snapshots": _bool(ob, "normalize_snapshots", "outputs", True),
    }
    return cfg


def load_config(source: str) -> tuple[dict, str]:
    """Read and validate a scenario config; returns ``(config, origin)``.

    ``source`` is a filesystem path, or the bare name of a bundled scenario
    (``fig2`` .. ``fig6``, with or without ``.json``) when no such file exists.
    """
    p = Path(source)
    name = p.name[:-5] if p.name.endswith(".json") else p.name
    if not p.exists() and str(p) == p.name and name in _BUILTIN_SCENARIOS:
        text = resources.files("blochsim").joinpath(
            "scenarios", name + ".json").read_text(encoding="utf-8")
        origin = f"builtin:{name}"
    else:
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {source!r}: {exc}") from exc
        origin = str(p)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {source!r} is not valid JSON: {exc}") from exc
    return _validate_scenario(raw), origin


# ---------------------------------------------------------------------------
# building runtime objects from a validated config


def _model_from(cfg: dict) -> LatticeModel:
    mb = cfg["model"]
    if mb["type"] == "hatano_nelson":
        return make_hatano_nelson(mb["kappa"], mb["mu"], a=mb["a"], F=mb["F"])
    if mb["type"] == "imaginary_hopping":
        return make_imaginary_hopping(mb["kappa"], a=mb["a"], F=mb["F"])
    hops = {int(k): complex(v[0], v[1]) for k, v in mb["hoppings"].items()}
    return LatticeModel(hops, a=mb["a"], F=mb["F"], label="custom")


def _profile_from(cfg: dict) -> ProfileSpec:
    if "profile" not in cfg:
        raise ConfigError("this command needs a 'profile' block in the config")
    pb = cfg["profile"]
    if pb["kind"] == "gaussian":
        return ProfileSpec.gaussian_packet(pb["gamma"], center=pb["center"],
                                           normalize=pb["normalize"])
    if pb["kind"] == "two_humped":
        return ProfileSpec.two_humped_packet(pb["alpha"], pb["beta"],
                                             center=pb["center"],
                                             normalize=pb["normalize"])
    return ProfileSpec.single_site_packet(center=pb["center"])


def _resolve_t_max(cfg: dict, model: LatticeModel) -> float:
    t_max = cfg["run"]["t_max"]
    if t_max is not None:
        return float(t_max)
    if model.F == 0.0:
        raise ConfigError("run.t_max is required when F = 0 (no drive period exists)")
    return bloch_period(model)


def _resolve_window(spec, model, profile, t_max) -> tuple[int, int]:
    if spec != "auto":
        return int(spec[0]), int(spec[1])
    try:
        return suggested_window(model, profile, t_max)
    except ZeroForceError as exc:
        raise ConfigError("run.window \"auto\" needs F != 0; give [n_min, n_max]") from exc


# ---------------------------------------------------------------------------
# artifact writers


def _f(x) -> str:
    return repr(float(x))


def _write_meta(out: Path, command: str, origin: str, resolved: dict,
                extra: dict, t_start: float) -> None:
    meta = {
        "command": command,
        "config_source": origin,
        "package_version": __version__,
        "resolved_config": resolved,
        "wall_time_s": round(time.time() - t_start, 3),
        "timestamp_utc": datetime.now(timezone.utc).isoformat(),
    }
    meta.update(extra)
    with open(out / "meta.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_observables(path: Path, obs) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,norm,centroid_n,width,centroid_q_unwrapped,"
                 "theta_measured,boundary_fraction,width_centered\n")
        for o in obs:
            fh.write(",".join([
                _f(o.t), _f(o.norm), _f(o.centroid_n), _f(o.width),
                _f(o.centroid_q_unwrapped), _f(o.theta_measured),
                _f(o.boundary_fraction), _f(o.width_centered)]) + "\n")


def _write_snapshots(path: Path, states, normalize: bool) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,n,re,im,prob,prob_normalized\n")
        for st in states:
            p = st.probabilities()
            total = float(p.sum())
            pn = p / total if (normalize and total > 0) else p
            for k, n in enumerate(range(st.n_min, st.n_max + 1)):
                c = st.amplitudes[k]
                fh.write(",".join([
                    _f(st.t), str(n), _f(c.real), _f(c.imag),
                    _f(p[k]), _f(pn[k])]) + "\n")


def emit_svg(series, style: str, path, reference=None) -> None:
    """Render observables or snapshots to a standalone SVG file.

    ``style`` selects the plot: ``"centroid"``, ``"momentum"``, ``"width"``,
    or ``"norm"`` take a list of :class:`blochsim.observe.Observables`
    (``norm`` is drawn as log10); ``"heatmap"`` takes a list of
    :class:`blochsim.state.ChainState` and rasters per-snapshot-normalized
    probabilities.  ``reference`` optionally overlays one ``(label, y_array)``
    curve on the line styles.
    """
    if not series:
        raise ValueError("empty series")
    if style == "heatmap":
        states = series
        times = np.array([st.t for st in states])
        n_sites = states[0].amplitudes.size
        P = np.empty((n_sites, len(states)))
        for j, st in enumerate(states):
            p = st.probabilities()
            total = float(p.sum())
            P[:, j] = p / total if total > 0 else p
        sites = states[0].sites.astype(np.float64)
        # cap the raster at ~256 site rows: block-sum adjacent sites
        block = max(1, int(math.ceil(n_sites / 256)))
        if block > 1:
            trim = (n_sites // block) * block
            P = P[:trim].reshape(-1, block, P.shape[1]).sum(axis=1)
            sites = sites[:trim].reshape(-1, block).mean(axis=1)
        svg.heatmap(path, times, sites, P, "t", "site n",
                    "probability |c_n|^2 (normalized per snapshot)")
        return
    obs = series
    t = np.array([o.t for o in obs])
    if style == "centroid":
        data = [("measured <n>", np.array([o.centroid_n for o in obs]))]
        ylabel = "site index"
    elif style == "momentum":
        data = [("<q> unwrapped", np.array([o.centroid_q_unwrapped for o in obs]))]
        ylabel = "q (1/a)"
    elif style == "width":
        data = [("width about origin", np.array([o.width for o in obs]))]
        ylabel = "sites"
    elif style == "norm":
        data = [("log10 total norm", np.log10(np.array([o.norm for o in obs])))]
        ylabel = "log10 sum |c_n|^2"
    else:
        raise ValueError(f"unknown SVG style {style!r}")
    if reference is not None:
        data.append((reference[0], np.asarray(reference[1], dtype=np.float64)))
    svg.line_plot(path, t, data, "t", ylabel)


# ---------------------------------------------------------------------------
# subcommands


def _rel_inf(x: np.ndarray, y: np.ndarray) -> float:
    ref = max(float(np.abs(x).max()), float(np.abs(y).max()))
    if ref == 0.0:
        return 0.0
    return float(np.abs(x - y).max() / ref)


def cmd_run(cfg: dict, origin: str, out: Path, want_svg: bool) -> int:
    t_start = time.time()
    model = _model_from(cfg)
    profile = _profile_from(cfg)
    t_max = _resolve_t_max(cfg, model)
    window = _resolve_window(cfg["run"]["window"], model, profile, t_max)
    initial = build_state(profile, window)
    settings = EvolveSettings(method=cfg["run"]["method"], dt=cfg["run"]["dt"],
                              boundary_guard=cfg["run"]["boundary_guard"],
                              boundary_tol=cfg["run"]["boundary_tol"])
    times = np.linspace(0.0, t_max, cfg["run"]["snapshots"])
    states = run_evolution(initial, model, settings, times)
    obs = record(states, model, guard_width=settings.boundary_guard)

    out.mkdir(parents=True, exist_ok=True)
    resolved = json.loads(json.dumps(cfg))
    resolved["run"]["t_max"] = t_max
    resolved["run"]["window"] = [window[0], window[1]]
    if want_svg:
        resolved["outputs"]["svg"] = True
    if resolved["outputs"]["csv"]:
        _write_observables(out / "observables.csv", obs)
        _write_snapshots(out / "snapshots.csv", states,
                         resolved["outputs"]["normalize_snapshots"])
    if resolved["outputs"]["svg"]:
        ref = None
        if model.F != 0.0:
            orbit = complex_orbit(model)
            ref = ("semiclassical Re x0/a",
                   np.real(np.atleast_1d(orbit(times))) / model.a)
        emit_svg(obs, "centroid", out / "centroid.svg", reference=ref)
        emit_svg(obs, "momentum", out / "momentum.svg")
        emit_svg(obs, "width", out / "width.svg")
        emit_svg(obs, "norm", out / "norm.svg")
        emit_svg(states, "heatmap", out / "heatmap.svg")
    extra = {"t_bloch": bloch_period(model) if model.F != 0.0 else None,
             "window": [window[0], window[1]],
             "hermitian": is_hermitian(model)}
    _write_meta(out, "run", origin, resolved, extra, t_start)
    return 0


def cmd_compare(cfg: dict, origin: str, out: Path, want_svg: bool) -> int:
    t_start = time.time()
    model = _model_from(cfg)
    profile = _profile_from(cfg)
    t_max = _resolve_t_max(cfg, model)
    window = _resolve_window(cfg["run"]["window"], model, profile, t_max)
    initial = build_state(profile, window)
    k = cfg["compare"]["times"]
    tol = cfg["compare"]["tolerance"]
    times = [t_max * j / k for j in range(1, k + 1)]

    rk4_settings = EvolveSettings(method="rk4", dt=cfg["run"]["dt"],
                                  boundary_guard=cfg["run"]["boundary_guard"],
                                  boundary_tol=cfg["run"]["boundary_tol"])
    spec_settings = EvolveSettings(method="spectral",
                                   boundary_guard=cfg["run"]["boundary_guard"],
                                   boundary_tol=cfg["run"]["boundary_tol"])
    grid = np.concatenate(([0.0], times))
    rk4_states = run_evolution(initial, model, rk4_settings, grid)[1:]
    spec_states = run_evolution(initial, model, spec_settings, grid)[1:]
    prop_states = [propagator_apply(model, initial, t) for t in times]

    pair_names = ("rk4_vs_spectral", "rk4_vs_propagator", "spectral_vs_propagator")
    per_time = {name: [] for name in pair_names}
    worst = {"pair": None, "t": None, "value": 0.0}
    for i, t in enumerate(times):
        triplet = {
            "rk4_vs_spectral": _rel_inf(rk4_states[i].amplitudes, spec_states[i].amplitudes),
            "rk4_vs_propagator": _rel_inf(rk4_states[i].amplitudes, prop_states[i].amplitudes),
            "spectral_vs_propagator": _rel_inf(spec_states[i].amplitudes, prop_states[i].amplitudes),
        }
        for name, d in triplet.items():
            per_time[name].append(d)
            if d > worst["value"]:
                worst = {"pair": name, "t": t, "value": d}

    report = {
        "times": times,
        "tolerance": tol,
        "pairs": {name: {"per_time": per_time[name], "max": max(per_time[name])}
                  for name in pair_names},
        "worst": worst,
        "pass": worst["value"] < tol,
    }
    # unitarity line item for the Hermitian limit
    if is_hermitian(model):
        drift = max(abs(st.norm_squared() - initial.norm_squared())
                    for st in rk4_states)
        report["norm_drift_rk4"] = drift
        report["norm_drift_ok"] = drift < 1e-8
    # return-to-start mismatch at the final time (equals one period by default)
    ref = float(np.abs(initial.amplitudes).max())
    report["final_return_mismatch"] = float(
        np.abs(spec_states[-1].amplitudes - initial.amplitudes).max() / ref)
    # first-order profile law, where the profile continues off-lattice
    if model.F != 0.0 and profile.kind in ("gaussian", "two_humped"):
        n = initial.sites
        centroid_devs = []
        for i, t in enumerate(times):
            pred = predicted_profile(profile, model, t, window)
            meas = spec_states[i].probabilities()
            c_pred = float((n * pred).sum() / pred.sum())
            c_meas = float((n * meas).sum() / meas.sum())
            centroid_devs.append(abs(c_meas - c_pred))
        report["predicted_profile_centroid_dev"] = {
            "per_time": centroid_devs, "max": max(centroid_devs)}

    out.mkdir(parents=True, exist_ok=True)
    resolved = json.loads(json.dumps(cfg))
    resolved["run"]["t_max"] = t_max
    resolved["run"]["window"] = [window[0], window[1]]
    if want_svg:
        resolved["outputs"]["svg"] = True
    if resolved["outputs"]["json"]:
        with open(out / "report.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if resolved["outputs"]["svg"]:
        x = np.array(times)
        series = [(name, np.log10(np.maximum(per_time[name], 1e-300)))
                  for name in pair_names]
        svg.line_plot(out / "discrepancies.svg", x, series, "t",
                      "log10 rel. max discrepancy")
    extra = {"t_bloch": bloch_period(model) if model.F != 0.0 else None,
             "window": [window[0], window[1]],
             "hermitian": is_hermitian(model)}
    _write_meta(out, "compare", origin, resolved, extra, t_start)
    if not report["pass"]:
        print(f"compare: worst discrepancy {worst['value']:.3e} "
              f"({worst['pair']} at t = {worst['t']:.6g}) exceeds {tol:.1e}",
              file=sys.stderr)
        return 3
    return 0


def cmd_wannier_stark(cfg: dict, origin: str, out: Path, want_svg: bool) -> int:
    t_start = time.time()
    model = _model_from(cfg)
    if model.F == 0.0:
        raise ConfigError("wannier-stark needs F != 0")
    l_max = cfg["ladder"]["l_max"]
    wspec = cfg["ladder"]["window"]
    if wspec == "auto":
        half = l_max + 80
        window = (-half, half)
    else:
        window = (int(wspec[0]), int(wspec[1]))
    closed_ok = hatano_nelson_parameters(model) is not None

    rows = []     # (l, energy, res_generic, res_closed or None)
    profiles = []  # (l, generic_state, closed_state or None)
    for l in range(-l_max, l_max + 1):
        g = ws_state_generic(l, model, window)
        res_g = _residual(g, model)
        if closed_ok:
            h = ws_state_hn(l, model, window)
            res_c = _residual(h, model)
        else:
            h, res_c = None, None
        rows.append((l, g.energy, res_g, res_c))
        profiles.append((l, g, h))

    out.mkdir(parents=True, exist_ok=True)
    resolved = json.loads(json.dumps(cfg))
    resolved["ladder"]["window"] = [window[0], window[1]]
    if want_svg:
        resolved["outputs"]["svg"] = True
    if resolved["outputs"]["csv"]:
        with open(out / "ladder.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("l,energy,residual_generic,residual_closed\n")
            for l, e, rg, rc in rows:
                fh.write(f"{l},{_f(e)},{_f(rg)},{_f(rc) if rc is not None else ''}\n")
        with open(out / "states.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("l,n,re_generic,im_generic,prob_generic,"
                     "re_closed,im_closed,prob_closed\n")
            for l, g, h in profiles:
                pg = g.amplitudes
                ph = h.amplitudes if h is not None else None
                for k, n in enumerate(range(g.n_min, g.n_min + pg.size)):
                    base = f"{l},{n},{_f(pg[k].real)},{_f(pg[k].imag)},{_f(abs(pg[k]) ** 2)}"
                    if ph is not None:
                        base += f",{_f(ph[k].real)},{_f(ph[k].imag)},{_f(abs(ph[k]) ** 2)}"
                    else:
                        base += ",,,"
                    fh.write(base + "\n")
    if resolved["outputs"]["svg"]:
        ls = np.array([r[0] for r in rows], dtype=np.float64)
        es = np.array([r[1] for r in rows])
        svg.line_plot(out / "ladder.svg", ls, [("energy", es)], "ladder index l",
                      "energy")
        mid = profiles[l_max]  # l = 0
        n = np.arange(window[0], window[1] + 1, dtype=np.float64)
        series = [("|C_n|^2 (quadrature)", np.abs(mid[1].amplitudes) ** 2)]
        if mid[2] is not None:
            series.append(("|C_n|^2 (closed form)", np.abs(mid[2].amplitudes) ** 2))
        svg.line_plot(out / "state_l0.svg", n, series, "site n", "probability")
    extra = {"t_bloch": bloch_period(model), "window": [window[0], window[1]],
             "ladder_spacing": model.F * model.a}
    _write_meta(out, "wannier-stark", origin, resolved, extra, t_start)
    return 0


def _residual(ws_state, model) -> float:
    st = ws_state.as_state()
    hc = hamiltonian_apply(st, model)
    num = float(np.linalg.norm(hc - ws_state.energy * st.amplitudes))
    den = float(np.linalg.norm(st.amplitudes))
    return num / den


def _validate_sweep(raw: dict) -> dict:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    _check_keys(raw, ("version", "sweep"), "config")
    if isinstance(raw.get("version"), bool) or raw.get("version") != 1:
        raise ConfigError("config must declare \"version\": 1")
    sb = raw.get("sweep")
    if not isinstance(sb, dict):
        raise ConfigError("sweep config needs a 'sweep' object")
    _check_keys(sb, ("command", "scenarios"), "sweep")
    command = sb.get("command")
    if command not in ("run", "compare", "wannier-stark"):
        raise ConfigError("sweep.command must be 'run', 'compare', or 'wannier-stark'")
    scen = sb.get("scenarios")
    if not isinstance(scen, list) or not scen:
        raise ConfigError("sweep.scenarios must be a nonempty list")
    seen = set()
    out = []
    for i, item in enumerate(scen):
        if not isinstance(item, dict):
            raise ConfigError(f"sweep.scenarios[{i}] must be an object")
        _check_keys(item, ("name", "config"), f"sweep.scenarios[{i}]")
        name = item.get("name")
        if (not isinstance(name, str) or not name
                or not all(ch.isalnum() or ch in "_-" for ch in name)):
            raise ConfigError(
                f"sweep.scenarios[{i}].name must be a nonempty [A-Za-z0-9_-] string")
        if name in seen:
            raise ConfigError(f"duplicate sweep scenario name {name!r}")
        seen.add(name)
        out.append({"name": name, "config": _validate_scenario(item.get("config"))})
    return {"version": 1, "sweep": {"command": command, "scenarios": out}}


def cmd_sweep(source: str, out: Path, want_svg: bool) -> int:
    t_start = time.time()
    p = Path(source)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {source!r}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {source!r} is not valid JSON: {exc}") from exc
    cfg = _validate_sweep(raw)
    command = cfg["sweep"]["command"]
    scenarios = cfg["sweep"]["scenarios"]

    env = os.environ.get("BLOCHSIM_THREADS", "")
    try:
        workers = max(1, int(env)) if env else min(4, len(scenarios))
    except ValueError:
        raise ConfigError(f"BLOCHSIM_THREADS must be an integer, got {env!r}")

    runners = {"run": cmd_run, "compare": cmd_compare, "wannier-stark": cmd_wannier_stark}

    def one(item) -> tuple[str, int, str]:
        name, sub_cfg = item["name"], item["config"]
        sub_out = out / name
        try:
            code = runners[command](sub_cfg, f"sweep:{name}", sub_out, want_svg)
            return name, code, ""
        except WindowTooSmallError as exc:
            return name, 2, str(exc)
        except BlochsimError as exc:
            return name, 1, str(exc)

    out.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(one, scenarios))

    summary = {
        "command": command,
        "scenarios": [{"name": n, "exit_code": c, **({"error": e} if e else {})}
                      for n, c, e in results],
        "pass": all(c == 0 for _, c, _ in results),
    }
    with open(out / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _write_meta(out, "sweep", str(p), cfg, {"workers": workers}, t_start)
    for n, c, e in results:
        if c != 0:
            print(f"sweep scenario {n!r} failed with exit code {c}: {e}",
                  file=sys.stderr)
    return max((c for _, c, _ in results), default=0)


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="blochsim",
        description="Wave packets on driven tight-binding chains: simulate, "
                    "cross-validate, and tabulate the stationary ladder.")
    parser.add_argument("--version", action="version", version=f"blochsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in (
            ("run", "evolve a scenario and write snapshots and observables"),
            ("compare", "cross-validate rk4, spectral, and closed-form evolution"),
            ("wannier-stark", "tabulate the stationary ladder and its residuals"),
            ("sweep", "run many scenarios concurrently")):
        sp = sub.add_parser(name, help=descr)
        sp.add_argument("config", help="config file path, or a bundled name fig2..fig6")
        sp.add_argument("--out", default=None, help="output directory "
                        "(default: <config stem>_out)")
        sp.add_argument("--svg", action="store_true", help="also write SVG plots")
    args = parser.parse_args(argv)

    out = Path(args.out) if args.out else Path(Path(args.config).stem + "_out")
    try:
        if args.command == "sweep":
            return cmd_sweep(args.config, out, args.svg)
        cfg, origin = load_config(args.config)
        if args.command == "run":
            return cmd_run(cfg, origin, out, args.svg)
        if args.command == "compare":
            return cmd_compare(cfg, origin, out, args.svg)
        return cmd_wannier_stark(cfg, origin, out, args.svg)
    except WindowTooSmallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BlochsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
