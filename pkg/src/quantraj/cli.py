"""Config-driven command line front end.

Seven subcommands cover the pipeline: ``synth`` samples a trajectory,
``verify`` adds the histogram check against a target density,
``marginal`` averages a superposition into a time-marginal density and
synthesizes from it, ``momentum`` emits the momentum amplitude and
uncertainty product, ``potential`` emits the effective potential with a
Newton's-law residual check, ``bohm`` compares against the Bohmian
trajectory, and ``ensemble`` generates a family of trajectories with
random time offsets.

The run configuration is a YAML mapping with the sections documented in
the README (state, params, trajectory, marginal, momentum, potential,
bohm, verify, ensemble, outputs); unknown keys anywhere are rejected.
Every command writes its CSV series plus a summary.json record.  Exit
codes: 0 success, 2 configuration or validation error, 3 a verification
tolerance failed.

CSV numbers carry 12 significant digits; non-finite values are spelled
as the literal tokens "inf", "-inf" and "singular" (never a silent NaN).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from . import nonstationary, observables, trajectory, verify
from . import bohm as bohm_mod
from .wavefunctions import (OutOfDomainError, PhysicalParams, WaveFunction,
                            box_eigenstate, box_energy, from_callable,
                            plane_wave, stationary, superposition, tabulated)

COMMANDS = ("synth", "verify", "marginal", "momentum", "potential",
            "bohm", "ensemble")

_TOP_KEYS = {"state", "params", "trajectory", "marginal", "momentum",
             "potential", "bohm", "verify", "ensemble", "outputs"}
_SECTION_KEYS = {
    "params": {"m", "hbar", "T", "c"},
    "trajectory": {"mode", "direction", "t0", "t0_seed", "n_samples",
                   "sampling", "seed", "t_span"},
    "marginal": {"t_start", "T_avg", "n_t"},
    "momentum": {"n_mu", "mu_max"},
    "potential": {"cutoff_density"},
    "bohm": {"x0", "t_span", "dt"},
    "verify": {"dx", "l1_tol", "target"},
    "ensemble": {"n_members", "seed", "n_samples", "sampling", "mode"},
    "outputs": {"directory", "series"},
}
_STATE_KEYS = {
    "box": {"kind", "n", "L", "convention", "n_points"},
    "superposition": {"kind", "components", "L", "convention", "n_points"},
    "tabulated": {"kind", "path", "n_points"},
    "plane-wave": {"kind", "k", "L", "x_min", "n_points"},
    "uniform": {"kind", "L", "x_min", "n_points"},
}


class ConfigError(Exception):
    """Configuration cannot be parsed or validated."""


def _check_keys(name: str, mapping: dict, allowed: set) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {name}: {', '.join(unknown)}")


def load_config(path: str) -> dict:
    """Read and structurally validate a YAML run configuration."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        cfg = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is not None:
            raise ConfigError(
                f"{path}:{mark.line + 1}:{mark.column + 1}: "
                f"{getattr(e, 'problem', e)}") from e
        raise ConfigError(f"{path}: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    _check_keys("config", cfg, _TOP_KEYS)
    for name, allowed in _SECTION_KEYS.items():
        section = cfg.get(name)
        if section is None:
            continue
        if not isinstance(section, dict):
            raise ConfigError(f"section {name} must be a mapping")
        _check_keys(name, section, allowed)
    return cfg


def build_params(cfg: dict) -> PhysicalParams:
    section = cfg.get("params", {}) or {}
    try:
        return PhysicalParams(m=float(section.get("m", 1.0)),
                              hbar=float(section.get("hbar", 1.0)),
                              T=float(section.get("T", 1.0)),
                              c=float(section.get("c", 10.0)))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad params section: {e}") from e


def _parse_coeff(raw) -> complex:
    if isinstance(raw, (int, float)):
        return complex(raw)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return complex(float(raw[0]), float(raw[1]))
    raise ConfigError(f"coefficient must be a number or [re, im], got {raw!r}")


def build_state(state_cfg, params: PhysicalParams):
    """Construct (stationary wf or None, time-dependent Psi) from config."""
    if not isinstance(state_cfg, dict) or "kind" not in state_cfg:
        raise ConfigError("state section with a 'kind' is required")
    kind = state_cfg["kind"]
    if kind not in _STATE_KEYS:
        raise ConfigError(f"unknown state kind {kind!r}")
    _check_keys(f"state ({kind})", state_cfg, _STATE_KEYS[kind])
    L = float(state_cfg.get("L", 1.0))
    n_points = int(state_cfg.get("n_points", 4097))
    if kind == "box":
        n = int(state_cfg.get("n", 1))
        conv = state_cfg.get("convention", "centered")
        wf = box_eigenstate(n, L, conv, n_points)
        E = box_energy(n, L, params.m, params.hbar)
        return wf, stationary(wf, E, params.hbar)
    if kind == "plane-wave":
        k = float(state_cfg.get("k", 2.0 * math.pi))
        x_min = float(state_cfg.get("x_min", 0.0))
        wf = plane_wave(k, L, x_min, n_points)
        E = (params.hbar * k) ** 2 / (2.0 * params.m)
        return wf, stationary(wf, E, params.hbar)
    if kind == "uniform":
        x_min = float(state_cfg.get("x_min", 0.0))
        wf = from_callable(lambda x: np.ones_like(x, dtype=complex),
                           x_min, x_min + L,
                           derivative=lambda x: np.zeros_like(x, dtype=complex),
                           n_points=n_points, label="uniform")
        return wf, stationary(wf, 0.0, params.hbar)
    if kind == "tabulated":
        path = state_cfg.get("path")
        if not path:
            raise ConfigError("tabulated state needs a 'path' to a CSV (x, re, im)")
        try:
            data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except OSError as e:
            raise ConfigError(f"cannot read samples {path}: {e}") from e
        if data.shape[1] < 3:
            raise ConfigError(f"{path}: need columns x, re, im")
        wf = tabulated(data[:, 0], data[:, 1] + 1j * data[:, 2],
                       n_points=n_points if "n_points" in state_cfg else None)
        return wf, stationary(wf, 0.0, params.hbar)
    # superposition of box eigenstates
    comps = state_cfg.get("components")
    if not isinstance(comps, list) or len(comps) < 1:
        raise ConfigError("superposition needs a list of components")
    conv = state_cfg.get("convention", "centered")
    states, coeffs, energies = [], [], []
    for item in comps:
        if not isinstance(item, dict):
            raise ConfigError("each component must be a mapping")
        _check_keys("component", item, {"n", "coeff"})
        n = int(item.get("n", 1))
        states.append(box_eigenstate(n, L, conv, n_points))
        coeffs.append(_parse_coeff(item.get("coeff", 1.0)))
        energies.append(box_energy(n, L, params.m, params.hbar))
    Psi = superposition(states, coeffs, energies, hbar=params.hbar)
    return None, Psi


def _require_stationary(wf: Optional[WaveFunction], command: str) -> WaveFunction:
    if wf is None:
        raise ConfigError(
            f"command {command!r} needs a stationary state; "
            "use the 'marginal' command for superpositions")
    return wf


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    f = float(v)
    if math.isnan(f):
        return "singular"
    if math.isinf(f):
        return "inf" if f > 0 else "-inf"
    return f"{f:.12g}"


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_trajectories(path: Path, trajs) -> None:
    rows = []
    for tr in trajs:
        for t, x, v in zip(tr.t, tr.x, tr.v):
            rows.append((t, x, v, tr.member_id))
    rows.sort(key=lambda r: (r[3], r[0]))
    _write_csv(path, ("t", "x", "v", "member_id"), rows)


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return "singular"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    return obj


def _trajectory_args(cfg: dict, params: PhysicalParams):
    section = cfg.get("trajectory", {}) or {}
    t0 = section.get("t0")
    t0_seed = section.get("t0_seed")
    if t0 is not None and t0_seed is not None:
        raise ConfigError("give either t0 or t0_seed, not both")
    if t0_seed is not None:
        t0 = float(np.random.default_rng(int(t0_seed)).uniform(0.0, params.T))
    elif t0 is None:
        t0 = 0.0
    t_span = section.get("t_span")
    if t_span is not None:
        t_span = (float(t_span[0]), float(t_span[1]))
    return dict(n=int(section.get("n_samples", 1001)),
                sampling=section.get("sampling", "uniform-grid"),
                t0=float(t0),
                direction=int(section.get("direction", 1)),
                mode=section.get("mode", "single-pass"),
                seed=section.get("seed"),
                t_span=t_span)


def _cmd_synth(cfg, params, wf, Psi, outdir: Path):
    wf = _require_stationary(wf, "synth")
    args = _trajectory_args(cfg, params)
    traj = trajectory.sample_trajectory(wf, params, **args)
    _write_trajectories(outdir / "trajectory.csv", [traj])
    return {"n_samples": len(traj), "t0": traj.t0, "T": params.T,
            "mode": traj.mode}, {}, False


def _cmd_verify(cfg, params, wf, Psi, outdir: Path):
    wf = _require_stationary(wf, "verify")
    section = cfg.get("verify", {}) or {}
    args = _trajectory_args(cfg, params)
    if "trajectory" not in cfg:
        args["n"] = 100000
        args["sampling"] = "uniform-random"
        args["seed"] = 0
    traj = trajectory.sample_trajectory(wf, params, **args)
    _write_trajectories(outdir / "trajectory.csv", [traj])

    target_cfg = section.get("target")
    if target_cfg is None:
        target = wf.density
    else:
        target_wf, _ = build_state(target_cfg, params)
        target = _require_stationary(target_wf, "verify target").density
    dx = float(section.get("dx", verify.DEFAULT_BIN_FRACTION * wf.domain.length))
    l1_tol = float(section.get("l1_tol", verify.DEFAULT_L1_TOL))
    report = verify.pdf_match_report(traj, target, dx=dx, l1_tol=l1_tol)
    h = report.hist
    _write_csv(outdir / "histogram.csv", ("bin_lo", "bin_hi", "count", "density"),
               zip(h.bin_edges[:-1], h.bin_edges[1:], h.counts,
                   h.normalized_density))
    metrics = {"dx": report.dx, "n_samples": report.n_samples,
               "l1": report.l1, "chi2": report.chi2, "dof": report.dof,
               "chi2_limit": report.chi2_limit}
    passes = {"l1": report.l1 < report.l1_tol,
              "chi2": report.chi2 <= report.chi2_limit,
              "overall": report.passed}
    return metrics, passes, not report.passed


def _cmd_marginal(cfg, params, wf, Psi, outdir: Path):
    section = cfg.get("marginal", {}) or {}
    t_start = float(section.get("t_start", 0.0))
    T_avg = float(section.get("T_avg", params.T))
    n_t = int(section.get("n_t", nonstationary.DEFAULT_N_T))
    marg = nonstationary.time_marginal(Psi, t_start, T_avg, n_t)
    _write_csv(outdir / "marginal.csv", ("x", "p"),
               zip(marg.domain.grid(), marg.values))
    args = _trajectory_args(cfg, params)
    traj = nonstationary.trajectory_from_marginal(marg, params, **args)
    _write_trajectories(outdir / "trajectory.csv", [traj])
    return {"t_start": t_start, "T_avg": T_avg, "n_t": n_t,
            "n_samples": len(traj)}, {}, False


def _cmd_momentum(cfg, params, wf, Psi, outdir: Path):
    wf = _require_stationary(wf, "momentum")
    section = cfg.get("momentum", {}) or {}
    n_mu = int(section.get("n_mu", observables.DEFAULT_N_MU))
    mu_max = float(section.get("mu_max", observables.DEFAULT_MU_MAX))
    Phi = observables.momentum_amplitude(wf, n_mu, mu_max, params)
    _write_csv(outdir / "phi.csv", ("mu", "re", "im", "abs2"),
               zip(Phi.mu_grid, Phi.values.real, Phi.values.imag, Phi.abs2()))
    rep = observables.uncertainty_product(wf, Phi, params)
    metrics = {"dx": rep.dx, "dmu": rep.dmu, "product": rep.product,
               "captured": Phi.captured, "truncated": Phi.truncated}
    passes = {"heisenberg": rep.product >= 0.499 * params.hbar}
    return metrics, passes, not passes["heisenberg"]


def _cmd_potential(cfg, params, wf, Psi, outdir: Path):
    wf = _require_stationary(wf, "potential")
    section = cfg.get("potential", {}) or {}
    cutoff = float(section.get("cutoff_density",
                               observables.DEFAULT_CUTOFF_DENSITY))
    table = observables.effective_potential(wf, params, cutoff)
    _write_csv(outdir / "vbar.csv", ("x", "vbar"),
               zip(table.domain.grid(), table.values))

    grid = wf.domain.grid()
    rho = wf.density_grid()
    mask = rho > 0.05
    rels = []
    for x in grid[mask][::16]:
        res = observables.newton_residual(wf, params, float(x), h=1e-4,
                                          cutoff_density=cutoff)
        if math.isnan(res):
            continue
        a = complex(wf.amplitude(float(x)))
        dmod = (a.conjugate() * complex(wf.derivative(float(x)))).real / abs(a)
        force = abs(2.0 * params.m * dmod / (params.T ** 2 * abs(a) ** 5))
        if force > 0:
            rels.append(res / force)
    median_rel = float(np.median(rels)) if rels else math.nan
    metrics = {"cutoff_density": cutoff, "n_residuals": len(rels),
               "median_rel_residual": median_rel}
    ok = bool(rels) and median_rel < 1e-4
    return metrics, {"newton": ok}, not ok


def _cmd_bohm(cfg, params, wf, Psi, outdir: Path):
    section = cfg.get("bohm", {}) or {}
    dom = Psi.domain
    x0 = float(section.get("x0", 0.5 * (dom.x_min + dom.x_max)))
    t_span = section.get("t_span", [0.0, params.T])
    t_span = (float(t_span[0]), float(t_span[1]))
    dt = float(section.get("dt", params.T / 1000.0))
    bt = bohm_mod.bohm_trajectory(Psi, x0, t_span, dt, params)

    if wf is None:
        source = nonstationary.time_marginal(Psi, t_span[0],
                                             max(t_span[1] - t_span[0], params.T))
    else:
        source = wf
    args = _trajectory_args(cfg, params)
    args["mode"] = "periodic"
    args["t_span"] = t_span
    classical = trajectory.sample_trajectory(source, params, **args)
    rep = bohm_mod.compare(classical, bt)
    _write_csv(outdir / "comparison.csv", ("t", "x_classical", "x_bohm", "gap"),
               zip(rep.t, rep.x_classical, rep.x_bohm, rep.gap))
    metrics = {"x0": x0, "dt": dt, "bohm_status": bt.status,
               "max_gap": rep.max_gap, "mean_gap": rep.mean_gap}
    return metrics, {}, False


def _cmd_ensemble(cfg, params, wf, Psi, outdir: Path):
    wf = _require_stationary(wf, "ensemble")
    section = cfg.get("ensemble", {}) or {}
    n_members = int(section.get("n_members", 8))
    seed = section.get("seed", 0)
    n = int(section.get("n_samples", 129))
    sampling = section.get("sampling", "uniform-grid")
    mode = section.get("mode", "periodic")
    members = trajectory.ensemble(wf, params, n_members, seed, n=n,
                                  sampling=sampling, mode=mode)
    _write_trajectories(outdir / "trajectory.csv", members)
    _write_csv(outdir / "t0.csv", ("member_id", "t0"),
               [(m.member_id, m.t0) for m in members])
    return {"n_members": n_members, "seed": seed,
            "t0": [m.t0 for m in members]}, {}, False


_DISPATCH = {
    "synth": _cmd_synth,
    "verify": _cmd_verify,
    "marginal": _cmd_marginal,
    "momentum": _cmd_momentum,
    "potential": _cmd_potential,
    "bohm": _cmd_bohm,
    "ensemble": _cmd_ensemble,
}


def run(command: str, config_path: str, output_dir: Optional[str] = None) -> int:
    """Execute one subcommand; returns the process exit code."""
    started = time.perf_counter()
    if command not in _DISPATCH:
        print(f"unknown command {command!r}", file=sys.stderr)
        return 2
    try:
        cfg = load_config(config_path)
        params = build_params(cfg)
        wf, Psi = build_state(cfg.get("state"), params)
        outdir = Path(output_dir
                      or (cfg.get("outputs", {}) or {}).get("directory", "out"))
        outdir.mkdir(parents=True, exist_ok=True)
        metrics, passes, failed = _DISPATCH[command](cfg, params, wf, Psi, outdir)
    except (ConfigError, OutOfDomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    summary = {
        "command": command,
        "config": _sanitize(cfg),
        "metrics": _sanitize(metrics),
        "pass": passes,
        "wall_clock_s": round(time.perf_counter() - started, 6),
    }
    with open(outdir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if failed:
        print(f"{command}: verification tolerance failed", file=sys.stderr)
        return 3
    return 0


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(
        prog="quantraj",
        description="Classical trajectory synthesis from 1-D quantum densities")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("config", help="YAML run configuration")
    parser.add_argument("--output-dir", default=None,
                        help="override outputs.directory from the config")
    args = parser.parse_args(argv)
    sys.exit(run(args.command, args.config, args.output_dir))


if __name__ == "__main__":
    main()
