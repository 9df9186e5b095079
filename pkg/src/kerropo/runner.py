"""Scenario execution: config parsing, the run pipeline, sweeps, and
deterministic CSV/JSON emission.

A scenario config is a JSON object (see README.md for the schema):
initial state -> optional Kerr rotations (before/after) -> optional
shaping evolution (unitary, or lossy when "loss" is present) ->
observables.  Outputs are one CSV per requested observable plus a
metadata.json sidecar that embeds the full config, so any run replays
from its own metadata.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__ as _pkg_version
from ._backend import backend_name
from .errors import ValidationError
from .hamiltonians import ShapingParams, kerr_rotation_phases
from .observables import (
    detect_peaks,
    fidelity,
    number_distribution,
    predicted_spacing,
    purity,
    quadrant_weights,
    sinc_envelope,
    wigner,
)
from .propagate import (
    EvolveConfig,
    LossConfig,
    apply_kerr_rotation,
    evolve_chain,
    evolve_lindblad,
)
from .states import (
    ChainState,
    coherent_chain,
    embed_chain,
    pure_to_density,
    squeezed_vacuum_chain,
    uniform_chain,
)


def _as_complex(value, path: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(value[0], value[1])
    raise ValidationError(f"{path}: expected number or [re, im], got {value!r}")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()[:16]


def build_initial_state(spec: dict) -> ChainState:
    kind = spec.get("kind")
    M = spec.get("truncation")
    if not isinstance(M, int):
        raise ValidationError("initial_state.truncation: integer required")
    if kind == "uniform":
        return uniform_chain(M)
    if kind == "coherent":
        return coherent_chain(_as_complex(spec.get("alpha", 0.0), "initial_state.alpha"), M)
    if kind == "squeezed-vacuum":
        return squeezed_vacuum_chain(float(spec.get("r", 0.0)), M)
    raise ValidationError(f"initial_state.kind: unknown kind {kind!r}")


def build_shaping(spec: dict) -> ShapingParams:
    try:
        sched = spec.get("schedule")
        return ShapingParams(
            xi=_as_complex(spec["xi"], "shaping.xi"),
            gamma=float(spec["gamma"]),
            n_center=int(spec["n_center"]),
            tau=float(spec["tau"]),
            delta_center=float(spec.get("delta_center", 0.0)),
            schedule=tuple((float(d), float(o)) for d, o in sched) if sched else None,
        )
    except KeyError as exc:
        raise ValidationError(f"shaping.{exc.args[0]}: missing") from None


@dataclass
class RunResult:
    meta: dict
    tables: dict[str, tuple[list[str], list[tuple]]] = field(default_factory=dict)

    def scalar(self, key, default=None):
        return self.meta.get("scalars", {}).get(key, default)


def _kerr_stages(config: dict) -> tuple[list[float], list[float]]:
    spec = config.get("kerr_rotation")
    if spec is None:
        return [], []
    stages = spec if isinstance(spec, list) else [spec]
    before, after = [], []
    for st in stages:
        phase = float(st.get("total_phase", 0.0))
        where = st.get("apply", "after")
        if where == "before":
            before.append(phase)
        elif where == "after":
            after.append(phase)
        else:
            raise ValidationError(f"kerr_rotation.apply: {where!r} not before/after")
    return before, after


def _apply_kerr(state: ChainState, total_phase: float) -> ChainState:
    # total_phase = (g_ss + g_ii + g_is) * t; split evenly, t = 1
    g = total_phase / 3.0
    return apply_kerr_rotation(state, kerr_rotation_phases(g, g, g, 1.0, state.truncation))


def _run_lossy(state: ChainState, params: ShapingParams, loss_spec: dict,
               result: RunResult) -> None:
    ratio = float(loss_spec.get("strength_to_loss", 0.0))
    if ratio <= 0:
        raise ValidationError("loss.strength_to_loss: positive number required")
    checkpoints = sorted(float(c) for c in loss_spec.get("checkpoints", [1.0]))
    if not checkpoints or checkpoints[-1] > 1.0 + 1e-12 or checkpoints[0] <= 0:
        raise ValidationError("loss.checkpoints: fractions of gamma*tau in (0, 1]")
    steps_per_tau = int(loss_spec.get("steps_per_tau", 2250))
    # tau_cav = 2Q/omega (amplitude decay time); the master-equation
    # number-decay rate is half the quoted cavity decay rate.
    gamma_cav = params.gamma / ratio
    lindblad_rate = gamma_cav / 2.0
    rho = pure_to_density(embed_chain(state))
    psi = state
    rows = []
    t_prev = 0.0
    for frac in checkpoints:
        t_next = frac * params.tau
        seg = t_next - t_prev
        n_steps = max(1, round(steps_per_tau * seg / params.tau))
        rho = evolve_lindblad(rho, params, LossConfig(gamma_cav=lindblad_rate,
                                                      n_steps=n_steps),
                              t_start=t_prev, duration=seg)
        psi = evolve_chain(psi, params,
                           EvolveConfig(n_steps=max(2, 2 * n_steps)),
                           t_start=t_prev, duration=seg)
        F = fidelity(rho, psi)
        rows.append((params.gamma * t_next, gamma_cav, 1.0 - F, purity(rho),
                     abs(rho.trace() - 1.0)))
        t_prev = t_next
    result.tables["loss_curve"] = (
        ["gamma_t", "gamma_cav", "infidelity", "purity", "trace_error"], rows)
    result.meta["scalars"]["final_infidelity"] = rows[-1][2]
    result.meta["scalars"]["final_purity"] = rows[-1][3]
    result.meta["loss"] = {"strength_to_loss": ratio, "gamma_cav": gamma_cav,
                           "lindblad_rate": lindblad_rate}
    result.meta["_final_rho"] = rho


def run(config: dict, out_dir: str | None = None, fmt: str = "csv") -> RunResult:
    """Execute one scenario; write outputs when out_dir is given."""
    if "config" in config and "initial_state" not in config:
        config = config["config"]
    if "initial_state" not in config:
        raise ValidationError("initial_state: missing")
    result = RunResult(meta={
        "name": config.get("name"),
        "config": config,
        "config_hash": config_hash(config),
        "backend": backend_name(),
        "version": _pkg_version,
        "scalars": {},
    })
    state = build_initial_state(config["initial_state"])
    before, after = _kerr_stages(config)
    for phase in before:
        state = _apply_kerr(state, phase)

    params = None
    if config.get("shaping"):
        params = build_shaping(config["shaping"])
        result.meta["predicted_spacing"] = predicted_spacing(params.gamma, params.tau)
        if config.get("loss"):
            _run_lossy(state, params, config["loss"], result)
            rho = result.meta.pop("_final_rho")
            obs = config.get("observables", {})
            if obs.get("distribution", True):
                dist = number_distribution(rho, "signal")
                rows = [(m, p) for m, p in enumerate(dist.probabilities)]
                result.tables["distribution"] = (["m", "probability"], rows)
            _finish_meta(result, out_dir, fmt)
            return result
        ev_spec = config.get("evolve", {})
        cfg = EvolveConfig(
            n_steps=ev_spec.get("n_steps"),
            method=ev_spec.get("method", "crank-nicolson"),
            boundary_tol=ev_spec.get("boundary_tol"),
        )
        state = evolve_chain(state, params, cfg)
    elif config.get("loss"):
        raise ValidationError("loss requires a shaping section")

    for phase in after:
        state = _apply_kerr(state, phase)

    obs = config.get("observables", {})
    dist = number_distribution(state)
    result.meta["scalars"]["mean_index"] = dist.mean()
    if params is not None and params.n_center <= state.truncation:
        result.meta["scalars"]["p_center"] = float(
            dist.probabilities[params.n_center])
    if obs.get("distribution", True):
        amps = state.amplitudes
        rows = [(m, float(p), float(amps[m].real), float(amps[m].imag))
                for m, p in enumerate(dist.probabilities)]
        result.tables["distribution"] = (["m", "probability", "re", "im"], rows)
    if obs.get("peaks"):
        frac = float(obs["peaks"].get("min_height_fraction", 0.15))
        report = detect_peaks(dist, frac)
        result.meta["peaks"] = {
            "locations": list(report.locations),
            "spacings": list(report.spacings),
            "heights": list(report.heights),
            "min_height_fraction": frac,
        }
    if obs.get("envelope") and params is not None:
        env = sinc_envelope(state.truncation, params.n_center, params.gamma,
                            params.tau, math.atan2(params.xi.imag, params.xi.real))
        result.tables["envelope"] = (
            ["m", "envelope"],
            [(m, float(v)) for m, v in enumerate(env.probabilities)])
    if obs.get("wigner"):
        extent = float(obs["wigner"].get("extent", 16.0))
        points = int(obs["wigner"].get("points", 201))
        xs = np.linspace(-extent, extent, points)
        grid = wigner(state, xs, xs)
        rows = [(float(xs[i]), float(xs[j]), float(grid.values[i, j]))
                for i in range(points) for j in range(points)]
        result.tables["wigner"] = (["x", "p", "w"], rows)
        result.meta["scalars"]["wigner_min"] = float(grid.values.min())
        result.meta["scalars"]["wigner_integral"] = grid.integral()
        if obs.get("quadrants"):
            q = quadrant_weights(grid)
            result.meta["quadrant_weights"] = [float(v) for v in q]
            top = sorted(range(4), key=lambda k: -q[k])[:2]
            result.meta["scalars"]["top2_fraction"] = float(
                (q[top[0]] + q[top[1]]) / sum(q))
            result.meta["top2_sectors"] = top
    _finish_meta(result, out_dir, fmt)
    return result


def _format_cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _finish_meta(result: RunResult, out_dir: str | None, fmt: str) -> None:
    if out_dir is None:
        return
    os.makedirs(out_dir, exist_ok=True)
    for name, (header, rows) in result.tables.items():
        if fmt == "json":
            path = os.path.join(out_dir, f"{name}.json")
            payload = [dict(zip(header, row)) for row in rows]
            with open(path, "w") as fh:
                json.dump(payload, fh, sort_keys=True)
        else:
            path = os.path.join(out_dir, f"{name}.csv")
            with open(path, "w") as fh:
                fh.write(",".join(header) + "\n")
                for row in rows:
                    fh.write(",".join(_format_cell(v) for v in row) + "\n")
    with open(os.path.join(out_dir, "metadata.json"), "w") as fh:
        json.dump(result.meta, fh, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def _set_path(config: dict, dotted: str, value) -> dict:
    out = json.loads(json.dumps(config))
    node = out
    parts = dotted.split(".")
    for part in parts[:-1]:
        if part not in node or not isinstance(node[part], dict):
            raise ValidationError(f"sweep axis {dotted!r}: path not found")
        node = node[part]
    if parts[-1] not in node:
        raise ValidationError(f"sweep axis {dotted!r}: path not found")
    node[parts[-1]] = value
    return out


def _sweep_case(args):
    coords, config, out_dir, fmt = args
    try:
        res = run(config, out_dir, fmt)
        rows = []
        if "loss_curve" in res.tables:
            header, data = res.tables["loss_curve"]
            for row in data:
                rows.append(coords + (row[0], row[2]))
            return coords, rows, ["gamma_t", "infidelity"], None
        scal = res.meta["scalars"]
        keys = sorted(scal)
        return coords, [coords + tuple(scal[k] for k in keys)], keys, None
    except Exception as exc:  # isolated per-run failure
        return coords, [], [], f"{type(exc).__name__}: {exc}"


def sweep(config: dict, axes: dict[str, list], out_dir: str | None = None,
          workers: int = 1, fmt: str = "csv") -> dict:
    """Cartesian-product runs over named config paths.

    Results are keyed and ordered by grid coordinates, so the aggregate
    table is identical for any worker count.  Per-run failures are
    reported in the "errors" entry without aborting the sweep.
    """
    if not axes:
        raise ValidationError("sweep needs at least one axis")
    names = list(axes)
    grids = [list(axes[n]) for n in names]
    cases = []
    coords_list = [()]
    for grid in grids:
        coords_list = [c + (v,) for c in coords_list for v in grid]
    for coords in coords_list:
        cfg = config
        for name, value in zip(names, coords):
            cfg = _set_path(cfg, name, value)
        sub = None
        if out_dir is not None:
            tag = "_".join(f"{n.split('.')[-1]}={v}" for n, v in zip(names, coords))
            sub = os.path.join(out_dir, tag)
        cases.append((coords, cfg, sub, fmt))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_sweep_case, cases))
    else:
        outcomes = [_sweep_case(c) for c in cases]
    outcomes.sort(key=lambda item: tuple(repr(v) for v in item[0]))
    rows, errors, metric_keys = [], {}, []
    for coords, case_rows, keys, err in outcomes:
        if err is not None:
            errors[repr(coords)] = err
            continue
        metric_keys = keys
        rows.extend(case_rows)
    header = names + list(metric_keys)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "sweep.csv"), "w") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_format_cell(v) for v in row) + "\n")
        with open(os.path.join(out_dir, "sweep_meta.json"), "w") as fh:
            json.dump({"axes": axes, "config": config, "errors": errors,
                       "config_hash": config_hash(config)}, fh, indent=2,
                      sort_keys=True)
    return {"header": header, "rows": rows, "errors": errors}
