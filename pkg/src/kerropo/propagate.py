"""Time evolution engines.

evolve_chain        Crank-Nicolson stepping of the chain Schrodinger equation
                    (norm-preserving, midpoint-time Hamiltonian).
evolve_chain_exact  dense midpoint-exponential reference for the same problem.
evolve_lindblad     fixed-step RK4 integration of the two-mode master equation
                    with equal signal/idler decay.
evolve_three_mode   unitary oracle with a quantum pump, for validating the
                    pump-dephasing purity estimate.

All engines are deterministic: fixed step counts, no adaptivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import NumericGuardError, ValidationError
from .hamiltonians import (
    ShapingParams,
    chain_hamiltonian,
    chain_phase_rates,
    h0_diagonal,
    two_mode_coupling,
)
from .states import ChainState, ThreeModeState, TwoModeDensityMatrix


def default_chain_steps(params: ShapingParams, M: int) -> int:
    """Step count keeping the phase advance per step small at the strongest hop."""
    return max(4000, math.ceil(50.0 * abs(params.xi) * params.tau * M))


@dataclass(frozen=True)
class EvolveConfig:
    n_steps: int | None = None
    method: str = "crank-nicolson"          # or "exact-exponential"
    norm_tol: float = 1e-10
    boundary_tol: float | None = None       # max |c_M|^2 allowed; None = no guard

    def __post_init__(self):
        if self.method not in ("crank-nicolson", "exact-exponential"):
            raise ValidationError(f"unknown method {self.method!r}")
        if self.n_steps is not None and self.n_steps < 1:
            raise ValidationError("n_steps must be >= 1")


@dataclass(frozen=True)
class LossConfig:
    gamma_cav: float                        # signal = idler decay rate, rad/s
    n_steps: int | None = None
    trace_tol: float = 1e-6

    def __post_init__(self):
        if self.gamma_cav < 0:
            raise ValidationError("gamma_cav must be >= 0")


def _finish_chain(c: np.ndarray, max_boundary: float, cfg: EvolveConfig,
                  what: str) -> ChainState:
    norm2 = float(np.sum(np.abs(c) ** 2))
    if not np.isfinite(norm2):
        raise NumericGuardError(f"{what}: non-finite amplitudes")
    if abs(norm2 - 1.0) > cfg.norm_tol:
        raise NumericGuardError(
            f"{what}: norm drift {abs(norm2 - 1.0):.3e} exceeds {cfg.norm_tol:.1e}")
    if cfg.boundary_tol is not None and max_boundary > cfg.boundary_tol:
        raise NumericGuardError(
            f"{what}: boundary population reached {max_boundary:.3e} "
            f"(guard {cfg.boundary_tol:.1e}); increase the truncation")
    return ChainState(c)


def evolve_chain(state: ChainState, params: ShapingParams,
                 cfg: EvolveConfig | None = None, *,
                 t_start: float = 0.0, duration: float | None = None) -> ChainState:
    """Evolve a chain state under the shaping Hamiltonian.

    Dispatches on cfg.method; honours params.schedule when present (see
    schedule_evolve).  t_start sets the time origin of the detuning
    phases, which matters for schedules and checkpointed runs.
    """
    cfg = cfg or EvolveConfig()
    if params.schedule is not None:
        return schedule_evolve(state, params, cfg)
    M = state.truncation
    span = params.tau if duration is None else duration
    n_steps = cfg.n_steps or default_chain_steps(params, M)
    row_sum = 2.0 * M * abs(params.xi)
    if row_sum * span / n_steps > 0.1:
        import warnings

        warnings.warn(
            f"dt * max |H| row sum = {row_sum * span / n_steps:.2f} > 0.1; "
            "increase n_steps for second-order accuracy", RuntimeWarning,
            stacklevel=2)
    if cfg.method == "exact-exponential":
        return evolve_chain_exact(state, params, cfg, t_start=t_start, duration=span)
    theta = chain_phase_rates(params, M)
    dt = span / n_steps
    c, max_boundary = _backend.cn_evolve(
        np.asarray(state.amplitudes), complex(params.xi), theta, t_start, dt, n_steps)
    return _finish_chain(c, max_boundary, cfg, "evolve_chain")


def evolve_chain_exact(state: ChainState, params: ShapingParams,
                       cfg: EvolveConfig | None = None, *,
                       t_start: float = 0.0, duration: float | None = None) -> ChainState:
    """Dense-exponential reference evolution (midpoint Hamiltonian per step).

    Each step applies exp(-i H(t_mid) dt) through an eigendecomposition of
    the Hermitian hop matrix; exactly unitary per step.  Guarded to
    M <= 256 to keep the dense cost honest.
    """
    cfg = cfg or EvolveConfig()
    M = state.truncation
    if M > 256:
        raise ValidationError("exact-exponential oracle limited to M <= 256")
    span = params.tau if duration is None else duration
    n_steps = cfg.n_steps or default_chain_steps(params, M)
    dt = span / n_steps
    c = np.asarray(state.amplitudes).copy()
    max_boundary = float(abs(c[-1]) ** 2)
    for k in range(n_steps):
        t_mid = t_start + (k + 0.5) * dt
        H = chain_hamiltonian(params, M, t_mid)
        evals, vecs = np.linalg.eigh(H)
        c = vecs @ (np.exp(-1j * evals * dt) * (vecs.conj().T @ c))
        max_boundary = max(max_boundary, float(abs(c[-1]) ** 2))
    return _finish_chain(c, max_boundary, cfg, "evolve_chain_exact")


def schedule_evolve(state: ChainState, params: ShapingParams,
                    cfg: EvolveConfig | None = None) -> ChainState:
    """Run the piecewise-constant detuning program in params.schedule.

    Each segment adds its delta-offset to the residual detuning; the time
    origin of the phases continues across segment boundaries.  An offset
    of +gamma is equivalent to shifting the shape center by +1.
    """
    if params.schedule is None:
        return evolve_chain(state, params, cfg)
    cfg = cfg or EvolveConfig()
    total = params.tau
    n_total = cfg.n_steps or default_chain_steps(params, state.truncation)
    t = 0.0
    out = state
    for dur, offset in params.schedule:
        seg_params = params.replace(delta_center=params.delta_center + offset,
                                    schedule=None)
        seg_steps = max(1, round(n_total * dur / total))
        seg_cfg = EvolveConfig(n_steps=seg_steps, method=cfg.method,
                               norm_tol=cfg.norm_tol, boundary_tol=cfg.boundary_tol)
        out = evolve_chain(out, seg_params, seg_cfg, t_start=t, duration=dur)
        t += dur
    return out


def apply_kerr_rotation(state: ChainState, phases: np.ndarray) -> ChainState:
    """Multiply amplitudes by a diagonal phase vector (norm preserved)."""
    phases = np.asarray(phases, dtype=np.complex128)
    if phases.shape != state.amplitudes.shape:
        raise ValidationError("phase vector length must equal M+1")
    if np.max(np.abs(np.abs(phases) - 1.0)) > 1e-12:
        raise ValidationError("phases must be unimodular")
    return ChainState(state.amplitudes * phases)


# ---------------------------------------------------------------------------
# Lindblad dynamics on the two-mode space
# ---------------------------------------------------------------------------


def _lindblad_rhs(rho: np.ndarray, t: float, params: ShapingParams,
                  gamma_cav: float, work: dict) -> np.ndarray:
    """d rho / dt for the two-mode master equation, rho as a 4-d array."""
    Ds, Di = rho.shape[0], rho.shape[1]
    u = two_mode_coupling(params, Ds - 1, Di - 1, t)
    out = np.zeros_like(rho)
    # -i [H, rho]: H couples (a, b) <-> (a+1, b+1) with element u[a, b]
    uL = u[:, :, None, None]
    out[:-1, :-1] -= 1j * uL * rho[1:, 1:]
    out[1:, 1:] -= 1j * np.conj(uL) * rho[:-1, :-1]
    uR = u[None, None, :, :]
    out[:, :, :-1, :-1] += 1j * np.conj(uR) * rho[:, :, 1:, 1:]
    out[:, :, 1:, 1:] += 1j * uR * rho[:, :, :-1, :-1]
    if gamma_cav > 0.0:
        ns = work["ns"]          # sqrt((a+1)(c+1)) for the signal jump
        ni = work["ni"]
        numsum = work["numsum"]  # (a + b + c + d) / 2
        out[:-1, :, :-1, :] += gamma_cav * ns * rho[1:, :, 1:, :]
        out[:, :-1, :, :-1] += gamma_cav * ni * rho[:, 1:, :, 1:]
        out -= gamma_cav * numsum * rho
    return out


def _loss_work(Ds: int, Di: int) -> dict:
    s = np.sqrt(np.outer(np.arange(1, Ds), np.arange(1, Ds)))
    i = np.sqrt(np.outer(np.arange(1, Di), np.arange(1, Di)))
    a = np.arange(Ds)[:, None, None, None]
    b = np.arange(Di)[None, :, None, None]
    c = np.arange(Ds)[None, None, :, None]
    d = np.arange(Di)[None, None, None, :]
    return {
        "ns": s[:, None, :, None],
        "ni": i[None, :, None, :],
        "numsum": (a + b + c + d) / 2.0,
    }


def default_lindblad_steps(params: ShapingParams, M: int) -> int:
    return max(2000, math.ceil(50.0 * abs(params.xi) * params.tau * M))


def evolve_lindblad(rho: TwoModeDensityMatrix, params: ShapingParams,
                    loss: LossConfig, *, t_start: float = 0.0,
                    duration: float | None = None) -> TwoModeDensityMatrix:
    """Integrate the lossy two-mode master equation with fixed-step RK4.

    d rho/dt = -i [H(t), rho] + (G/2) sum_{j in s,i} (2 a_j rho a_j+
    - rho a_j+ a_j - a_j+ a_j rho).  The state is re-Hermitized after
    every step; the trace is conserved identically by the generator, so
    trace drift beyond loss.trace_tol aborts with a step-size error.
    """
    Ms, Mi = rho.truncations
    span = params.tau if duration is None else duration
    n_steps = loss.n_steps or default_lindblad_steps(params, max(Ms, Mi))
    dt = span / n_steps
    r = rho.rho.copy()
    work = _loss_work(Ms + 1, Mi + 1)
    g = loss.gamma_cav
    for k in range(n_steps):
        t = t_start + k * dt
        k1 = _lindblad_rhs(r, t, params, g, work)
        k2 = _lindblad_rhs(r + 0.5 * dt * k1, t + 0.5 * dt, params, g, work)
        k3 = _lindblad_rhs(r + 0.5 * dt * k2, t + 0.5 * dt, params, g, work)
        k4 = _lindblad_rhs(r + dt * k3, t + dt, params, g, work)
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        r = 0.5 * (r + r.transpose(2, 3, 0, 1).conj())
    d = (Ms + 1) * (Mi + 1)
    tr = float(np.trace(r.reshape(d, d)).real)
    if abs(tr - 1.0) > loss.trace_tol:
        raise NumericGuardError(
            f"evolve_lindblad: trace drift {abs(tr - 1.0):.3e} exceeds "
            f"{loss.trace_tol:.1e}; reduce the step size")
    return TwoModeDensityMatrix(r, check=False)


# ---------------------------------------------------------------------------
# Three-mode unitary oracle (quantum pump)
# ---------------------------------------------------------------------------


def evolve_three_mode(state: ThreeModeState, g, xi_per_photon: complex,
                      tau: float, *, shape_center: int | None = None,
                      norm_tol: float = 1e-8) -> ThreeModeState:
    """Unitary evolution with the pump kept quantum.

    Hops (p, m) <-> (p-1, m+1) carry weight sqrt(p) (m+1) xi_per_photon;
    diagonal Kerr phases come from the number-preserving Hamiltonian
    eigenvalues (mode frequencies dropped; a static pump detuning is
    chosen so the hop at the requested shape center is resonant).  The
    squeezing rate of the matching c-number model is
    xi_per_photon * conj(alpha_pump).

    Dense eigendecomposition; guarded to 2e5 amplitudes (and to 4000 for
    the dense solve).
    """
    amps = state.amplitudes
    P, Mp1 = amps.shape
    dim = P * Mp1
    if dim > 2e5:
        raise ValidationError("three-mode oracle limited to 2e5 amplitudes")
    if dim > 4000:
        raise ValidationError("dense three-mode solve limited to 4000 amplitudes")
    g = np.asarray(g, dtype=float)
    p = state.pump_lo + np.arange(P, dtype=float)[:, None]
    m = np.arange(Mp1, dtype=float)[None, :]
    diag = h0_diagonal((0.0, 0.0, 0.0), g, p, m, m)
    if shape_center is not None:
        # pump detuning making the hop m = n' -> n' + 1 resonant
        nc = float(shape_center)
        pref = max(state.pump_lo + 1, round(abs(np.vdot(amps, p * amps).real)))
        delta_p = (h0_diagonal((0.0, 0.0, 0.0), g, pref - 1, nc + 1, nc + 1)
                   - h0_diagonal((0.0, 0.0, 0.0), g, pref, nc, nc))
        diag = diag + delta_p * p
    H = np.zeros((dim, dim), dtype=np.complex128)
    H[np.arange(dim), np.arange(dim)] = diag.ravel()
    # H/hbar = -i (kappa a_P+ a_s a_i - conj(kappa) a_P a_s+ a_i+), so the
    # pump-lowering hop (p, m) -> (p-1, m+1) carries +i conj(kappa) sqrt(p) (m+1);
    # with Xi = kappa conj(alpha_P) this matches the chain Hamiltonian.
    kappa = complex(xi_per_photon)
    for ip in range(1, P):
        for im in range(Mp1 - 1):
            row = (ip - 1) * Mp1 + (im + 1)
            col = ip * Mp1 + im
            w = 1j * math.sqrt(state.pump_lo + ip) * (im + 1) * np.conj(kappa)
            H[row, col] = w
            H[col, row] = np.conj(w)
    evals, vecs = np.linalg.eigh(H)
    psi = vecs @ (np.exp(-1j * evals * tau) * (vecs.conj().T @ amps.ravel()))
    norm2 = float(np.sum(np.abs(psi) ** 2))
    if abs(norm2 - 1.0) > norm_tol:
        raise NumericGuardError(f"three-mode norm drift {abs(norm2 - 1.0):.3e}")
    return ThreeModeState(state.pump_lo, psi.reshape(P, Mp1))
