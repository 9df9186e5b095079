"""Hamiltonian construction for Kerr-detuned parametric down-conversion.

The model has three cavity modes (sum/pump, signal, idler; indices 0,1,2
throughout).  Self- and cross-phase modulation make the mode frequencies
photon-number dependent, with Kerr frequencies

    g_ij = (24 pi A L / hbar) zeta_i^2 zeta_j^2 Gamma3_ij        [rad/s]

so the down-conversion resonance condition acquires a number-dependent
detuning.  On the equal-occupation chain, adjacent states are detuned
from each other by

    gamma = G_s + G_i,   G_s = 2 g_ss + g_is - g_Ps,   G_i = 2 g_ii + g_si - g_Pi

(P = pump row).  The simulation layer is parametrized directly by the
dimensionless knobs (Xi, gamma, shape center n', residual detuning at the
center, duration tau); the materials module maps physical inputs onto
them.

Everything here is in Gaussian (CGS) units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ValidationError

HBAR_CGS = 1.054571817e-27  # erg s

# Mode ordering for 3x3 Kerr matrices: pump (sum), signal, idler.
PUMP, SIGNAL, IDLER = 0, 1, 2


def _as_kerr_matrix(g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3):
        raise ValidationError("Kerr matrix must be 3x3 (pump, signal, idler)")
    if np.max(np.abs(g - g.T)) > 1e-12 * max(1.0, np.max(np.abs(g))):
        raise ValidationError("Kerr matrix must be symmetric")
    return g


@dataclass(frozen=True)
class KerrSystem:
    """Physical-layer description of the three interacting modes."""

    omega: tuple[float, float, float]       # mode frequencies, rad/s
    zeta: tuple[float, float, float]        # single-photon field amplitudes
    g: np.ndarray                           # 3x3 Kerr frequency matrix, rad/s
    length: float                           # cavity length L, cm
    area: float                             # effective cross-section A, cm^2

    def __post_init__(self):
        object.__setattr__(self, "g", _as_kerr_matrix(self.g))
        if any(w <= 0 for w in self.omega):
            raise ValidationError("mode frequencies must be positive")
        if any(z <= 0 for z in self.zeta):
            raise ValidationError("single-photon amplitudes must be positive")
        if self.length <= 0 or self.area <= 0:
            raise ValidationError("cavity geometry must be positive")


@dataclass(frozen=True)
class DetuningWeights:
    """Static detuning and per-photon-number detuning weights."""

    delta: float
    G_pump: float
    G_signal: float
    G_idler: float

    @property
    def gamma(self) -> float:
        """Adjacent-state detuning on the chain (exactly G_signal + G_idler)."""
        return self.G_signal + self.G_idler


@dataclass(frozen=True)
class ShapingParams:
    """Dynamical knobs that fully determine a shaping run.

    xi:            complex squeezing rate of the pumped down-conversion, rad/s.
                   Its phase selects where peaks vs troughs align: arg(xi) =
                   -pi/2 centers a peak on the shape center.
    gamma:         adjacent-state detuning, rad/s.
    n_center:      shape center n' (chain index of minimal detuning).
    delta_center:  residual detuning at the shape center, rad/s.
    tau:           total shaping time, s.
    schedule:      optional piecewise-constant detuning program, a list of
                   (duration, delta_offset) segments summing to tau.
    """

    xi: complex
    gamma: float
    n_center: int
    tau: float
    delta_center: float = 0.0
    schedule: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        if self.tau <= 0:
            raise ValidationError("tau must be positive")
        if self.n_center < 0:
            raise ValidationError("shape center must be >= 0")
        if self.schedule is not None:
            seg = tuple((float(d), float(off)) for d, off in self.schedule)
            if any(d <= 0 for d, _ in seg):
                raise ValidationError("schedule durations must be positive")
            if abs(sum(d for d, _ in seg) - self.tau) > 1e-12 * max(1.0, self.tau):
                raise ValidationError("schedule durations must sum to tau")
            object.__setattr__(self, "schedule", seg)

    def replace(self, **kw) -> "ShapingParams":
        from dataclasses import replace

        return replace(self, **kw)


@dataclass(frozen=True)
class PumpModel:
    """Coherent pump amplitude and the spectral-edge fraction of its drive."""

    alpha_pump: complex
    edge_fraction: float = 0.75

    def __post_init__(self):
        if not (0.0 < self.edge_fraction < 1.0):
            raise ValidationError("spectral edge fraction must lie in (0, 1)")


def kerr_frequency(zeta_i: float, zeta_j: float, gamma3: float,
                   area: float, length: float) -> float:
    """g_ij = (24 pi A L / hbar) zeta_i^2 zeta_j^2 Gamma3_ij  [rad/s]."""
    if area <= 0 or length <= 0:
        raise ValidationError("cavity geometry must be positive")
    return 24.0 * np.pi * area * length / HBAR_CGS * zeta_i**2 * zeta_j**2 * gamma3


def detuning_weights(omega_pump: float, omega_signal: float, omega_idler: float,
                     g) -> DetuningWeights:
    """Static detuning and the per-mode detuning weights from the Kerr matrix.

    delta   = w_P - w_s - w_i + 2 (g_ss + g_ii - g_PP)
    G_P     = g_Ps + g_Pi - 2 g_PP
    G_s     = 2 g_ss + g_is - g_Ps
    G_i     = 2 g_ii + g_si - g_Pi

    gamma = G_s + G_i; when the pump weight G_P vanishes (the coherent
    operating point) this equals 2 (g_ss + g_ii + g_is - g_PP).
    """
    g = _as_kerr_matrix(g)
    gPP, gPs, gPi = g[PUMP, PUMP], g[PUMP, SIGNAL], g[PUMP, IDLER]
    gss, gii, gsi = g[SIGNAL, SIGNAL], g[IDLER, IDLER], g[SIGNAL, IDLER]
    delta = omega_pump - omega_signal - omega_idler + 2.0 * (gss + gii - gPP)
    return DetuningWeights(
        delta=delta,
        G_pump=gPs + gPi - 2.0 * gPP,
        G_signal=2.0 * gss + gsi - gPs,
        G_idler=2.0 * gii + gsi - gPi,
    )


def xi_parameter(zeta_pump: float, zeta_signal: float, zeta_idler: float,
                 gamma2: float, alpha_pump: complex,
                 area: float, length: float) -> complex:
    """Xi = (12 pi A L / hbar) zeta_P zeta_s zeta_i Gamma2 conj(alpha_P)."""
    if area <= 0 or length <= 0:
        raise ValidationError("cavity geometry must be positive")
    return (12.0 * np.pi * area * length / HBAR_CGS
            * zeta_pump * zeta_signal * zeta_idler * gamma2 * np.conj(alpha_pump))


def h0_diagonal(omega, g, n_pump, n_signal, n_idler):
    """Fock-basis eigenvalue of the number-preserving Hamiltonian, in rad/s.

    Linear Kerr corrections -(g_jj + g_jk/2 + g_jl/2) N_j and the full
    quadratic form -(sum_{j<=k} g_jk N_j N_k-style) on top of sum w_j N_j.
    Accepts scalars or broadcastable arrays of occupation numbers.
    Constant (number-independent) offsets are dropped.
    """
    g = _as_kerr_matrix(g)
    nP = np.asarray(n_pump, dtype=float)
    ns = np.asarray(n_signal, dtype=float)
    ni = np.asarray(n_idler, dtype=float)
    if np.any(nP < 0) or np.any(ns < 0) or np.any(ni < 0):
        raise ValidationError("occupation numbers must be >= 0")
    wP, ws, wi = omega
    lin = ((wP - (g[0, 0] + g[0, 1] / 2 + g[0, 2] / 2)) * nP
           + (ws - (g[1, 1] + g[1, 0] / 2 + g[1, 2] / 2)) * ns
           + (wi - (g[2, 2] + g[2, 0] / 2 + g[2, 1] / 2)) * ni)
    quad = (g[0, 0] * nP**2 + g[1, 1] * ns**2 + g[2, 2] * ni**2
            + g[0, 1] * nP * ns + g[0, 2] * nP * ni + g[1, 2] * ns * ni)
    return lin - quad


def xi_phase_exponents(omega, g, mode: int, n_pump, n_signal, n_idler):
    """Frequency of the diagonal phase operator multiplying a_mode under H0.

    Exact by construction: the finite difference of h0_diagonal when the
    chosen mode gains one photon, so U0(t)^dag a U0(t) =
    exp(-i * this * t) a holds identically on the truncated space.
    """
    n = [np.asarray(n_pump, dtype=float), np.asarray(n_signal, dtype=float),
         np.asarray(n_idler, dtype=float)]
    raised = list(n)
    raised[mode] = raised[mode] + 1.0
    return (h0_diagonal(omega, g, *raised) - h0_diagonal(omega, g, *n))


def chain_phase_rates(params: ShapingParams, M: int) -> np.ndarray:
    """Detuning rate gamma (n' - m) + Delta(n') for each hop m <-> m+1."""
    m = np.arange(M)
    return params.gamma * (params.n_center - m) + params.delta_center


def chain_hamiltonian(params: ShapingParams, M: int, t: float) -> np.ndarray:
    """Chain-form interaction Hamiltonian H/hbar at time t (dense, (M+1)^2).

    Zero diagonal; entry (m, m+1) is -i (m+1) Xi exp(i (gamma (n'-m) +
    Delta(n')) t), the lower triangle its conjugate.
    """
    if M < 1:
        raise ValidationError("M must be >= 1")
    if t < 0:
        raise ValidationError("t must be >= 0")
    m = np.arange(M)
    upper = -1j * (m + 1) * params.xi * np.exp(1j * chain_phase_rates(params, M) * t)
    H = np.zeros((M + 1, M + 1), dtype=np.complex128)
    H[m, m + 1] = upper
    H[m + 1, m] = np.conj(upper)
    return H


def two_mode_coupling(params: ShapingParams, M_s: int, M_i: int, t: float,
                      split: float = 0.5) -> np.ndarray:
    """Coupling u[n_s, n_i] for the hop (n_s, n_i) <- (n_s+1, n_i+1).

    u[a, b] = -i sqrt((a+1)(b+1)) Xi exp(i (Delta(n') + G_s (n'-a) +
    G_i (n'-b)) t) with G_s = split*gamma, G_i = (1-split)*gamma; the
    number-dependent detuning is referenced to the lower state of each
    down-conversion pair, which makes the restriction to the n_s == n_i
    chain coincide with chain_hamiltonian exactly.
    """
    a = np.arange(M_s)[:, None]
    b = np.arange(M_i)[None, :]
    Gs = split * params.gamma
    Gi = (1.0 - split) * params.gamma
    phase = (params.delta_center + Gs * (params.n_center - a)
             + Gi * (params.n_center - b)) * t
    return -1j * np.sqrt((a + 1.0) * (b + 1.0)) * params.xi * np.exp(1j * phase)


def two_mode_hamiltonian(params: ShapingParams, M_s: int, M_i: int, t: float,
                         split: float = 0.5) -> sp.csr_matrix:
    """Two-mode interaction Hamiltonian H/hbar as a sparse Hermitian matrix.

    Couples |n_s, n_i> <-> |n_s+1, n_i+1| only, so it commutes with
    N_s - N_i.  Basis index is n_s * (M_i+1) + n_i.
    """
    if M_s < 1 or M_i < 1:
        raise ValidationError("truncations must be >= 1")
    u = two_mode_coupling(params, M_s, M_i, t, split)
    Ds, Di = M_s + 1, M_i + 1
    a, b = np.nonzero(np.ones((M_s, M_i)))
    rows = a * Di + b
    cols = (a + 1) * Di + (b + 1)
    vals = u[a, b]
    H = sp.coo_matrix(
        (np.concatenate([vals, np.conj(vals)]),
         (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(Ds * Di, Ds * Di),
    ).tocsr()
    H.eliminate_zeros()
    return H


def kerr_rotation_phases(g_ss: float, g_ii: float, g_is: float, t: float,
                         M: int) -> np.ndarray:
    """Chain phases exp(+i (g_ss + g_ii + g_is) m^2 t) from the Kerr part.

    The quadratic Kerr Hamiltonian on the chain is -(g_ss + g_ii + g_is)
    m^2 (in units of hbar), so its propagator multiplies c_m by these
    phases; (g_ss + g_ii + g_is) t = 2 pi k is the identity.
    """
    m = np.arange(M + 1)
    return np.exp(1j * (g_ss + g_ii + g_is) * t * m.astype(float) ** 2)
