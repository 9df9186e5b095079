"""Observables: number distributions, peak structure, Wigner functions,
fidelity and purity measures.

Wigner convention: W(x, p) with unit integral over dx dp, vacuum value
1/pi at the origin, and a coherent state of amplitude a centered at
(sqrt(2) Re a, sqrt(2) Im a).  Phase-space evaluation runs through the
kernel backend (Clenshaw over density-matrix diagonals with stable
Laguerre recurrences).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ValidationError
from .states import ChainState, ThreeModeState, TwoModeDensityMatrix, TwoModeState, embed_chain


@dataclass(frozen=True)
class NumberDistribution:
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float).copy()
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        if np.any(p < -1e-12):
            raise ValidationError("negative probability")
        if abs(float(p.sum()) - 1.0) > 1e-9:
            raise ValidationError(f"probabilities sum to {p.sum()!r}")

    @property
    def truncation(self) -> int:
        return self.probabilities.size - 1

    def mean(self) -> float:
        m = np.arange(self.probabilities.size)
        return float(np.dot(m, self.probabilities))

    def variance(self) -> float:
        m = np.arange(self.probabilities.size)
        mu = self.mean()
        return float(np.dot((m - mu) ** 2, self.probabilities))


@dataclass(frozen=True)
class PeakReport:
    locations: tuple[int, ...]
    spacings: tuple[int, ...]
    heights: tuple[float, ...]


@dataclass(frozen=True)
class WignerGrid:
    x: np.ndarray
    p: np.ndarray
    values: np.ndarray   # shape (len(x), len(p))

    @property
    def cell_area(self) -> float:
        dx = self.x[1] - self.x[0] if self.x.size > 1 else 1.0
        dp = self.p[1] - self.p[0] if self.p.size > 1 else 1.0
        return float(dx * dp)

    def integral(self) -> float:
        return float(self.values.sum() * self.cell_area)


def number_distribution(state, mode: str = "chain") -> NumberDistribution:
    """Photon-number probabilities of a state.

    Chain states have a single distribution over the chain index; density
    matrices expose the signal/idler marginals and the joint equal-number
    ("chain") diagonal, the latter renormalized only by clipping roundoff.
    """
    if isinstance(state, ChainState):
        return NumberDistribution(state.probabilities())
    if isinstance(state, TwoModeState):
        joint = np.abs(state.amplitudes) ** 2
        if mode == "signal":
            return NumberDistribution(joint.sum(axis=1))
        if mode == "idler":
            return NumberDistribution(joint.sum(axis=0))
        return NumberDistribution(np.diag(joint) / np.diag(joint).sum())
    if isinstance(state, TwoModeDensityMatrix):
        joint = np.clip(state.diagonal(), 0.0, None)
        if mode == "signal":
            p = joint.sum(axis=1)
        elif mode == "idler":
            p = joint.sum(axis=0)
        elif mode == "chain":
            p = np.diag(joint)
        else:
            raise ValidationError(f"unknown mode {mode!r}")
        return NumberDistribution(p / p.sum())
    raise ValidationError(f"unsupported state type {type(state).__name__}")


def detect_peaks(dist: NumberDistribution, min_height_fraction: float = 0.15) -> PeakReport:
    """Strict local maxima above a relative height threshold.

    Runs of numerically equal values are treated as one plateau; a plateau
    counts as a peak when the distribution rises into it and falls out of
    it, and is reported at its upper-middle index.  Boundary-touching
    plateaus are not peaks.
    """
    if not (0.0 < min_height_fraction < 1.0):
        raise ValidationError("min_height_fraction must lie in (0, 1)")
    p = dist.probabilities
    cut = min_height_fraction * float(p.max())
    locations: list[int] = []
    heights: list[float] = []
    i = 1
    n = p.size
    while i < n - 1:
        if p[i] <= p[i - 1]:
            i += 1
            continue
        # rose into p[i]; extend over the plateau of equal values
        j = i
        while j + 1 < n and p[j + 1] == p[j]:
            j += 1
        if j < n - 1 and p[j + 1] < p[j] and p[i] >= cut:
            locations.append((i + j + 1) // 2)
            heights.append(float(p[i]))
        i = j + 1
    spac = tuple(int(b - a) for a, b in zip(locations, locations[1:]))
    return PeakReport(tuple(locations), spac, tuple(heights))


def predicted_spacing(gamma: float, t: float) -> float:
    """Peak spacing 2 pi / (gamma t); infinite when gamma t == 0."""
    gt = gamma * t
    if gt == 0.0:
        return math.inf
    return 2.0 * math.pi / gt


def sinc_envelope(M: int, n_center: int, gamma: float, tau: float,
                  arg_xi: float) -> NumberDistribution:
    """First-order shaping envelope over the chain.

    v_m = sinc(gamma (n' - m) tau + arg_xi + pi/2) (m+1) tau + 1 with
    sinc(x) = sin(x)/x, clipped at zero and normalized to unit sum.  It
    tracks the height and location of the shaped peaks away from the
    central one.
    """
    m = np.arange(M + 1, dtype=float)
    x = gamma * (n_center - m) * tau + arg_xi + math.pi / 2.0
    v = np.sinc(x / math.pi) * (m + 1.0) * tau + 1.0
    v = np.clip(v, 0.0, None)
    return NumberDistribution(v / v.sum())


def wigner(state: ChainState, x: np.ndarray, p: np.ndarray) -> WignerGrid:
    """Wigner function of a chain state read as a single-mode Fock vector.

    Warns when the grid boundary still carries weight (|W| at the border
    above 1e-4 of the maximum), which signals a clipped state.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    c = state.amplitudes
    rho = np.outer(c, c.conj())
    X, P = np.meshgrid(x, p, indexing="ij")
    a2 = np.sqrt(2.0) * (X + 1j * P)
    vals = _backend.wigner_clenshaw(
        np.ascontiguousarray(rho), np.ascontiguousarray(a2.ravel()))
    W = (vals / math.pi).reshape(X.shape)
    border = np.concatenate([W[0, :], W[-1, :], W[:, 0], W[:, -1]])
    peak = float(np.max(np.abs(W)))
    if peak > 0 and float(np.max(np.abs(border))) > 1e-4 * peak:
        warnings.warn("Wigner grid boundary carries weight; enlarge the grid",
                      RuntimeWarning, stacklevel=2)
    return WignerGrid(x, p, W)


def fidelity(a, b) -> float:
    """Overlap fidelity: |<b|a>|^2 for pure states, <b|rho_a|b> for mixed a.

    b is a chain state; when a lives on the two-mode space, b is embedded
    on the equal-number diagonal first.
    """
    if isinstance(b, ChainState):
        if isinstance(a, ChainState):
            return float(abs(a.overlap(b)) ** 2)
        if isinstance(a, TwoModeState):
            psi = embed_chain(b).amplitudes
            return float(abs(np.vdot(psi, a.amplitudes)) ** 2)
        if isinstance(a, TwoModeDensityMatrix):
            Ms, Mi = a.truncations
            if Ms != Mi or b.truncation != Ms:
                raise ValidationError("truncation mismatch")
            psi = embed_chain(b).amplitudes
            return float(np.einsum("ab,abcd,cd->", psi.conj(), a.rho, psi).real)
    raise ValidationError("fidelity expects (state, ChainState)")


def purity(rho) -> float:
    """Tr(rho^2); 1 for pure states."""
    if isinstance(rho, TwoModeDensityMatrix):
        mat = rho.as_matrix()
    elif isinstance(rho, ThreeModeState):
        mat = rho.reduced_chain_density()
    else:
        mat = np.asarray(rho, dtype=np.complex128)
    return float(np.sum(np.abs(mat) ** 2).real)


def purity_estimate(alpha_si: complex, alpha_pump: complex, s: float) -> float:
    """Pump-dephasing purity estimate exp(-|alpha_si / (4 s alpha_pump)|^2)."""
    if alpha_pump == 0:
        raise ValidationError("pump amplitude must be nonzero")
    if s == 0:
        raise ValidationError("spacing must be nonzero")
    return float(np.exp(-abs(alpha_si / (4.0 * s * alpha_pump)) ** 2))


def quadrant_weights(w: WignerGrid) -> tuple[float, float, float, float]:
    """Positive Wigner mass in the four axis-centered angular sectors.

    Sectors of width pi/2 centered on +x, +p, -x, -p, matching the blob
    positions of a four-component cat grown from a real-amplitude coherent
    state.  Requires a grid centered at the origin.
    """
    if abs(w.x[0] + w.x[-1]) > 1e-9 * max(1.0, abs(w.x[-1])) or \
       abs(w.p[0] + w.p[-1]) > 1e-9 * max(1.0, abs(w.p[-1])):
        raise ValidationError("quadrant weights need an origin-centered grid")
    X, P = np.meshgrid(w.x, w.p, indexing="ij")
    theta = np.arctan2(P, X)
    pos = np.clip(w.values, 0.0, None) * w.cell_area
    eps = 1e-12
    origin = (np.abs(X) < eps) & (np.abs(P) < eps)
    out = []
    for k in range(4):
        center = k * math.pi / 2.0
        diff = np.abs(np.angle(np.exp(1j * (theta - center))))
        weight = np.where(diff < math.pi / 4.0 - eps, 1.0,
                          np.where(diff <= math.pi / 4.0 + eps, 0.5, 0.0))
        weight = np.where(origin, 0.25, weight)
        out.append(float((pos * weight).sum()))
    return tuple(out)
