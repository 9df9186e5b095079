"""State representations on the truncated signal/idler Fock space.

Down-conversion from a bright pump preserves the photon-number difference
between signal and idler, so states prepared from two-mode squeezed or
correlated inputs stay on the "chain" of equal occupations
|m>_s |m>_i.  ChainState stores the complex amplitude over that chain
index.  TwoModeState / TwoModeDensityMatrix hold the full two-mode space,
which is only needed once incoherent loss breaks the number correlation.

All states are value objects: constructors copy their input, evolution
functions return new instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidTruncationError, TruncationTooSmallError, ValidationError

NORM_TOL = 1e-10
TRACE_TOL = 1e-8
HERM_TOL = 1e-10

# Tail-mass guards for truncated constructors.  Hard failure only past
# TAIL_ERROR; between the two we warn, so that deliberately tight
# truncations (density-matrix runs) remain usable.
TAIL_WARN = 1e-6
TAIL_ERROR = 1e-3


def _check_normalized(amps: np.ndarray, tol: float = NORM_TOL) -> None:
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if abs(norm2 - 1.0) > tol:
        raise ValidationError(f"state not normalized: sum |c|^2 = {norm2!r}")


@dataclass(frozen=True)
class ChainState:
    """Amplitudes c_m over the equal-occupation chain, m = 0..M."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or amps.size < 2:
            raise InvalidTruncationError("chain needs at least M=1 (two amplitudes)")
        _check_normalized(amps)

    @property
    def truncation(self) -> int:
        return self.amplitudes.size - 1

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def overlap(self, other: "ChainState") -> complex:
        if other.truncation != self.truncation:
            raise ValidationError("truncation mismatch")
        return complex(np.vdot(other.amplitudes, self.amplitudes))


@dataclass(frozen=True)
class TwoModeState:
    """Pure state on the truncated signal x idler space, c[n_s, n_i]."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 2:
            raise ValidationError("two-mode amplitudes must be a matrix")
        _check_normalized(amps)

    @property
    def truncations(self) -> tuple[int, int]:
        return self.amplitudes.shape[0] - 1, self.amplitudes.shape[1] - 1


@dataclass(frozen=True)
class TwoModeDensityMatrix:
    """Density operator rho[(n_s,n_i),(n_s',n_i')] stored as a 4-d array."""

    rho: np.ndarray
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=np.complex128).copy()
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        if rho.ndim != 4 or rho.shape[0] != rho.shape[2] or rho.shape[1] != rho.shape[3]:
            raise ValidationError("density matrix must have shape (Ds, Di, Ds, Di)")
        if self.check:
            self.validate()

    @property
    def truncations(self) -> tuple[int, int]:
        return self.rho.shape[0] - 1, self.rho.shape[1] - 1

    @property
    def dim(self) -> int:
        return self.rho.shape[0] * self.rho.shape[1]

    def as_matrix(self) -> np.ndarray:
        d = self.dim
        return self.rho.reshape(d, d)

    def trace(self) -> float:
        return float(np.trace(self.as_matrix()).real)

    def validate(self, trace_tol: float = TRACE_TOL, herm_tol: float = HERM_TOL,
                 eig_tol: float = 1e-8) -> None:
        mat = self.as_matrix()
        tr = np.trace(mat)
        if abs(tr - 1.0) > trace_tol:
            raise ValidationError(f"trace = {tr!r}, expected 1")
        if np.max(np.abs(mat - mat.conj().T)) > herm_tol:
            raise ValidationError("density matrix not Hermitian")
        lo = float(np.linalg.eigvalsh(mat).min())
        if lo < -eig_tol:
            raise ValidationError(f"density matrix not positive: min eigenvalue {lo}")

    def diagonal(self) -> np.ndarray:
        """Joint number distribution P[n_s, n_i]."""
        ds, di = self.rho.shape[:2]
        idx_s, idx_i = np.meshgrid(np.arange(ds), np.arange(di), indexing="ij")
        return self.rho[idx_s, idx_i, idx_s, idx_i].real


@dataclass(frozen=True)
class ThreeModeState:
    """Pump (x) chain amplitudes c[p, m] with pump numbers p in a window.

    Validation oracle only: keeps the pump quantum so that pump-chain
    entanglement (and the resulting signal/idler dephasing) is visible.
    """

    pump_lo: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 2 or amps.shape[0] < 1:
            raise ValidationError("pump window is empty")
        if self.pump_lo < 0:
            raise ValidationError("pump window must start at a non-negative number")
        _check_normalized(amps)

    @property
    def pump_window(self) -> tuple[int, int]:
        return self.pump_lo, self.pump_lo + self.amplitudes.shape[0] - 1

    @property
    def chain_truncation(self) -> int:
        return self.amplitudes.shape[1] - 1

    def reduced_chain_density(self) -> np.ndarray:
        """Trace out the pump: rho_si[m, m'] = sum_p c[p,m] conj(c[p,m'])."""
        c = self.amplitudes
        return c.T @ c.conj()

    def reduced_pump_density(self) -> np.ndarray:
        c = self.amplitudes
        return c @ c.conj().T


def uniform_chain(M: int) -> ChainState:
    """Flat real amplitudes 1/sqrt(M+1) over m = 0..M."""
    if M < 1:
        raise InvalidTruncationError(f"M must be >= 1, got {M}")
    amps = np.full(M + 1, 1.0 / math.sqrt(M + 1), dtype=np.complex128)
    return ChainState(amps)


def _guard_tail(tail_mass: float, what: str) -> None:
    if tail_mass > TAIL_ERROR:
        raise TruncationTooSmallError(
            f"{what}: truncated tail mass {tail_mass:.3e} exceeds {TAIL_ERROR:.0e}")
    if tail_mass > TAIL_WARN:
        import warnings

        warnings.warn(
            f"{what}: truncated tail mass {tail_mass:.3e} above {TAIL_WARN:.0e}",
            RuntimeWarning, stacklevel=3)


def coherent_chain(alpha: complex, M: int) -> ChainState:
    """Chain state with Poissonian weights, c_m ~ alpha^m / sqrt(m!).

    Mean chain index is |alpha|^2 (up to truncation).  Amplitudes are
    evaluated in log space so large alpha, M stay finite.
    """
    if M < 1:
        raise InvalidTruncationError(f"M must be >= 1, got {M}")
    alpha = complex(alpha)
    m = np.arange(M + 1)
    if alpha == 0:
        amps = np.zeros(M + 1, dtype=np.complex128)
        amps[0] = 1.0
        return ChainState(amps)
    log_mag = m * math.log(abs(alpha)) - 0.5 * np.array([math.lgamma(k + 1) for k in m]) \
        - 0.5 * abs(alpha) ** 2
    amps = np.exp(log_mag) * np.exp(1j * m * np.angle(alpha))
    kept = float(np.sum(np.abs(amps) ** 2))
    _guard_tail(max(0.0, 1.0 - kept), f"coherent_chain(alpha={alpha}, M={M})")
    return ChainState(amps / math.sqrt(kept))


def squeezed_vacuum_chain(r: float, M: int) -> ChainState:
    """Two-mode squeezed vacuum Schmidt weights, c_m ~ tanh(r)^m / cosh(r)."""
    if M < 1:
        raise InvalidTruncationError(f"M must be >= 1, got {M}")
    if r < 0:
        raise ValidationError("squeezing parameter r must be >= 0")
    if r == 0:
        amps = np.zeros(M + 1, dtype=np.complex128)
        amps[0] = 1.0
        return ChainState(amps)
    lam = math.tanh(r) ** 2
    tail = lam ** (M + 1)
    _guard_tail(tail, f"squeezed_vacuum_chain(r={r}, M={M})")
    m = np.arange(M + 1)
    amps = np.asarray(math.tanh(r) ** m, dtype=np.complex128)
    amps /= math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    return ChainState(amps)


def embed_chain(state: ChainState) -> TwoModeState:
    """Place chain amplitudes on the diagonal of the two-mode space."""
    M = state.truncation
    amps = np.zeros((M + 1, M + 1), dtype=np.complex128)
    np.fill_diagonal(amps, state.amplitudes)
    return TwoModeState(amps)


def extract_chain(state: TwoModeState) -> ChainState:
    """Inverse of embed_chain; requires all support on n_s == n_i."""
    amps = state.amplitudes
    if amps.shape[0] != amps.shape[1]:
        raise ValidationError("cannot extract chain from a non-square truncation")
    diag = np.diag(amps).copy()
    off_mass = float(np.sum(np.abs(amps) ** 2) - np.sum(np.abs(diag) ** 2))
    if off_mass > 1e-12:
        raise ValidationError(f"off-diagonal support {off_mass:.3e}; not a chain state")
    return ChainState(diag)


def pure_to_density(state: TwoModeState) -> TwoModeDensityMatrix:
    """rho = |psi><psi| as a 4-d array."""
    c = state.amplitudes
    rho = np.einsum("ab,cd->abcd", c, c.conj())
    return TwoModeDensityMatrix(rho)


def coherent_pump_product(alpha_pump: complex, chain: ChainState,
                          window: tuple[int, int] | None = None) -> ThreeModeState:
    """Product of a (truncated) coherent pump and a chain state.

    The pump window defaults to mean +- 6 sigma of the Poisson number
    distribution, clipped at zero.
    """
    alpha_pump = complex(alpha_pump)
    nbar = abs(alpha_pump) ** 2
    if window is None:
        sig = math.sqrt(max(nbar, 1.0))
        window = (max(0, math.floor(nbar - 6 * sig)), math.ceil(nbar + 6 * sig))
    lo, hi = window
    if hi < lo:
        raise ValidationError("empty pump window")
    p = np.arange(lo, hi + 1)
    if alpha_pump == 0:
        pump = np.zeros(p.size, dtype=np.complex128)
        if lo == 0:
            pump[0] = 1.0
        else:
            raise ValidationError("vacuum pump outside window")
    else:
        log_mag = p * math.log(abs(alpha_pump)) \
            - 0.5 * np.array([math.lgamma(k + 1) for k in p]) - 0.5 * nbar
        pump = np.exp(log_mag) * np.exp(1j * p * np.angle(alpha_pump))
    kept = float(np.sum(np.abs(pump) ** 2))
    _guard_tail(max(0.0, 1.0 - kept), f"coherent pump (alpha={alpha_pump}, window={window})")
    pump /= math.sqrt(kept)
    amps = np.outer(pump, chain.amplitudes)
    return ThreeModeState(lo, amps)
