"""Pure-python (numpy/scipy) implementations of the hot kernels.

Mirrors kerropo._kernels; selected by kerropo._backend when the compiled
extension is unavailable or KERROPO_PURE_PYTHON is set.  Semantics of the
two implementations must match to near machine precision (see
tests/test_kernels.py).
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded


def cn_evolve(amps: np.ndarray, xi: complex, theta: np.ndarray,
              t0: float, dt: float, n_steps: int) -> tuple[np.ndarray, float]:
    """Crank-Nicolson evolution of chain amplitudes under the hop Hamiltonian.

    H(t) has zero diagonal and upper entries -i (m+1) xi exp(i theta_m t);
    each step solves (1 + i dt H(t_mid)/2) c' = (1 - i dt H(t_mid)/2) c
    with the midpoint time.  Returns (final amplitudes, max boundary
    probability seen during the evolution).
    """
    c = np.asarray(amps, dtype=np.complex128).copy()
    M = c.size - 1
    m = np.arange(M, dtype=float)
    base = -1j * (m + 1.0) * xi
    ab = np.zeros((3, M + 1), dtype=np.complex128)
    ab[1, :] = 1.0
    max_boundary = float(abs(c[-1]) ** 2)
    half = 0.5j * dt
    for k in range(n_steps):
        t_mid = t0 + (k + 0.5) * dt
        u = base * np.exp(1j * theta * t_mid)
        hu = half * u
        hl = half * np.conj(u)
        b = c.copy()
        b[:-1] -= hu * c[1:]
        b[1:] -= hl * c[:-1]
        ab[0, 1:] = hu
        ab[2, :-1] = hl
        c = solve_banded((1, 1), ab, b)
        p_edge = float(abs(c[-1]) ** 2)
        if p_edge > max_boundary:
            max_boundary = p_edge
    return c, max_boundary


def _laguerre_series(L: int, x: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Clenshaw evaluation of sum_n c_n (-1)^n sqrt(L! n!/(L+n)!) LaguerreL(n, L, x)."""
    n = coeffs.shape[0]
    if n == 1:
        y0 = coeffs[0] * np.ones_like(x, dtype=np.complex128)
        y1 = np.zeros_like(y0)
    elif n == 2:
        y0 = coeffs[0] * np.ones_like(x, dtype=np.complex128)
        y1 = coeffs[1] * np.ones_like(x, dtype=np.complex128)
    else:
        k = n
        y0 = coeffs[-2] * np.ones_like(x, dtype=np.complex128)
        y1 = coeffs[-1] * np.ones_like(x, dtype=np.complex128)
        for i in range(3, n + 1):
            k -= 1
            y0, y1 = (coeffs[-i] - y1 * np.sqrt(((k - 1.0) * (L + k - 1.0)) / ((L + k) * k)),
                      y0 - y1 * (L + 2.0 * k - 1.0 - x) / np.sqrt((L + k) * k))
    return y0 - y1 * (L + 1.0 - x) / np.sqrt(L + 1.0)


def wigner_clenshaw(rho: np.ndarray, a2: np.ndarray) -> np.ndarray:
    """W values (times pi) at phase-space points, from a density matrix.

    a2 = 2 alpha = sqrt(2) (x + i p) flattened over the grid.  Returns
    Re[sum_L c_L(B) a2^L / sqrt(L!)] exp(-B/2) with B = |a2|^2, i.e. the
    Wigner function in the (x, p) convention multiplied by pi.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    D = rho.shape[0]
    if D == 1:
        return float(rho[0, 0].real) * np.exp(-np.abs(a2) ** 2 / 2.0)
    B = np.abs(a2) ** 2
    doubled = rho * (2.0 - np.eye(D))
    w = np.full(a2.shape, 2.0 * rho[0, -1], dtype=np.complex128)
    for L in range(D - 2, -1, -1):
        w = _laguerre_series(L, B, np.diag(doubled, L)) + w * a2 / np.sqrt(L + 1.0)
    return w.real * np.exp(-B / 2.0)
