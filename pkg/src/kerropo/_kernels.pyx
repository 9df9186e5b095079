# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Crank-Nicolson chain stepping and Wigner grids.

Same contracts as kerropo._fallback; keep the two in sync.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, sin, sqrt

cnp.import_array()


def cn_evolve(cnp.ndarray[cnp.complex128_t, ndim=1] amps, double complex xi,
              cnp.ndarray[cnp.float64_t, ndim=1] theta, double t0, double dt,
              long n_steps):
    """Crank-Nicolson evolution; see kerropo._fallback.cn_evolve."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = amps.astype(np.complex128)
    cdef long M = c.shape[0] - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] u = np.empty(M, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] b = np.empty(M + 1, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] cp = np.empty(M + 1, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dp = np.empty(M + 1, dtype=np.complex128)
    cdef double complex half = 0.5j * dt
    cdef double complex base, hu, hl, denom
    cdef double t_mid, ph, max_boundary, p_edge
    cdef long k, i

    max_boundary = (c[M].real * c[M].real + c[M].imag * c[M].imag)
    for k in range(n_steps):
        t_mid = t0 + (k + 0.5) * dt
        for i in range(M):
            ph = theta[i] * t_mid
            base = -1j * (i + 1.0) * xi
            u[i] = base * (cos(ph) + 1j * sin(ph))
        # b = (1 - i dt H / 2) c
        for i in range(M + 1):
            b[i] = c[i]
        for i in range(M):
            b[i] = b[i] - half * u[i] * c[i + 1]
            b[i + 1] = b[i + 1] - half * u[i].conjugate() * c[i]
        # Thomas solve of (1 + i dt H / 2) c_new = b; diagonal is 1,
        # upper[i] = half*u[i], lower coupling into row i+1 is half*conj(u[i]).
        cp[0] = half * u[0]
        dp[0] = b[0]
        for i in range(1, M + 1):
            hl = half * u[i - 1].conjugate()
            denom = 1.0 - hl * cp[i - 1]
            if i < M:
                cp[i] = half * u[i] / denom
            dp[i] = (b[i] - hl * dp[i - 1]) / denom
        c[M] = dp[M]
        for i in range(M - 1, -1, -1):
            c[i] = dp[i] - cp[i] * c[i + 1]
        p_edge = c[M].real * c[M].real + c[M].imag * c[M].imag
        if p_edge > max_boundary:
            max_boundary = p_edge
    return c, max_boundary


def wigner_clenshaw(cnp.ndarray[cnp.complex128_t, ndim=2] rho,
                    cnp.ndarray[cnp.complex128_t, ndim=1] a2):
    """pi * W at phase-space points; see kerropo._fallback.wigner_clenshaw."""
    cdef long D = rho.shape[0]
    cdef long npts = a2.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(npts, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] dbl = np.asarray(
        rho * (2.0 - np.eye(D)), dtype=np.complex128)
    cdef double complex corner = 2.0 * rho[0, D - 1]
    cdef double complex w, y0, y1, y0n
    cdef double complex z
    cdef double B
    cdef long j, L, n, k, i, base

    if D == 1:
        for j in range(npts):
            z = a2[j]
            B = z.real * z.real + z.imag * z.imag
            out[j] = rho[0, 0].real * exp(-B / 2.0)
        return out

    # flatten diagonals and precompute the Clenshaw recurrence tables so the
    # grid loop carries no sqrt work: for diagonal L and inner index k,
    #   s1 = sqrt((k-1)(L+k-1)/((L+k)k)),  s2 = 1/sqrt((L+k)k),
    #   b2 = L + 2k - 1.
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] diags = np.empty(
        D * (D + 1) // 2, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s1 = np.zeros_like(
        diags, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s2 = np.zeros_like(s1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b2 = np.zeros_like(s1)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] offs = np.zeros(D, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] invroot = np.empty(D, dtype=np.float64)
    base = 0
    for L in range(D):
        offs[L] = base
        invroot[L] = 1.0 / sqrt(L + 1.0)
        n = D - L
        for i in range(n):
            diags[base + i] = dbl[i, i + L]
            k = i + 1
            s1[base + i] = sqrt(((k - 1.0) * (L + k - 1.0)) / ((L + k) * k))
            s2[base + i] = 1.0 / sqrt((L + k) * k)
            b2[base + i] = L + 2.0 * k - 1.0
        base += n

    for j in range(npts):
        z = a2[j]
        B = z.real * z.real + z.imag * z.imag
        w = corner
        for L in range(D - 2, -1, -1):
            # Clenshaw over the L-th diagonal: coefficients dbl[n, n+L]
            n = D - L
            base = offs[L]
            if n == 1:
                y0 = diags[base]
                y1 = 0.0
            else:
                y0 = diags[base + n - 2]
                y1 = diags[base + n - 1]
                for k in range(n - 1, 1, -1):
                    y0n = diags[base + k - 2] - y1 * s1[base + k - 1]
                    y1 = y0 - y1 * (b2[base + k - 1] - B) * s2[base + k - 1]
                    y0 = y0n
            w = (y0 - y1 * (L + 1.0 - B) * invroot[L]) + w * z * invroot[L]
        out[j] = w.real * exp(-B / 2.0)
    return out
