"""Benchmark the compiled kernels against the numpy fallback.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from kerropo import _backend, _fallback


def time_call(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_cn(M, n_steps):
    rng = np.random.default_rng(0)
    c0 = rng.normal(size=M + 1) + 1j * rng.normal(size=M + 1)
    c0 = np.ascontiguousarray(c0 / np.linalg.norm(c0))
    theta = np.ascontiguousarray(np.pi * (60.0 - np.arange(M, dtype=float)))
    args = (c0, -1j, theta, 0.0, 0.08 / n_steps, n_steps)
    cases = [("numpy", _fallback.cn_evolve)]
    if _backend.COMPILED:
        from kerropo import _kernels

        cases.insert(0, ("compiled", _kernels.cn_evolve))
    rows = []
    ref = None
    for name, fn in cases:
        dt, (c, _) = time_call(fn, *args)
        if ref is None:
            ref = c
        err = float(np.max(np.abs(c - ref)))
        rows.append((f"cn_evolve M={M} steps={n_steps}", name, dt, err))
    return rows


def bench_wigner(M, n_grid):
    rng = np.random.default_rng(1)
    c = rng.normal(size=M + 1) + 1j * rng.normal(size=M + 1)
    c /= np.linalg.norm(c)
    rho = np.ascontiguousarray(np.outer(c, c.conj()))
    xs = np.linspace(-16, 16, n_grid)
    X, P = np.meshgrid(xs, xs, indexing="ij")
    a2 = np.ascontiguousarray((np.sqrt(2.0) * (X + 1j * P)).ravel())
    cases = [("numpy", _fallback.wigner_clenshaw)]
    if _backend.COMPILED:
        from kerropo import _kernels

        cases.insert(0, ("compiled", _kernels.wigner_clenshaw))
    rows = []
    ref = None
    for name, fn in cases:
        dt, w = time_call(fn, rho, a2, repeat=2)
        if ref is None:
            ref = w
        err = float(np.max(np.abs(w - ref)))
        rows.append((f"wigner M={M} grid={n_grid}x{n_grid}", name, dt, err))
    return rows


def main():
    print(f"active backend: {_backend.backend_name()}")
    rows = []
    rows += bench_cn(120, 4000)
    rows += bench_cn(120, 16000)
    rows += bench_wigner(110, 321)
    print(f"{'case':36} {'backend':9} {'time':>9} {'max diff':>10}")
    by_case = {}
    for case, name, dt, err in rows:
        print(f"{case:36} {name:9} {dt * 1e3:7.1f}ms {err:10.2e}")
        by_case.setdefault(case, {})[name] = dt
    for case, times in by_case.items():
        if "compiled" in times and "numpy" in times:
            print(f"{case}: speedup {times['numpy'] / times['compiled']:.1f}x")


if __name__ == "__main__":
    main()
