"""Backend equivalence: the compiled extension and the numpy fallback must
agree to near machine precision on both hot kernels."""

import numpy as np
import pytest

from kerropo import _backend, _fallback


@pytest.fixture(scope="module")
def compiled():
    if not _backend.COMPILED:
        pytest.skip("compiled extension not available")
    from kerropo import _kernels

    return _kernels


def random_state(rng, n):
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    return np.ascontiguousarray(c / np.linalg.norm(c))


def test_cn_evolve_matches_fallback(compiled):
    rng = np.random.default_rng(11)
    for M in (1, 7, 40):
        c0 = random_state(rng, M + 1)
        theta = np.ascontiguousarray(rng.normal(size=M))
        xi = complex(rng.normal(), rng.normal())
        a, mb_a = compiled.cn_evolve(c0.copy(), xi, theta, 0.3, 2e-3, 400)
        b, mb_b = _fallback.cn_evolve(c0.copy(), xi, theta, 0.3, 2e-3, 400)
        assert np.max(np.abs(a - b)) < 1e-12
        assert abs(mb_a - mb_b) < 1e-12
        assert abs(np.linalg.norm(a) - 1.0) < 1e-12


def test_wigner_matches_fallback(compiled):
    rng = np.random.default_rng(12)
    for D in (1, 2, 9, 24):
        c = random_state(rng, D)
        rho = np.ascontiguousarray(np.outer(c, c.conj()))
        pts = np.ascontiguousarray(
            (rng.normal(size=60) + 1j * rng.normal(size=60)) * 2.0)
        a = compiled.wigner_clenshaw(rho, pts)
        b = _fallback.wigner_clenshaw(rho, pts)
        assert np.max(np.abs(a - b)) < 1e-11


def test_fallback_forced_by_env(monkeypatch):
    import importlib

    import kerropo._backend as backend_mod

    monkeypatch.setenv("KERROPO_PURE_PYTHON", "1")
    importlib.reload(backend_mod)
    assert backend_mod.COMPILED is False
    assert backend_mod.backend_name() == "numpy"
    monkeypatch.delenv("KERROPO_PURE_PYTHON")
    importlib.reload(backend_mod)
