import math

import numpy as np
import pytest

from kerropo.errors import InvalidTruncationError, TruncationTooSmallError, ValidationError
from kerropo.states import (
    ChainState,
    coherent_chain,
    coherent_pump_product,
    embed_chain,
    extract_chain,
    pure_to_density,
    squeezed_vacuum_chain,
    uniform_chain,
)


def test_uniform_minimal():
    st = uniform_chain(1)
    assert np.allclose(st.amplitudes, [0.70710678, 0.70710678])


def test_uniform_large():
    st = uniform_chain(120)
    assert np.allclose(st.amplitudes, 1.0 / 11.0)
    assert st.truncation == 120


def test_uniform_normalized_exactly():
    st = uniform_chain(3)
    assert abs(np.sum(np.abs(st.amplitudes) ** 2) - 1.0) < 1e-12


def test_uniform_rejects_bad_truncation():
    with pytest.raises(InvalidTruncationError):
        uniform_chain(0)


def test_coherent_vacuum():
    st = coherent_chain(0, 5)
    assert st.amplitudes[0] == 1.0
    assert np.all(st.amplitudes[1:] == 0)


def test_coherent_mean_is_alpha_squared():
    # independent oracle: direct truncated Poisson summation
    st = coherent_chain(7, 110)
    p = st.probabilities()
    mean = float(np.dot(np.arange(111), p))
    lam = 49.0
    ref = np.array([math.exp(m * math.log(lam) - math.lgamma(m + 1) - lam)
                    for m in range(111)])
    ref_mean = float(np.dot(np.arange(111), ref / ref.sum()))
    assert abs(mean - ref_mean) < 1e-12
    assert abs(mean - 49.0) < 0.01


def test_coherent_p2_value():
    # e^-4 4^2/2! = 0.14653, slightly scaled by truncation renormalization
    st = coherent_chain(2, 12)
    expected = math.exp(-4.0) * 4.0**2 / 2.0
    assert abs(st.probabilities()[2] - expected) < 2e-4


def test_coherent_poisson_moments():
    for alpha in (2.0, 3.5):
        M = int(alpha**2 + 6 * alpha) + 1
        st = coherent_chain(alpha, M)
        p = st.probabilities()
        m = np.arange(M + 1)
        mean = float(np.dot(m, p))
        var = float(np.dot((m - mean) ** 2, p))
        assert abs(mean - alpha**2) < 0.01 * alpha**2
        assert abs(var - alpha**2) < 0.01 * alpha**2


def test_coherent_tail_guard():
    with pytest.raises(TruncationTooSmallError):
        coherent_chain(7, 30)


def test_coherent_tight_truncation_warns():
    with pytest.warns(RuntimeWarning):
        coherent_chain(2, 12)


def test_squeezed_vacuum_r0():
    st = squeezed_vacuum_chain(0.0, 8)
    assert st.amplitudes[0] == 1.0


def test_squeezed_vacuum_geometric_ratio():
    st = squeezed_vacuum_chain(1.0, 60)
    p = st.probabilities()
    lam = math.tanh(1.0) ** 2
    mask = p > 1e-12
    ratios = p[1:][mask[1:]] / p[:-1][mask[1:]]
    assert np.max(np.abs(ratios - lam)) < 1e-10


def test_squeezed_vacuum_normalized():
    for r in (0.3, 1.0, 1.7):
        st = squeezed_vacuum_chain(r, 80)
        assert abs(np.sum(st.probabilities()) - 1.0) < 1e-10


def test_embed_roundtrip():
    st = coherent_chain(2, 12)
    two = embed_chain(st)
    back = extract_chain(two)
    assert np.max(np.abs(back.amplitudes - st.amplitudes)) < 1e-15


def test_embed_vacuum():
    two = embed_chain(ChainState(np.array([1.0, 0.0])))
    assert two.amplitudes[0, 0] == 1.0
    assert np.sum(np.abs(two.amplitudes)) == 1.0


def test_embed_diagonal_support():
    st = coherent_chain(2, 12)
    two = embed_chain(st)
    joint = np.abs(two.amplitudes) ** 2
    assert np.allclose(np.diag(joint), st.probabilities())
    assert np.count_nonzero(joint - np.diag(np.diag(joint))) == 0


def test_pure_to_density_trace_and_purity():
    rho = pure_to_density(embed_chain(coherent_chain(2, 12)))
    mat = rho.as_matrix()
    assert abs(np.trace(mat) - 1.0) < 1e-12
    assert abs(np.trace(mat @ mat) - 1.0) < 1e-12


def test_pure_to_density_diagonal():
    st = coherent_chain(2, 12)
    rho = pure_to_density(embed_chain(st))
    assert np.allclose(np.diag(rho.diagonal()), st.probabilities())


def test_density_validation_rejects_bad_trace():
    rho = pure_to_density(embed_chain(coherent_chain(2, 12)))
    bad = rho.rho * 2.0
    with pytest.raises(ValidationError):
        type(rho)(bad)


def test_pump_product_window_and_norm():
    chain = coherent_chain(1.0, 5)
    st = coherent_pump_product(4.0, chain)
    lo, hi = st.pump_window
    assert lo == 0 and hi >= 28
    assert abs(np.sum(np.abs(st.amplitudes) ** 2) - 1.0) < 1e-10
    pump_marg = np.sum(np.abs(st.amplitudes) ** 2, axis=1)
    mean_p = float(np.dot(np.arange(lo, hi + 1), pump_marg))
    assert abs(mean_p - 16.0) < 0.05
