import math

import numpy as np
import pytest

from kerropo.errors import ValidationError
from kerropo.hamiltonians import (
    HBAR_CGS,
    ShapingParams,
    chain_hamiltonian,
    detuning_weights,
    h0_diagonal,
    kerr_frequency,
    kerr_rotation_phases,
    two_mode_hamiltonian,
    xi_parameter,
    xi_phase_exponents,
)


def test_kerr_frequency_zero_and_scaling():
    assert kerr_frequency(1.0, 2.0, 0.0, 1.0, 1.0) == 0.0
    g1 = kerr_frequency(1.0, 2.0, 3.0, 1.0, 1.0)
    assert kerr_frequency(2.0, 2.0, 3.0, 1.0, 1.0) == pytest.approx(4.0 * g1)


def test_kerr_frequency_unit_inputs():
    g = kerr_frequency(1.0, 1.0, 1.0, 1.0, 1.0)
    assert g == pytest.approx(24.0 * math.pi / HBAR_CGS, rel=1e-12)


def test_kerr_frequency_rejects_bad_geometry():
    with pytest.raises(ValidationError):
        kerr_frequency(1.0, 1.0, 1.0, -1.0, 1.0)


def test_detuning_weights_trivial():
    w = detuning_weights(3.0, 2.0, 1.0, np.zeros((3, 3)))
    assert w.delta == 0.0
    assert w.G_pump == w.G_signal == w.G_idler == w.gamma == 0.0


def test_detuning_weights_six_g():
    # g_ss = g_ii = g_is = g with vanishing pump row: gamma = 6 g
    g = 0.7
    mat = np.array([[0.0, 0.0, 0.0], [0.0, g, g], [0.0, g, g]])
    w = detuning_weights(2.0, 1.0, 1.0, mat)
    assert w.gamma == pytest.approx(6 * g)
    assert w.G_pump == 0.0


def test_detuning_weights_arithmetic():
    # coherence condition g_Ps = g_Pi = g_PP makes G_pump vanish, and then
    # gamma = 2 (g_ss + g_ii + g_is - g_PP) = 4 for these values
    mat = np.array([[4.0, 4.0, 4.0], [4.0, 1.0, 3.0], [4.0, 3.0, 2.0]])
    w = detuning_weights(0.0, 0.0, 0.0, mat)
    assert w.G_pump == 0.0
    assert w.gamma == pytest.approx(4.0)
    assert w.gamma == pytest.approx(w.G_signal + w.G_idler)


def test_gamma_equals_weight_sum_always():
    rng = np.random.default_rng(0)
    for _ in range(10):
        m = rng.normal(size=(3, 3))
        m = (m + m.T) / 2
        w = detuning_weights(1.0, 2.0, 3.0, m)
        assert w.gamma == w.G_signal + w.G_idler


def test_xi_parameter_basics():
    assert xi_parameter(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0) == 0.0
    a = xi_parameter(1.0, 1.0, 1.0, 1.0, 1.0 + 2.0j, 1.0, 1.0)
    b = xi_parameter(1.0, 1.0, 1.0, 1.0, 1.0 - 2.0j, 1.0, 1.0)
    assert a == np.conj(b)
    assert abs(xi_parameter(1.0, 1.0, 1.0, 1.0, 2.0 + 4.0j, 1.0, 1.0)) == \
        pytest.approx(2 * abs(a))


def test_h0_diagonal_vacuum_and_linear():
    g = np.zeros((3, 3))
    assert h0_diagonal((1.0, 2.0, 3.0), g, 0, 0, 0) == 0.0
    assert h0_diagonal((1.0, 2.0, 3.0), g, 2, 1, 1) == pytest.approx(2 + 2 + 3)


def test_h0_diagonal_rejects_negative():
    with pytest.raises(ValidationError):
        h0_diagonal((1.0, 1.0, 1.0), np.zeros((3, 3)), -1, 0, 0)


def test_xi_phase_matches_finite_difference():
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = rng.normal(size=(3, 3))
        g = (g + g.T) / 2
        om = tuple(rng.uniform(1, 4, size=3))
        n = rng.integers(0, 5, size=3)
        for mode, e in ((0, (1, 0, 0)), (1, (0, 1, 0)), (2, (0, 0, 1))):
            fd = (h0_diagonal(om, g, n[0] + e[0], n[1] + e[1], n[2] + e[2])
                  - h0_diagonal(om, g, *n))
            assert xi_phase_exponents(om, g, mode, *n) == pytest.approx(fd, rel=1e-12)


def test_chain_hamiltonian_zero_xi():
    p = ShapingParams(xi=0.0, gamma=1.0, n_center=3, tau=1.0)
    assert np.all(chain_hamiltonian(p, 6, 0.5) == 0)


def test_chain_hamiltonian_single_hop():
    p = ShapingParams(xi=-1j, gamma=2.0, n_center=0, tau=1.0)
    H = chain_hamiltonian(p, 1, 0.0)
    assert abs(H[0, 1]) == pytest.approx(1.0)
    assert H[1, 0] == np.conj(H[0, 1])
    assert H[0, 0] == H[1, 1] == 0


def test_chain_hamiltonian_hop_magnitudes_and_hermiticity():
    p = ShapingParams(xi=0.3 - 0.7j, gamma=1.3, n_center=4, tau=1.0)
    H = chain_hamiltonian(p, 9, 0.37)
    m = np.arange(9)
    assert np.allclose(np.abs(H[m, m + 1]), (m + 1) * abs(p.xi))
    assert np.max(np.abs(H - H.conj().T)) < 1e-14


def test_chain_hamiltonian_adjacent_phase_ratio():
    p = ShapingParams(xi=1.0, gamma=0.8, n_center=5, tau=1.0)
    t = 0.9
    H = chain_hamiltonian(p, 8, t)
    m = np.arange(7)
    hops = H[m, m + 1] / (m + 1)
    ratios = hops[1:] / hops[:-1]
    assert np.max(np.abs(ratios - np.exp(-1j * p.gamma * t))) < 1e-13


def test_two_mode_restricts_to_chain():
    p = ShapingParams(xi=0.4 + 0.2j, gamma=1.1, n_center=3, tau=1.0)
    M = 10
    H2 = two_mode_hamiltonian(p, M, M, 0.7).toarray()
    Hc = chain_hamiltonian(p, M, 0.7)
    Di = M + 1
    idx = np.arange(M + 1) * Di + np.arange(M + 1)
    assert np.max(np.abs(H2[np.ix_(idx, idx)] - Hc)) < 1e-14


def test_two_mode_conserves_number_difference():
    p = ShapingParams(xi=0.4 + 0.2j, gamma=1.1, n_center=3, tau=1.0)
    Ms, Mi = 5, 6
    H = two_mode_hamiltonian(p, Ms, Mi, 0.2).toarray()
    ns, ni = np.meshgrid(np.arange(Ms + 1), np.arange(Mi + 1), indexing="ij")
    diff = np.diag((ns - ni).ravel().astype(float))
    comm = H @ diff - diff @ H
    assert np.max(np.abs(comm)) < 1e-13


def test_two_mode_zero_xi():
    p = ShapingParams(xi=0.0, gamma=1.0, n_center=0, tau=1.0)
    assert two_mode_hamiltonian(p, 4, 4, 1.0).nnz == 0


def test_kerr_rotation_identity_at_full_period():
    phases = kerr_rotation_phases(0.5, 0.7, 0.8, 2 * math.pi / 2.0, 10)
    assert np.max(np.abs(phases - 1.0)) < 1e-9


def test_kerr_rotation_quarter_period_pattern():
    # (g_ss+g_ii+g_is) t = pi/4: phases exp(i pi m^2/4), period 8 in m
    phases = kerr_rotation_phases(math.pi / 12, math.pi / 12, math.pi / 12, 1.0, 16)
    m = np.arange(17)
    assert np.allclose(phases, np.exp(1j * math.pi * m.astype(float) ** 2 / 4))
    assert np.allclose(phases[:9], phases[8:])


def test_kerr_rotation_t0():
    assert np.all(kerr_rotation_phases(1.0, 2.0, 3.0, 0.0, 5) == 1.0)


def test_shaping_params_validation():
    with pytest.raises(ValidationError):
        ShapingParams(xi=1.0, gamma=1.0, n_center=0, tau=0.0)
    with pytest.raises(ValidationError):
        ShapingParams(xi=1.0, gamma=1.0, n_center=-1, tau=1.0)
    with pytest.raises(ValidationError):
        ShapingParams(xi=1.0, gamma=1.0, n_center=0, tau=1.0,
                      schedule=((0.4, 0.0), (0.4, 1.0)))
