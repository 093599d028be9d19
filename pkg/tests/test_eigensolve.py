import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from drivenjc.eigensolve import eig_unitary, eigh, fold_quasienergy
from drivenjc.errors import NumericalAccuracyError
from drivenjc.hamiltonians import ModelParams, build_rotating_frame
from drivenjc.operators import BandedHermitian, build_qubit_operator


def test_eigh_sigma_x():
    dec = eigh(build_qubit_operator("sx"))
    assert np.allclose(dec.values, [-1.0, 1.0])
    inv = np.array([1.0, -1.0]) / np.sqrt(2)
    assert min(np.linalg.norm(dec.vectors[:, 0] - inv),
               np.linalg.norm(dec.vectors[:, 0] + inv)) < 1e-12


def test_eigh_permuted_diagonal():
    dec = eigh(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(dec.values, [1.0, 2.0, 3.0])
    assert np.allclose(np.abs(dec.vectors), np.eye(3)[:, [1, 2, 0]])


def test_eigh_random_hermitian_residual():
    rng = np.random.default_rng(42)
    m = rng.standard_normal((200, 200)) + 1j * rng.standard_normal((200, 200))
    m = m + m.conj().T
    dec = eigh(m)
    scale = np.linalg.norm(m, 2)
    assert dec.residual_norm <= 1e-10 * scale
    gram = dec.vectors.conj().T @ dec.vectors
    assert np.max(np.abs(gram - np.eye(200))) < 1e-10


def test_eigh_banded_matches_dense():
    p = ModelParams(omega0=1.025, N=60)
    hb = build_rotating_frame(p)
    dec_b = eigh(hb)
    dec_d = eigh(hb.to_dense().astype(complex))
    assert np.allclose(dec_b.values, dec_d.values, atol=1e-11)
    overlap = np.abs(np.sum(np.conj(dec_b.vectors) * dec_d.vectors, axis=0))
    assert np.min(overlap) > 1.0 - 1e-9


def test_eigh_spectrum_invariant_under_conjugation():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((40, 40))
    m = m + m.T
    q, _ = np.linalg.qr(rng.standard_normal((40, 40)) + 1j * rng.standard_normal((40, 40)))
    dec1 = eigh(m.astype(complex))
    dec2 = eigh(q @ m @ q.conj().T)
    assert np.allclose(dec1.values, dec2.values, atol=1e-9)


def test_eigh_rejects_nonfinite_and_nonhermitian():
    with pytest.raises(ValueError):
        eigh(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        eigh(np.eye(5), max_dim=4)


def test_eigh_deterministic():
    p = ModelParams(omega0=1.05, N=50)
    hb = build_rotating_frame(p)
    d1 = eigh(hb)
    d2 = eigh(hb)
    assert np.array_equal(d1.values, d2.values)
    assert np.array_equal(d1.vectors, d2.vectors)


def test_phase_convention_leading_component_real_positive():
    rng = np.random.default_rng(11)
    m = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
    dec = eigh(m + m.conj().T)
    lead = dec.vectors[np.argmax(np.abs(dec.vectors), axis=0), np.arange(30)]
    assert np.all(np.abs(lead.imag) < 1e-12)
    assert np.all(lead.real > 0)


def test_eig_unitary_identity():
    sol = eig_unitary(np.eye(6, dtype=complex), period=2.0 * np.pi)
    assert np.allclose(sol.quasienergies, 0.0, atol=1e-12)


def test_eig_unitary_single_phase():
    theta = 0.3
    period = 2.0 * np.pi
    sol = eig_unitary(np.diag(np.exp(-1j * theta * np.ones(4))), period)
    assert np.allclose(sol.quasienergies, theta / period)
    assert sol.quasienergies[0] == pytest.approx(0.0477464829, abs=1e-9)


def test_eig_unitary_matches_eigh_through_exponential():
    rng = np.random.default_rng(5)
    period = 2.0 * np.pi / 0.9
    m = rng.standard_normal((50, 50)) + 1j * rng.standard_normal((50, 50))
    m = 0.1 * (m + m.conj().T)
    dec = eigh(m)
    u = (dec.vectors * np.exp(-1j * dec.values * period)) @ dec.vectors.conj().T
    sol = eig_unitary(u, period)
    expected = np.sort(fold_quasienergy(dec.values, period))
    assert np.allclose(sol.quasienergies, expected, atol=1e-10)


def test_eig_unitary_modes_orthonormal_and_periodic():
    rng = np.random.default_rng(8)
    m = rng.standard_normal((30, 30))
    m = 0.2 * (m + m.T)
    period = 2.0
    u = sla.expm(-1j * period * m)
    sol = eig_unitary(u, period)
    gram = sol.modes.conj().T @ sol.modes
    assert np.max(np.abs(gram - np.eye(30))) < 1e-10
    # U Phi_j = exp(-i eps_j T) Phi_j
    reproduced = u @ sol.modes
    phases = np.exp(-1j * sol.quasienergies * period)
    assert np.max(np.abs(reproduced - sol.modes * phases[None, :])) < 1e-8


def test_eig_unitary_defect_gate():
    bad = np.eye(4, dtype=complex) * 1.01
    with pytest.raises(NumericalAccuracyError):
        eig_unitary(bad, period=1.0, unitarity_tol=1e-6)


def test_eig_unitary_global_phase_shifts_uniformly():
    rng = np.random.default_rng(9)
    m = rng.standard_normal((20, 20))
    m = 0.3 * (m + m.T)
    period = 2.0 * np.pi
    u = sla.expm(-1j * period * m)
    sol1 = eig_unitary(u, period)
    # keep the shift small so no quasienergy crosses the fold boundary
    shift = 1e-3
    sol2 = eig_unitary(np.exp(-1j * shift * period) * u, period)
    diffs = sol2.quasienergies - sol1.quasienergies
    wrapped = np.mod(diffs - shift + np.pi / period, 2 * np.pi / period) - np.pi / period
    assert np.max(np.abs(wrapped)) < 1e-9


@given(st.floats(min_value=-50, max_value=50, allow_nan=False),
       st.floats(min_value=0.5, max_value=20, allow_nan=False))
@settings(max_examples=100)
def test_fold_idempotent_and_in_range(energy, period):
    folded = fold_quasienergy(energy, period)
    assert 0.0 <= folded < 2.0 * np.pi / period + 1e-12
    assert fold_quasienergy(folded, period) == pytest.approx(folded, abs=1e-12)
