import math

import numpy as np
import pytest

from drivenjc.eigensolve import eigh
from drivenjc.errors import ResonanceSingularityError
from drivenjc.hamiltonians import (
    MAIN_DRIVE_AMPLITUDE,
    ModelParams,
    build_displaced,
    build_full,
    build_rotating_frame,
    build_rwa,
)
from drivenjc.operators import joint_index

MAIN = dict(omega0=1.0, Omega=1.2, g=0.04, omega=1.0)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(omega0=-1.0)
    with pytest.raises(ValueError):
        ModelParams(g=-0.1)
    with pytest.raises(ValueError):
        ModelParams(N=1)


def test_params_derived_fields():
    p = ModelParams(omega0=0.975, Omega=1.2, omega=1.0, N=10)
    assert p.delta0 == pytest.approx(-0.025)
    assert p.delta_Omega == pytest.approx(0.2)
    assert p.period == pytest.approx(2.0 * math.pi)


def test_params_drive_rate_parametrization():
    p = ModelParams.from_drive_rate(0.02, 20.0, N=10)
    assert p.f == pytest.approx(MAIN_DRIVE_AMPLITUDE)
    assert p.f == pytest.approx(5.0 ** -1.5)
    with pytest.raises(ValueError):
        ModelParams(f=0.5, drive_rate=0.02, drive_quanta=20.0, N=10)


def test_full_uncoupled_diagonal():
    p = ModelParams(g=0.0, f=0.0, N=5, **{k: v for k, v in MAIN.items() if k != "g"})
    h = build_full(p, t=0.3).to_dense()
    for n in range(5):
        for s in (0, 1):
            expected = p.omega0 * n + (2 * s - 1) * p.Omega / 2
            assert h[joint_index(n, s), joint_index(n, s)] == pytest.approx(expected)
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0


def test_full_drive_vanishes_at_quarter_period():
    p = ModelParams(N=6, **MAIN)
    h = build_full(p, t=math.pi / (2 * p.omega)).to_dense()
    p0 = ModelParams(N=6, f=0.0, **MAIN)
    h0 = build_full(p0, t=0.0).to_dense()
    assert np.allclose(h, h0, atol=1e-15)


def test_full_coupling_element():
    p = ModelParams(N=6, **MAIN)
    h = build_full(p, t=0.0).to_dense()
    # g*w0*(a+a')*sx between |0,s> and |1,s'> for s != s'
    assert abs(h[joint_index(0, 0), joint_index(1, 1)]) == pytest.approx(0.04)
    assert abs(h[joint_index(0, 1), joint_index(1, 0)]) == pytest.approx(0.04)
    assert h[joint_index(0, 0), joint_index(1, 0)] == pytest.approx(p.f)


def test_full_is_hermitian_banded3():
    p = ModelParams(N=8, **MAIN)
    h = build_full(p, t=0.7)
    assert h.half_bandwidth == 3
    dense = h.to_dense()
    assert np.array_equal(dense, dense.conj().T)


def test_rwa_excitation_blocks_at_f0():
    p = ModelParams(N=6, f=0.0, **MAIN)
    h = build_rwa(p, t=0.0).to_dense()
    offdiag = h - np.diag(np.diag(h))
    for n in range(5):
        val = offdiag[joint_index(n, 1), joint_index(n + 1, 0)]
        assert val == pytest.approx(p.g * p.omega0 * math.sqrt(n + 1))
        offdiag[joint_index(n, 1), joint_index(n + 1, 0)] = 0.0
        offdiag[joint_index(n + 1, 0), joint_index(n, 1)] = 0.0
    assert np.count_nonzero(offdiag) == 0


def test_rwa_drive_entries_t0():
    p = ModelParams(N=6, **MAIN)
    h = build_rwa(p, t=0.0).to_dense()
    for n in range(5):
        for s in (0, 1):
            val = h[joint_index(n, s), joint_index(n + 1, s)]
            assert val == pytest.approx(p.f / 2 * math.sqrt(n + 1))
            assert val.imag == pytest.approx(0.0)


def test_rwa_hermitian_any_t():
    p = ModelParams(N=6, **MAIN)
    for t in (0.0, 0.37, 1.9, 5.2):
        dense = build_rwa(p, t).to_dense()
        assert np.array_equal(dense, dense.conj().T)


def test_rwa_matches_full_diagonal_when_uncoupled():
    base = {k: v for k, v in MAIN.items() if k != "g"}
    p = ModelParams(g=0.0, f=0.0, N=5, **base)
    assert np.allclose(build_rwa(p, 1.0).to_dense(), build_full(p, 1.0).to_dense())


def test_rotating_frame_diagonal_sign():
    # omega0=0.975, omega=1 gives a -0.025*n oscillator term
    p = ModelParams(omega0=0.975, Omega=1.2, omega=1.0, g=0.04, N=6)
    h = build_rotating_frame(p).to_dense()
    assert h[joint_index(3, 0), joint_index(3, 0)] == pytest.approx(-0.025 * 3 - 0.1)
    assert h.dtype == np.float64


def test_rotating_frame_on_double_resonance():
    p = ModelParams(omega0=1.0, Omega=1.0, omega=1.0, g=0.04, N=6)
    h = build_rotating_frame(p).to_dense()
    assert np.allclose(np.diag(h), 0.0)


def test_rotating_frame_drive_entry():
    p = ModelParams(N=6, **MAIN)
    h = build_rotating_frame(p).to_dense()
    assert h[0, 2] == pytest.approx(MAIN_DRIVE_AMPLITUDE / 2)
    assert h[0, 2] == pytest.approx(0.044721, abs=1e-6)


def test_displaced_constants():
    p = ModelParams(omega0=1.025, Omega=1.2, omega=1.0, g=0.04, N=6)
    _, consts = build_displaced(p)
    # f = 5**-1.5 exactly, so f^2 = 0.008 and the offset is exactly 0.08
    assert consts.transverse_field == pytest.approx(0.0715541752799933, abs=1e-12)
    assert consts.energy_offset == pytest.approx(0.08, abs=1e-12)
    assert consts.displacement == pytest.approx(-MAIN_DRIVE_AMPLITUDE / 0.05)
    assert consts.effective_coupling == pytest.approx(1.64)


def test_displaced_effective_coupling_example():
    p = ModelParams(omega0=1.025, Omega=1.2, omega=1.0, g=0.04, N=6)
    g_eff = build_displaced(p)[1].effective_coupling
    assert g_eff == pytest.approx(p.g * p.omega0 / p.delta0)


def test_displaced_f0_equals_rotating_frame():
    p = ModelParams(omega0=1.05, f=0.0, N=8, Omega=1.2, omega=1.0, g=0.04)
    hd, consts = build_displaced(p)
    assert consts.transverse_field == 0.0
    assert consts.energy_offset == 0.0
    assert np.allclose(hd.to_dense(), build_rotating_frame(p).to_dense())


def test_displaced_resonance_singularity():
    p = ModelParams(omega0=1.0, omega=1.0, N=6)
    with pytest.raises(ResonanceSingularityError):
        build_displaced(p)


def test_displaced_half_bandwidth1():
    p = ModelParams(omega0=1.05, N=8, Omega=1.2, omega=1.0, g=0.04)
    hd, _ = build_displaced(p)
    assert hd.half_bandwidth == 1


def test_displacement_spectral_equivalence():
    # exact substitution a = b - f/(2*delta0): spectra agree up to truncation
    p = ModelParams(omega0=1.05, Omega=1.2, omega=1.0, g=0.04, N=200)
    e_rot = eigh(build_rotating_frame(p)).values[:40]
    e_disp = eigh(build_displaced(p)[0]).values[:40]
    assert np.max(np.abs(e_rot - e_disp)) < 1e-8


def test_rwa_is_rotating_frame_conjugated_back():
    # H_rwa(t) = exp(-iAt) H_r exp(+iAt) + A - w/2, A = w*(n + sigma_+ sigma_-);
    # the w/2 comes from sigma_+ sigma_- = (1 + sigma_z)/2.
    p = ModelParams(omega0=1.025, Omega=1.17, omega=0.95, g=0.03, f=0.08, N=6)
    h_rot = build_rotating_frame(p).to_dense()
    n_plus_s = np.repeat(np.arange(p.N), 2) + np.tile([0, 1], p.N)
    a_diag = p.omega * n_plus_s
    for t in (0.0, 0.41, 1.3, 2.9):
        u = np.diag(np.exp(-1j * a_diag * t))
        expected = u @ h_rot @ u.conj().T + np.diag(a_diag) - p.omega / 2 * np.eye(2 * p.N)
        assert np.allclose(build_rwa(p, t).to_dense(), expected, atol=1e-12)


def test_all_builders_have_real_diagonal():
    p = ModelParams(omega0=1.05, N=10, Omega=1.2, omega=1.0, g=0.04)
    for h in (build_full(p, 0.3), build_rwa(p, 0.3), build_rotating_frame(p),
              build_displaced(p)[0]):
        assert np.all(np.imag(np.asarray(h.diagonals[0], dtype=complex)) == 0.0)
