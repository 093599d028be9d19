"""Scalar and distribution diagnostics of joint Fock x qubit states.

All functions accept a StateVector, a flat (2N,) array, or a (2N, K) matrix
of state columns; in the batched case they return a (K,) array.  Everything
is invariant under a global phase, and the participation ratio is always
taken in the joint product basis (the g = 0 eigenbasis).
"""

from __future__ import annotations

import numpy as np

from .evolution import StateVector
from .hamiltonians import ModelParams, build_full


def _amplitude_matrix(psi):
    data = psi.data if isinstance(psi, StateVector) else np.asarray(psi)
    if data.ndim == 1:
        return data[:, None], True
    if data.ndim == 2:
        return data, False
    raise ValueError(f"expected a state vector or a matrix of columns, got ndim={data.ndim}")


def _maybe_scalar(values, single):
    return float(values[0]) if single else values


def participation_ratio(psi):
    """(sum |psi_k|^2)^2 / sum |psi_k|^4 over the joint basis amplitudes."""
    amps, single = _amplitude_matrix(psi)
    p2 = np.abs(amps) ** 2
    denom = np.sum(p2 ** 2, axis=0)
    if np.any(denom == 0.0):
        raise ValueError("participation ratio undefined for the zero vector")
    return _maybe_scalar(np.sum(p2, axis=0) ** 2 / denom, single)


def mean_photon_number(psi):
    """<n> = sum_{n,s} n |psi(n,s)|^2."""
    amps, single = _amplitude_matrix(psi)
    n_flat = np.repeat(np.arange(amps.shape[0] // 2), 2)
    return _maybe_scalar(n_flat @ (np.abs(amps) ** 2), single)


def mean_sigma_z(psi):
    """<sigma_z> = sum_{n,s} (2s - 1) |psi(n,s)|^2."""
    amps, single = _amplitude_matrix(psi)
    sz_flat = np.tile([-1.0, 1.0], amps.shape[0] // 2)
    return _maybe_scalar(sz_flat @ (np.abs(amps) ** 2), single)


def pn_distribution(psi):
    """P(n) = sum_s |psi(n,s)|^2, tracing out the qubit; (N,) or (N, K)."""
    amps, single = _amplitude_matrix(psi)
    p2 = np.abs(amps) ** 2
    pn = p2[0::2] + p2[1::2]
    return pn[:, 0] if single else pn


def edge_probability(psi, levels: int = 20):
    """Total probability on the `levels` highest retained oscillator levels."""
    amps, single = _amplitude_matrix(psi)
    n_levels = amps.shape[0] // 2
    if not 1 <= levels < n_levels:
        raise ValueError(f"levels must be in [1, N), got {levels} with N={n_levels}")
    tail = np.abs(amps[2 * (n_levels - levels):]) ** 2
    return _maybe_scalar(np.sum(tail, axis=0), single)


def floquet_h_h0(mode, params: ModelParams):
    """(h, h0) of a Floquet mode at t = 0: h = <H(0)> for the full model,
    h0 = omega * <n>."""
    amps, single = _amplitude_matrix(mode)
    h_op = build_full(params, 0.0)
    h = h_op.expectation(amps)
    h0 = params.omega * np.asarray(mean_photon_number(amps))
    if single:
        return float(h[0]), float(h0.flat[0] if h0.ndim else h0)
    return h, h0
