"""Coherent states and spin-resolved Husimi phase-space maps.

The smoothing kernel is the unit-norm coherent state with equal quadrature
widths, alpha = (q0 + i p0)/sqrt(2); the position-space normalization constant
is pi^(-1/4).  rho_H(q0, p0) = |<coherent(q0,p0)| Pi_s |psi>|^2, so values lie
in [0, 1] and the cell sum times dq dp / (2 pi) estimates the probability of
the projected spin component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TruncationError
from .evolution import StateVector
from .observables import mean_photon_number


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular (q, p) sampling, stored as the two sample arrays."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if q.ndim != 1 or p.ndim != 1 or q.size < 2 or p.size < 2:
            raise ValueError("grid needs at least 2 samples along each axis")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
            raise ValueError("grid ranges must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def regular(cls, q_min, q_max, nq, p_min, p_max, n_p) -> "PhaseSpaceGrid":
        return cls(np.linspace(q_min, q_max, nq), np.linspace(p_min, p_max, n_p))

    @classmethod
    def for_state(cls, psi, nq: int = 256, n_p: int = 256,
                  margin: float = 1.5) -> "PhaseSpaceGrid":
        """Symmetric grid sized to cover the circle radius sqrt(2<n>) with margin."""
        ext = margin * math.sqrt(2.0 * float(mean_photon_number(psi)) + 4.0)
        return cls.regular(-ext, ext, nq, -ext, ext, n_p)

    @property
    def dq(self) -> float:
        return float(self.q[1] - self.q[0])

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])


@dataclass(frozen=True)
class HusimiGrid:
    """rho_H sampled on grid (values[i, j] at q[i], p[j]) for one spin projector."""

    values: np.ndarray
    spin_projector: int
    grid: PhaseSpaceGrid

    @property
    def max_value(self) -> float:
        return float(np.max(self.values))

    @property
    def norm_estimate(self) -> float:
        """Cell sum times dq dp / (2 pi); converges to ||Pi_s psi||^2."""
        return float(np.sum(self.values) * self.grid.dq * self.grid.dp / (2.0 * math.pi))


def coherent_state(q0: float, p0: float, n_levels: int,
                   leak_tol: float = 1e-10) -> np.ndarray:
    """Oscillator amplitudes exp(-|a|^2/2) a^n / sqrt(n!), a = (q0 + i p0)/sqrt(2).

    Computed by the stable ladder recurrence.  Raises TruncationError when the
    Poisson weight left above the truncation exceeds leak_tol.
    """
    if n_levels < 2:
        raise TruncationError(f"need N >= 2 oscillator levels, got {n_levels}")
    alpha = complex(q0, p0) / math.sqrt(2.0)
    amps = np.zeros(n_levels, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_levels):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    leak = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if leak > leak_tol:
        raise TruncationError(
            f"coherent state at (q0={q0}, p0={p0}) leaks {leak:.3e} > {leak_tol:.3e} "
            f"beyond N={n_levels}; enlarge the basis")
    return amps


def _poisson_cutoff(alpha_max: float, n_levels: int, log_tol: float = -45.0) -> int:
    """Smallest n beyond which |coherent amplitude| < exp(log_tol) everywhere
    on a grid with |alpha| <= alpha_max (so those terms cannot matter)."""
    lam = alpha_max * alpha_max
    if lam == 0.0:
        return 1
    log_amp = -0.5 * lam
    n = 0
    while n < n_levels - 1:
        if n > lam and log_amp < log_tol:
            break
        n += 1
        log_amp += 0.5 * math.log(lam) - 0.5 * math.log(n)
    return n + 1


def husimi_map(psi, projector: int, grid: PhaseSpaceGrid) -> HusimiGrid:
    """rho_H(q0, p0) = |sum_n conj(c_n(q0, p0)) psi(n, projector)|^2 on the grid."""
    if projector not in (0, 1):
        raise ValueError(f"spin projector must be 0 or 1, got {projector}")
    data = psi.data if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
    component = data[projector::2]
    n_levels = component.size
    qq, pp = np.meshgrid(grid.q, grid.p, indexing="ij")
    alpha_conj = (qq - 1j * pp).ravel() / math.sqrt(2.0)
    n_cut = _poisson_cutoff(float(np.max(np.abs(alpha_conj))), n_levels)
    # ladder recurrence for conj(c_n), vectorized over the whole grid
    term = np.exp(-0.5 * np.abs(alpha_conj) ** 2)
    acc = term * component[0]
    for n in range(1, n_cut):
        term = term * alpha_conj / math.sqrt(n)
        if component[n] != 0.0:
            acc = acc + term * component[n]
    values = np.abs(acc.reshape(qq.shape)) ** 2
    return HusimiGrid(values=values, spin_projector=projector, grid=grid)


def ring_angular_entropy(husimi: HusimiGrid, n_theta: int = 64,
                         ring_halfwidth: float = 2.0) -> float:
    """Shannon entropy (nats) of the angular distribution on the dominant ring.

    The dominant radius is the weighted peak of the radial profile; cells
    within ring_halfwidth of it are binned by angle.  A point-localized state
    gives ~0, full phase spreading approaches log(n_theta).
    """
    qq, pp = np.meshgrid(husimi.grid.q, husimi.grid.p, indexing="ij")
    radius = np.hypot(qq, pp).ravel()
    weights = husimi.values.ravel()
    total = float(np.sum(weights))
    if total <= 0.0:
        raise ValueError("empty Husimi grid")
    bin_width = max(husimi.grid.dq, husimi.grid.dp)
    r_bins = np.floor(radius / bin_width).astype(int)
    radial = np.bincount(r_bins, weights=weights)
    r_star = (float(np.argmax(radial)) + 0.5) * bin_width
    mask = np.abs(radius - r_star) <= ring_halfwidth
    if not np.any(mask):
        raise ValueError("no grid cells on the dominant ring; refine the grid")
    theta = np.arctan2(pp.ravel()[mask], qq.ravel()[mask])
    hist, _ = np.histogram(theta, bins=n_theta, range=(-math.pi, math.pi),
                           weights=weights[mask])
    total_ring = float(np.sum(hist))
    if total_ring <= 0.0:
        return 0.0
    prob = hist[hist > 0.0] / total_ring
    return float(-np.sum(prob * np.log(prob)))
