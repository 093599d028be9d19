"""Closed-form two-branch diagnostics of the rotating-frame model.

Treating the oscillator classically (mass 1, frequency |delta0|) and
diagonalizing the remaining 2x2 spin problem gives two energy branches

    h(h0) = h0 +/- sqrt(g^2 w0^2 h0 / |delta0| + delta_Omega^2 / 4),
    h0 = p^2/2 + delta0^2 x^2/2  (so <n> = h0 / |delta0|),

a polarization law <sigma_z> = +/- (1 + 4 g^2 w0^2 <n> / delta_Omega^2)^(-1/2),
and turning-point estimates n_minmax = <n> +/- f sqrt(<n>) / |delta0| for the
two maxima of P(n).  The branch formulas are even in the detuning sign only
through its magnitude: every function here evaluates with |delta0| and leaves
any signed-detuning bookkeeping to the caller (a negative-detuning spectrum
maps onto these curves under E -> -E with the branch labels swapped).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ResonanceSingularityError
from .hamiltonians import ModelParams
from .observables import mean_photon_number, mean_sigma_z


@dataclass(frozen=True)
class BranchSpec:
    """One spin branch: sign +1 or -1, plus the model constants."""

    sign: int
    params: ModelParams

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError(f"branch sign must be +1 or -1, got {self.sign}")


class PnExtrema(NamedTuple):
    n_min: float
    n_max: float
    clamped: bool


class PolarizationFit(NamedTuple):
    rms: float
    max_abs: float
    n_states: int
    n_plus: int
    n_minus: int


def _abs_detuning(params: ModelParams) -> float:
    d = abs(params.delta0)
    if d == 0.0:
        raise ResonanceSingularityError("branch formulas undefined at delta0 = 0")
    return d


def branch_energy(h0, branch: BranchSpec):
    """h = h0 +/- sqrt(g^2 w0^2 h0/|delta0| + delta_Omega^2/4), the drive-free
    branch curves; h0 is the oscillator energy about the displaced center."""
    p = branch.params
    h0 = np.asarray(h0, dtype=float)
    if np.any(h0 < 0):
        raise ValueError("oscillator energy h0 must be non-negative")
    root = np.sqrt((p.g * p.omega0) ** 2 * h0 / _abs_detuning(p) + p.delta_Omega ** 2 / 4.0)
    out = h0 + branch.sign * root
    return float(out) if out.ndim == 0 else out


def polarization(mean_n, branch: BranchSpec):
    """<sigma_z> = +/- (1 + 4 g^2 w0^2 <n> / delta_Omega^2)^(-1/2)."""
    p = branch.params
    mean_n = np.asarray(mean_n, dtype=float)
    if np.any(mean_n < 0):
        raise ValueError("mean photon number must be non-negative")
    if p.delta_Omega == 0.0:
        warnings.warn("qubit detuning is zero: polarization collapses to the +/-0 limit "
                      "(+/-1 exactly at <n> = 0)", RuntimeWarning, stacklevel=2)
        out = np.where(mean_n == 0.0, 1.0, 0.0) * branch.sign
    else:
        out = branch.sign / np.sqrt(1.0 + 4.0 * (p.g * p.omega0) ** 2 * mean_n
                                    / p.delta_Omega ** 2)
    return float(out) if out.ndim == 0 else out


def energy_of_n(n, branch: BranchSpec):
    """E(n) = |delta0| n +/- sqrt(g^2 w0^2 n + delta_Omega^2/4) (branch curve
    parametrized by the photon number)."""
    p = branch.params
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise ValueError("photon number must be non-negative")
    out = _abs_detuning(p) * n + branch.sign * np.sqrt(
        (p.g * p.omega0) ** 2 * n + p.delta_Omega ** 2 / 4.0)
    return float(out) if out.ndim == 0 else out


def n_of_energy(energy: float, branch: BranchSpec) -> np.ndarray:
    """All non-negative photon numbers solving E = |delta0| n +/- sqrt(...).

    Squaring reduces the problem to a quadratic; each candidate root is kept
    only if it reproduces E on the requested branch (back-substitution).
    Returns a sorted array, possibly empty.
    """
    p = branch.params
    d = _abs_detuning(p)
    c = (p.g * p.omega0) ** 2
    q = p.delta_Omega ** 2 / 4.0
    # d^2 n^2 - (2 E d + c) n + (E^2 - q) = 0
    disc = (2.0 * energy * d + c) ** 2 - 4.0 * d * d * (energy * energy - q)
    if disc < 0.0:
        return np.empty(0)
    roots = np.array([(2.0 * energy * d + c + s * np.sqrt(disc)) / (2.0 * d * d)
                      for s in (-1.0, 1.0)])
    scale = max(abs(energy), 1.0)
    roots[np.abs(roots) < 1e-12 * scale] = 0.0
    roots = roots[roots >= 0.0]
    keep = np.abs(energy_of_n(roots, branch) - energy) <= 1e-9 * scale
    return np.unique(roots[keep])


def pn_extrema(mean_n: float, params: ModelParams) -> PnExtrema:
    """Estimated locations <n> +/- f sqrt(<n>)/|delta0| of the two P(n) maxima.

    The lower estimate is clamped at 0 (flagged) when the excursion exceeds
    the mean.
    """
    if mean_n < 0:
        raise ValueError("mean photon number must be non-negative")
    spread = params.f * np.sqrt(mean_n) / _abs_detuning(params)
    lo = mean_n - spread
    clamped = lo < 0.0
    return PnExtrema(max(lo, 0.0), mean_n + spread, clamped)


def polarization_fit_report(vectors, params: ModelParams) -> PolarizationFit:
    """RMS vertical deviation of eigenstate (<n>, <sigma_z>) pairs from the
    polarization curve, each state assigned to the branch matching the sign
    of its <sigma_z>."""
    mean_n = np.atleast_1d(np.asarray(mean_photon_number(vectors), dtype=float))
    mean_sz = np.atleast_1d(np.asarray(mean_sigma_z(vectors), dtype=float))
    signs = np.where(mean_sz >= 0.0, 1.0, -1.0)
    plus = BranchSpec(+1, params)
    predicted = signs * np.asarray(polarization(mean_n, plus))
    dev = mean_sz - predicted
    return PolarizationFit(
        rms=float(np.sqrt(np.mean(dev ** 2))),
        max_abs=float(np.max(np.abs(dev))),
        n_states=mean_n.size,
        n_plus=int(np.sum(signs > 0)),
        n_minus=int(np.sum(signs < 0)),
    )
