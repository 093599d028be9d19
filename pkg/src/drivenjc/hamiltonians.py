"""The chain of driven Jaynes-Cummings Hamiltonians, built from one parameter record.

Four forms of the same physics, all banded in the interleaved basis:

* full lab frame, H(t) = w0*n + (Omega/2)*sz + g*w0*(a + a^dag)*sx
  + f*cos(w*t)*(a + a^dag)                                (half-bandwidth 3)
* co-rotating (RWA) lab frame with drive (f/2)*(a e^{iwt} + a^dag e^{-iwt})
                                                          (half-bandwidth 2)
* rotating frame, stationary: delta0*n + (delta_Omega/2)*sz + JC + (f/2)*(a+a^dag)
                                                          (half-bandwidth 2)
* displaced rotating frame, b = a + f/(2*delta0): the linear drive is absorbed
  into the oscillator center                              (half-bandwidth 1)

hbar = 1 throughout; frequencies are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ResonanceSingularityError
from .operators import BandedHermitian, validate_truncation

# Main drive amplitude used by most default configurations: 0.02 * sqrt(20).
MAIN_DRIVE_AMPLITUDE = 5.0 ** -1.5


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the driven Jaynes-Cummings model plus truncation.

    omega0  oscillator frequency
    Omega   qubit energy spacing
    g       dimensionless qubit-oscillator coupling
    f       drive amplitude
    omega   drive frequency
    N       number of retained oscillator levels

    drive_rate / drive_quanta are an optional provenance pair for the
    alternative parametrization f = drive_rate * sqrt(drive_quanta); all
    physics uses f.
    """

    omega0: float = 1.0
    Omega: float = 1.2
    g: float = 0.04
    f: float = MAIN_DRIVE_AMPLITUDE
    omega: float = 1.0
    N: int = 700
    drive_rate: float | None = field(default=None, compare=False)
    drive_quanta: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.omega0 <= 0 or self.omega <= 0:
            raise ValueError("frequencies omega0 and omega must be positive")
        if self.g < 0 or self.f < 0:
            raise ValueError("coupling g and drive amplitude f must be non-negative")
        validate_truncation(self.N)
        if self.drive_rate is not None and self.drive_quanta is not None:
            implied = self.drive_rate * math.sqrt(self.drive_quanta)
            if not math.isclose(self.f, implied, rel_tol=1e-12, abs_tol=1e-15):
                raise ValueError(
                    f"f={self.f} inconsistent with drive_rate*sqrt(drive_quanta)={implied}")

    @classmethod
    def from_drive_rate(cls, drive_rate: float, drive_quanta: float, **kwargs) -> "ModelParams":
        """Build params with f = drive_rate * sqrt(drive_quanta)."""
        f = drive_rate * math.sqrt(drive_quanta)
        return cls(f=f, drive_rate=drive_rate, drive_quanta=drive_quanta, **kwargs)

    @property
    def delta0(self) -> float:
        """Oscillator-drive detuning omega0 - omega."""
        return self.omega0 - self.omega

    @property
    def delta_Omega(self) -> float:
        """Qubit-drive detuning Omega - omega."""
        return self.Omega - self.omega

    @property
    def period(self) -> float:
        """Drive period 2*pi/omega."""
        return 2.0 * math.pi / self.omega

    def replace(self, **changes) -> "ModelParams":
        if ("f" in changes or "g" in changes) and "drive_rate" not in changes:
            changes.setdefault("drive_rate", None)
            changes.setdefault("drive_quanta", None)
        return replace(self, **changes)


@dataclass(frozen=True)
class DisplacedFrameConstants:
    """Scalars produced by displacing the oscillator in the rotating frame.

    transverse_field    f*g*omega0 / (2*delta0), magnitude of the effective
                        sigma_x field generated by the displacement
    energy_offset       f^2 / (4*delta0), magnitude of the uniform energy shift
    displacement        -f / (2*delta0), shift of <a> absorbed into b
    effective_coupling  g*omega0 / delta0, coupling in units of the detuning
    """

    transverse_field: float
    energy_offset: float
    displacement: float
    effective_coupling: float


def _bare_diagonal(params: ModelParams, osc_coeff: float, qubit_coeff: float) -> np.ndarray:
    """Flat diagonal of osc_coeff*n + (qubit_coeff/2)*sigma_z (length 2N)."""
    n = np.arange(params.N, dtype=float)
    out = np.repeat(osc_coeff * n, 2)
    out += (qubit_coeff / 2.0) * np.tile([-1.0, 1.0], params.N)
    return out


def _ladder_roots(params: ModelParams) -> np.ndarray:
    """sqrt(n+1) for n = 0 .. N-2, the |n> <-> |n+1> matrix elements of a."""
    return np.sqrt(np.arange(1.0, params.N))


def build_full(params: ModelParams, t: float) -> BandedHermitian:
    """Full lab-frame Hamiltonian at time t (half-bandwidth 3)."""
    dim = 2 * params.N
    root = _ladder_roots(params)
    diags = np.zeros((4, dim))
    diags[0] = _bare_diagonal(params, params.omega0, params.Omega)
    # sigma_x coupling: |n,1> <-> |n+1,0| at offset 1, |n,0> <-> |n+1,1| at offset 3
    diags[1, 1 : dim - 2 : 2] = params.g * params.omega0 * root
    diags[3, 0 : dim - 3 : 2] = params.g * params.omega0 * root
    # classical drive on the oscillator quadrature, same spin at offset 2
    diags[2, : dim - 2] = params.f * math.cos(params.omega * t) * np.repeat(root, 2)
    return BandedHermitian(diags)


def build_rwa(params: ModelParams, t: float) -> BandedHermitian:
    """Co-rotating lab-frame Hamiltonian at time t (half-bandwidth 2).

    The drive keeps only the co-rotating component, (f/2)*(a e^{iwt} + h.c.),
    so the off-diagonal entries are complex for general t.
    """
    dim = 2 * params.N
    root = _ladder_roots(params)
    diags = np.zeros((3, dim), dtype=complex)
    diags[0] = _bare_diagonal(params, params.omega0, params.Omega)
    diags[1, 1 : dim - 2 : 2] = params.g * params.omega0 * root
    phase = np.exp(1j * params.omega * t)
    diags[2, : dim - 2] = (params.f / 2.0) * phase * np.repeat(root, 2)
    return BandedHermitian(diags)


def build_rotating_frame(params: ModelParams) -> BandedHermitian:
    """Stationary rotating-frame Hamiltonian (half-bandwidth 2, real)."""
    dim = 2 * params.N
    root = _ladder_roots(params)
    diags = np.zeros((3, dim))
    diags[0] = _bare_diagonal(params, params.delta0, params.delta_Omega)
    diags[1, 1 : dim - 2 : 2] = params.g * params.omega0 * root
    diags[2, : dim - 2] = (params.f / 2.0) * np.repeat(root, 2)
    return BandedHermitian(diags)


def build_displaced(params: ModelParams) -> tuple[BandedHermitian, DisplacedFrameConstants]:
    """Displaced rotating-frame Hamiltonian (half-bandwidth 1) plus its constants.

    Substituting a = b - f/(2*delta0) completes the square in the drive term:
    the linear part vanishes, the coupling acquires -transverse_field*sigma_x,
    and the diagonal acquires -f^2/(4*delta0).  With exactly these signs the
    operator is unitarily equivalent to build_rotating_frame, so the spectra
    match; the constants record reports the (positive-convention) magnitudes.
    """
    if params.delta0 == 0.0:
        raise ResonanceSingularityError(
            "displaced frame undefined at delta0 = 0 (displacement -f/(2*delta0) diverges)")
    b_x = params.f * params.g * params.omega0 / (2.0 * params.delta0)
    offset = params.f ** 2 / (4.0 * params.delta0)
    constants = DisplacedFrameConstants(
        transverse_field=b_x,
        energy_offset=offset,
        displacement=-params.f / (2.0 * params.delta0),
        effective_coupling=params.g * params.omega0 / params.delta0,
    )
    dim = 2 * params.N
    root = _ladder_roots(params)
    diags = np.zeros((2, dim))
    diags[0] = _bare_diagonal(params, params.delta0, params.delta_Omega) - offset
    diags[1, 1 : dim - 2 : 2] = params.g * params.omega0 * root
    # sigma_x acts within a level: |n,0> <-> |n,1> at offset 1
    diags[1, 0 : dim - 1 : 2] = -b_x
    return BandedHermitian(diags), constants
