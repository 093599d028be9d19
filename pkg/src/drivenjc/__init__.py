"""Driven Jaynes-Cummings model: spectra, Floquet analysis, semiclassical
branches, and Husimi phase-space rendering, at desk scale (2N ~ 1400 states).
"""

from .errors import (
    BandedContractError,
    ConfigError,
    DrivenJCError,
    NumericalAccuracyError,
    ResonanceSingularityError,
    TruncationError,
)
from .hamiltonians import (
    MAIN_DRIVE_AMPLITUDE,
    DisplacedFrameConstants,
    ModelParams,
    build_displaced,
    build_full,
    build_rotating_frame,
    build_rwa,
)
from .operators import BandedHermitian, build_annihilation, build_qubit_operator, embed
from .eigensolve import EigenDecomposition, eig_unitary, eigh, fold_quasienergy
from .evolution import (
    FloquetSolution,
    PeriodPropagator,
    StateVector,
    Trajectory,
    floquet_modes,
    one_period_propagator,
    propagate,
    rotating_frame_map,
    trotter_step,
)

__version__ = "0.1.0"

__all__ = [
    "BandedContractError",
    "BandedHermitian",
    "ConfigError",
    "DisplacedFrameConstants",
    "DrivenJCError",
    "EigenDecomposition",
    "FloquetSolution",
    "MAIN_DRIVE_AMPLITUDE",
    "ModelParams",
    "NumericalAccuracyError",
    "PeriodPropagator",
    "ResonanceSingularityError",
    "StateVector",
    "Trajectory",
    "TruncationError",
    "build_annihilation",
    "build_displaced",
    "build_full",
    "build_qubit_operator",
    "build_rotating_frame",
    "build_rwa",
    "eig_unitary",
    "eigh",
    "embed",
    "floquet_modes",
    "fold_quasienergy",
    "one_period_propagator",
    "propagate",
    "rotating_frame_map",
    "trotter_step",
    "__version__",
]
