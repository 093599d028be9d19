"""Exception types shared across the package."""


class DrivenJCError(Exception):
    """Base class for all package-specific errors."""


class TruncationError(DrivenJCError, ValueError):
    """Fock-space truncation is invalid or too small for the requested state."""


class BandedContractError(DrivenJCError, ValueError):
    """A matrix violates the banded self-adjoint storage contract."""


class ResonanceSingularityError(DrivenJCError, ValueError):
    """Displaced-frame quantities diverge at zero oscillator-drive detuning."""


class NumericalAccuracyError(DrivenJCError, RuntimeError):
    """A computed quantity failed its accuracy tolerance (e.g. unitarity defect)."""


class ConfigError(DrivenJCError, ValueError):
    """Invalid experiment configuration."""
