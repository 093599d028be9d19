"""Self-adjoint and unitary eigendecompositions sized for 2N ~ 1400 states.

Banded self-adjoint input goes through the LAPACK banded path (real storage
when the matrix is real, which all stationary Hamiltonians here are); dense
input falls back to the dense divide-and-conquer driver.  Unitary matrices
are diagonalized through a complex Schur form, which keeps eigenvectors of
near-degenerate quasienergies exactly orthonormal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg as sla

from .errors import NumericalAccuracyError
from .operators import BandedHermitian

if TYPE_CHECKING:
    from .evolution import FloquetSolution

DEFAULT_MAX_DIM = 8000


@dataclass(frozen=True)
class EigenDecomposition:
    """Sorted eigenpairs: values ascending, orthonormal columns in vectors.

    residual_norm is the measured max_j ||M v_j - w_j v_j||_2, not an estimate.
    """

    values: np.ndarray
    vectors: np.ndarray
    residual_norm: float

    @property
    def dim(self) -> int:
        return self.values.size


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude component is real positive.

    Ties break on the lowest index (argmax), which keeps the output
    deterministic for identical input.
    """
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    if np.iscomplexobj(vectors):
        scale = np.abs(lead)
        phases = np.where(scale > 0, lead / np.where(scale > 0, scale, 1.0), 1.0)
        return vectors * np.conj(phases)[None, :]
    signs = np.where(lead < 0, -1.0, 1.0)
    return vectors * signs[None, :]


def eigh(matrix, max_dim: int = DEFAULT_MAX_DIM) -> EigenDecomposition:
    """Full spectrum of a self-adjoint matrix (banded storage or dense array)."""
    if isinstance(matrix, BandedHermitian):
        if matrix.dim > max_dim:
            raise ValueError(f"dimension {matrix.dim} exceeds configured maximum {max_dim}")
        ab = matrix.to_scipy_band()
        if matrix.is_real():
            ab = np.ascontiguousarray(ab.real)
        values, vectors = sla.eig_banded(ab, lower=False)
        vectors = _fix_phases(vectors)
        resid = matrix.matvec(vectors) - vectors * values[None, :]
        residual = float(np.max(np.linalg.norm(resid, axis=0)))
        return EigenDecomposition(values, vectors, residual)

    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > max_dim:
        raise ValueError(f"dimension {m.shape[0]} exceeds configured maximum {max_dim}")
    if not np.all(np.isfinite(m.real)) or (np.iscomplexobj(m) and not np.all(np.isfinite(m.imag))):
        raise ValueError("matrix contains non-finite entries")
    scale = max(float(np.max(np.abs(m))), 1.0)
    if float(np.max(np.abs(m - m.conj().T))) > 1e-10 * scale:
        raise ValueError("matrix is not self-adjoint")
    m = 0.5 * (m + m.conj().T)
    if np.iscomplexobj(m) and np.all(m.imag == 0.0):
        m = m.real
    values, vectors = np.linalg.eigh(m)
    vectors = _fix_phases(vectors)
    resid = m @ vectors - vectors * values[None, :]
    residual = float(np.max(np.linalg.norm(resid, axis=0)))
    return EigenDecomposition(values, vectors, residual)


def fold_quasienergy(energy, period: float):
    """Map an energy onto the quasienergy interval [0, 2*pi/period)."""
    bound = 2.0 * np.pi / period
    folded = np.mod(energy, bound)
    # np.mod can round up to the bound itself for tiny negative inputs
    return np.where(folded >= bound, folded - bound, folded) if np.ndim(folded) else (
        folded - bound if folded >= bound else folded)


def eig_unitary(u: np.ndarray, period: float, unitarity_tol: float = 1e-6) -> "FloquetSolution":
    """Eigendecomposition of a unitary one-period propagator.

    Eigenvalues mu_j on the unit circle map to quasienergies
    eps_j = -arg(mu_j)/T folded into [0, 2*pi/T).  Modes come out orthonormal
    (Schur vectors) and sorted by quasienergy; the caller may re-sort.
    """
    from .evolution import FloquetSolution

    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u.real)) or not np.all(np.isfinite(u.imag)):
        raise ValueError("matrix contains non-finite entries")
    if period <= 0:
        raise ValueError("period must be positive")
    gram = u.conj().T @ u
    gram[np.diag_indices_from(gram)] -= 1.0
    defect = float(np.max(np.sum(np.abs(gram), axis=1)))
    if defect > unitarity_tol:
        raise NumericalAccuracyError(
            f"propagator unitarity defect {defect:.3e} exceeds tolerance {unitarity_tol:.3e}; "
            "reduce the time step")
    t_schur, z = sla.schur(u, output="complex")
    mu = np.diagonal(t_schur)
    quasi = fold_quasienergy(-np.angle(mu) / period, period)
    order = np.argsort(quasi, kind="stable")
    quasi = np.ascontiguousarray(quasi[order])
    modes = _fix_phases(np.ascontiguousarray(z[:, order]))
    return FloquetSolution(
        quasienergies=quasi,
        modes=modes,
        unitarity_defect=defect,
        period=period,
        ordering_energy=None,
    )
