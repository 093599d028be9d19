"""Truncated oscillator and qubit operators on the joint Fock x qubit space.

Basis convention used everywhere in this package: the oscillator is truncated
to levels n = 0 .. N-1, the qubit index is s in {0, 1}, and the joint basis
state |n, s> lives at flat index k = 2*n + s (levels interleaved).  s = 1 is
the excited qubit state, sigma_z |n, 1> = +|n, 1>.  With this ordering every
Hamiltonian built here is banded with half-bandwidth <= 3, which is what makes
the banded eigensolvers and O(N) matrix-vector products pay off at 2N ~ 1400.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BandedContractError, TruncationError

QUBIT_DIM = 2


def validate_truncation(n_levels: int) -> int:
    """Check an oscillator truncation (must be an integer >= 2) and return it."""
    if int(n_levels) != n_levels or n_levels < 2:
        raise TruncationError(f"need an integer truncation N >= 2, got {n_levels!r}")
    return int(n_levels)


def joint_index(n, s):
    """Flat index k = 2n + s of |n, s>.  Works elementwise on arrays."""
    return 2 * n + s


def split_index(k):
    """Inverse of joint_index: k -> (n, s)."""
    return k // 2, k % 2


def build_annihilation(n_levels: int) -> np.ndarray:
    """Oscillator annihilation operator a on N levels: a[n-1, n] = sqrt(n).

    The adjoint is the creation operator; a^dag a = diag(0, 1, ..., N-1).
    """
    n_levels = validate_truncation(n_levels)
    return np.diag(np.sqrt(np.arange(1.0, n_levels)), k=1)


def build_qubit_operator(which: str) -> np.ndarray:
    """One 2x2 qubit operator in the (s=0, s=1) basis.

    Recognized names: "sx", "sz", "sp" (raises s=0 -> s=1), "sm".
    sigma_z = diag(-1, +1), so s=1 is spin up.
    """
    ops = {
        "sx": np.array([[0.0, 1.0], [1.0, 0.0]]),
        "sz": np.array([[-1.0, 0.0], [0.0, 1.0]]),
        "sp": np.array([[0.0, 0.0], [1.0, 0.0]]),
        "sm": np.array([[0.0, 1.0], [0.0, 0.0]]),
    }
    try:
        return ops[which].copy()
    except KeyError:
        raise ValueError(f"unknown qubit operator {which!r}; expected one of {sorted(ops)}") from None


@dataclass(frozen=True)
class BandedHermitian:
    """Self-adjoint matrix in upper banded storage.

    diagonals[d, i] = M[i, i + d] for offsets d = 0 .. b and i < dim - d;
    the lower triangle is implied by self-adjointness.  Entries of
    diagonals[d] at i >= dim - d are ignored (kept zero).  The main diagonal
    must be real.
    """

    diagonals: np.ndarray

    def __post_init__(self):
        diags = np.asarray(self.diagonals)
        if diags.ndim != 2 or diags.shape[0] < 1 or diags.shape[1] < 1:
            raise BandedContractError(f"diagonals must be a (b+1, dim) array, got shape {diags.shape}")
        if not np.all(np.isfinite(diags)):
            raise BandedContractError("banded storage contains non-finite entries")
        if np.iscomplexobj(diags) and np.any(diags[0].imag != 0.0):
            raise BandedContractError("main diagonal of a self-adjoint matrix must be real")
        object.__setattr__(self, "diagonals", diags)

    @property
    def dim(self) -> int:
        return self.diagonals.shape[1]

    @property
    def half_bandwidth(self) -> int:
        return self.diagonals.shape[0] - 1

    def is_real(self) -> bool:
        return not np.iscomplexobj(self.diagonals) or bool(np.all(self.diagonals.imag == 0.0))

    @classmethod
    def from_dense(cls, matrix: np.ndarray, half_bandwidth: int | None = None,
                   atol: float = 0.0) -> "BandedHermitian":
        """Capture a dense self-adjoint matrix; errors if it violates the contract.

        With half_bandwidth=None the minimal bandwidth is inferred.  atol
        bounds both the allowed Hermiticity defect and entries outside the
        band (atol=0 demands exactness).
        """
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise BandedContractError(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > atol:
            raise BandedContractError("matrix is not self-adjoint within tolerance")
        dim = m.shape[0]
        if half_bandwidth is None:
            half_bandwidth = 0
            for d in range(dim - 1, 0, -1):
                if np.max(np.abs(np.diagonal(m, d))) > atol:
                    half_bandwidth = d
                    break
        else:
            for d in range(half_bandwidth + 1, dim):
                if np.max(np.abs(np.diagonal(m, d))) > atol:
                    raise BandedContractError(
                        f"entries found at offset {d} beyond half-bandwidth {half_bandwidth}")
        dtype = complex if np.iscomplexobj(m) else float
        diags = np.zeros((half_bandwidth + 1, dim), dtype=dtype)
        for d in range(half_bandwidth + 1):
            diags[d, : dim - d] = np.diagonal(m, d)
        if np.iscomplexobj(diags):
            diags[0] = diags[0].real
        return cls(diags)

    def to_dense(self) -> np.ndarray:
        dtype = complex if np.iscomplexobj(self.diagonals) else float
        m = np.zeros((self.dim, self.dim), dtype=dtype)
        for d in range(self.half_bandwidth + 1):
            vals = self.diagonals[d, : self.dim - d]
            idx = np.arange(self.dim - d)
            m[idx, idx + d] = vals
            if d:
                m[idx + d, idx] = np.conj(vals)
        return m

    def to_scipy_band(self) -> np.ndarray:
        """Upper banded form expected by scipy.linalg.eig_banded (lower=False)."""
        b, dim = self.half_bandwidth, self.dim
        ab = np.zeros_like(self.diagonals)
        for d in range(b + 1):
            ab[b - d, d:] = self.diagonals[d, : dim - d]
        return ab

    def matvec(self, psi: np.ndarray) -> np.ndarray:
        """M @ psi for a vector (dim,) or a batch of columns (dim, K)."""
        psi = np.asarray(psi)
        vec = psi.ndim == 1
        x = psi[:, None] if vec else psi
        dtype = np.result_type(self.diagonals.dtype, x.dtype)
        out = self.diagonals[0][: self.dim, None] * x
        out = out.astype(dtype, copy=False)
        for d in range(1, self.half_bandwidth + 1):
            vals = self.diagonals[d, : self.dim - d, None]
            out[: self.dim - d] += vals * x[d:]
            out[d:] += np.conj(vals) * x[: self.dim - d]
        return out[:, 0] if vec else out

    def expectation(self, psi: np.ndarray):
        """<psi|M|psi> (real); batched over columns if psi is (dim, K)."""
        y = self.matvec(psi)
        return np.real(np.sum(np.conj(psi) * y, axis=0))

    def add_to_diagonal(self, shift: float) -> "BandedHermitian":
        diags = self.diagonals.copy()
        diags[0] += shift
        return BandedHermitian(diags)


def embed(osc_op: np.ndarray, qubit_op: np.ndarray, banded: bool | None = None):
    """Tensor-embed osc_op (N x N) and qubit_op (2 x 2) into the joint space.

    Entry ((n, s), (n', s')) = osc_op[n, n'] * qubit_op[s, s'] at flat indices
    2n + s.  Self-adjoint results are returned as BandedHermitian with the
    minimal half-bandwidth; banded=True forces that (and errors on a
    non-self-adjoint product), banded=False always returns the dense array.
    """
    osc_op = np.asarray(osc_op)
    qubit_op = np.asarray(qubit_op)
    if osc_op.ndim != 2 or osc_op.shape[0] != osc_op.shape[1]:
        raise ValueError(f"oscillator operator must be square, got {osc_op.shape}")
    if qubit_op.shape != (QUBIT_DIM, QUBIT_DIM):
        raise ValueError(f"qubit operator must be 2x2, got {qubit_op.shape}")
    joint = np.kron(osc_op, qubit_op)
    if banded is False:
        return joint
    hermitian = np.array_equal(joint, joint.conj().T)
    if banded is True and not hermitian:
        raise BandedContractError("banded storage requested for a non-self-adjoint embedding")
    if hermitian:
        return BandedHermitian.from_dense(joint)
    return joint
