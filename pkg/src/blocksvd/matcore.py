"""Dense numerical substrate: SVD, norms, PSD matrix functions, slicing.

All public slicing is 1-based inclusive. SVD factors are stored in the
"diagonalizing" orientation ``q @ m @ qp == diag(sigma)`` so that slice
formulas downstream can index the factors directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

# Default tolerances, per dimension where noted.
ORTH_TOL = 1e-12     # orthogonality: ||Q^T Q - I|| <= ORTH_TOL * dim
RECON_TOL = 1e-10    # reconstruction: ||Q M Q' - diag(sigma)|| <= RECON_TOL * dim * ||M||
SYM_TOL = 1e-10      # symmetry rejection threshold for psd_apply


class MatrixError(ValueError):
    """Raised on malformed matrix inputs (shape, non-finite entries, ranges)."""


def as_matrix(m) -> np.ndarray:
    """Validate and return a 2-D float array with finite entries."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise MatrixError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise MatrixError(f"matrix must be at least 1x1, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MatrixError("matrix has non-finite entries")
    return a


@dataclass(frozen=True)
class BlockPartition:
    """An m x n matrix (m >= n) with a k x k leading block A.

    Blocks: A = base[:k, :k], B = base[:k, k:], C = base[k:, :k],
    D = base[k:, k:].
    """

    base: np.ndarray
    k: int

    def __post_init__(self):
        base = as_matrix(self.base)
        object.__setattr__(self, "base", base)
        m, n = base.shape
        if m < n:
            raise MatrixError(f"partition requires m >= n, got {m}x{n}")
        if not (1 <= self.k < n):
            raise MatrixError(f"split k={self.k} out of range for {m}x{n}")

    @property
    def m(self) -> int:
        return self.base.shape[0]

    @property
    def n(self) -> int:
        return self.base.shape[1]

    @property
    def a(self) -> np.ndarray:
        return self.base[: self.k, : self.k]

    @property
    def b(self) -> np.ndarray:
        return self.base[: self.k, self.k :]

    @property
    def c(self) -> np.ndarray:
        return self.base[self.k :, : self.k]

    @property
    def d(self) -> np.ndarray:
        return self.base[self.k :, self.k :]

    def zero_d(self) -> np.ndarray:
        """The matrix with its bottom-right block zeroed."""
        r0 = self.base.copy()
        r0[self.k :, self.k :] = 0.0
        return r0

    def left_band(self) -> np.ndarray:
        """First k columns."""
        return self.base[:, : self.k]

    def right_band(self) -> np.ndarray:
        """Last n - k columns."""
        return self.base[:, self.k :]


class SVDConvergenceError(RuntimeError):
    """SVD iteration failed; carries the residual achieved."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class SVDFactors:
    """Orthogonal factors with q @ m @ qp = diag(sigma), sigma descending.

    ``q`` is the transpose of the conventional left factor.
    """

    q: np.ndarray
    qp: np.ndarray
    sigma: np.ndarray

    def reconstruction_residual(self, m: np.ndarray) -> float:
        s = np.zeros(m.shape)
        np.fill_diagonal(s, self.sigma)
        return float(np.linalg.norm(self.q @ m @ self.qp - s, 2))

    def orthogonality_residual(self) -> float:
        rq = np.linalg.norm(self.q.T @ self.q - np.eye(self.q.shape[0]), 2)
        rqp = np.linalg.norm(self.qp.T @ self.qp - np.eye(self.qp.shape[0]), 2)
        return float(max(rq, rqp))


def svd(m) -> SVDFactors:
    """Full SVD in the orientation q @ m @ qp = diag(sigma)."""
    a = as_matrix(m)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise SVDConvergenceError(f"SVD did not converge: {exc}", float("inf"))
    return SVDFactors(q=u.T, qp=vt.T, sigma=s)


def operator_norm(m) -> float:
    """Largest singular value; 0.0 for empty slices."""
    a = np.asarray(m, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def schur_test_bound(m) -> float:
    """sqrt(||M||_inf * ||M||_1); always >= the operator norm."""
    a = as_matrix(m)
    row = np.abs(a).sum(axis=1).max()
    col = np.abs(a).sum(axis=0).max()
    return float(np.sqrt(row * col))


def psd_apply(f: Callable[[np.ndarray], np.ndarray], s, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Apply a scalar function to a symmetric PSD matrix spectrally.

    Returns V f(L) V^T from the eigendecomposition S = V L V^T. Small
    negative eigenvalues from round-off are clipped to zero before f.
    """
    a = as_matrix(s)
    if a.shape[0] != a.shape[1]:
        raise MatrixError(f"psd_apply needs a square matrix, got {a.shape}")
    asym = np.abs(a - a.T).max()
    scale = max(np.abs(a).max(), 1.0)
    if asym > sym_tol * scale:
        raise MatrixError(f"matrix is not symmetric within tolerance (deviation {asym:.3e})")
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    w = np.clip(w, 0.0, None)
    return (v * f(w)) @ v.T


def submatrix(m, rows: tuple[int, int], cols: tuple[int, int]) -> np.ndarray:
    """1-based inclusive slice m[r1:r2, c1:c2]; empty if r1 > r2 or c1 > c2."""
    a = as_matrix(m)
    r1, r2 = rows
    c1, c2 = cols
    nr, nc = a.shape
    if r1 < 1 or c1 < 1 or r2 > nr or c2 > nc:
        raise MatrixError(
            f"slice [{r1}:{r2},{c1}:{c2}] out of range for {nr}x{nc} matrix"
        )
    if r1 > r2 or c1 > c2:
        return a[0:0, 0:0]
    return a[r1 - 1 : r2, c1 - 1 : c2]
