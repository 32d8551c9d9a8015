"""Block-Givens rotations in closed form and the block-rotation decomposition.

A right rotation built from the partition (A, B) annihilates the top-right
block of R when applied on the right; the left counterpart, built from
(A, C), annihilates the bottom-left block when applied on the left. All trig
blocks are assembled from the SVD of A^{-1}B (resp. C A^{-1}) so the
constructed matrix is orthogonal to machine precision regardless of the
conditioning of A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .matcore import BlockPartition, MatrixError, as_matrix, operator_norm

SINGULARITY_TOL = 1e-13  # relative floor on sigma_min(A)
RANK_TOL = 1e-12         # relative numerical-rank threshold


class SingularBlockError(MatrixError):
    """The pivot block A is numerically singular."""

    def __init__(self, sigma_min: float):
        super().__init__(f"pivot block is numerically singular (sigma_min={sigma_min:.3e})")
        self.sigma_min = sigma_min


@dataclass(frozen=True)
class BlockTrig:
    """Trig blocks of a right rotation for the pair (A, B).

    cos_ab is k x k, cos_ba is (n-k) x (n-k), sin_ab is k x (n-k). b0 is the
    PSD radial part and q_b the angular part of the polar decomposition
    b0 @ q_b = A^{-1}B (q_b has orthonormal rows or columns, whichever the
    shape admits).
    """

    cos_ab: np.ndarray
    cos_ba: np.ndarray
    sin_ab: np.ndarray
    b0: np.ndarray
    q_b: np.ndarray
    ratio_sigma: np.ndarray  # singular values of A^{-1}B


@dataclass(frozen=True)
class BlockGivens:
    """An orthogonal rotation with a designated split.

    ``side`` is "right" (acts on columns, annihilates B) or "left" (acts on
    rows, annihilates C). ``ratio_sigma`` holds the singular values of
    A^{-1}B or C A^{-1}. ``degenerate`` marks an identity rotation (the
    off-block was already zero).
    """

    matrix: np.ndarray
    side: str
    k: int
    ratio_sigma: np.ndarray
    off_rank: int
    degenerate: bool


@dataclass(frozen=True)
class BlockRotationFactors:
    """CS-type factorization of a partitioned orthogonal matrix.

    Q = diag(q1, q2) @ middle @ diag(q1p, q2p) where the middle factor is
    identity except for paired diagonal cosine/sine blocks. ``c`` and ``s``
    hold the non-trivial diagonal pairs (s > 0); r and l count the trivial
    directions on each side of the split.
    """

    q1: np.ndarray
    q2: np.ndarray
    q1p: np.ndarray
    q2p: np.ndarray
    c: np.ndarray
    s: np.ndarray
    r: int
    l: int
    middle: np.ndarray

    def assemble(self) -> np.ndarray:
        k = self.q1.shape[0]
        n = k + self.q2.shape[0]
        left = np.zeros((n, n))
        left[:k, :k] = self.q1
        left[k:, k:] = self.q2
        right = np.zeros((n, n))
        right[:k, :k] = self.q1p
        right[k:, k:] = self.q2p
        return left @ self.middle @ right


def _solve_ratio(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """A^{-1} b with a singularity check on A."""
    sa = np.linalg.svd(a, compute_uv=False)
    if sa[-1] <= SINGULARITY_TOL * max(sa[0], 1.0):
        raise SingularBlockError(float(sa[-1]))
    return np.linalg.solve(a, b)


def block_trig(a, b) -> BlockTrig:
    """Closed-form trig blocks for the pair (A, B), A invertible k x k."""
    a = as_matrix(a)
    b = as_matrix(b)
    k = a.shape[0]
    if a.shape[1] != k:
        raise MatrixError(f"A must be square, got {a.shape}")
    if b.shape[0] != k:
        raise MatrixError(f"B must have {k} rows, got {b.shape}")
    w = _solve_ratio(a, b)
    nk = b.shape[1]
    u, sig, vt = np.linalg.svd(w, full_matrices=True)
    r = min(k, nk)
    # Diagonal trig values: exact elementwise formulas, no cancellation.
    cd = 1.0 / np.sqrt(1.0 + sig**2)
    sd = sig * cd
    ck = np.ones(k)
    ck[:r] = cd
    cnk = np.ones(nk)
    cnk[:r] = cd
    smat = np.zeros((k, nk))
    smat[np.arange(r), np.arange(r)] = sd
    cos_ab = (u * ck) @ u.T
    cos_ba = (vt.T * cnk) @ vt
    sin_ab = u @ smat @ vt
    b0d = np.zeros(k)
    b0d[:r] = sig
    b0 = (u * b0d) @ u.T
    pmat = np.zeros((k, nk))
    pmat[np.arange(r), np.arange(r)] = 1.0
    q_b = u @ pmat @ vt
    return BlockTrig(cos_ab=cos_ab, cos_ba=cos_ba, sin_ab=sin_ab, b0=b0, q_b=q_b,
                     ratio_sigma=sig)


def _numrank(sigma: np.ndarray) -> int:
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > RANK_TOL * sigma[0]))


def build_right_rotation(p: BlockPartition) -> BlockGivens:
    """n x n rotation G_R with (R @ G_R)[:k, k:] = 0."""
    n, k = p.n, p.k
    if operator_norm(p.b) == 0.0:
        return BlockGivens(matrix=np.eye(n), side="right", k=k,
                           ratio_sigma=np.zeros(min(k, n - k)), off_rank=0,
                           degenerate=True)
    t = block_trig(p.a, p.b)
    g = np.empty((n, n))
    g[:k, :k] = t.cos_ab
    g[:k, k:] = -t.sin_ab
    g[k:, :k] = t.sin_ab.T
    g[k:, k:] = t.cos_ba
    return BlockGivens(matrix=g, side="right", k=k, ratio_sigma=t.ratio_sigma,
                       off_rank=_numrank(np.linalg.svd(p.b, compute_uv=False)),
                       degenerate=False)


def build_left_rotation(p: BlockPartition) -> BlockGivens:
    """m x m rotation G_L with (G_L @ R)[k:, :k] = 0."""
    m, k = p.m, p.k
    if operator_norm(p.c) == 0.0:
        return BlockGivens(matrix=np.eye(m), side="left", k=k,
                           ratio_sigma=np.zeros(min(k, m - k)), off_rank=0,
                           degenerate=True)
    # (C A^{-1})^T = A^{-T} C^T, so the left rotation's blocks come from the
    # transposed pair (A^T, C^T).
    t = block_trig(p.a.T, p.c.T)
    g = np.empty((m, m))
    g[:k, :k] = t.cos_ab
    g[:k, k:] = t.sin_ab
    g[k:, :k] = -t.sin_ab.T
    g[k:, k:] = t.cos_ba
    return BlockGivens(matrix=g, side="left", k=k, ratio_sigma=t.ratio_sigma,
                       off_rank=_numrank(np.linalg.svd(p.c, compute_uv=False)),
                       degenerate=False)


def householder_block(a: float, v) -> np.ndarray:
    """Orthogonal matrix mapping (a, v) to (sqrt(a^2 + ||v||^2), 0, ..., 0).

    The k = 1 special case of a right rotation pair.
    """
    if a == 0:
        raise MatrixError("householder_block requires a != 0")
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.ndim != 1:
        raise MatrixError("v must be a vector")
    w = (v / a).reshape(1, -1)
    nv = np.linalg.norm(w)
    c = 1.0 / np.sqrt(1.0 + nv**2)
    p = w.shape[1]
    h = np.empty((p + 1, p + 1))
    h[0, 0] = c
    h[0, 1:] = c * w
    h[1:, 0] = -c * w
    # (I + w w^T)^{-1/2} = I - (1 - c) w w^T / ||w||^2  (rank-one update)
    if nv > 0:
        h[1:, 1:] = np.eye(p) - ((1.0 - c) / nv**2) * (w.T @ w)
    else:
        h[1:, 1:] = np.eye(p)
    if a < 0:
        h[0, :] = -h[0, :]
    return h


def rotation_weight(g: BlockGivens) -> float:
    """Weight omega of the rotation's block structure; 1.0 when degenerate.

    Closed form from the singular values of A^{-1}B (right) or C A^{-1}
    (left): max of the smallest non-trivial cosine and the largest sine.
    """
    if g.degenerate:
        return 1.0
    sig = g.ratio_sigma
    r = g.off_rank
    if r == 0:
        return 1.0
    s_r = sig[r - 1]
    s_1 = sig[0]
    return float(max(1.0 / np.sqrt(1.0 + s_r**2), s_1 / np.sqrt(1.0 + s_1**2)))


def block_rotation_decompose(q, k: int, orth_tol: float = 1e-10,
                             trig_tol: float = 1e-12) -> BlockRotationFactors:
    """CS-type decomposition of a square orthogonal matrix at split k.

    Returns block-diagonal orthogonal side factors and the diagonal
    cosine/sine pairs of the middle factor. Sign convention: sines are
    non-negative, cosines carry the sign.
    """
    q = as_matrix(q)
    n = q.shape[0]
    if q.shape[1] != n:
        raise MatrixError("input must be square")
    if not (1 <= k < n):
        raise MatrixError(f"split k={k} out of range for n={n}")
    dev = operator_norm(q.T @ q - np.eye(n))
    if dev > orth_tol * n:
        raise MatrixError(f"input is not orthogonal within tolerance (deviation {dev:.3e})")
    (u1, u2), theta, (v1h, v2h) = scipy.linalg.cossin(q, p=k, q=k, separate=True)
    # theta holds min(k, n-k) angles in [0, pi/2]; angles ~0 are trivial
    # identity directions. The middle factor is recovered by sandwiching,
    # which respects whatever block layout LAPACK chose.
    left = np.zeros((n, n))
    left[:k, :k] = u1
    left[k:, k:] = u2
    right = np.zeros((n, n))
    right[:k, :k] = v1h
    right[k:, k:] = v2h
    middle = left.T @ q @ right.T
    cos_all = np.cos(theta)
    sin_all = np.sin(theta)
    nontrivial = sin_all > trig_tol
    c = cos_all[nontrivial]
    s = sin_all[nontrivial]
    r = k - int(np.count_nonzero(nontrivial))
    l = (n - k) - int(np.count_nonzero(nontrivial))
    return BlockRotationFactors(q1=u1, q2=u2, q1p=v1h, q2p=v2h, c=c, s=s,
                                r=r, l=l, middle=middle)
