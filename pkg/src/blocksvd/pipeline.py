"""End-to-end low-rank approximation of sparse non-negative matrices.

Two stages: a planner that permutes rows and columns so a well-conditioned
dense block lands in the top-left corner and reports how many leading
singular values the column-norm heuristic predicts are recoverable, and a
driver that zeroes the bottom-right block, block-diagonalizes the rest,
and returns the top singular values with a certified error of twice the
operator norm of the dropped block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blockdiag import (DEFAULT_MAX_ITER, DEFAULT_TOL, GapCertificate,
                        top_singular_values)
from .matcore import BlockPartition, MatrixError, as_matrix, operator_norm
from .randmat import moment_ratio

MIN_PIVOT_FACTOR = 1e-10    # sigma_k(A) >= this * ||R|| for a usable split
DENSE_LIMIT = 2000          # larger column counts are rejected


@dataclass(frozen=True)
class PartitionPlan:
    """Row/column permutations plus the feasibility diagnosis.

    ``i_star`` is the largest rank i < k whose column norm clears the
    size-based threshold; ``xi_ratio`` is the moment ratio of the leading
    columns' size-to-squared-norm sequence, flagged when it exceeds the
    homogeneity cap 1 + m / (c_max * k).
    """

    column_permutation: np.ndarray
    row_permutation: np.ndarray
    k: int
    i_star: int
    threshold: float
    xi_ratio: float
    xi_ratio_flagged: bool

    def apply(self, r) -> np.ndarray:
        r = as_matrix(r)
        return r[np.ix_(self.row_permutation, self.column_permutation)]

    def to_json(self) -> dict:
        return {"column_permutation": self.column_permutation.tolist(),
                "row_permutation": self.row_permutation.tolist(),
                "k": self.k, "i_star": self.i_star, "threshold": self.threshold,
                "xi_ratio": self.xi_ratio,
                "xi_ratio_flagged": bool(self.xi_ratio_flagged)}


def _feasibility(r: np.ndarray, k: int, alpha: float) -> tuple[int, float]:
    """(i_star, threshold) for an already-permuted matrix at split k."""
    n = r.shape[1]
    col_norms = np.linalg.norm(r, axis=0)
    factor = np.sqrt(1.0 + np.sqrt(1.0 + 1.0 / alpha))
    if k >= n:
        return k - 1, 0.0
    right = r[:, k:]
    size_next = float(r[:, k].sum())
    max_row_size = float(right.sum(axis=1).max()) if right.size else 0.0
    threshold = factor * np.sqrt(size_next * max_row_size)
    i_star = 0
    for i in range(k - 1, 0, -1):
        if col_norms[i - 1] >= threshold:
            i_star = i
            break
    return i_star, float(threshold)


def _candidate_splits(n: int) -> list[int]:
    if n <= 2:
        return [1]
    grid = np.unique(np.geomspace(1, n - 1, num=min(n - 1, 24)).round().astype(int))
    return [int(k) for k in grid if 1 <= k < n]


def plan_partition(r, k: int | None = None, alpha: float = 1.0) -> PartitionPlan:
    """Permute a non-negative matrix for block approximation.

    Columns are sorted by descending norm and rows by descending size (sum).
    With ``k`` given, reports the feasibility index at that split; otherwise
    scans a logarithmic grid of splits and keeps the one maximizing the
    feasibility index (ties broken toward the smallest split).
    """
    r = as_matrix(r)
    if np.any(r < 0):
        raise MatrixError("planner requires a non-negative matrix")
    if alpha <= 0:
        raise MatrixError("shape parameter alpha must be positive")
    m, n = r.shape
    col_perm = np.argsort(-np.linalg.norm(r, axis=0), kind="stable")
    row_perm = np.argsort(-r.sum(axis=1), kind="stable")
    pr = r[np.ix_(row_perm, col_perm)]

    if k is not None:
        if not (1 <= k < max(n, 2)):
            raise MatrixError(f"need 1 <= k < n, got k={k}, n={n}")
        best_k, (best_i, best_thr) = k, _feasibility(pr, k, alpha)
    else:
        best_k, best_i, best_thr = None, -1, 0.0
        for cand in _candidate_splits(n):
            i_star, thr = _feasibility(pr, cand, alpha)
            if i_star > best_i:
                best_k, best_i, best_thr = cand, i_star, thr

    norms_left = np.linalg.norm(pr[:, :best_k], axis=0)
    sizes_left = pr[:, :best_k].sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = np.where(norms_left > 0, sizes_left / norms_left**2, 0.0)
    if np.all(xi > 0):
        xi_ratio = moment_ratio(xi)
    else:
        xi_ratio = float("inf")
    cap = 1.0 + m / (max(float(sizes_left.max()), 1e-300) * best_k)
    return PartitionPlan(column_permutation=col_perm, row_permutation=row_perm,
                         k=best_k, i_star=best_i, threshold=best_thr,
                         xi_ratio=xi_ratio, xi_ratio_flagged=bool(xi_ratio > cap))


class PipelineError(RuntimeError):
    """Approximation run failed; carries diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass
class ApproxReport:
    """Certified top singular values after dropping the bottom-right block."""

    rank: int
    k: int
    values: np.ndarray
    error_bound: float          # 2 * ||D||
    norm_d: float
    certificate: GapCertificate
    converged: bool
    iterations: int
    warnings: list[str] = field(default_factory=list)
    oracle_values: np.ndarray | None = None
    oracle_deviations: np.ndarray | None = None

    def to_json(self) -> dict:
        out = {"rank": self.rank, "k": self.k, "values": self.values.tolist(),
               "error_bound": self.error_bound, "norm_d": self.norm_d,
               "certificate": self.certificate.to_json(),
               "converged": bool(self.converged), "iterations": self.iterations,
               "warnings": list(self.warnings)}
        if self.oracle_values is not None:
            out["oracle_values"] = self.oracle_values.tolist()
            out["oracle_deviations"] = self.oracle_deviations.tolist()
        return out


def algorithm2(r, k: int, i: int, tol: float = DEFAULT_TOL,
               max_iter: int = DEFAULT_MAX_ITER, oracle: bool = False) -> ApproxReport:
    """Top ``i`` singular values of ``r`` with a certified error bound.

    Zeroes the bottom-right block D of the (k, k) partition, diagonalizes
    the remainder by block rotations, and reports the leading values of the
    resulting pivot together with the bound 2 * ||D||. A split whose pivot
    is numerically singular is shrunk with a warning; ``oracle`` adds a
    direct SVD comparison to the report.
    """
    r = as_matrix(r)
    m, n = r.shape
    if n > DENSE_LIMIT:
        raise PipelineError(f"dense driver limited to {DENSE_LIMIT} columns, got {n}")
    norm_r = operator_norm(r)
    warnings: list[str] = []
    kk = k
    while kk > i:
        sigma_pivot = np.linalg.svd(r[:kk, :kk], compute_uv=False)[-1]
        if sigma_pivot >= MIN_PIVOT_FACTOR * norm_r:
            break
        kk -= 1
    if kk != k:
        if kk <= i or np.linalg.svd(r[:kk, :kk], compute_uv=False)[-1] < MIN_PIVOT_FACTOR * norm_r:
            raise PipelineError(
                f"no split in [{i}, {k}] gives a numerically invertible pivot",
                {"k_requested": k, "rank_requested": i})
        warnings.append(f"pivot singular at k={k}; shrunk to k={kk}")
    p = BlockPartition(r, kk)
    norm_d = operator_norm(p.d)
    p0 = BlockPartition(p.zero_d(), kk)
    values, cert, res = top_singular_values(p0, i, tol=tol, max_iter=max_iter)
    if not res.converged:
        raise PipelineError(
            f"block diagonalization did not converge in {res.iterations} sweeps",
            {"iterations": res.iterations, "k": kk,
             "final_off_norm": max(res.trace.records[-1].norm_b,
                                   res.trace.records[-1].norm_c)})
    report = ApproxReport(rank=i, k=kk, values=np.asarray(values, dtype=float),
                          error_bound=2.0 * norm_d, norm_d=norm_d,
                          certificate=cert, converged=res.converged,
                          iterations=res.iterations, warnings=warnings)
    if oracle:
        true = np.linalg.svd(r, compute_uv=False)[:i]
        report.oracle_values = true
        report.oracle_deviations = np.abs(true - report.values)
    return report
