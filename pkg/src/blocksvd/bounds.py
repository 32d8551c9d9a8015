"""Deterministic singular-value perturbation bounds for zeroing the
bottom-right block of a partitioned matrix.

Conventions. R is the partitioned matrix, R0 the same matrix with its
bottom-right block D zeroed. Truncation errors ||R - R_i|| are evaluated as
sigma_{i+1}(R) rather than by forming the rank-i approximant.

Indexing note. The slice bound for the gap |sigma_i(R) - sigma_i(R0)| is
computed with factor slices starting at row/column i (inclusive). The
derivation bounds the rank-(i-1) truncation errors, whose values are the
i-th singular values; the plane-rotation worked example (mu = c bounding the
sigma_2 gap) pins this pairing down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import BlockPartition, MatrixError, as_matrix, operator_norm, submatrix, svd

RANK_TOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    formula: str
    i: int
    k: int
    lower: float
    upper: float
    oracle: float | None = None

    @property
    def slack(self) -> float | None:
        if self.oracle is None:
            return None
        return float(min(self.oracle - self.lower, self.upper - self.oracle))

    @property
    def contains_oracle(self) -> bool:
        if self.oracle is None:
            return True
        return self.lower - 1e-10 <= self.oracle <= self.upper + 1e-10

    def to_json(self) -> dict:
        return {"formula": self.formula, "i": self.i, "k": self.k,
                "lower": self.lower, "upper": self.upper,
                "oracle": self.oracle, "slack": self.slack}


def _sigma(m: np.ndarray, i: int) -> float:
    """sigma_i (1-based); zero past the spectrum."""
    s = np.linalg.svd(m, compute_uv=False)
    return float(s[i - 1]) if i <= s.size else 0.0


def weyl_gap_bounds(p: BlockPartition, i: int) -> list[BoundReport]:
    """Two-sided Weyl estimates for rank-i truncation errors of R vs R0.

    First report: |sigma_{i+1}(R) - sigma_{i+1}(R0)| <= ||D||.
    Second: ||R - R0_i|| within 2||D|| of sigma_{i+1}(R), oracle-evaluated.
    """
    r = p.base
    r0 = p.zero_d()
    nd = operator_norm(p.d)
    tr = _sigma(r, i + 1)     # ||R - R_i||
    tr0 = _sigma(r0, i + 1)   # ||R0 - R0_i||
    rep4 = BoundReport("Weyl-gap", i, p.k, lower=tr0 - nd, upper=tr0 + nd, oracle=tr)
    # Distance from R to the rank-i approximant of R0.
    f = svd(r0)
    s_tr = np.zeros_like(r0)
    idx = np.arange(min(i, f.sigma.size))
    s_tr[idx, idx] = f.sigma[: i]
    r0i = f.q.T @ s_tr @ f.qp.T
    cross = operator_norm(r - r0i)
    rep5 = BoundReport("Weyl-cross", i, p.k, lower=cross - 2 * nd,
                       upper=cross + 2 * nd, oracle=tr)
    return [rep4, rep5]


def small_rank_bounds(p: BlockPartition, i: int) -> list[BoundReport]:
    """Bounds exploiting rank(R0) <= 2k."""
    r = p.base
    r0 = p.zero_d()
    nb, nc, nd = operator_norm(p.b), operator_norm(p.c), operator_norm(p.d)
    off = min(nb, nc)
    reports = [
        BoundReport("small-rank-R0", p.k, p.k, lower=0.0, upper=off,
                    oracle=_sigma(r0, p.k + 1)),
        BoundReport("small-rank-R", p.k, p.k, lower=0.0, upper=off + nd,
                    oracle=_sigma(r, p.k + 1)),
    ]
    if i >= 2 * p.k:
        reports.append(BoundReport("rank-cap", i, p.k, lower=0.0, upper=nd,
                                   oracle=_sigma(r, i + 1)))
    return reports


@dataclass(frozen=True)
class MuQuantities:
    i: int
    k: int
    mu_r: float
    mu_r0: float
    branch_r: str    # which of the two slice norms achieved the min for R
    branch_r0: str

    @property
    def mu_bar(self) -> float:
        return max(self.mu_r, self.mu_r0)


def _mu_slice(factors, d: np.ndarray, i: int, k: int, m: int, n: int) -> tuple[float, str]:
    """min of the two slice norms for the gap at index i (slices from i on)."""
    col_slice = submatrix(factors.qp, (k + 1, n), (i, n))
    row_slice = submatrix(factors.q, (i, m), (k + 1, m))
    by_cols = operator_norm(d @ col_slice)
    by_rows = operator_norm(row_slice @ d)
    if by_cols <= by_rows:
        return by_cols, "columns"
    return by_rows, "rows"


def mu_bounds(p: BlockPartition, i: int) -> tuple[MuQuantities, BoundReport]:
    """Slice-norm bound on |sigma_i(R) - sigma_i(R0)|.

    mu for each of R and R0 is the smaller of the two slice norms of the
    zeroed block against that matrix's own SVD factors; the bound is the max
    of the two mu values. For i > 2k the report doubles as an absolute bound
    since sigma_i(R0) = 0.
    """
    if not (1 <= i <= p.n):
        raise MatrixError(f"need 1 <= i <= n, got i={i}")
    m, n, k = p.m, p.n, p.k
    d = p.d
    r0 = p.zero_d()
    mu_r, br = _mu_slice(svd(p.base), d, i, k, m, n)
    mu_r0, br0 = _mu_slice(svd(r0), d, i, k, m, n)
    mq = MuQuantities(i=i, k=k, mu_r=mu_r, mu_r0=mu_r0, branch_r=br, branch_r0=br0)
    gap = abs(_sigma(p.base, i) - _sigma(r0, i))
    report = BoundReport("slice-mu", i, k, lower=0.0, upper=mq.mu_bar, oracle=gap)
    return mq, report


def example1_sigma2(c: float, s: float) -> float:
    """Closed-form smallest singular value of a plane rotation with its
    bottom-right cosine zeroed. Reference for tests."""
    h = (1.0 + s * s) / 2.0
    return float(np.sqrt(h - np.sqrt(h * h - s**4)))


def kernel_restricted_norm(d, kmat) -> float:
    """||D restricted to ker K||: norm of D times an orthonormal kernel basis
    of K; zero when K has full column rank."""
    d = as_matrix(d)
    kmat = as_matrix(kmat)
    if d.shape[1] != kmat.shape[1]:
        raise MatrixError(f"columns of D ({d.shape[1]}) must match columns of K ({kmat.shape[1]})")
    u, s, vt = np.linalg.svd(kmat)
    cutoff = RANK_TOL * (s[0] if s.size and s[0] > 0 else 1.0)
    rank = int(np.count_nonzero(s > cutoff))
    if rank >= kmat.shape[1]:
        return 0.0
    basis = vt[rank:].T
    return operator_norm(d @ basis)


@dataclass(frozen=True)
class Theorem2Inputs:
    nu1: float
    nu2: float
    rho1: float
    rho2: float
    norm_d_ker_b: float
    norm_dt_ker_ct: float
    rank_b: int
    rank_c: int


def _numrank(m: np.ndarray) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > RANK_TOL * s[0]))


def theorem2_bounds(p: BlockPartition, rank_tol: float = RANK_TOL):
    """Block-Givens bounds on sigma_{k+1} of R0 and of R.

    Returns (inputs, reports) where reports carry the min-form bound and the
    weaker closed-form bound for R0, the corrected bound for R, and, when
    the partition is square with n = m = 2k and invertible blocks, the
    symmetric two-term bound.
    """
    a, b, c, d = p.a, p.b, p.c, p.d
    sa = np.linalg.svd(a, compute_uv=False)
    if sa[-1] <= rank_tol * max(sa[0], 1.0):
        raise MatrixError(f"pivot block numerically singular (sigma_min={sa[-1]:.3e})")
    aib = np.linalg.solve(a, b)
    cai = np.linalg.solve(a.T, c.T).T
    nb, nc, nd = operator_norm(b), operator_norm(c), operator_norm(d)
    n_aib, n_cai = operator_norm(aib), operator_norm(cai)
    rank_b, rank_c = _numrank(b), _numrank(c)
    sig_aib = np.linalg.svd(aib, compute_uv=False)
    sig_cai = np.linalg.svd(cai, compute_uv=False)
    nu1 = 1.0 / np.sqrt(1.0 + float(sig_aib[rank_b - 1]) ** 2) if rank_b else 1.0
    nu2 = 1.0 / np.sqrt(1.0 + float(sig_cai[rank_c - 1]) ** 2) if rank_c else 1.0
    dker_b = kernel_restricted_norm(d, b)
    dtker_ct = kernel_restricted_norm(d.T, c.T)
    rho1 = nu1 * nd + (1.0 - nu1) * dker_b
    rho2 = nu2 * nd + (1.0 - nu2) * dtker_ct
    inputs = Theorem2Inputs(nu1=float(nu1), nu2=float(nu2), rho1=float(rho1),
                            rho2=float(rho2), norm_d_ker_b=dker_b,
                            norm_dt_ker_ct=dtker_ct, rank_b=rank_b, rank_c=rank_c)
    branch_c = n_cai / np.sqrt(1.0 + n_cai**2) * nb
    branch_b = n_aib / np.sqrt(1.0 + n_aib**2) * nc
    r0_min = min(branch_c, branch_b)
    r0_closed = nb * nc / np.sqrt(sa[-1] ** 2 + max(nb, nc) ** 2) if max(nb, nc) > 0 else 0.0
    r_bound = min(branch_c + rho2, branch_b + rho1)
    r0 = p.zero_d()
    reports = [
        BoundReport("Thm2-R0-min", p.k, p.k, 0.0, float(r0_min), oracle=_sigma(r0, p.k + 1)),
        BoundReport("Thm2-R0-closed", p.k, p.k, 0.0, float(r0_closed), oracle=_sigma(r0, p.k + 1)),
        BoundReport("Thm2-R", p.k, p.k, 0.0, float(r_bound), oracle=_sigma(p.base, p.k + 1)),
    ]
    k = p.k
    if p.m == p.n == 2 * k and rank_b == k and rank_c == k:
        na = operator_norm(a)
        sk_a = float(sa[-1])
        sk_b = float(np.linalg.svd(b, compute_uv=False)[-1])
        sk_c = float(np.linalg.svd(c, compute_uv=False)[-1])
        term_b = nb * nc / np.sqrt(sk_a**2 + nb**2) + na * nd / np.sqrt(na**2 + sk_b**2)
        term_c = nb * nc / np.sqrt(sk_a**2 + nc**2) + na * nd / np.sqrt(na**2 + sk_c**2)
        reports.append(BoundReport("Cor5", k, k, 0.0, float(min(term_b, term_c)),
                                   oracle=_sigma(p.base, k + 1)))
    return inputs, reports
