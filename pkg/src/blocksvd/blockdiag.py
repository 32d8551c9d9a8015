"""Alternating block-Givens sweeps driving a partitioned matrix to block
diagonal form, with per-iteration tracing, convergence diagnostics, and
certified extraction of top singular values."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .matcore import BlockPartition, MatrixError, as_matrix, operator_norm, svd
from .givens import BlockGivens, SingularBlockError, build_left_rotation, build_right_rotation

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200
REORTH_DRIFT = 1e-10


@dataclass(frozen=True)
class SweepRecord:
    """State of the iterate R_t after t rotations."""

    t: int
    norm_a: float
    sigma_a: np.ndarray          # all singular values of A_t
    sigma_k_a: float
    norm_b: float
    norm_c: float
    norm_d: float
    sigma_left_band: np.ndarray  # singular values of R_t[:, :k]
    norm_right_band: float       # ||R_t[:, k:]||
    degenerate: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d["sigma_a"] = list(map(float, self.sigma_a))
        d["sigma_left_band"] = list(map(float, self.sigma_left_band))
        return d


@dataclass
class SweepTrace:
    k: int
    records: list[SweepRecord] = field(default_factory=list)

    def append_state(self, t: int, p: BlockPartition, degenerate: bool = False):
        sa = np.linalg.svd(p.a, compute_uv=False)
        self.records.append(SweepRecord(
            t=t,
            norm_a=operator_norm(p.a),
            sigma_a=sa,
            sigma_k_a=float(sa[-1]),
            norm_b=operator_norm(p.b),
            norm_c=operator_norm(p.c),
            norm_d=operator_norm(p.d),
            sigma_left_band=np.linalg.svd(p.left_band(), compute_uv=False),
            norm_right_band=operator_norm(p.right_band()),
            degenerate=degenerate,
        ))


@dataclass
class BlockDiagResult:
    a_inf: np.ndarray
    d_inf: np.ndarray
    q_left: np.ndarray    # accumulated left factor: q_left @ R @ q_right = R_t
    q_right: np.ndarray
    trace: SweepTrace
    converged: bool
    iterations: int
    final: np.ndarray     # the last iterate R_t


class PivotSingularError(RuntimeError):
    """A_t became numerically singular mid-run; the trace so far is attached."""

    def __init__(self, trace: SweepTrace, sigma_min: float):
        super().__init__(f"pivot block singular mid-run (sigma_min={sigma_min:.3e})")
        self.trace = trace
        self.sigma_min = sigma_min


def _reorthogonalize(q: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(q)
    return u @ vt


def block_diagonalize(p: BlockPartition, tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER,
                      first: str = "left") -> BlockDiagResult:
    """Alternate left/right rotations until both off-blocks are annihilated.

    The first step eliminates C (left rotation) by default. Stops when
    max(||B_t||, ||C_t||) <= tol * ||R||; raises PivotSingularError if the
    pivot block degenerates mid-run.
    """
    if first not in ("left", "right"):
        raise ValueError("first must be 'left' or 'right'")
    r = p.base
    k = p.k
    m, n = r.shape
    scale = operator_norm(r)
    trace = SweepTrace(k=k)
    trace.append_state(0, p)
    q_left = np.eye(m)
    q_right = np.eye(n)
    cur = p
    converged = operator_norm(cur.b) <= tol * scale and operator_norm(cur.c) <= tol * scale
    t = 0
    while not converged and t < max_iter:
        side = ("left", "right")[t % 2] if first == "left" else ("right", "left")[t % 2]
        try:
            if side == "left":
                g = build_left_rotation(cur)
                nxt = g.matrix @ cur.base
                q_left = g.matrix @ q_left
            else:
                g = build_right_rotation(cur)
                nxt = cur.base @ g.matrix
                q_right = q_right @ g.matrix
        except SingularBlockError as exc:
            raise PivotSingularError(trace, exc.sigma_min) from exc
        # Exact annihilation of the targeted block, not just small residual.
        if side == "left":
            nxt[k:, :k] = 0.0
        else:
            nxt[:k, k:] = 0.0
        if operator_norm(q_left.T @ q_left - np.eye(m)) > REORTH_DRIFT * m:
            q_left = _reorthogonalize(q_left)
        if operator_norm(q_right.T @ q_right - np.eye(n)) > REORTH_DRIFT * n:
            q_right = _reorthogonalize(q_right)
        cur = BlockPartition(nxt, k)
        t += 1
        trace.append_state(t, cur, degenerate=g.degenerate)
        converged = (operator_norm(cur.b) <= tol * scale
                     and operator_norm(cur.c) <= tol * scale)
    return BlockDiagResult(a_inf=cur.a.copy(), d_inf=cur.d.copy(),
                           q_left=q_left, q_right=q_right, trace=trace,
                           converged=converged, iterations=t, final=cur.base)


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    margin: float

    def to_json(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), "margin": float(self.margin)}


@dataclass
class Lemma11Report:
    checks: list[CheckItem]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"all_passed": self.all_passed,
                "checks": [c.to_json() for c in self.checks]}


def check_lemma11(trace: SweepTrace, tol: float = 1e-9) -> Lemma11Report:
    """Diagnostic report on monotonicity, band preservation, contraction and
    gap preservation along a sweep trace. Always returns; never raises."""
    recs = trace.records
    checks: list[CheckItem] = []
    # (i) singular values of the pivot block never decrease
    worst = np.inf
    ok = True
    for prev, nxt in zip(recs, recs[1:]):
        margin = float(np.min(nxt.sigma_a - prev.sigma_a))
        worst = min(worst, margin)
        if margin < -tol:
            ok = False
    checks.append(CheckItem("i_pivot_monotone", ok, worst if recs[1:] else 0.0))
    # (ii) first left step zeroes C and preserves the left-band spectrum
    if len(recs) >= 2:
        r1 = recs[1]
        c_zero = r1.norm_c
        spec_dev = float(np.max(np.abs(r1.sigma_a - recs[0].sigma_left_band[:len(r1.sigma_a)])))
        passed = c_zero <= tol and spec_dev <= tol * max(recs[0].norm_a, 1.0)
        checks.append(CheckItem("ii_first_step", passed, -max(c_zero, spec_dev)))
    # (iii) right-band norm unchanged by the first (left) step
    if len(recs) >= 2:
        dev = abs(recs[1].norm_right_band - recs[0].norm_right_band)
        checks.append(CheckItem("iii_right_band_norm", dev <= tol * max(recs[0].norm_right_band, 1.0), -dev))
    # (iv) contraction factors, checked from each recorded t >= 1
    worst = np.inf
    ok = True
    for prev, nxt in zip(recs[1:], recs[2:]):
        off = prev.norm_b if prev.norm_b >= prev.norm_c else prev.norm_c
        # D-contraction: (1 + off^2/||A||^2)^(-1/2)
        if prev.norm_a > 0:
            bound_d = prev.norm_d / np.sqrt(1.0 + (off / prev.norm_a) ** 2)
            margin = float(bound_d - nxt.norm_d)
            worst = min(worst, margin)
            if margin < -tol:
                ok = False
        # new off-block: (sigma_k^2 + off^2)^(-1/2) * off * ||D||
        denom = np.sqrt(prev.sigma_k_a**2 + off**2)
        if denom > 0:
            bound_off = off * prev.norm_d / denom
            new_off = nxt.norm_c if prev.norm_b >= prev.norm_c else nxt.norm_b
            margin = float(bound_off - new_off)
            worst = min(worst, margin)
            if margin < -tol:
                ok = False
    checks.append(CheckItem("iv_contraction", ok, worst if recs[2:] else 0.0))
    # (v) gap preservation once it holds at t = 0
    sig0 = recs[0].sigma_left_band
    gap_idx = [i for i in range(len(sig0)) if sig0[i] >= recs[0].norm_right_band]
    worst = np.inf
    ok = True
    for rec in recs[1:]:
        for i in gap_idx:
            margin = float(rec.sigma_left_band[i] - rec.norm_right_band)
            worst = min(worst, margin)
            if margin < -tol:
                ok = False
    checks.append(CheckItem("v_gap_preserved", ok, worst if recs[1:] and gap_idx else 0.0))
    return Lemma11Report(checks)


@dataclass(frozen=True)
class GapCertificate:
    i: int
    sigma_i_left: float
    norm_right: float
    certified: bool

    def to_json(self) -> dict:
        return {"i": self.i, "sigma_i_left": self.sigma_i_left,
                "norm_right": self.norm_right, "certified": bool(self.certified)}


def top_singular_values(p: BlockPartition, i: int, tol: float = DEFAULT_TOL,
                        max_iter: int = DEFAULT_MAX_ITER):
    """Top i singular values of R via block diagonalization.

    Returns (values, certificate, result). The certificate records both
    sides of the gap condition sigma_i(R[:, :k]) >= ||R[:, k:]||; when it
    fails the values are still returned, uncertified.
    """
    if not (1 <= i <= p.k):
        raise MatrixError(f"need 1 <= i <= k, got i={i}, k={p.k}")
    sig_left = np.linalg.svd(p.left_band(), compute_uv=False)
    norm_right = operator_norm(p.right_band())
    cert = GapCertificate(i=i, sigma_i_left=float(sig_left[i - 1]),
                          norm_right=norm_right,
                          certified=bool(sig_left[i - 1] >= norm_right))
    res = block_diagonalize(p, tol=tol, max_iter=max_iter)
    values = svd(res.a_inf).sigma[:i]
    return values, cert, res


@dataclass(frozen=True)
class KyFanReport:
    i: int
    head_margin: float   # sum_{j<=i} sigma_j^2 - sum_{j<=i} ||v_j||^2 >= 0
    tail_margin: float   # sum_{j>i} ||v_j||^2 - sum_{j>i} sigma_j^2 >= 0
    tol: float = 1e-10

    @property
    def holds(self) -> bool:
        return self.head_margin >= -self.tol and self.tail_margin >= -self.tol


def kyfan_column_bounds(y, i: int) -> KyFanReport:
    """Partial-sum comparison between squared singular values and squared
    column norms (columns sorted by descending norm)."""
    y = as_matrix(y)
    q = y.shape[1]
    if not (1 <= i <= q):
        raise MatrixError(f"need 1 <= i <= {q}, got {i}")
    sig2 = np.linalg.svd(y, compute_uv=False) ** 2
    sig2 = np.concatenate([sig2, np.zeros(max(0, q - sig2.size))])
    col2 = np.sort((y**2).sum(axis=0))[::-1]
    head = float(sig2[:i].sum() - col2[:i].sum())
    tail = float(col2[i:].sum() - sig2[i:q].sum())
    return KyFanReport(i=i, head_margin=head, tail_margin=tail)
