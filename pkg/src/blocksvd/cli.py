"""Command-line interface.

Subcommands: ``blockdiag`` (iterative block diagonalization with a JSON
sweep trace), ``bounds`` (perturbation-bound reports for a partitioned
matrix), ``plan`` (partition planner), ``approx`` (certified low-rank
approximation), and ``verify`` (self-check suites). Matrices are exchanged
as Matrix Market coordinate files; reports are deterministic JSON. Exit
codes: 0 success, 1 check violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import blockdiag as bd
from . import bounds as bn
from . import mmio
from . import pipeline as pl
from . import verify as vf
from .matcore import BlockPartition, MatrixError


def _emit(report: dict, path: str | None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_partition(path: str, k: int) -> BlockPartition:
    return BlockPartition(mmio.read_matrix(path), k)


def _cmd_blockdiag(args) -> int:
    p = _load_partition(args.matrix, args.k)
    res = bd.block_diagonalize(p, tol=args.tol, max_iter=args.max_iter)
    lem = bd.check_lemma11(res.trace)
    report = {"k": args.k, "converged": bool(res.converged),
              "iterations": res.iterations,
              "trace": [r.to_json() for r in res.trace.records],
              "diagnostics": lem.to_json()}
    if args.oracle:
        want = np.linalg.svd(p.base, compute_uv=False)
        got = np.sort(np.concatenate([
            np.linalg.svd(res.a_inf, compute_uv=False),
            np.linalg.svd(res.d_inf, compute_uv=False)]))[::-1]
        report["oracle_max_dev"] = float(np.abs(got[: want.size] - want).max())
    _emit(report, args.output)
    return 0 if res.converged and lem.all_passed else 1


def _cmd_bounds(args) -> int:
    p = _load_partition(args.matrix, args.k)
    i = args.i if args.i is not None else args.k
    reports = []
    reports.extend(bn.weyl_gap_bounds(p, i))
    reports.extend(bn.small_rank_bounds(p, i))
    mu, mu_rep = bn.mu_bounds(p, i)
    reports.append(mu_rep)
    _, t2 = bn.theorem2_bounds(p)
    reports.extend(t2)
    ok = all(r.contains_oracle for r in reports)
    _emit({"k": args.k, "i": i, "mu_bar": mu.mu_bar,
           "reports": [r.to_json() for r in reports], "all_contain": ok},
          args.output)
    return 0 if ok else 1


def _cmd_plan(args) -> int:
    r = mmio.read_matrix(args.matrix)
    plan = pl.plan_partition(r, k=args.k, alpha=args.alpha)
    _emit(plan.to_json(), args.output)
    return 0


def _cmd_approx(args) -> int:
    r = mmio.read_matrix(args.matrix)
    report = pl.algorithm2(r, k=args.k, i=args.i, tol=args.tol,
                           max_iter=args.max_iter, oracle=args.oracle)
    _emit(report.to_json(), args.output)
    if args.oracle:
        tol = report.error_bound + 1e-9 * float(np.linalg.norm(r, 2))
        return 0 if float(report.oracle_deviations.max()) <= tol else 1
    return 0


def _cmd_verify(args) -> int:
    rep = vf.run_suite(args.suite, seed=args.seed, trials=args.trials)
    _emit(rep.to_json(), args.output)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="blocksvd",
                                  description="Block-rotation singular value toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, matrix=True, k=True):
        if matrix:
            p.add_argument("matrix", help="Matrix Market coordinate file")
        if k:
            p.add_argument("--k", type=int, required=True, help="partition split")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=bd.DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=bd.DEFAULT_MAX_ITER)
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--oracle", action="store_true",
                       help="compare against a dense SVD")
        p.add_argument("-o", "--output", default=None, help="write JSON here")

    common(sub.add_parser("blockdiag", help="iterate block rotations to a diagonal"))
    p = sub.add_parser("bounds", help="singular value perturbation bounds")
    common(p)
    p.add_argument("--i", type=int, default=None, help="value index (default k)")
    p = sub.add_parser("plan", help="permute and split a non-negative matrix")
    common(p, k=False)
    p.add_argument("--k", type=int, default=None, help="fixed split (default: scan)")
    p.add_argument("--alpha", type=float, default=1.0, help="size shape parameter")
    p = sub.add_parser("approx", help="certified top singular values")
    common(p)
    p.add_argument("--i", type=int, required=True, help="number of values")
    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("suite", choices=vf.SUITES + ("all",))
    common(p, matrix=False, k=False)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    dispatch = {"blockdiag": _cmd_blockdiag, "bounds": _cmd_bounds,
                "plan": _cmd_plan, "approx": _cmd_approx, "verify": _cmd_verify}
    try:
        return dispatch[args.command](args)
    except (MatrixError, pl.PipelineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
