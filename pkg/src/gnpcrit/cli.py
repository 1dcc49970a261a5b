"""Command-line front end.

Subcommands: sweep, tail, walk, bounds, verify, oracle.  Human-readable
tables go to stdout; machine formats only via --out.  Exit codes: 0 success,
2 when a verify/check fails, 1 on usage or runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from ._version import __version__

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _int_arg(text: str) -> int:
    # accept 1000000, 1_000_000 or 1e9
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def _default_threads() -> int:
    env = os.environ.get("GNPCRIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _add_common(p: argparse.ArgumentParser, default_format: str = "jsonl") -> None:
    p.add_argument("--seed", type=_int_arg, default=0, help="master seed (default 0)")
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help="worker threads; never affects results (default $GNPCRIT_THREADS or 1)")
    p.add_argument("--out", type=str, default=None, help="write machine-readable results here")
    p.add_argument("--format", choices=("jsonl", "csv"), default=default_format,
                   help=f"format for --out (default {default_format})")


def _add_model(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--n", type=_int_arg, required=required, help="vertex count")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p", type=str, default=None,
                   help="edge probability, or 'critical' for exactly 1/n")
    g.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="window drift: p = 1/n + lambda * n^(-4/3)")


def _resolve_params(args):
    from .explore import GraphParams

    if args.lam is not None:
        return GraphParams.window(args.n, args.lam)
    if args.p is None or args.p == "critical":
        return GraphParams.critical(args.n)
    return GraphParams(n=args.n, p=float(args.p))


def _echo_config(name: str, params, extra: dict) -> None:
    fields = {"n": params.n, "p": repr(params.p), "lambda": repr(params.lam)}
    fields.update(extra)
    body = " ".join(f"{k}={v}" for k, v in fields.items())
    print(f"# {name}: {body}")


# --- sweep ------------------------------------------------------------------

def _cmd_sweep(args) -> int:
    from .explore import sweep_components
    from .rng import stream

    params = _resolve_params(args)
    _echo_config("sweep", params, {"trials": args.trials, "seed": args.seed,
                                   "sizes_mode": args.sizes})
    rows = []
    for trial in range(args.trials):
        rng = stream(args.seed, trial)
        result = sweep_components(params, rng, streaming=None if not args.sizes else False)
        rows.append(result)
        print(f"trial {trial}: |C1|={result.largest} |C2|={result.second_largest} "
              f"components={result.components}")
        if args.hist and result.sizes is not None:
            values, counts = np.unique(result.sizes, return_counts=True)
            print("  size histogram:")
            for v, c in zip(values, counts):
                print(f"    {int(v):>10} x {int(c)}")
    if args.out:
        _write_sweep(args, params, rows)
    return EXIT_OK


def _write_sweep(args, params, rows) -> None:
    if args.format == "csv":
        with open(args.out, "w") as f:
            f.write("trial,largest,second_largest,components\n")
            for i, r in enumerate(rows):
                f.write(f"{i},{r.largest},{r.second_largest},{r.components}\n")
    else:
        with open(args.out, "w") as f:
            for i, r in enumerate(rows):
                f.write(json.dumps({
                    "trial": i,
                    "largest": r.largest,
                    "second_largest": r.second_largest,
                    "components": r.components,
                    "manifest": {"n": params.n, "p": params.p, "lambda": params.lam,
                                 "seed": args.seed, "version": __version__},
                }) + "\n")


# --- tail -------------------------------------------------------------------

def _cmd_tail(args) -> int:
    from .harness import ExperimentSpec, run_experiment, write_results

    params = _resolve_params(args)
    spec = ExperimentSpec(
        kind=args.kind, params=params, trials=args.trials,
        master_seed=args.seed, alpha=args.alpha,
        a_multiplier=args.A, delta=args.delta, threads=args.threads,
        work_budget=args.budget,
    )
    report = run_experiment(spec)
    _echo_config("tail", params, {"kind": args.kind, "trials": args.trials,
                                  "seed": args.seed, "threshold": spec.threshold()})
    e, b = report.estimate, report.bound
    print(f"event count {e.successes}/{e.trials}  p_hat={e.p_hat:.6g}  "
          f"ci=[{e.ci_low:.6g}, {e.ci_high:.6g}] (one-sided, alpha={e.alpha:g})")
    print(f"bound {b.name} = {b.value:.6g} (valid={b.valid})")
    print(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    if args.out:
        write_results([report], args.out, args.format)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# --- walk -------------------------------------------------------------------

def _cmd_walk(args) -> int:
    from .harness import ExperimentSpec, run_experiment, write_results

    params = _resolve_params(args)
    if args.mode != "two-stage" and args.H is None:
        raise ValueError(f"--H is required for {args.mode} mode")
    reports = []
    ok = True
    if args.mode in ("gamma", "capped"):
        ok = _walk_direct(args, params)
    elif args.mode == "overshoot":
        spec = ExperimentSpec(kind="overshoot_dominance", params=params,
                              trials=args.trials, master_seed=args.seed,
                              barrier=args.H, threads=args.threads,
                              work_budget=args.budget)
        report = run_experiment(spec)
        reports.append(report)
        d = report.details["dominance"]
        print(f"conditioned samples: {d['sample_size']}  max CDF gap {d['max_gap']:.5f} "
              f"vs DKW slack {d['epsilon']:.5f}")
        ok = bool(report.passed)
        print(f"dominance verdict: {'PASS' if ok else 'INDETERMINATE' if report.passed is None else 'FAIL'}")
    elif args.mode == "identity":
        spec = ExperimentSpec(kind="walk_identity", params=params,
                              trials=args.trials, master_seed=args.seed,
                              barrier=args.H, threads=args.threads,
                              work_budget=args.budget)
        report = run_experiment(spec)
        reports.append(report)
        for r in report.details["identities"]:
            print(f"{r['identity']}: mean={r['mean']:.6f} z={r['z']:+.3f} "
                  f"({r['trials']} trials)")
        ok = bool(report.passed)
        print(f"identity verdict: {'PASS' if ok else 'FAIL'} (|z| <= 4)")
    elif args.mode == "two-stage":
        if args.delta is None:
            raise ValueError("--delta is required for two-stage mode")
        spec = ExperimentSpec(kind="two_stage", params=params, trials=args.trials,
                              master_seed=args.seed, delta=args.delta,
                              threads=args.threads, work_budget=args.budget)
        report = run_experiment(spec)
        reports.append(report)
        sp = report.details["stage_params"]
        s1 = report.details["stage1"]
        print(f"stage params: h={sp['h']} T1={sp['t1']} T2={sp['t2']}")
        print(f"stage1 failure: p_hat={s1['estimate']['p_hat']:.5f} "
              f"bound={s1['bound']['value']:.5f} pass={s1['passed']}")
        e, b = report.estimate, report.bound
        print(f"stage2 failure: p_hat={e.p_hat:.5f} bound={b.value:.5f}")
        ok = bool(report.passed)
        print(f"verdict: {'PASS' if ok else 'FAIL'}")
    elif args.mode == "coupling":
        ok = _walk_coupling(args, params)
    if args.out and reports:
        write_results(reports, args.out, args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _walk_direct(args, params) -> bool:
    from . import _kernels, bounds as bmod
    from .harness import TailEstimate

    h = args.H
    cap = h * h if args.mode == "capped" else 0
    gamma = np.empty(args.trials, dtype=np.int64)
    sfinal = np.empty(args.trials, dtype=np.int64)
    _kernels.walk_batch(params.n, params.p, h, cap, args.seed, 0, gamma, sfinal)
    _echo_config("walk", params, {"H": h, "cap": cap or None, "trials": args.trials,
                                  "seed": args.seed})
    ok = True
    if args.mode == "gamma":
        hits = int(np.count_nonzero(sfinal >= h))
        est = TailEstimate.from_counts(hits, args.trials, args.alpha)
        if params.lam:
            hit_bound = bmod.drift_hit_bound(params.lam, params.n)
            mean_bound = bmod.drift_mean_stop_bound(params.lam, params.n)
        else:
            hit_bound = bmod.walk_hit_bound(h)
            mean_bound = bmod.walk_mean_stop_bound(h, params.n)
        mean_gamma = float(np.mean(gamma))
        print(f"P(S_gamma >= H): {est.p_hat:.6g} (ci_low {est.ci_low:.6g}) "
              f"vs bound {hit_bound.value:.6g}")
        print(f"E[gamma]: {mean_gamma:.4f} vs bound {mean_bound:.4f}")
        ok = est.ci_low <= hit_bound.value and mean_gamma <= mean_bound + 3 * float(
            np.std(gamma) / np.sqrt(args.trials))
    else:
        positive = int(np.count_nonzero(sfinal > 0))
        est = TailEstimate.from_counts(positive, args.trials, args.alpha)
        b = bmod.walk_positive_at_cap_bound(h, params.n)
        print(f"P(S_gamma* > 0): {est.p_hat:.6g} (ci_low {est.ci_low:.6g}) "
              f"vs bound {b.value:.6g}")
        ok = est.ci_low <= b.value
    print(f"verdict: {'PASS' if ok else 'FAIL'}")
    return ok


def _walk_coupling(args, params) -> bool:
    from . import _kernels

    gamma = np.empty(args.trials, dtype=np.int64)
    slack = np.empty(args.trials, dtype=np.int64)
    _kernels.coupled_batch(params.n, params.p, args.H, args.seed, 0, gamma, slack)
    worst = int(slack.min())
    print(f"coupled runs: {args.trials}, min_t (S_t - Y_t) over all runs = {worst}")
    ok = worst >= 0
    print(f"pathwise domination: {'PASS' if ok else 'FAIL'}")
    return ok


# --- bounds -----------------------------------------------------------------

def _parse_grid(text: str) -> list[float]:
    if ":" in text:
        lo, hi, step = (float(x) for x in text.split(":"))
        out = []
        x = lo
        while x <= hi + 1e-12:
            out.append(round(x, 12))
            x += step
        return out
    return [float(x) for x in text.split(",")]


def _cmd_bounds(args) -> int:
    from . import bounds as bmod

    rows = []
    if args.thm == "easy":
        if args.A is None:
            raise ValueError("--A (or --A with a grid) is required for the easy bound")
        for a in _parse_grid(args.A):
            rows.append(("easy_c1", {"A": a}, bmod.easy_bound_c1(a)))
    elif args.thm == "thm1":
        if args.A is None or args.n is None:
            raise ValueError("--A and --n are required for thm1")
        for a in _parse_grid(args.A):
            pv, lg = bmod.thm1_bounds(a, args.n)
            rows.append(("per_vertex", {"A": a, "n": args.n}, pv))
            rows.append(("largest", {"A": a, "n": args.n}, lg))
    elif args.thm == "thm2":
        if args.delta is None or args.n is None:
            raise ValueError("--delta and --n are required for thm2")
        for d in _parse_grid(args.delta):
            rows.append(("lower", {"delta": d, "n": args.n}, bmod.thm2_bound(d, args.n)))
    elif args.thm == "thm5":
        if args.A is None or args.lam is None or args.n is None:
            raise ValueError("--A, --lambda and --n are required for thm5")
        for a in _parse_grid(args.A):
            pv, lg = bmod.thm5_bounds(a, args.lam, args.n)
            rows.append(("per_vertex", {"A": a, "lambda": args.lam, "n": args.n}, pv))
            rows.append(("largest", {"A": a, "lambda": args.lam, "n": args.n}, lg))
    if len(rows) == 1:
        print(f"{rows[0][2].value:g}")
    else:
        for label, where, rep in rows:
            keys = " ".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                            for k, v in where.items())
            print(f"{label:<12} {keys:<30} value={rep.value:.6g} raw={rep.raw_value:.6g} "
                  f"valid={rep.valid}")
    if args.out:
        if getattr(args, "format", "csv") == "jsonl":
            with open(args.out, "w") as f:
                for label, where, rep in rows:
                    f.write(json.dumps({
                        "name": rep.name, "params": where,
                        "raw_value": rep.raw_value, "value": rep.value,
                        "valid": rep.valid, "conditions": list(rep.conditions),
                    }) + "\n")
        else:
            with open(args.out, "w") as f:
                f.write("name,params,raw_value,value,valid\n")
                for label, where, rep in rows:
                    keys = ";".join(f"{k}={v}" for k, v in where.items())
                    f.write(f"{rep.name},{keys},{rep.raw_value!r},{rep.value!r},{rep.valid}\n")
    return EXIT_OK


# --- oracle -----------------------------------------------------------------

def _cmd_oracle(args) -> int:
    from fractions import Fraction

    from .explore import GraphParams
    from .oracle import (components_of, enumerate_exact, explore_on_graph,
                         sample_explicit)
    from .rng import stream

    if args.mode == "enumerate":
        p = Fraction(args.p) if "/" in args.p else float(args.p)
        dist_cv, dist_c1 = enumerate_exact(args.n, p)
        print(f"# exact distributions for n={args.n}, p={p}")
        print("size  P(|C(v)|=k)          P(|C1|=k)")
        for k, pcv, pc1 in zip(dist_cv.support, dist_cv.probs, dist_c1.probs):
            print(f"{k:>4}  {str(pcv):<20} {str(pc1):<20}")
        return EXIT_OK
    if args.mode == "sample":
        params = GraphParams(n=args.n, p=float(args.p))
        g = sample_explicit(params, stream(args.seed))
        comps = components_of(g)
        print(f"sampled graph: n={g.n} edges={len(g.edges)} |C1|={comps.largest}")
        if args.out:
            g.save(args.out)
            print(f"edge list written to {args.out}")
        return EXIT_OK
    # crosscheck: vertex-level exploration vs union-find on sampled graphs
    params = GraphParams(n=args.n, p=float(args.p))
    mismatches = 0
    for trial in range(args.trials):
        g = sample_explicit(params, stream(args.seed, trial))
        size, _ = explore_on_graph(g, 0)
        comps = components_of(g)
        from .oracle import component_size_of

        if size != component_size_of(g, 0):
            mismatches += 1
    print(f"{args.trials} graphs at n={args.n}, p={args.p}: {mismatches} mismatches")
    return EXIT_OK if mismatches == 0 else EXIT_CHECK_FAILED


# --- verify -----------------------------------------------------------------

def _verify_checks(quick: bool, seed: int, threads: int):
    """The default verification suite; quick mode caps n at 10^4 and trials at 10^5."""
    from .explore import GraphParams
    from .harness import ExperimentSpec

    if quick:
        n_sweep, sweep_trials = 10**4, 2_000
        n_walk, walk_trials = 10**4, 100_000
        n_two_stage, delta2 = 10**4, 0.05
        oracle_trials = 100_000
        overshoot = (10**3, 5, 100_000)
    else:
        n_sweep, sweep_trials = 10**5, 10_000
        n_walk, walk_trials = 10**6, 100_000
        n_two_stage, delta2 = 10**6, 0.01
        oracle_trials = 1_000_000
        overshoot = (10**6, 50, 5_000_000)

    checks = []
    checks.append(ExperimentSpec(
        kind="oracle_equivalence", params=GraphParams(n=4, p=0.25),
        trials=oracle_trials, master_seed=seed, threads=threads))
    for a in (4.0, 9.0):
        checks.append(ExperimentSpec(
            kind="tail_c1", params=GraphParams.critical(n_sweep),
            trials=sweep_trials, master_seed=seed, a_multiplier=a, threads=threads))
    checks.append(ExperimentSpec(
        kind="tail_cv", params=GraphParams.critical(n_sweep),
        trials=sweep_trials * 5, master_seed=seed, a_multiplier=9.0, threads=threads))
    checks.append(ExperimentSpec(
        kind="lower_c1", params=GraphParams.critical(n_sweep),
        trials=sweep_trials, master_seed=seed, delta=0.01, threads=threads))
    checks.append(ExperimentSpec(
        kind="walk_identity", params=GraphParams.critical(10**3),
        trials=walk_trials, master_seed=seed, barrier=10, threads=threads))
    checks.append(ExperimentSpec(
        kind="overshoot_dominance", params=GraphParams.critical(overshoot[0]),
        trials=overshoot[2], master_seed=seed, barrier=overshoot[1], threads=threads))
    checks.append(ExperimentSpec(
        kind="two_stage", params=GraphParams.critical(n_two_stage),
        trials=walk_trials, master_seed=seed, delta=delta2, threads=threads))
    checks.append(ExperimentSpec(
        kind="walk_identity", params=GraphParams.window(n_walk, 1.0),
        trials=walk_trials, master_seed=seed, barrier=100, threads=threads))
    return checks


def _cmd_verify(args) -> int:
    from .harness import run_experiment, write_results

    checks = _verify_checks(args.quick, args.seed, args.threads)
    reports = []
    failures = 0
    for spec in checks:
        report = run_experiment(spec)
        reports.append(report)
        label = spec.kind
        extra = []
        if spec.a_multiplier is not None:
            extra.append(f"A={spec.a_multiplier:g}")
        if spec.delta is not None:
            extra.append(f"delta={spec.delta:g}")
        if spec.barrier is not None:
            extra.append(f"H={spec.barrier}")
        if spec.params.lam:
            extra.append(f"lambda={spec.params.lam:g}")
        name = f"{label}(n={spec.params.n}{', ' + ', '.join(extra) if extra else ''})"
        status = "PASS" if report.passed else "FAIL"
        if report.passed is None:
            status = "INDETERMINATE"
            failures += 1
        elif not report.passed:
            failures += 1
        print(f"{status:>6}  {name}")
    if args.out:
        write_results(reports, args.out, args.format)
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


# --- entry ------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="gnpcrit",
                     description="Critical random graph component-size toolkit")
    parser.add_argument("--version", action="version", version=f"gnpcrit {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("sweep", help="full exploration sweeps: |C1|, |C2|, histogram")
    _add_model(p)
    p.add_argument("--trials", type=_int_arg, default=1)
    p.add_argument("--sizes", action="store_true", help="record all component sizes")
    p.add_argument("--hist", action="store_true", help="print size histogram (needs --sizes)")
    _add_common(p)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("tail", help="tail-probability experiments with bound verdicts")
    p.add_argument("--kind", choices=("tail_c1", "tail_cv", "lower_c1"), required=True)
    _add_model(p)
    p.add_argument("--A", type=float, default=None, help="upper-tail multiplier")
    p.add_argument("--delta", type=float, default=None, help="lower-tail multiplier")
    p.add_argument("--trials", type=_int_arg, default=10_000)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--budget", type=float, default=1e11, help="work budget in steps")
    _add_common(p)
    p.set_defaults(fn=_cmd_tail)

    p = sub.add_parser("walk", help="barrier-walk diagnostics")
    p.add_argument("--mode", choices=("gamma", "capped", "overshoot", "identity",
                                      "two-stage", "coupling"), required=True)
    _add_model(p)
    p.add_argument("--H", type=_int_arg, default=None, help="barrier height")
    p.add_argument("--delta", type=float, default=None, help="two-stage delta")
    p.add_argument("--trials", type=_int_arg, default=100_000)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--budget", type=float, default=1e11)
    _add_common(p)
    p.set_defaults(fn=_cmd_walk)

    p = sub.add_parser("bounds", help="evaluate closed-form bounds on a grid")
    p.add_argument("--thm", choices=("easy", "thm1", "thm2", "thm5"), required=True)
    p.add_argument("--A", type=str, default=None, help="value, list, or lo:hi:step grid")
    p.add_argument("--delta", type=str, default=None, help="value, list, or lo:hi:step grid")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--n", type=_int_arg, default=None)
    _add_common(p, default_format="csv")  # seed/threads accepted for uniformity; unused
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("verify", help="run the verification suite (exit 2 on failure)")
    p.add_argument("--quick", action="store_true", help="reduced suite: n <= 1e4, <= 1e5 trials")
    _add_common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("oracle", help="exact enumeration and explicit-graph cross-checks")
    p.add_argument("--mode", choices=("enumerate", "sample", "crosscheck"), required=True)
    p.add_argument("--n", type=_int_arg, required=True)
    p.add_argument("--p", type=str, required=True, help="probability; fractions like 1/3 allowed")
    p.add_argument("--trials", type=_int_arg, default=1_000)
    _add_common(p)
    p.set_defaults(fn=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse help exits 0; usage errors exit 1 via _Parser.error
        return int(e.code or 0)
    if not getattr(args, "command", None):
        parser.print_help()
        return EXIT_ERROR
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"gnpcrit: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
