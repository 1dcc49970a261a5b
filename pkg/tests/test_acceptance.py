"""Acceptance suite: every criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass/fail line
per criterion.  Statistical criteria use fixed seeds, so outcomes are
deterministic; tolerances are the stated ones (3 standard errors for Monte
Carlo means/probabilities, one-sided Wilson at 99% for bound verdicts,
DKW at alpha = 0.01 for dominance).
"""

import json
import math
import os
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from gnpcrit import _kernels
from gnpcrit.bounds import (
    stage1_failure_bound,
    stage2_failure_bound,
    walk_hit_bound,
    walk_mean_stop_bound,
    walk_positive_at_cap_bound,
)
from gnpcrit.explore import GraphParams, stage_params
from gnpcrit.harness import (
    ExperimentSpec,
    dominance_verdict,
    martingale_identity_check,
    run_experiment,
)
from gnpcrit.oracle import (
    component_size_of,
    enumerate_exact,
    explore_on_graph,
    sample_explicit,
)
from gnpcrit.rng import stream

THREADS = min(8, os.cpu_count() or 1)


def report(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {num:>2} {name}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    assert ok, line


def walk_sample(n, p, barrier, cap, trials, seed):
    gamma = np.empty(trials, dtype=np.int64)
    sfinal = np.empty(trials, dtype=np.int64)
    _kernels.walk_batch(n, p, barrier, cap, seed, 0, gamma, sfinal)
    return gamma, sfinal


def test_01_oracle_equivalence():
    """TV(process-level MC, exact enumeration) <= 0.005 for |C(v)| and |C1|."""
    t0 = time.monotonic()
    dist_cv, dist_c1 = enumerate_exact(3, Fraction(1, 3))
    exact_ok = dist_c1.as_dict() == {
        1: Fraction(8, 27), 2: Fraction(12, 27), 3: Fraction(7, 27)
    }
    worst = 0.0
    for n, p in [(3, 1 / 3), (4, 1 / 4), (5, 1 / 5), (5, 0.3)]:
        spec = ExperimentSpec(
            kind="oracle_equivalence", params=GraphParams(n=n, p=p),
            trials=1_000_000, master_seed=1001 + n, threads=THREADS,
        )
        rep = run_experiment(spec)
        worst = max(worst, rep.details["tv_cv"], rep.details["tv_c1"])
        if not rep.passed:
            report(1, "oracle-equivalence", False, f"(n={n}, p={p:g})")
    elapsed = time.monotonic() - t0
    report(1, "oracle-equivalence", exact_ok and worst <= 0.005,
           f"(max TV {worst:.5f} <= 0.005, exact n=3 reference OK, {elapsed:.0f}s)")
    assert elapsed <= 120


def test_02_graph_level_exactness():
    """explore_on_graph size == union-find size on 10^4 graphs, zero mismatches."""
    t0 = time.monotonic()
    params = GraphParams(n=50, p=0.02)
    mismatches = 0
    for t in range(10_000):
        g = sample_explicit(params, stream(2002, t))
        size, _ = explore_on_graph(g, 0)
        if size != component_size_of(g, 0):
            mismatches += 1
    elapsed = time.monotonic() - t0
    report(2, "graph-level-exactness", mismatches == 0,
           f"(0 mismatches in 10^4 graphs, {elapsed:.0f}s)")


def test_03_upper_tail_verdicts():
    """ci_low of P(|C1| > floor(A n^(2/3))) <= min(easy, sharp) at 99%."""
    t0 = time.monotonic()
    failures = []
    for n in (10**4, 10**5):
        for a in (2.0, 4.0, 9.0):
            spec = ExperimentSpec(
                kind="tail_c1", params=GraphParams.critical(n),
                trials=10_000, master_seed=3003, a_multiplier=a,
                alpha=0.01, threads=THREADS,
            )
            rep = run_experiment(spec)
            if not rep.passed:
                failures.append((n, a, rep.estimate.ci_low, rep.bound.value))
    elapsed = time.monotonic() - t0
    report(3, "theorem1-easy-verdicts", not failures,
           f"(6 configs, {elapsed:.0f}s){' ' + str(failures) if failures else ''}")
    assert elapsed <= 600


def test_04_lower_tail_verdicts():
    """ci_low of P(|C1| < floor(delta n^(2/3))) <= 15 delta^(3/5) at 99%."""
    t0 = time.monotonic()
    failures = []
    for n in (10**5, 10**6):
        for delta in (0.001, 0.01):
            spec = ExperimentSpec(
                kind="lower_c1", params=GraphParams.critical(n),
                trials=10_000, master_seed=4004, delta=delta,
                alpha=0.01, threads=THREADS,
            )
            rep = run_experiment(spec)
            if not rep.passed:
                failures.append((n, delta))
    elapsed = time.monotonic() - t0
    report(4, "theorem2-verdicts", not failures, f"(4 configs, {elapsed:.0f}s)")
    assert elapsed <= 900


def test_05_walk_inequalities():
    """P(S_gamma >= H) <= 1/H, E[gamma] <= H+3, P(S_gamma* > 0) <= 3/H (+3 SE)."""
    t0 = time.monotonic()
    n, barrier, m = 10**6, 100, 100_000
    p = 1.0 / n
    gamma, sfinal = walk_sample(n, p, barrier, 0, m, seed=5005)
    hit = np.count_nonzero(sfinal >= barrier) / m
    se_hit = math.sqrt(hit * (1 - hit) / m)
    ok_hit = hit <= walk_hit_bound(barrier).value + 3 * se_hit
    mean_gamma = float(gamma.mean())
    se_gamma = float(gamma.std(ddof=1)) / math.sqrt(m)
    ok_mean = mean_gamma <= walk_mean_stop_bound(barrier, n) + 3 * se_gamma
    _, sfinal_c = walk_sample(n, p, barrier, barrier**2, m, seed=5006)
    pos = np.count_nonzero(sfinal_c > 0) / m
    se_pos = math.sqrt(pos * (1 - pos) / m)
    ok_pos = pos <= walk_positive_at_cap_bound(barrier, n).value + 3 * se_pos
    elapsed = time.monotonic() - t0
    report(5, "walk-inequalities", ok_hit and ok_mean and ok_pos,
           f"(hit {hit:.4f}<=0.01+3SE, E[gamma] {mean_gamma:.1f}<=103+3SE, "
           f"pos-at-cap {pos:.4f}<=0.03+3SE, {elapsed:.0f}s)")
    assert elapsed <= 300


def test_06_martingale_identities():
    """|z| <= 4 for E[S_gamma] = 1 and E[S_gamma^2 - (1 - 1/n) gamma] = 1."""
    t0 = time.monotonic()
    r1 = martingale_identity_check("mean_S_gamma", 10**3, 10, 1_000_000,
                                   master_seed=6006, threads=THREADS)
    r2 = martingale_identity_check("quadratic", 10**3, 10, 1_000_000,
                                   master_seed=6007, threads=THREADS)
    elapsed = time.monotonic() - t0
    report(6, "martingale-identities", abs(r1.z) <= 4 and abs(r2.z) <= 4,
           f"(z_mean={r1.z:+.2f}, z_quad={r2.z:+.2f}, {elapsed:.0f}s)")
    assert elapsed <= 60


def test_07_overshoot_dominance():
    """DKW one-sided dominance by Bin(n, p) at alpha = 0.01, >= 10^5 samples."""
    t0 = time.monotonic()
    results = []
    for n, p, barrier, trials in [
        (10**3, 1e-3, 5, 600_000),
        (10**6, 1e-6, 50, 6_500_000),
    ]:
        spec = ExperimentSpec(
            kind="overshoot_dominance", params=GraphParams(n=n, p=p),
            trials=trials, master_seed=7007, barrier=barrier,
            alpha=0.01, threads=THREADS,
        )
        rep = run_experiment(spec)
        samples = rep.details["conditioned_samples"]
        results.append((rep.passed is True, samples))
    elapsed = time.monotonic() - t0
    ok = all(passed and m >= 100_000 for passed, m in results)
    report(7, "overshoot-dominance", ok,
           f"(samples {[m for _, m in results]}, {elapsed:.0f}s)")
    assert elapsed <= 300


def test_08_two_stage_inequalities():
    """Stage-1 and stage-2 failure rates within the 32h^3/n and +2T2/h^2 bounds."""
    t0 = time.monotonic()
    n, delta, m = 10**6, 0.01, 100_000
    sp = stage_params(delta, n)
    params_ok = (sp.h, sp.t1, sp.t2) == (21, 5953, 100)
    spec = ExperimentSpec(
        kind="two_stage", params=GraphParams.critical(n), trials=m,
        master_seed=8008, delta=delta, threads=THREADS,
    )
    rep = run_experiment(spec)
    p1 = rep.details["stage1"]["estimate"]["p_hat"]
    p2 = rep.estimate.p_hat
    b1 = stage1_failure_bound(sp.h, n).value
    b2 = stage2_failure_bound(sp.h, n, sp.t2).value
    se1 = math.sqrt(p1 * (1 - p1) / m)
    se2 = math.sqrt(p2 * (1 - p2) / m)
    ok = params_ok and p1 <= b1 + 3 * se1 and p2 <= b2 + 3 * se2
    elapsed = time.monotonic() - t0
    report(8, "two-stage-inequalities", ok,
           f"(h,T1,T2=(21,5953,100), stage1 {p1:.4f}<={b1:.4f}, "
           f"stage2 {p2:.4f}<={b2:.4f}, {elapsed:.0f}s)")
    assert elapsed <= 300


def test_09_critical_window():
    """Theorem 5 verdicts at lambda = +/-1, A = 10, plus drift identities."""
    t0 = time.monotonic()
    oks = []
    details = []
    for lam in (1.0, -1.0):
        spec = ExperimentSpec(
            kind="tail_c1", params=GraphParams.window(10**6, lam),
            trials=10_000, master_seed=9009, a_multiplier=10.0,
            alpha=0.01, threads=THREADS,
        )
        rep = run_experiment(spec)
        oks.append(bool(rep.passed))
        details.append(f"lam={lam:+g}: ci_low={rep.estimate.ci_low:.2g}<="
                       f"{rep.bound.value:.2g}")
        ident = martingale_identity_check(
            "drift_linear", 10**6, 100, 100_000, master_seed=9010,
            lam=lam, threads=THREADS,
        )
        oks.append(abs(ident.z) <= 4)
        details.append(f"z({lam:+g})={ident.z:+.2f}")
    elapsed = time.monotonic() - t0
    report(9, "critical-window", all(oks), f"({'; '.join(details)}, {elapsed:.0f}s)")


_CHILD_SWEEP = """
import json, resource, time
from gnpcrit.explore import GraphParams, sweep_components
from gnpcrit.rng import stream

t0 = time.monotonic()
result = sweep_components(GraphParams.critical(10**9), stream(10010), streaming=True)
elapsed = time.monotonic() - t0
print(json.dumps({
    "largest": result.largest,
    "second": result.second_largest,
    "components": result.components,
    "seconds": elapsed,
    "maxrss_mb": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0,
}))
"""


def test_10_billion_vertex_sweep():
    """n = 10^9 streaming sweep: <= 10 min, <= 100 MB resident, reproducible."""
    t0 = time.monotonic()
    runs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-c", _CHILD_SWEEP],
            capture_output=True, text=True, timeout=660,
        )
        assert proc.returncode == 0, proc.stderr
        runs.append(json.loads(proc.stdout))
    same = (runs[0]["largest"], runs[0]["second"], runs[0]["components"]) == (
        runs[1]["largest"], runs[1]["second"], runs[1]["components"])
    secs = max(r["seconds"] for r in runs)
    rss = max(r["maxrss_mb"] for r in runs)
    ok = same and secs <= 600 and rss <= 100.0
    elapsed = time.monotonic() - t0
    report(10, "billion-vertex-sweep", ok,
           f"(|C1|={runs[0]['largest']}, {secs:.0f}s/run <= 600s, "
           f"rss {rss:.0f}MB <= 100MB, reproducible={same}, total {elapsed:.0f}s)")


def test_11_worker_count_reproducibility():
    """Identical success counts at 1, 4, and 8 worker threads."""
    t0 = time.monotonic()
    def successes(kind, threads, **kw):
        spec = ExperimentSpec(
            kind=kind, params=GraphParams.critical(10**4), trials=5_000,
            master_seed=11011, threads=threads, **kw,
        )
        rep = run_experiment(spec)
        if kind == "two_stage":
            return (rep.estimate.successes,
                    rep.details["stage1"]["estimate"]["successes"])
        return rep.estimate.successes

    ok = True
    for kind, kw in [("tail_c1", {"a_multiplier": 4.0}),
                     ("lower_c1", {"delta": 0.01}),
                     ("two_stage", {"delta": 0.05})]:
        counts = {t: successes(kind, t, **kw) for t in (1, 4, 8)}
        if len(set(counts.values())) != 1:
            ok = False
    elapsed = time.monotonic() - t0
    report(11, "worker-count-reproducibility", ok, f"({elapsed:.0f}s)")
