"""Monte Carlo experiment runner with one-sided bound verdicts.

Each experiment executes `trials` independent runs, one derived stream per
trial (stream_index = trial index), so success counts are bit-identical for
a fixed (spec, master_seed) at any worker count.  Verdicts compare the
one-sided Wilson lower confidence bound at the declared alpha against the
closed-form bound value, never the raw point estimate: "pass" means the data
do not refute the bound at that level.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels, bounds
from ._version import __version__
from .explore import GraphParams, stage_params

__all__ = [
    "KINDS",
    "ExperimentSpec",
    "TailEstimate",
    "VerdictReport",
    "DominanceReport",
    "MartingaleReport",
    "BudgetExceededError",
    "run_experiment",
    "dominance_verdict",
    "martingale_identity_check",
    "wilson_interval",
    "wilson_lower",
    "dkw_epsilon",
    "binomial_cdf",
    "inv_norm_cdf",
    "threshold_floor",
    "write_results",
    "read_results",
]

KINDS = (
    "tail_c1",
    "tail_cv",
    "lower_c1",
    "walk_identity",
    "overshoot_dominance",
    "two_stage",
    "oracle_equivalence",
)

DEFAULT_WORK_BUDGET = 1e11
_BATCH_LIMIT = 1_000_000  # per-chunk trial cap keeps batch arrays small


class BudgetExceededError(RuntimeError):
    """Raised before running when the estimated step count exceeds the budget."""

    def __init__(self, estimated_steps: float, budget: float):
        self.estimated_steps = estimated_steps
        self.budget = budget
        super().__init__(
            f"estimated work {estimated_steps:.3g} steps exceeds budget {budget:.3g}; "
            "raise work_budget to proceed"
        )


# --- small numerics -------------------------------------------------------

def inv_norm_cdf(q: float) -> float:
    """Standard normal quantile, Acklam's rational approximation (~1e-9)."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile argument must be in (0, 1), got {q!r}")
    a = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
    b = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01)
    c = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
         -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
    d = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
         3.754408661907416e+00)
    plow, phigh = 0.02425, 1 - 0.02425
    if q < plow:
        t = math.sqrt(-2.0 * math.log(q))
        return (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) / \
               ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0)
    if q > phigh:
        t = math.sqrt(-2.0 * math.log(1.0 - q))
        return -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) / \
               ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0)
    t = q - 0.5
    r = t * t
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t / \
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)


def wilson_lower(successes: int, trials: int, alpha: float) -> float:
    """One-sided Wilson lower confidence bound at level 1 - alpha."""
    return _wilson(successes, trials, inv_norm_cdf(1.0 - alpha))[0]


def wilson_upper(successes: int, trials: int, alpha: float) -> float:
    return _wilson(successes, trials, inv_norm_cdf(1.0 - alpha))[1]


def wilson_interval(successes: int, trials: int, alpha: float) -> tuple[float, float]:
    """Two-sided Wilson interval at level 1 - alpha."""
    return _wilson(successes, trials, inv_norm_cdf(1.0 - alpha / 2.0))


def _wilson(k: int, m: int, z: float) -> tuple[float, float]:
    if m <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= k <= m:
        raise ValueError(f"successes {k} outside [0, {m}]")
    phat = k / m
    z2 = z * z
    denom = 1.0 + z2 / m
    center = (phat + z2 / (2.0 * m)) / denom
    radius = z * math.sqrt(phat * (1.0 - phat) / m + z2 / (4.0 * m * m)) / denom
    return max(0.0, center - radius), min(1.0, center + radius)


def dkw_epsilon(m: int, alpha: float) -> float:
    """Empirical-CDF slack sqrt(ln(2/alpha) / (2m))."""
    if m <= 0:
        raise ValueError("sample size must be positive")
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * m))


def binomial_cdf(n: int, p: float, k_max: int) -> np.ndarray:
    """Exact Binomial(n, p) CDF on 0..k_max by pmf-recurrence summation.

    The pmf starts from P(0) = exp(n log(1-p)) in log space, so extreme
    (n, p) like (10^9, 10^-9) are handled without underflow.
    """
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"bad binomial parameters n={n}, p={p!r}")
    out = np.empty(k_max + 1, dtype=np.float64)
    if p == 1.0:
        out[:] = 0.0
        if k_max >= n:
            out[n:] = 1.0
        return out
    q = 1.0 - p
    r = p / q
    pmf = math.exp(n * math.log1p(-p))
    total = pmf
    out[0] = total
    for k in range(1, k_max + 1):
        pmf *= r * (n - k + 1) / k if k <= n else 0.0
        total = min(1.0, total + pmf)
        out[k] = total
    return out


def threshold_floor(mult: float, n: int) -> int:
    """floor(mult * n^(2/3)) with an exact integer floor (n^(2/3) is
    irrational for most n, so this is decided in exact arithmetic)."""
    from .exactmath import floor_mul_npow

    return floor_mul_npow(mult, n, 2, 3)


# --- reports ---------------------------------------------------------------

@dataclass(frozen=True)
class TailEstimate:
    """Event-probability estimate with one-sided Wilson bounds at alpha."""

    successes: int
    trials: int
    p_hat: float
    ci_low: float
    ci_high: float
    alpha: float

    @classmethod
    def from_counts(cls, successes: int, trials: int, alpha: float) -> "TailEstimate":
        return cls(
            successes=successes,
            trials=trials,
            p_hat=successes / trials,
            ci_low=wilson_lower(successes, trials, alpha),
            ci_high=wilson_upper(successes, trials, alpha),
            alpha=alpha,
        )


@dataclass(frozen=True)
class DominanceReport:
    """One-sided empirical-CDF dominance test with DKW slack.

    passed is None for an empty sample (indeterminate, not failed);
    max_gap is the largest amount the reference CDF exceeds the empirical
    CDF anywhere on [0, max(sample)].
    """

    passed: bool | None
    max_gap: float
    epsilon: float
    sample_size: int


@dataclass(frozen=True)
class MartingaleReport:
    """z-score of a stopped-martingale mean against its initial value 1."""

    identity: str
    mean: float
    se: float
    z: float
    trials: int

    @property
    def passed(self) -> bool:
        return abs(self.z) <= 4.0


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one experiment.

    Exactly one of a_multiplier / delta / barrier applies, depending on kind;
    thresholds in units of n^(2/3) are floored exactly.
    """

    kind: str
    params: GraphParams
    trials: int
    master_seed: int = 0
    alpha: float = 0.01
    a_multiplier: float | None = None
    delta: float | None = None
    barrier: int | None = None
    threads: int = 1
    work_budget: float = DEFAULT_WORK_BUDGET

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha!r}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")

    def threshold(self) -> int | None:
        """floor(A n^(2/3)) or floor(delta n^(2/3)), whichever applies."""
        if self.kind in ("tail_c1", "tail_cv") and self.a_multiplier is not None:
            return threshold_floor(self.a_multiplier, self.params.n)
        if self.kind in ("lower_c1",) and self.delta is not None:
            return threshold_floor(self.delta, self.params.n)
        return None


@dataclass(frozen=True)
class VerdictReport:
    """Estimate vs bound, with a manifest sufficient to reproduce the run."""

    spec: ExperimentSpec
    estimate: TailEstimate | None
    bound: bounds.BoundReport | None
    passed: bool | None
    details: dict
    manifest: dict


# --- execution -------------------------------------------------------------

def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = total // parts
    extra = total % parts
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _parallel(fn, trials: int, threads: int) -> None:
    """Run fn(lo, hi) over contiguous trial ranges; results must be written
    into disjoint slices keyed by trial index, so scheduling cannot matter."""
    spans = []
    for lo, hi in _chunks(trials, threads * 4):
        spans.append((lo, hi))
    if threads == 1:
        for lo, hi in spans:
            fn(lo, hi)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in spans]
        for f in futures:
            f.result()


def _estimate_steps(spec: ExperimentSpec) -> float:
    n = spec.params.n
    p = spec.params.p
    if spec.kind in ("tail_c1", "lower_c1"):
        return float(spec.trials) * n
    if spec.kind == "tail_cv":
        near_critical = n * p <= 1.2
        per = min(n, 30 * n ** (1 / 3)) if near_critical else n
        return float(spec.trials) * per
    if spec.kind == "oracle_equivalence":
        return 2.0 * spec.trials * n
    if spec.kind in ("walk_identity", "overshoot_dominance"):
        h = spec.barrier or 0
        return float(spec.trials) * 5.0 * (h + 3)
    if spec.kind == "two_stage":
        sp = stage_params(spec.delta, n)
        return float(spec.trials) * (sp.t1 + sp.t2)
    return float(spec.trials) * n


def _jsonify(obj):
    """Canonicalize details/manifest values so reports round-trip via JSON."""
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def run_experiment(spec: ExperimentSpec) -> VerdictReport:
    """Execute the experiment and attach the matching closed-form bound."""
    est = _estimate_steps(spec)
    if est > spec.work_budget:
        raise BudgetExceededError(est, spec.work_budget)
    t0 = time.monotonic()
    handler = _HANDLERS[spec.kind]
    estimate, bound, passed, details = handler(spec)
    manifest = {
        "seed": spec.master_seed,
        "params": asdict(spec.params),
        "version": __version__,
        "wall_time_s": time.monotonic() - t0,
        "threads": spec.threads,
        "estimated_steps": est,
    }
    return VerdictReport(
        spec=spec, estimate=estimate, bound=bound, passed=passed,
        details=_jsonify(details), manifest=manifest,
    )


def _tail_pass(estimate: TailEstimate, bound: bounds.BoundReport) -> bool:
    return estimate.ci_low <= bound.value


def _run_sweep_tail(spec: ExperimentSpec, threshold: int, stop_if_ge: int):
    n, p = spec.params.n, spec.params.p
    largest = np.empty(spec.trials, dtype=np.int64)
    second = np.empty(spec.trials, dtype=np.int64)

    def work(lo: int, hi: int) -> None:
        _kernels.sweep_batch(n, p, spec.master_seed, lo, stop_if_ge,
                             largest[lo:hi], second[lo:hi])

    _parallel(work, spec.trials, spec.threads)
    return largest


def _handle_tail_c1(spec: ExperimentSpec):
    if spec.a_multiplier is None:
        raise ValueError("tail_c1 needs a_multiplier")
    t = spec.threshold()
    largest = _run_sweep_tail(spec, t, stop_if_ge=t + 1)
    successes = int(np.count_nonzero(largest > t))
    estimate = TailEstimate.from_counts(successes, spec.trials, spec.alpha)
    bound = bounds.c1_tail_bound(spec.a_multiplier, spec.params.n, spec.params.lam)
    return estimate, bound, _tail_pass(estimate, bound), {"threshold": t}


def _handle_tail_cv(spec: ExperimentSpec):
    if spec.a_multiplier is None:
        raise ValueError("tail_cv needs a_multiplier")
    t = spec.threshold()
    n, p = spec.params.n, spec.params.p
    sizes = np.empty(spec.trials, dtype=np.int64)

    def work(lo: int, hi: int) -> None:
        _kernels.explore_batch(n, p, spec.master_seed, lo, sizes[lo:hi])

    _parallel(work, spec.trials, spec.threads)
    successes = int(np.count_nonzero(sizes > t))
    estimate = TailEstimate.from_counts(successes, spec.trials, spec.alpha)
    bound = bounds.cv_tail_bound(spec.a_multiplier, n, spec.params.lam)
    return estimate, bound, _tail_pass(estimate, bound), {"threshold": t}


def _handle_lower_c1(spec: ExperimentSpec):
    if spec.delta is None:
        raise ValueError("lower_c1 needs delta")
    t = spec.threshold()
    largest = _run_sweep_tail(spec, t, stop_if_ge=t)
    successes = int(np.count_nonzero(largest < t))
    estimate = TailEstimate.from_counts(successes, spec.trials, spec.alpha)
    bound = bounds.thm2_bound(spec.delta, spec.params.n)
    return estimate, bound, _tail_pass(estimate, bound), {"threshold": t}


def _handle_two_stage(spec: ExperimentSpec):
    if spec.delta is None:
        raise ValueError("two_stage needs delta")
    n, p = spec.params.n, spec.params.p
    sp = stage_params(spec.delta, n)
    tau_h = np.empty(spec.trials, dtype=np.int64)
    reached = np.empty(spec.trials, dtype=np.uint8)
    tau0 = np.empty(spec.trials, dtype=np.int64)
    survived = np.empty(spec.trials, dtype=np.uint8)

    def work(lo: int, hi: int) -> None:
        _kernels.two_stage_batch(n, p, sp.h, sp.t1, sp.t2, spec.master_seed, lo,
                                 tau_h[lo:hi], reached[lo:hi],
                                 tau0[lo:hi], survived[lo:hi])

    _parallel(work, spec.trials, spec.threads)
    fail1 = int(np.count_nonzero(reached == 0))
    fail2 = int(np.count_nonzero(tau0 < sp.t2))
    est1 = TailEstimate.from_counts(fail1, spec.trials, spec.alpha)
    est2 = TailEstimate.from_counts(fail2, spec.trials, spec.alpha)
    b1 = bounds.stage1_failure_bound(sp.h, n)
    b2 = bounds.stage2_failure_bound(sp.h, n, sp.t2)
    ok = _tail_pass(est1, b1) and _tail_pass(est2, b2)
    details = {
        "stage_params": {"h": sp.h, "t1": sp.t1, "t2": sp.t2,
                         "conditions": list(sp.conditions)},
        "stage1": {"estimate": asdict(est1), "bound": asdict(b1),
                   "passed": _tail_pass(est1, b1)},
    }
    return est2, b2, ok, details


def _handle_overshoot(spec: ExperimentSpec):
    if spec.barrier is None:
        raise ValueError("overshoot_dominance needs barrier")
    n, p, h = spec.params.n, spec.params.p, spec.barrier
    overshoots = []
    hits = 0
    done = 0
    while done < spec.trials:
        m = min(_BATCH_LIMIT, spec.trials - done)
        gamma = np.empty(m, dtype=np.int64)
        sfinal = np.empty(m, dtype=np.int64)

        def work(lo: int, hi: int, base=done) -> None:
            _kernels.walk_batch(n, p, h, 0, spec.master_seed, base + lo,
                                gamma[lo:hi], sfinal[lo:hi])

        _parallel(work, m, spec.threads)
        top = sfinal[sfinal >= h]
        hits += int(top.size)
        if top.size:
            overshoots.append(top - h)
        done += m
    sample = np.concatenate(overshoots) if overshoots else np.empty(0, dtype=np.int64)
    report = dominance_verdict(sample, n, p, spec.alpha)
    estimate = TailEstimate.from_counts(hits, spec.trials, spec.alpha)
    details = {"dominance": asdict(report), "conditioned_samples": hits}
    return estimate, None, report.passed, details


def _handle_walk_identity(spec: ExperimentSpec):
    if spec.barrier is None:
        raise ValueError("walk_identity needs barrier")
    lam = spec.params.lam
    reports = []
    if lam:
        reports.append(martingale_identity_check(
            "drift_linear", spec.params.n, spec.barrier, spec.trials,
            master_seed=spec.master_seed, lam=lam, threads=spec.threads))
    else:
        for identity in ("mean_S_gamma", "quadratic"):
            reports.append(martingale_identity_check(
                identity, spec.params.n, spec.barrier, spec.trials,
                master_seed=spec.master_seed, threads=spec.threads))
    ok = all(r.passed for r in reports)
    details = {"identities": [asdict(r) for r in reports]}
    return None, None, ok, details


def _handle_oracle_equivalence(spec: ExperimentSpec):
    from .oracle import enumerate_exact

    n, p = spec.params.n, spec.params.p
    sizes = np.empty(spec.trials, dtype=np.int64)
    largest = np.empty(spec.trials, dtype=np.int64)
    second = np.empty(spec.trials, dtype=np.int64)

    def work_cv(lo: int, hi: int) -> None:
        _kernels.explore_batch(n, p, spec.master_seed, lo, sizes[lo:hi])

    def work_c1(lo: int, hi: int) -> None:
        # sweep trials use stream indices above the explore trials
        _kernels.sweep_batch(n, p, spec.master_seed, spec.trials + lo, 0,
                             largest[lo:hi], second[lo:hi])

    _parallel(work_cv, spec.trials, spec.threads)
    _parallel(work_c1, spec.trials, spec.threads)
    dist_cv, dist_c1 = enumerate_exact(n, p)
    tv_cv = dist_cv.tv_distance(sizes)
    tv_c1 = dist_c1.tv_distance(largest)
    tol = 0.005
    ok = tv_cv <= tol and tv_c1 <= tol
    details = {"tv_cv": tv_cv, "tv_c1": tv_c1, "tolerance": tol}
    return None, None, ok, details


_HANDLERS = {
    "tail_c1": _handle_tail_c1,
    "tail_cv": _handle_tail_cv,
    "lower_c1": _handle_lower_c1,
    "two_stage": _handle_two_stage,
    "overshoot_dominance": _handle_overshoot,
    "walk_identity": _handle_walk_identity,
    "oracle_equivalence": _handle_oracle_equivalence,
}


def dominance_verdict(
    sample: np.ndarray, n: int, p: float, alpha: float = 0.01
) -> DominanceReport:
    """Test whether the sample is stochastically dominated by Binomial(n, p).

    One-sided: pass iff the empirical CDF sits above the exact binomial CDF
    minus the DKW slack everywhere on [0, max(sample)].  An empty sample is
    indeterminate (passed=None), not a failure.
    """
    sample = np.asarray(sample)
    m = int(sample.size)
    if m == 0:
        return DominanceReport(passed=None, max_gap=float("nan"), epsilon=float("nan"),
                               sample_size=0)
    if sample.min() < 0:
        raise ValueError("overshoot sample must be nonnegative")
    k_max = int(sample.max())
    counts = np.bincount(sample, minlength=k_max + 1)
    emp_cdf = np.cumsum(counts) / m
    ref_cdf = binomial_cdf(n, p, k_max)
    eps = dkw_epsilon(m, alpha)
    max_gap = float(np.max(ref_cdf - emp_cdf))
    return DominanceReport(passed=max_gap <= eps, max_gap=max_gap, epsilon=eps,
                           sample_size=m)


def martingale_identity_check(
    identity: str,
    n: int,
    barrier: int,
    trials: int,
    master_seed: int = 0,
    lam: float = 0.0,
    threads: int = 1,
) -> MartingaleReport:
    """Estimate a stopped-martingale mean and report its z-score against 1.

    mean_S_gamma: E[S_gamma] = 1 at p = 1/n.
    quadratic:    E[S_gamma^2 - (1 - 1/n) gamma] = 1 at p = 1/n.
    drift_linear: E[S_gamma - lam n^(-1/3) gamma] = 1 at p = 1/n + lam n^(-4/3).
    """
    if identity not in ("mean_S_gamma", "quadratic", "drift_linear"):
        raise ValueError(f"unknown identity {identity!r}")
    if identity == "drift_linear":
        if lam == 0.0:
            raise ValueError("drift_linear needs lam != 0")
        p = GraphParams.window(n, lam).p
    else:
        if lam:
            raise ValueError(f"{identity} is a critical-point identity (lam must be 0)")
        p = 1.0 / n
    gamma = np.empty(trials, dtype=np.int64)
    sfinal = np.empty(trials, dtype=np.int64)

    def work(lo: int, hi: int) -> None:
        _kernels.walk_batch(n, p, barrier, 0, master_seed, lo,
                            gamma[lo:hi], sfinal[lo:hi])

    _parallel(work, trials, threads)
    if identity == "mean_S_gamma":
        x = sfinal.astype(np.float64)
    elif identity == "quadratic":
        x = sfinal.astype(np.float64) ** 2 - (1.0 - 1.0 / n) * gamma
    else:
        x = sfinal.astype(np.float64) - lam * float(n) ** (-1.0 / 3.0) * gamma
    mean = float(np.mean(x))
    se = float(np.std(x, ddof=1) / math.sqrt(trials))
    z = (mean - 1.0) / se if se > 0 else math.inf * np.sign(mean - 1.0)
    return MartingaleReport(identity=identity, mean=mean, se=se, z=z, trials=trials)


# --- persistence ------------------------------------------------------------

def _report_to_dict(r: VerdictReport) -> dict:
    return {
        "spec": asdict(r.spec),
        "estimate": asdict(r.estimate) if r.estimate else None,
        "bound": asdict(r.bound) if r.bound else None,
        "passed": r.passed,
        "details": r.details,
        "manifest": r.manifest,
    }


def _report_from_dict(d: dict) -> VerdictReport:
    sd = dict(d["spec"])
    sd["params"] = GraphParams(**sd["params"])
    spec = ExperimentSpec(**sd)
    est = TailEstimate(**d["estimate"]) if d["estimate"] else None
    bd = None
    if d["bound"]:
        b = dict(d["bound"])
        b["conditions"] = tuple((c, ok) for c, ok in b["conditions"])
        bd = bounds.BoundReport(**b)
    return VerdictReport(
        spec=spec, estimate=est, bound=bd, passed=d["passed"],
        details=d["details"], manifest=d["manifest"],
    )


_CSV_FIELDS = (
    "kind", "n", "p", "lambda", "threshold", "trials",
    "p_hat", "ci_low", "ci_high", "bound", "bound_valid", "passed",
)


def _csv_row(r: VerdictReport) -> dict:
    return {
        "kind": r.spec.kind,
        "n": r.spec.params.n,
        "p": repr(r.spec.params.p),
        "lambda": "" if r.spec.params.lam is None else repr(r.spec.params.lam),
        "threshold": "" if r.spec.threshold() is None else r.spec.threshold(),
        "trials": r.spec.trials,
        "p_hat": "" if r.estimate is None else repr(r.estimate.p_hat),
        "ci_low": "" if r.estimate is None else repr(r.estimate.ci_low),
        "ci_high": "" if r.estimate is None else repr(r.estimate.ci_high),
        "bound": "" if r.bound is None else repr(r.bound.value),
        "bound_valid": "" if r.bound is None else r.bound.valid,
        "passed": r.passed,
    }


def write_results(reports, path, fmt: str = "jsonl") -> None:
    """Persist reports; jsonl carries everything, csv one summary row each."""
    reports = list(reports)
    try:
        if fmt == "jsonl":
            with open(path, "w") as f:
                for r in reports:
                    f.write(json.dumps(_report_to_dict(r)) + "\n")
        elif fmt == "csv":
            with open(path, "w", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=_CSV_FIELDS)
                writer.writeheader()
                for r in reports:
                    writer.writerow(_csv_row(r))
        else:
            raise ValueError(f"unknown format {fmt!r}; expected 'jsonl' or 'csv'")
    except OSError as e:
        raise OSError(f"failed to write results to {path}: {e}") from e


def read_results(path) -> list[VerdictReport]:
    """Parse a jsonl results file back into reports."""
    out = []
    try:
        with open(path) as f:
            for line in f:
                line = line.strip()
                if line:
                    out.append(_report_from_dict(json.loads(line)))
    except OSError as e:
        raise OSError(f"failed to read results from {path}: {e}") from e
    return out
