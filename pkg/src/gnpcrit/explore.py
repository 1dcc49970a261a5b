"""The exploration process at the process level: counts only, no vertex identities.

State is O(1): at step t the walk Y_t counts active vertices, and the next
increment is Binomial(N_{t-1}, p) over the N_{t-1} = n - Y_{t-1} - (t-1)
- [Y_{t-1}=0] neutral vertices.  Zeros of Y are component boundaries; the
single-component run returns |C(v)| exactly in distribution, and the full
sweep partitions all n vertices.  This is what makes n = 10^9 feasible;
graph-level exploration lives in the oracle module for cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .exactmath import ceil_div, floor_mul_npow, floor_root
from .rng import RngStream

__all__ = [
    "GraphParams",
    "SweepResult",
    "StageParams",
    "TwoStageOutcome",
    "ExplorationRun",
    "explore_component",
    "sweep_components",
    "stage_params",
    "run_two_stage",
]

# recording every component size for huge n defeats the point of streaming
SIZES_MODE_MAX_N = 10**7

# opt-in traces are capped so a near-giant exploration cannot allocate
# an accidental multi-GB array
DEFAULT_TRACE_CAP = 10**7


@dataclass(frozen=True)
class GraphParams:
    """Model parameters for G(n, p), optionally in the critical window.

    When built via :meth:`window`, p = 1/n + lam * n^(-4/3) is evaluated in
    80-bit extended precision and rounded once to a binary double (within
    half an ulp of the exact value); the stored double is the single source
    of truth afterwards.
    """

    n: int
    p: float
    lam: float | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p!r}")

    @classmethod
    def critical(cls, n: int) -> "GraphParams":
        """p = 1/n exactly (as a double), the critical point."""
        return cls(n=n, p=1.0 / n, lam=0.0)

    @classmethod
    def window(cls, n: int, lam: float) -> "GraphParams":
        """p = 1/n + lam * n^(-4/3), the critical window."""
        ln = np.longdouble(n)
        p_ext = 1.0 / ln + np.longdouble(lam) * ln ** np.longdouble(-4.0 / 3.0)
        p = float(p_ext)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"window parameters leave [0, 1]: n={n}, lam={lam}")
        return cls(n=n, p=p, lam=lam)


@dataclass(frozen=True)
class SweepResult:
    """Component sizes from one full sweep.

    sizes is None in streaming mode; largest/second_largest/components are
    always populated.  In sizes mode sum(sizes) == n exactly, every run.
    """

    largest: int
    second_largest: int
    components: int
    sizes: np.ndarray | None = None


@dataclass(frozen=True)
class ExplorationRun:
    size: int
    trace: np.ndarray | None = None


def explore_component(
    params: GraphParams,
    rng: RngStream,
    record_trace: bool = False,
    trace_cap: int = DEFAULT_TRACE_CAP,
) -> ExplorationRun:
    """Explore the component of a single vertex; size is exactly |C(v)|.

    Runs Y_0 = 1 and Y_t = Y_{t-1} + Bin(N_{t-1}, p) - 1 until the first zero
    at step tau; the trace (opt-in) holds Y_1..Y_tau, truncated at trace_cap.
    """
    cap = trace_cap if record_trace else 0
    size, trace = _kernels.explore_component_rng(params.n, params.p, rng, cap)
    return ExplorationRun(size=size, trace=trace)


def sweep_components(
    params: GraphParams,
    rng: RngStream,
    streaming: bool | None = None,
    stop_if_component_ge: int = 0,
) -> SweepResult:
    """Run the exploration over all n vertices, splitting at zeros of Y.

    streaming=None picks sizes mode for n <= 10^7 and streaming above.  With
    stop_if_component_ge = T > 0 (streaming only) the sweep halts as soon as
    some component provably has size >= T, which decides the events
    {largest >= T} / {largest < T} exactly at a fraction of the work.
    """
    if streaming is None:
        streaming = params.n > SIZES_MODE_MAX_N
    if not streaming:
        if params.n > SIZES_MODE_MAX_N:
            raise ValueError(
                f"sizes mode allocates O(n) memory; refusing n={params.n} > {SIZES_MODE_MAX_N}"
            )
        if stop_if_component_ge:
            raise ValueError("early stop requires streaming mode")
        sizes = _kernels.sweep_sizes_rng(params.n, params.p, rng)
        order = np.sort(sizes)
        largest = int(order[-1])
        second = int(order[-2]) if len(order) > 1 else 0
        return SweepResult(
            largest=largest, second_largest=second, components=len(sizes), sizes=sizes
        )
    largest, second, ncomp, _steps, _stopped = _kernels.sweep_rng(
        params.n, params.p, rng, stop_if_component_ge
    )
    return SweepResult(largest=largest, second_largest=second, components=ncomp)


@dataclass(frozen=True)
class StageParams:
    """Two-stage parameters (ascent height h, stage horizons T1, T2).

    conditions lists the side conditions the two-stage tail bounds rely on,
    each with its status for these values.
    """

    h: int
    t1: int
    t2: int
    conditions: tuple[tuple[str, bool], ...]

    @property
    def all_conditions_hold(self) -> bool:
        return all(ok for _, ok in self.conditions)


def stage_params(delta: float, n: int) -> StageParams:
    """Evaluate h = floor((delta/24)^(1/5) n^(1/3)), T1 = ceil(n/(8h)),
    T2 = floor(delta n^(2/3)) with exact integer floors/ceilings.

    Requires 0 < delta < 1/10 and n > 200 / delta^(3/5).
    """
    if not 0.0 < delta < 0.1:
        raise ValueError(f"delta must be in (0, 1/10), got {delta!r}")
    d = Fraction(delta)
    # n > 200/delta^(3/5)  <=>  n^5 delta^3 > 200^5, exactly
    if Fraction(n) ** 5 * d**3 <= 200**5:
        raise ValueError(f"n must exceed 200/delta^(3/5); n={n} is too small for delta={delta!r}")
    t2 = floor_mul_npow(delta, n, 2, 3)
    # h <= (delta/24)^(1/5) n^(1/3)  <=>  h^15 <= (delta/24)^3 n^5
    h = floor_root((d / 24) ** 3 * Fraction(n) ** 5, 15)
    if h < 1:
        raise ValueError(f"ascent height floor((delta/24)^(1/5) n^(1/3)) = 0 at delta={delta!r}, n={n}")
    t1 = ceil_div(n, 8 * h)
    conditions = (
        ("h >= 3", h >= 3),
        ("h < sqrt(n)/4", 16 * h * h < n),
        ("T2 <= n/(8h)", 8 * h * t2 <= n),
    )
    return StageParams(h=h, t1=t1, t2=t2, conditions=conditions)


@dataclass(frozen=True)
class TwoStageOutcome:
    """Ascent and survival diagnostics for one run.

    tau_h is capped at T1 (reached_h tells whether Y actually hit h); tau_0
    counts steps after tau_h until Y hits zero, capped at T2; survived means
    Y stayed positive through all T2 stage-2 steps.
    """

    tau_h: int
    reached_h: bool
    tau_0: int
    survived: bool


def run_two_stage(
    params: GraphParams, h: int, t1: int, t2: int, rng: RngStream
) -> TwoStageOutcome:
    """Run the exploration through stage 1 (ascent to h by T1) and stage 2
    (staying positive for T2 further steps)."""
    if h < 1 or t1 < 1 or t2 < 0:
        raise ValueError(f"need h >= 1, T1 >= 1, T2 >= 0; got {(h, t1, t2)}")
    tau_h, reached, tau0, survived = _kernels.two_stage_rng(
        params.n, params.p, h, t1, t2, rng
    )
    return TwoStageOutcome(tau_h=tau_h, reached_h=reached, tau_0=tau0, survived=survived)
