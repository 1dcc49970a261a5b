"""Random walks with shifted binomial increments and barrier stopping.

S_0 = 1 and S_t = S_{t-1} + xi_t - 1 with xi_t i.i.d. Binomial(n, p); the
walk stops at gamma = min{t >= 1 : S_t >= H or S_t = 0}, optionally capped
(the capped variant uses cap = H^2 by default).  These walks dominate the
exploration process under the shared-increment coupling, which
``run_coupled`` realizes pathwise via exact hypergeometric thinning.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .exactmath import icbrt_ceil
from .explore import GraphParams
from .rng import RngStream

__all__ = [
    "WalkParams",
    "WalkOutcome",
    "CoupledOutcome",
    "run_walk",
    "run_walk_capped",
    "run_drift_walk",
    "collect_overshoots",
    "run_coupled",
]


@dataclass(frozen=True)
class WalkParams:
    """Increment distribution Bin(n, p), barrier H, optional step cap."""

    n: int
    p: float
    barrier: int
    cap: int | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p!r}")
        if self.barrier < 1:
            raise ValueError(f"barrier must be >= 1, got {self.barrier}")
        if self.cap is not None and self.cap < 1:
            raise ValueError(f"cap must be >= 1 when present, got {self.cap}")


@dataclass(frozen=True)
class WalkOutcome:
    """Stopping data from one run.

    overshoot = s_final - H when the barrier was hit, else None; capped means
    the step cap fired before the walk reached 0 or H (then gamma == cap).
    """

    gamma: int
    s_final: int
    hit_top: bool
    capped: bool
    overshoot: int | None


def _run(params: WalkParams, rng: RngStream) -> WalkOutcome:
    cap = params.cap or 0
    gamma, s_final = _kernels.walk_rng(params.n, params.p, params.barrier, cap, rng)
    hit = s_final >= params.barrier
    capped = bool(cap) and gamma == cap and 0 < s_final < params.barrier
    return WalkOutcome(
        gamma=gamma,
        s_final=s_final,
        hit_top=hit,
        capped=capped,
        overshoot=s_final - params.barrier if hit else None,
    )


def run_walk(params: WalkParams, rng: RngStream) -> WalkOutcome:
    """Run to gamma (or to params.cap if one is set)."""
    return _run(params, rng)


def run_walk_capped(params: WalkParams, rng: RngStream) -> WalkOutcome:
    """Run to gamma* = gamma /\\ H^2.

    The positive-at-cap tail bound this feeds is proved at the critical point
    p = 1/n, so use it there.  The event {S_{gamma*} > 0} is hit_top or
    capped-with-positive-value.
    """
    capped_params = replace(params, cap=params.barrier**2)
    return _run(capped_params, rng)


def run_drift_walk(
    n: int, lam: float, rng: RngStream, barrier: int | None = None
) -> WalkOutcome:
    """Walk with increments Bin(n, p) at p = 1/n + lam * n^(-4/3).

    The barrier defaults to ceil(n^(1/3)), the natural critical-window scale.
    At lam = 0 this coincides in law (and, stream for stream, draw for draw)
    with run_walk at p = 1/n.
    """
    params = drift_walk_params(n, lam, barrier)
    return _run(params, rng)


def drift_walk_params(n: int, lam: float, barrier: int | None = None) -> WalkParams:
    gp = GraphParams.window(n, lam)
    return WalkParams(n=n, p=gp.p, barrier=barrier if barrier is not None else icbrt_ceil(n))


def collect_overshoots(params: WalkParams, trials: int, rng: RngStream) -> np.ndarray:
    """Overshoot sample S_gamma - H over the runs that hit the barrier.

    Draws `trials` walks sequentially from `rng`; the returned array may be
    empty (e.g. p = 0 never hits the top) and the caller decides what that
    means.  The harness tests this sample for stochastic dominance by
    Bin(n, p).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    cap = params.cap or 0
    out = np.empty(0, dtype=np.int64)
    chunk = min(trials, 1_000_000)
    pieces = []
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        gamma = np.empty(m, dtype=np.int64)
        sfinal = np.empty(m, dtype=np.int64)
        _kernels.walk_seq_batch(params.n, params.p, params.barrier, cap, rng, gamma, sfinal)
        hits = sfinal[sfinal >= params.barrier]
        if hits.size:
            pieces.append(hits - params.barrier)
        done += m
    if pieces:
        out = np.concatenate(pieces)
    return out


@dataclass(frozen=True)
class CoupledOutcome:
    """Shared-increment run of the walk and the exploration.

    min_slack = min_t (S_t - Y_t) over t <= gamma; the coupling guarantees
    it is never negative.
    """

    gamma: int
    s_final: int
    y_final: int
    min_slack: int


def run_coupled(params: WalkParams, rng: RngStream) -> CoupledOutcome:
    """Drive S_t and Y_t from the same Bin(n, p) draws.

    eta_t is an exact hypergeometric thinning of xi_t onto the N_{t-1}
    neutral trials, so eta_t has exactly the exploration's increment law,
    xi_t >= eta_t always, and S_t >= Y_t pathwise up to gamma.
    """
    gamma, s_final, y_final, min_slack = _kernels.coupled_rng(
        params.n, params.p, params.barrier, rng
    )
    return CoupledOutcome(gamma=gamma, s_final=s_final, y_final=y_final, min_slack=min_slack)
