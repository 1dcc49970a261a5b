"""Closed-form tail bounds for component sizes at and near criticality.

Every explicit probability bound is evaluated here with its validity
preconditions tracked: failing a precondition never suppresses the numeric
value, it only flags the report (the raw formula curve is still useful).
Exponents are computed before exponentiation so large A cannot overflow, and
reported probability values are clamped into [0, 1] (raw_value keeps the
unclamped number).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BoundReport",
    "easy_bound_c1",
    "thm1_bounds",
    "thm2_bound",
    "thm5_bounds",
    "c1_tail_bound",
    "cv_tail_bound",
    "walk_hit_bound",
    "walk_positive_at_cap_bound",
    "walk_mean_stop_bound",
    "drift_hit_bound",
    "drift_mean_stop_bound",
    "stage1_failure_bound",
    "stage2_failure_bound",
]


@dataclass(frozen=True)
class BoundReport:
    """A named bound value plus the status of its validity preconditions."""

    name: str
    raw_value: float
    value: float
    valid: bool
    conditions: tuple[tuple[str, bool], ...]


def _report(name: str, raw: float, conditions: tuple[tuple[str, bool], ...]) -> BoundReport:
    return BoundReport(
        name=name,
        raw_value=raw,
        value=min(raw, 1.0),
        valid=all(ok for _, ok in conditions),
        conditions=conditions,
    )


def easy_bound_c1(A: float) -> BoundReport:
    """P(|C1| > A n^(2/3)) <= 6 / A^(3/2), any A > 1."""
    if A <= 0:
        raise ValueError(f"A must be > 0, got {A!r}")
    raw = 6.0 * A**-1.5
    return _report("easy_c1", raw, (("A > 1", A > 1),))


def thm1_bounds(A: float, n: int) -> tuple[BoundReport, BoundReport]:
    """Critical-point upper tails, valid for n > 1000 and A > 8.

    per-vertex: P(|C(v)| > A n^(2/3)) <= 4 n^(-1/3) exp(-A^2 (A-4) / 32)
    largest:    P(|C1|   > A n^(2/3)) <= (4/A)     exp(-A^2 (A-4) / 32)
    """
    if A <= 0:
        raise ValueError(f"A must be > 0, got {A!r}")
    if n <= 0:
        raise ValueError(f"n must be > 0, got {n}")
    conditions = (("n > 1000", n > 1000), ("A > 8", A > 8))
    exponent = -(A * A * (A - 4.0)) / 32.0
    per_vertex = 4.0 * float(n) ** (-1.0 / 3.0) * math.exp(exponent)
    largest = (4.0 / A) * math.exp(exponent)
    return (
        _report("upper_tail_per_vertex", per_vertex, conditions),
        _report("upper_tail_largest", largest, conditions),
    )


def thm2_bound(delta: float, n: int) -> BoundReport:
    """Lower tail: P(|C1| < floor(delta n^(2/3))) <= 15 delta^(3/5),
    valid for 0 < delta < 1/10 and n > 200 / delta^(3/5)."""
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta!r}")
    raw = 15.0 * delta**0.6
    conditions = (
        ("delta < 1/10", delta < 0.1),
        ("n > 200/delta^(3/5)", n > 200.0 / delta**0.6),
    )
    return _report("lower_tail_largest", raw, conditions)


def _window_exponent(A: float, lam: float) -> float:
    core = (A - 1.0) ** 2 / 2.0 - (A - 1.0) * lam - 2.0
    return -(core * core) / (4.0 * A)


def thm5_bounds(A: float, lam: float, n: int) -> tuple[BoundReport, BoundReport]:
    """Critical-window upper tails at p = 1/n + lam n^(-4/3), lam != 0.

    Shared exponent exp(-((A-1)^2/2 - (A-1) lam - 2)^2 / (4A)); prefactors:
      lam > 0: per-vertex (4 lam / (1 - e^(-4 lam)) + 16) n^(-1/3),
               largest (4 lam / (A (1 - e^(-4 lam))) + 16/A)
      lam < 0: per-vertex (-2 lam / (e^(-lam) - 1) + min(5, -1/lam)) n^(-1/3),
               largest (-2 lam / (A (e^(-lam) - 1)) + min(5, -1/lam))
    Validity is asymptotic in n; the reports carry an unquantified
    large-n condition as a reminder.
    """
    if lam == 0.0:
        raise ValueError("lam = 0 is the critical point; use thm1_bounds")
    if A <= 0:
        raise ValueError(f"A must be > 0, got {A!r}")
    if n <= 0:
        raise ValueError(f"n must be > 0, got {n}")
    e = math.exp(_window_exponent(A, lam))
    ncube = float(n) ** (-1.0 / 3.0)
    if lam > 0:
        denom = 1.0 - math.exp(-4.0 * lam)
        pv = (4.0 * lam / denom + 16.0) * ncube * e
        lg = (4.0 * lam / (A * denom) + 16.0 / A) * e
        conditions = (
            ("A > 2*lam + 3", A > 2.0 * lam + 3.0),
            ("n large enough (asymptotic validity, unquantified)", True),
        )
    else:
        denom = math.exp(-lam) - 1.0
        mean_cap = min(5.0, -1.0 / lam)
        pv = (-2.0 * lam / denom + mean_cap) * ncube * e
        lg = (-2.0 * lam / (A * denom) + mean_cap) * e
        conditions = (
            ("A > 3", A > 3.0),
            ("n large enough (asymptotic validity, unquantified)", True),
        )
    return (
        _report("window_tail_per_vertex", pv, conditions),
        _report("window_tail_largest", lg, conditions),
    )


def c1_tail_bound(A: float, n: int, lam: float | None = None) -> BoundReport:
    """Best available bound on P(|C1| > A n^(2/3)).

    At the critical point this is the explicit min of the easy bound and the
    sharper exponential bound (taken only over the pieces whose preconditions
    hold); in the window it is the lam-matched formula.
    """
    if lam:
        _, lg = thm5_bounds(A, lam, n)
        return lg
    easy = easy_bound_c1(A)
    _, sharp = thm1_bounds(A, n)
    candidates = [b for b in (easy, sharp) if b.valid]
    if not candidates:
        return easy
    best = min(candidates, key=lambda b: b.value)
    return BoundReport(
        name=f"min_of_valid({best.name})",
        raw_value=best.raw_value,
        value=best.value,
        valid=True,
        conditions=best.conditions,
    )


def cv_tail_bound(A: float, n: int, lam: float | None = None) -> BoundReport:
    """Per-vertex analogue of c1_tail_bound."""
    if lam:
        pv, _ = thm5_bounds(A, lam, n)
        return pv
    pv, _ = thm1_bounds(A, n)
    return pv


# --- walk and two-stage inequalities -------------------------------------

def walk_hit_bound(barrier: int) -> BoundReport:
    """P(S_gamma >= H) <= 1/H for the zero-drift walk."""
    if barrier < 1:
        raise ValueError(f"barrier must be >= 1, got {barrier}")
    return _report("walk_hit_barrier", 1.0 / barrier, (("H >= 1", True),))


def walk_positive_at_cap_bound(barrier: int, n: int) -> BoundReport:
    """P(S_{gamma*} > 0) <= 3/H at p = 1/n with cap H^2."""
    if barrier < 1:
        raise ValueError(f"barrier must be >= 1, got {barrier}")
    conditions = (("2 <= H <= n - 3", 2 <= barrier <= n - 3),)
    return _report("walk_positive_at_cap", 3.0 / barrier, conditions)


def walk_mean_stop_bound(barrier: int, n: int) -> float:
    """E[gamma] <= H + 3 at p = 1/n for 2 <= H <= n - 3 (an expectation,
    so no probability clamping applies)."""
    if not 2 <= barrier <= n - 3:
        raise ValueError(f"needs 2 <= H <= n - 3, got H={barrier}, n={n}")
    return float(barrier + 3)


def drift_hit_bound(lam: float, n: int) -> BoundReport:
    """P(S_gamma >= H) at p = 1/n + lam n^(-4/3) with H = ceil(n^(1/3)):
    4 lam n^(-1/3) / (1 - e^(-4 lam)) for lam > 0,
    -2 lam n^(-1/3) / (e^(-lam) - 1) for lam < 0."""
    if lam == 0.0:
        raise ValueError("lam = 0 is the critical point; use walk_hit_bound")
    ncube = float(n) ** (-1.0 / 3.0)
    if lam > 0:
        raw = 4.0 * lam * ncube / (1.0 - math.exp(-4.0 * lam))
    else:
        raw = -2.0 * lam * ncube / (math.exp(-lam) - 1.0)
    conditions = (("n large enough (asymptotic validity, unquantified)", True),)
    return _report("drift_walk_hit_barrier", raw, conditions)


def drift_mean_stop_bound(lam: float, n: int) -> float:
    """E[gamma] <= 16 n^(1/3) for lam > 0; <= min(5, -1/lam) n^(1/3) for lam < 0."""
    if lam == 0.0:
        raise ValueError("lam = 0 is the critical point; use walk_mean_stop_bound")
    ncube = float(n) ** (1.0 / 3.0)
    if lam > 0:
        return 16.0 * ncube
    return min(5.0, -1.0 / lam) * ncube


def stage1_failure_bound(h: int, n: int) -> BoundReport:
    """P(no ascent to h within T1 = ceil(n/(8h))) <= 32 h^3 / n."""
    if h < 1 or n < 1:
        raise ValueError(f"need h >= 1 and n >= 1, got h={h}, n={n}")
    conditions = (("h >= 3", h >= 3), ("h < sqrt(n)/4", 16 * h * h < n))
    return _report("stage1_no_ascent", 32.0 * h**3 / n, conditions)


def stage2_failure_bound(h: int, n: int, t2: int) -> BoundReport:
    """P(Y dies within T2 steps of tau_h) <= 32 h^3 / n + 2 T2 / h^2."""
    if h < 1 or n < 1 or t2 < 0:
        raise ValueError(f"need h >= 1, n >= 1, T2 >= 0; got {(h, n, t2)}")
    conditions = (
        ("h >= 3", h >= 3),
        ("h < sqrt(n)/4", 16 * h * h < n),
        ("T2 <= n/(8h)", 8 * h * t2 <= n),
    )
    return _report("stage2_early_death", 32.0 * h**3 / n + 2.0 * t2 / h**2, conditions)
