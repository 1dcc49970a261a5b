"""The barrier walk that dominates the exploration, and its inequalities.

S_0 = 1, S_t = S_{t-1} + Bin(n, 1/n) - 1, stopped at gamma = first time S
hits 0 or the barrier H.  Optional stopping on the martingales S_t and
S_t^2 - (1 - 1/n)t gives three explicit inequalities; this script measures
all of them and the two underlying martingale identities.
"""

import math

import numpy as np

from gnpcrit import _kernels
from gnpcrit.bounds import (
    walk_hit_bound,
    walk_mean_stop_bound,
    walk_positive_at_cap_bound,
)
from gnpcrit.harness import martingale_identity_check

SEED = 777
N = 10**6
TRIALS = 100_000


def measure(barrier):
    gamma = np.empty(TRIALS, dtype=np.int64)
    sfinal = np.empty(TRIALS, dtype=np.int64)
    _kernels.walk_batch(N, 1.0 / N, barrier, 0, SEED, 0, gamma, sfinal)
    hit = np.count_nonzero(sfinal >= barrier) / TRIALS
    _kernels.walk_batch(N, 1.0 / N, barrier, barrier**2, SEED, TRIALS, gamma, sfinal)
    positive_at_cap = np.count_nonzero(sfinal > 0) / TRIALS
    return hit, float(gamma.mean()), positive_at_cap


def inequality_table():
    print("=== walk inequalities at p = 1/n, n = 10^6 ===")
    print(f"{'H':>5} {'P(hit H)':>10} {'<= 1/H':>8} {'E[gamma]':>9} {'<= H+3':>7} "
          f"{'P(S*>0)':>9} {'<= 3/H':>7}")
    for barrier in (10, 30, 100, 300):
        hit, mean_gamma, pos = measure(barrier)
        print(f"{barrier:>5} {hit:>10.4f} {walk_hit_bound(barrier).value:>8.4f} "
              f"{mean_gamma:>9.1f} {walk_mean_stop_bound(barrier, N):>7.0f} "
              f"{pos:>9.4f} {walk_positive_at_cap_bound(barrier, N).value:>7.4f}")
    print("the hit probability tracks 1/H and E[gamma] tracks H + 3 so closely")
    print("that Monte Carlo noise can nudge a cell past its bound at large H;")
    print("the harness verdicts account for that with one-sided confidence slack\n")


def identity_table():
    print("=== stopped-martingale identities (should be 1 within noise) ===")
    for identity in ("mean_S_gamma", "quadratic"):
        rep = martingale_identity_check(identity, 10**3, 10, 500_000, master_seed=SEED)
        print(f"{identity:>13}: mean = {rep.mean:.5f}  (z = {rep.z:+.2f}, "
              f"{rep.trials} trials)")


if __name__ == "__main__":
    inequality_table()
    identity_table()
