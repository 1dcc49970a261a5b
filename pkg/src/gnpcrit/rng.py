"""Deterministic, splittable random streams and exact discrete sampling.

The generator is Philox4x64-10, a counter-based generator from the Random123
family, keyed by ``(master_seed, stream_index)``.  Distinct keys yield
statistically independent streams, so the stream for Monte Carlo trial i is
derived directly from the trial index: results cannot depend on how trials
are scheduled across workers.

The same keying is exposed by numpy: ``RngStream(seed, i)`` consumes the
identical uniform sequence as
``np.random.Generator(np.random.Philox(key=seed | (i << 64)))``.

Binomial draws are exact for N up to 10^9 and p down to 10^-9 and beyond:
inversion by pmf recurrence seeded from P(0) = exp(N log(1-p)) (log-space, so
(1-p)^N never underflows the computation) with expected O(1 + Np) work, and
Hormann's BTRS transformed rejection for Np > 30.  Neither path approximates
the distribution.
"""

from __future__ import annotations

import numpy as np

from ._kernels import RngStream

__all__ = [
    "RngStream",
    "stream",
    "sample_binomial",
    "sample_geometric_gap",
    "sample_bernoulli",
    "numpy_generator",
]


def stream(master_seed: int, stream_index: int = 0) -> RngStream:
    """Fresh stream for (master_seed, stream_index)."""
    return RngStream(master_seed, stream_index)


def sample_binomial(trials: int, p: float, rng: RngStream) -> int:
    """Exact Binomial(trials, p) variate.

    Raises ValueError for p outside [0, 1] or negative trials.
    """
    return rng.binomial(trials, p)


def sample_geometric_gap(p: float, rng: RngStream) -> int:
    """Variate G with P(G = k) = (1-p)^(k-1) p over k >= 1.

    Used to skip over absent edges when materializing explicit graphs.
    Raises ValueError unless 0 < p <= 1 (at p = 0 the gap would be infinite).
    """
    return rng.geometric_gap(p)


def sample_bernoulli(p: float, rng: RngStream) -> bool:
    return rng.bernoulli(p)


def numpy_generator(master_seed: int, stream_index: int = 0) -> np.random.Generator:
    """numpy view of the stream: same Philox key, same uniform sequence."""
    key = int(master_seed) | (int(stream_index) << 64)
    return np.random.Generator(np.random.Philox(key=key))
