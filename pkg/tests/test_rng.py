"""Stream determinism, numpy bit-compatibility, and exactness of the samplers."""

import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

from gnpcrit.rng import (
    RngStream,
    numpy_generator,
    sample_binomial,
    sample_geometric_gap,
    stream,
)


def exact_binomial_pmf(n: int, p: Fraction) -> list[Fraction]:
    """Brute-force pmf by binomial-coefficient enumeration."""
    q = 1 - p
    return [math.comb(n, k) * p**k * q ** (n - k) for k in range(n + 1)]


class TestDeterminism:
    def test_same_key_same_sequence(self):
        a = RngStream(987654321, 17)
        b = RngStream(987654321, 17)
        assert np.array_equal(a.raw(64), b.raw(64))
        assert np.array_equal(a.uniforms(64), b.uniforms(64))
        assert np.array_equal(a.binomials(1000, 0.001, 64), b.binomials(1000, 0.001, 64))

    def test_distinct_streams_differ(self):
        a = RngStream(5, 0)
        b = RngStream(5, 1)
        assert not np.array_equal(a.raw(8), b.raw(8))

    def test_distinct_seeds_differ(self):
        assert not np.array_equal(RngStream(1, 0).raw(8), RngStream(2, 0).raw(8))

    def test_matches_numpy_philox_raw(self):
        for seed, idx in [(0, 0), (5, 0), (123456789, 42), (2**64 - 1, 2**64 - 1)]:
            mine = RngStream(seed, idx).raw(32)
            key = seed | (idx << 64)
            ref = np.random.Philox(key=key).random_raw(32)
            assert np.array_equal(mine, ref), (seed, idx)

    def test_matches_numpy_generator_uniforms(self):
        mine = RngStream(77, 3).uniforms(100)
        ref = numpy_generator(77, 3).random(100)
        assert np.array_equal(mine, ref)

    def test_key_validation(self):
        with pytest.raises(ValueError):
            RngStream(-1)
        with pytest.raises(ValueError):
            RngStream(0, 2**64)


class TestBinomial:
    def test_zero_probability(self):
        rng = stream(1)
        assert all(sample_binomial(n, 0.0, rng) == 0 for n in (0, 1, 7, 10**9))

    def test_certainty(self):
        rng = stream(1)
        assert sample_binomial(7, 1.0, rng) == 7
        assert sample_binomial(0, 1.0, rng) == 0

    def test_range(self):
        rng = stream(2)
        draws = rng.binomials(5, 0.7, 10_000)
        assert draws.min() >= 0 and draws.max() <= 5

    def test_parameter_errors(self):
        rng = stream(3)
        with pytest.raises(ValueError):
            sample_binomial(5, -0.1, rng)
        with pytest.raises(ValueError):
            sample_binomial(5, 1.5, rng)
        with pytest.raises(ValueError):
            sample_binomial(-1, 0.5, rng)

    def test_pmf_n4_half_example(self):
        # enumeration of the 2^4 outcomes gives (1,4,6,4,1)/16
        pmf = exact_binomial_pmf(4, Fraction(1, 2))
        assert pmf == [Fraction(k, 16) for k in (1, 4, 6, 4, 1)]
        self._chi_square_check(4, 0.5, pmf, seed=101)

    @pytest.mark.parametrize("n", range(1, 9))
    @pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
    def test_pmf_chi_square_small_n(self, n, p):
        pmf = exact_binomial_pmf(n, Fraction(p).limit_denominator(10))
        self._chi_square_check(n, p, pmf, seed=1000 + 10 * n + int(10 * p))

    @pytest.mark.parametrize(
        "n,p,seed",
        [(100, 0.4, 7), (300, 0.2, 8), (64, 0.5, 9)],
    )
    def test_pmf_chi_square_rejection_regime(self, n, p, seed):
        # n p > 30 exercises the BTRS path
        pmf = exact_binomial_pmf(n, Fraction(p).limit_denominator(10))
        self._chi_square_check(n, p, pmf, seed=seed, draws=400_000)

    def _chi_square_check(self, n, p, pmf, seed, draws=1_000_000, alpha=0.01):
        rng = stream(seed)
        sample = rng.binomials(n, p, draws)
        counts = np.bincount(sample, minlength=n + 1).astype(np.float64)
        expected = np.array([float(q) * draws for q in pmf])
        # pool cells with tiny expectation into neighbors to keep the
        # chi-square approximation honest
        keep = expected >= 5.0
        chi2 = float(np.sum((counts[keep] - expected[keep]) ** 2 / expected[keep]))
        chi2 += float(
            (counts[~keep].sum() - expected[~keep].sum()) ** 2
            / max(expected[~keep].sum(), 1e-12)
        ) if (~keep).any() else 0.0
        dof = int(keep.sum()) - 1 + (1 if (~keep).any() else 0)
        critical = scipy.stats.chi2.ppf(1 - alpha, dof)
        assert chi2 < critical, f"chi2={chi2:.1f} >= {critical:.1f} at n={n}, p={p}"

    @pytest.mark.parametrize(
        "n,p",
        [(10, 0.3), (1000, 0.001), (10**9, 1e-9), (100, 0.4), (50, 0.9), (200, 0.5)],
    )
    def test_mean_within_four_se(self, n, p):
        m = 1_000_000
        rng = stream(4242 + n % 97)
        draws = rng.binomials(n, p, m)
        se = math.sqrt(n * p * (1 - p) / m)
        assert abs(draws.mean() - n * p) <= 4 * se

    def test_extreme_parameters_inversion_regime(self):
        # N = 1e9, p = 1e-9: Np = 1, must stay cheap and exact-shaped
        rng = stream(55)
        draws = rng.binomials(10**9, 1e-9, 200_000)
        # compare a few pmf points against the exact Poisson-like values
        pmf0 = math.exp(10**9 * math.log1p(-1e-9))
        observed0 = np.count_nonzero(draws == 0) / len(draws)
        assert abs(observed0 - pmf0) < 4 * math.sqrt(pmf0 * (1 - pmf0) / len(draws))


class TestGeometric:
    def test_certainty(self):
        rng = stream(6)
        assert all(sample_geometric_gap(1.0, rng) == 1 for _ in range(100))

    def test_zero_probability_rejected(self):
        rng = stream(6)
        with pytest.raises(ValueError):
            sample_geometric_gap(0.0, rng)

    def test_mean_half(self):
        # E[G] = 1/p = 2 by the geometric series
        m = 1_000_000
        rng = stream(7)
        total = sum(sample_geometric_gap(0.5, rng) for _ in range(m))
        mean = total / m
        se = math.sqrt((1 - 0.5) / 0.5**2 / m)
        assert abs(mean - 2.0) <= 3 * se

    def test_tail_quarter(self):
        # P(G > 4) = 0.75^4 = 0.31640625 by closed-form tail arithmetic
        expected = 0.75**4
        assert expected == 0.31640625
        m = 1_000_000
        rng = stream(8)
        hits = sum(1 for _ in range(m) if sample_geometric_gap(0.25, rng) > 4)
        p_hat = hits / m
        se = math.sqrt(expected * (1 - expected) / m)
        assert abs(p_hat - expected) <= 3 * se


class TestBernoulli:
    def test_edges(self):
        rng = stream(9)
        assert not rng.bernoulli(0.0)
        assert rng.bernoulli(1.0)

    def test_rate(self):
        rng = stream(10)
        m = 200_000
        hits = sum(rng.bernoulli(0.3) for _ in range(m))
        assert abs(hits / m - 0.3) < 4 * math.sqrt(0.3 * 0.7 / m)
