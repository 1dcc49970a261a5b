# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Sequential simulation kernels.

Counter-based Philox4x64-10 streams, exact discrete sampling (binomial by
inversion / transformed rejection, geometric by inverse CDF), and the tight
loops for exploration sweeps, barrier walks and the two-stage process.
Everything is allocation-free past setup so a full sweep at n = 10^9 runs in
bounded memory, and the trial loops release the GIL so batches parallelize
across threads.
"""

import numpy as np

from libc.math cimport exp, fabs, floor, lgamma, log, log1p, sqrt
from libc.stdint cimport int64_t, uint64_t, uint8_t


# ---------------------------------------------------------------------------
# Philox4x64-10 (Random123 family).  Bit-compatible with numpy.random.Philox
# keyed as key = master_seed | (stream_index << 64); see tests for the
# cross-check against numpy's raw output.
# ---------------------------------------------------------------------------

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t gnp_mulhi64(uint64_t a, uint64_t b) {
        return (uint64_t)(((__uint128_t)a * b) >> 64);
    }
    """
    uint64_t gnp_mulhi64(uint64_t a, uint64_t b) noexcept nogil

cdef uint64_t PHILOX_M0 = <uint64_t>0xD2E7470EE14C6C93ULL
cdef uint64_t PHILOX_M1 = <uint64_t>0xCA5A826395121157ULL
cdef uint64_t PHILOX_W0 = <uint64_t>0x9E3779B97F4A7C15ULL
cdef uint64_t PHILOX_W1 = <uint64_t>0xBB67AE8584CAA73BULL

cdef double INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53


cdef struct Stream:
    uint64_t c0, c1, c2, c3      # 256-bit block counter
    uint64_t k0, k1              # key = (master_seed, stream_index)
    uint64_t buf_0, buf_1, buf_2, buf_3
    int pos                      # next buffer slot, 4 = buffer exhausted


cdef inline void stream_init(Stream *s, uint64_t seed, uint64_t idx) noexcept nogil:
    s.c0 = 0; s.c1 = 0; s.c2 = 0; s.c3 = 0
    s.k0 = seed
    s.k1 = idx
    s.pos = 4


cdef inline void _refill(Stream *s) noexcept nogil:
    cdef uint64_t x0, x1, x2, x3, k0, k1, hi0, lo0, hi1, lo1
    cdef int r
    # counter is incremented before each block, matching numpy's Philox
    s.c0 += 1
    if s.c0 == 0:
        s.c1 += 1
        if s.c1 == 0:
            s.c2 += 1
            if s.c2 == 0:
                s.c3 += 1
    x0 = s.c0; x1 = s.c1; x2 = s.c2; x3 = s.c3
    k0 = s.k0; k1 = s.k1
    for r in range(10):
        if r > 0:
            k0 += PHILOX_W0
            k1 += PHILOX_W1
        hi0 = gnp_mulhi64(PHILOX_M0, x0)
        lo0 = PHILOX_M0 * x0
        hi1 = gnp_mulhi64(PHILOX_M1, x2)
        lo1 = PHILOX_M1 * x2
        x0 = hi1 ^ x1 ^ k0
        x1 = lo1
        x2 = hi0 ^ x3 ^ k1
        x3 = lo0
    s.buf_0 = x0; s.buf_1 = x1; s.buf_2 = x2; s.buf_3 = x3
    s.pos = 0


cdef inline uint64_t nxt_u64(Stream *s) noexcept nogil:
    cdef uint64_t out
    if s.pos >= 4:
        _refill(s)
    if s.pos == 0:
        out = s.buf_0
    elif s.pos == 1:
        out = s.buf_1
    elif s.pos == 2:
        out = s.buf_2
    else:
        out = s.buf_3
    s.pos += 1
    return out


cdef inline double nxt_double(Stream *s) noexcept nogil:
    return <double>(nxt_u64(s) >> 11) * INV_2_53


# ---------------------------------------------------------------------------
# Exact discrete sampling
# ---------------------------------------------------------------------------

cdef int64_t c_binom_inv(int64_t n, double p, double logq, Stream *s) noexcept nogil:
    # Inversion by pmf recurrence from P(0) = exp(n log(1-p)).
    # Expected O(1 + n p) iterations.  The restart bound sits > 10 sigma above
    # the mean, where the binomial tail is far below the 2^-53 resolution of
    # the uniform, so the restart never biases a representable draw.
    cdef double q = 1.0 - p
    cdef double r = p / q
    cdef double qn = exp(<double>n * logq)
    cdef double px, u
    cdef int64_t x, bound
    bound = <int64_t>(<double>n * p + 10.0 * sqrt(<double>n * p * q + 1.0)) + 20
    if bound > n:
        bound = n
    while True:
        u = nxt_double(s)
        x = 0
        px = qn
        while u > px:
            x += 1
            if x > bound:
                break
            u -= px
            px *= r * <double>(n - x + 1) / <double>x
        if x <= bound:
            return x


cdef int64_t c_binom_btrs(int64_t n, double p, Stream *s) noexcept nogil:
    # Hormann's BTRS transformed-rejection sampler; exact for n p >= 10 and
    # p <= 1/2 (the final accept evaluates the exact log-pmf ratio).
    cdef double fn = <double>n
    cdef double q = 1.0 - p
    cdef double spq = sqrt(fn * p * q)
    cdef double b = 1.15 + 2.53 * spq
    cdef double a = -0.0873 + 0.0248 * b + 0.01 * p
    cdef double c = fn * p + 0.5
    cdef double vr = 0.92 - 4.2 / b
    cdef double alpha = (2.83 + 5.1 / b) * spq
    cdef double lpq = log(p / q)
    cdef int64_t m = <int64_t>floor((fn + 1.0) * p)
    cdef double hh = lgamma(<double>m + 1.0) + lgamma(fn - <double>m + 1.0)
    cdef double u, v, us
    cdef int64_t k
    while True:
        u = nxt_double(s) - 0.5
        v = nxt_double(s)
        us = 0.5 - fabs(u)
        k = <int64_t>floor((2.0 * a / us + b) * u + c)
        if k < 0 or k > n:
            continue
        if us >= 0.07 and v <= vr:
            return k
        v = log(v * alpha / (a / (us * us) + b))
        if v <= hh - lgamma(<double>k + 1.0) - lgamma(fn - <double>k + 1.0) \
                + (<double>k - <double>m) * lpq:
            return k


cdef inline int64_t c_binom_half(int64_t n, double p, double logq, Stream *s) noexcept nogil:
    # p restricted to [0, 1/2]; logq = log1p(-p) precomputed by flat-p loops
    if n <= 0 or p <= 0.0:
        return 0
    if <double>n * p <= 30.0:
        return c_binom_inv(n, p, logq, s)
    return c_binom_btrs(n, p, s)


cdef inline int64_t c_binom_step(int64_t n, double p, double logq, bint refl, Stream *s) noexcept nogil:
    # When refl is set, (p, logq) describe the mirrored parameter 1 - p_orig
    # and the draw is reflected back: Bin(n, p_orig) = n - Bin(n, 1 - p_orig).
    cdef int64_t d = c_binom_half(n, p, logq, s)
    if refl:
        return n - d
    return d


cdef int64_t c_binomial(int64_t n, double p, Stream *s) noexcept nogil:
    if n <= 0 or p <= 0.0:
        return 0
    if p >= 1.0:
        return n
    if p > 0.5:
        return n - c_binom_half(n, 1.0 - p, log(p), s)
    return c_binom_half(n, p, log1p(-p), s)


cdef int64_t c_geometric_gap(double p, Stream *s) noexcept nogil:
    # P(G = k) = (1-p)^(k-1) p for k >= 1, by inverse CDF
    cdef double u, logq
    cdef int64_t g
    if p >= 1.0:
        return 1
    logq = log1p(-p)
    u = nxt_double(s)
    while u <= 0.0:
        u = nxt_double(s)
    g = <int64_t>(log(u) / logq) + 1
    if g < 1:
        g = 1
    return g


cdef int64_t c_thin_count(int64_t xi, int64_t chosen, int64_t total, Stream *s) noexcept nogil:
    # Exact hypergeometric thinning: xi draws without replacement from an urn
    # holding `chosen` marked balls out of `total`; returns marked hits.
    cdef int64_t hits = 0, j, marked = chosen, balls = total
    for j in range(xi):
        if nxt_double(s) * <double>balls < <double>marked:
            hits += 1
            marked -= 1
        balls -= 1
    return hits


cdef inline void _prep_p(double p, double *p_eff, double *logq, bint *refl) noexcept nogil:
    if p > 0.5:
        p_eff[0] = 1.0 - p
        logq[0] = log(p) if p < 1.0 else 0.0
        refl[0] = True
    else:
        p_eff[0] = p
        logq[0] = log1p(-p) if p > 0.0 else 0.0
        refl[0] = False


# ---------------------------------------------------------------------------
# Exploration process
# ---------------------------------------------------------------------------

cdef inline int64_t _neutral_count(int64_t n, int64_t t, int64_t y) noexcept nogil:
    # neutral vertices before step t: n - Y_{t-1} - (t-1) - [Y_{t-1} == 0]
    if y > 0:
        return n - y - (t - 1)
    return n - t


cdef int64_t _explore_one(int64_t n, double p_eff, double logq, bint refl,
                          Stream *s, int64_t[::1] trace, int64_t trace_cap) noexcept nogil:
    # single-component run from Y_0 = 1; returns tau = |C(v)|
    cdef int64_t y = 1, t = 0, eta
    while y > 0:
        t += 1
        eta = c_binom_step(n - y - (t - 1), p_eff, logq, refl, s)
        y += eta - 1
        if trace_cap > 0 and t <= trace_cap:
            trace[t - 1] = y
    return t


cdef void _sweep(int64_t n, double p_eff, double logq, bint refl, Stream *s,
                 int64_t stop_if_ge, int64_t *largest, int64_t *second,
                 int64_t *ncomp, int64_t *steps, bint *stopped,
                 int64_t[::1] sizes, bint record_sizes) noexcept nogil:
    # Full n-step sweep.  Component boundaries are the zeros of Y; sizes are
    # the gaps between consecutive zeros and sum to n.  If stop_if_ge > 0 the
    # sweep halts as soon as some component (closed or still open) has size
    # >= stop_if_ge; the event {largest >= stop_if_ge} is decided exactly.
    cdef int64_t lg = 0, sec = 0, nc = 0, y = 0, start = 0, t = 0, eta, size, open_span
    cdef bint halted = False
    for t in range(1, n + 1):
        if y > 0:
            eta = c_binom_step(n - y - (t - 1), p_eff, logq, refl, s)
            y = y + eta - 1
        else:
            eta = c_binom_step(n - t, p_eff, logq, refl, s)
            y = eta
        if y == 0:
            size = t - start
            nc += 1
            if record_sizes:
                sizes[nc - 1] = size
            if size > lg:
                sec = lg
                lg = size
            elif size > sec:
                sec = size
            start = t
        elif stop_if_ge > 0:
            open_span = t - start
            if open_span >= stop_if_ge:
                if open_span > lg:
                    lg = open_span
                halted = True
                break
        if stop_if_ge > 0 and lg >= stop_if_ge:
            halted = True
            break
    largest[0] = lg
    second[0] = sec
    ncomp[0] = nc
    steps[0] = t
    stopped[0] = halted


cdef void _walk(int64_t n, double p_eff, double logq, bint refl,
                int64_t barrier, int64_t cap, Stream *s,
                int64_t *gamma, int64_t *s_final) noexcept nogil:
    # S_0 = 1, S_t = S_{t-1} + xi_t - 1 with xi ~ Bin(n, p); stops at the
    # first t with S_t >= barrier or S_t = 0, or at the cap if cap > 0.
    cdef int64_t sv = 1, t = 0, xi
    while True:
        t += 1
        xi = c_binom_step(n, p_eff, logq, refl, s)
        sv += xi - 1
        if sv <= 0 or sv >= barrier:
            break
        if cap > 0 and t >= cap:
            break
    gamma[0] = t
    s_final[0] = sv


cdef void _two_stage(int64_t n, double p_eff, double logq, bint refl,
                     int64_t h, int64_t t1, int64_t t2, Stream *s,
                     int64_t *tau_h, uint8_t *reached,
                     int64_t *tau0, uint8_t *survived) noexcept nogil:
    # Stage 1: run the full exploration (restarts included) until Y >= h or
    # t = T1.  Stage 2: continue the same process up to T2 further steps;
    # tau0 = first s with Y = 0 (tau0 = 0 if Y is already 0 at tau_h).
    cdef int64_t y = 1, t = 0, eta, si
    while t < t1:
        t += 1
        if y > 0:
            eta = c_binom_step(n - y - (t - 1), p_eff, logq, refl, s)
            y = y + eta - 1
        else:
            eta = c_binom_step(n - t, p_eff, logq, refl, s)
            y = eta
        if y >= h:
            break
    tau_h[0] = t
    reached[0] = 1 if y >= h else 0
    if y == 0:
        tau0[0] = 0
        survived[0] = 0
        return
    for si in range(1, t2 + 1):
        t += 1
        eta = c_binom_step(n - y - (t - 1), p_eff, logq, refl, s)
        y = y + eta - 1
        if y == 0:
            tau0[0] = si
            survived[0] = 0
            return
    tau0[0] = t2
    survived[0] = 1


# ---------------------------------------------------------------------------
# Python-visible stream object
# ---------------------------------------------------------------------------

cdef class RngStream:
    """One deterministic Philox4x64-10 stream, keyed by (master_seed, stream_index).

    Distinct keys give statistically independent streams (the defining
    property of counter-based generators in the Random123 family), so
    per-trial streams can be derived directly from a trial index with no
    sequential dependence.  The raw 64-bit output is platform-exact; derived
    variates additionally depend on libm's exp/log rounding, so byte-identical
    sequences are guaranteed for a fixed build.
    """

    cdef Stream st
    cdef readonly object master_seed
    cdef readonly object stream_index

    def __cinit__(self, master_seed, stream_index=0):
        cdef uint64_t seed_u, idx_u
        if not (0 <= master_seed < 2**64):
            raise ValueError("master_seed must fit in 64 bits")
        if not (0 <= stream_index < 2**64):
            raise ValueError("stream_index must fit in 64 bits")
        seed_u = <uint64_t>master_seed
        idx_u = <uint64_t>stream_index
        stream_init(&self.st, seed_u, idx_u)
        self.master_seed = master_seed
        self.stream_index = stream_index

    def philox_key(self):
        """128-bit key equal to numpy's ``Philox(key=...)`` for this stream."""
        return int(self.master_seed) | (int(self.stream_index) << 64)

    def spawn(self, stream_index):
        """Fresh stream with the same master seed and a new index."""
        return RngStream(self.master_seed, stream_index)

    cpdef double random(self):
        """Next uniform double in [0, 1)."""
        return nxt_double(&self.st)

    def raw(self, Py_ssize_t m):
        out = np.empty(m, dtype=np.uint64)
        cdef uint64_t[::1] v = out
        cdef Py_ssize_t i
        for i in range(m):
            v[i] = nxt_u64(&self.st)
        return out

    def uniforms(self, Py_ssize_t m):
        out = np.empty(m, dtype=np.float64)
        cdef double[::1] v = out
        cdef Py_ssize_t i
        for i in range(m):
            v[i] = nxt_double(&self.st)
        return out

    def binomial(self, trials, double p):
        """Exact Binomial(trials, p) draw."""
        cdef int64_t n = trials
        if n < 0:
            raise ValueError("trials must be >= 0")
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {p!r}")
        return c_binomial(n, p, &self.st)

    def binomials(self, trials, double p, Py_ssize_t m):
        """m exact Binomial(trials, p) draws from this stream."""
        cdef int64_t n = trials
        if n < 0:
            raise ValueError("trials must be >= 0")
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {p!r}")
        out = np.empty(m, dtype=np.int64)
        cdef int64_t[::1] v = out
        cdef Py_ssize_t i
        cdef double p_eff, logq
        cdef bint refl
        with nogil:
            _prep_p(p, &p_eff, &logq, &refl)
            for i in range(m):
                v[i] = c_binom_step(n, p_eff, logq, refl, &self.st)
        return out

    def geometric_gap(self, double p):
        """Exact draw of G with P(G=k) = (1-p)^(k-1) p, k >= 1."""
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p must be in (0, 1], got {p!r}")
        return c_geometric_gap(p, &self.st)

    def bernoulli(self, double p):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {p!r}")
        return nxt_double(&self.st) < p


# ---------------------------------------------------------------------------
# Single-run entry points (consume from a live RngStream)
# ---------------------------------------------------------------------------

def explore_component_rng(n, double p, RngStream rng, trace_cap=0):
    """Run one component exploration; returns (size, trace-or-None).

    The trace holds Y_1..Y_min(tau, trace_cap).
    """
    cdef int64_t nn = n, cap = trace_cap, size
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    cdef int64_t[::1] tview
    if cap > 0:
        buf = np.empty(min(cap, nn), dtype=np.int64)
        tview = buf
        cap = tview.shape[0]
        size = _explore_one(nn, p_eff, logq, refl, &rng.st, tview, cap)
        return size, buf[:min(size, cap)].copy()
    size = _explore_one(nn, p_eff, logq, refl, &rng.st, None, 0)
    return size, None


def sweep_rng(n, double p, RngStream rng, stop_if_ge=0):
    """One streaming sweep; returns (largest, second, ncomp, steps, stopped)."""
    cdef int64_t nn = n, stop = stop_if_ge
    cdef int64_t largest, second, ncomp, steps
    cdef bint stopped
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    with nogil:
        _sweep(nn, p_eff, logq, refl, &rng.st, stop,
               &largest, &second, &ncomp, &steps, &stopped, None, False)
    return largest, second, ncomp, steps, bool(stopped)


def sweep_sizes_rng(n, double p, RngStream rng):
    """Full sweep recording every component size; returns int64 array."""
    cdef int64_t nn = n
    cdef int64_t largest, second, ncomp, steps
    cdef bint stopped
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    buf = np.empty(nn, dtype=np.int64)
    cdef int64_t[::1] sizes = buf
    with nogil:
        _sweep(nn, p_eff, logq, refl, &rng.st, 0,
               &largest, &second, &ncomp, &steps, &stopped, sizes, True)
    return buf[:ncomp].copy()


def walk_rng(n, double p, barrier, cap, RngStream rng):
    """One barrier walk; returns (gamma, s_final)."""
    cdef int64_t nn = n, hh = barrier, cc = cap, gamma, s_final
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    _walk(nn, p_eff, logq, refl, hh, cc, &rng.st, &gamma, &s_final)
    return gamma, s_final


def walk_trace_rng(n, double p, barrier, cap, RngStream rng):
    """Barrier walk recording the trajectory; returns (gamma, s_final, trace)."""
    cdef int64_t nn = n, hh = barrier, cc = cap
    cdef int64_t sv = 1, t = 0, xi
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    vals = []
    while True:
        t += 1
        xi = c_binom_step(nn, p_eff, logq, refl, &rng.st)
        sv += xi - 1
        vals.append(sv)
        if sv <= 0 or sv >= hh:
            break
        if cc > 0 and t >= cc:
            break
    return t, sv, np.asarray(vals, dtype=np.int64)


def two_stage_rng(n, double p, h, t1, t2, RngStream rng):
    """One two-stage run; returns (tau_h, reached, tau0, survived)."""
    cdef int64_t nn = n, hh = h, tt1 = t1, tt2 = t2
    cdef int64_t tau_h, tau0
    cdef uint8_t reached, survived
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    _two_stage(nn, p_eff, logq, refl, hh, tt1, tt2, &rng.st,
               &tau_h, &reached, &tau0, &survived)
    return tau_h, bool(reached), tau0, bool(survived)


def coupled_rng(n, double p, barrier, RngStream rng):
    """Coupled walk/exploration run sharing increments.

    xi_t ~ Bin(n, p) drives S_t; eta_t is an exact hypergeometric thinning of
    xi_t down to the N_{t-1} neutral trials, so both marginals are exact and
    xi_t >= eta_t pathwise.  Runs until the walk stops; returns
    (gamma, s_final, y_final, min_slack) with min_slack = min_t (S_t - Y_t).
    """
    cdef int64_t nn = n, hh = barrier
    cdef int64_t sv = 1, y = 1, t = 0, xi, eta, slack, min_slack
    cdef double p_eff, logq
    cdef bint refl
    _prep_p(p, &p_eff, &logq, &refl)
    min_slack = 0
    while True:
        t += 1
        xi = c_binom_step(nn, p_eff, logq, refl, &rng.st)
        eta = c_thin_count(xi, _neutral_count(nn, t, y), nn, &rng.st)
        sv += xi - 1
        if y > 0:
            y = y + eta - 1
        else:
            y = eta
        slack = sv - y
        if slack < min_slack:
            min_slack = slack
        if sv <= 0 or sv >= hh:
            break
    return t, sv, y, min_slack


# ---------------------------------------------------------------------------
# Batch drivers: one derived stream per trial, GIL released across the loop
# ---------------------------------------------------------------------------

def sweep_batch(n, double p, seed, stream_lo, stop_if_ge,
                int64_t[::1] out_largest, int64_t[::1] out_second):
    """Sweeps for trials [stream_lo, stream_lo + len(out_largest))."""
    cdef int64_t nn = n, stop = stop_if_ge
    cdef uint64_t sd = seed, lo = stream_lo
    cdef Py_ssize_t i, m = out_largest.shape[0]
    cdef Stream st
    cdef int64_t largest, second, ncomp, steps
    cdef bint stopped
    cdef double p_eff, logq
    cdef bint refl
    with nogil:
        _prep_p(p, &p_eff, &logq, &refl)
        for i in range(m):
            stream_init(&st, sd, lo + <uint64_t>i)
            _sweep(nn, p_eff, logq, refl, &st, stop,
                   &largest, &second, &ncomp, &steps, &stopped, None, False)
            out_largest[i] = largest
            out_second[i] = second


def explore_batch(n, double p, seed, stream_lo, int64_t[::1] out_sizes):
    """Single-component runs for trials [stream_lo, stream_lo + len(out_sizes))."""
    cdef int64_t nn = n
    cdef uint64_t sd = seed, lo = stream_lo
    cdef Py_ssize_t i, m = out_sizes.shape[0]
    cdef Stream st
    cdef double p_eff, logq
    cdef bint refl
    with nogil:
        _prep_p(p, &p_eff, &logq, &refl)
        for i in range(m):
            stream_init(&st, sd, lo + <uint64_t>i)
            out_sizes[i] = _explore_one(nn, p_eff, logq, refl, &st, None, 0)


def walk_batch(n, double p, barrier, cap, seed, stream_lo,
               int64_t[::1] out_gamma, int64_t[::1] out_sfinal):
    """Barrier walks for trials [stream_lo, stream_lo + len(out_gamma))."""
    cdef int64_t nn = n, hh = barrier, cc = cap
    cdef uint64_t sd = seed, lo = stream_lo
    cdef Py_ssize_t i, m = out_gamma.shape[0]
    cdef Stream st
    cdef int64_t gamma, s_final
    cdef double p_eff, logq
    cdef bint refl
    with nogil:
        _prep_p(p, &p_eff, &logq, &refl)
        for i in range(m):
            stream_init(&st, sd, lo + <uint64_t>i)
            _walk(nn, p_eff, logq, refl, hh, cc, &st, &gamma, &s_final)
            out_gamma[i] = gamma
            out_sfinal[i] = s_final


def walk_seq_batch(n, double p, barrier, cap, RngStream rng,
                   int64_t[::1] out_gamma, int64_t[::1] out_sfinal):
    """Barrier walks drawn sequentially from one live stream."""
    cdef int64_t nn = n, hh = barrier, cc = cap
    cdef Py_ssize_t i, m = out_gamma.shape[0]
    cdef int64_t gamma, s_final
    cdef double p_eff, logq
    cdef bint refl
    with nogil:
        _prep_p(p, &p_eff, &logq, &refl)
        for i in range(m):
            _walk(nn, p_eff, logq, refl, hh, cc, &rng.st, &gamma, &s_final)
            out_gamma[i] = gamma
            out_sfinal[i] = s_final


def two_stage_batch(n, double p, h, t1, t2, seed, stream_lo,
                    int64_t[::1] out_tau_h, uint8_t[::1] out_reached,
                    int64_t[::1] out_tau0, uint8_t[::1] out_survived):
    """Two-stage runs for trials [stream_lo, stream_lo + len(out_tau_h))."""
    cdef int64_t nn = n, hh = h, tt1 = t1, tt2 = t2
    cdef uint64_t sd = seed, lo = stream_lo
    cdef Py_ssize_t i, m = out_tau_h.shape[0]
    cdef Stream st
    cdef int64_t tau_h, tau0
    cdef uint8_t reached, survived
    cdef double p_eff, logq
    cdef bint refl
    with nogil:
        _prep_p(p, &p_eff, &logq, &refl)
        for i in range(m):
            stream_init(&st, sd, lo + <uint64_t>i)
            _two_stage(nn, p_eff, logq, refl, hh, tt1, tt2, &st,
                       &tau_h, &reached, &tau0, &survived)
            out_tau_h[i] = tau_h
            out_reached[i] = reached
            out_tau0[i] = tau0
            out_survived[i] = survived


def coupled_batch(n, double p, barrier, seed, stream_lo,
                  int64_t[::1] out_gamma, int64_t[::1] out_min_slack):
    """Coupled walk/exploration runs, one derived stream per trial."""
    cdef int64_t nn = n, hh = barrier
    cdef uint64_t sd = seed, lo = stream_lo
    cdef Py_ssize_t i, m = out_gamma.shape[0]
    cdef Stream st
    cdef int64_t sv, y, t, xi, eta, slack, min_slack
    cdef double p_eff, logq
    cdef bint refl
    with nogil:
        _prep_p(p, &p_eff, &logq, &refl)
        for i in range(m):
            stream_init(&st, sd, lo + <uint64_t>i)
            sv = 1; y = 1; t = 0; min_slack = 0
            while True:
                t += 1
                xi = c_binom_step(nn, p_eff, logq, refl, &st)
                eta = c_thin_count(xi, _neutral_count(nn, t, y), nn, &st)
                sv += xi - 1
                if y > 0:
                    y = y + eta - 1
                else:
                    y = eta
                slack = sv - y
                if slack < min_slack:
                    min_slack = slack
                if sv <= 0 or sv >= hh:
                    break
            out_gamma[i] = t
            out_min_slack[i] = min_slack
