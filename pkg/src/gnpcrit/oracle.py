"""Ground truth at small n.

Exact distributions of |C(v)| and |C1| by exhaustive enumeration of all
2^(n(n-1)/2) edge subsets (n <= 7), plus explicit-graph sampling with
union-find components and a literal vertex-level exploration, for
cross-validating the process-level simulator at sizes where both run.

Enumeration counts graphs by (|C(0)|, |C1|, edge count) once per n (the
table is p-independent and memoized) and then weights each cell by
p^e (1-p)^(m-e) in exact rational arithmetic, so the resulting
distributions sum to exactly 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .explore import GraphParams, SweepResult
from .rng import RngStream

__all__ = [
    "ExplicitGraph",
    "ExactDistribution",
    "enumerate_exact",
    "sample_explicit",
    "components_of",
    "explore_on_graph",
]

ENUMERATION_MAX_N = 7
SAMPLING_MAX_N = 10**5
SAMPLING_MAX_EXPECTED_EDGES = 10**7

_POPCOUNT = np.array([bin(x).count("1") for x in range(256)], dtype=np.uint8)


@dataclass(frozen=True)
class ExplicitGraph:
    """Edge-list graph on vertices 0..n-1; every edge (i, j) has i < j."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge ({i}, {j}) for n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    def to_text(self) -> str:
        """Plain edge-list format: first line "n m", then one "i j" per edge."""
        lines = [f"{self.n} {len(self.edges)}"]
        lines.extend(f"{i} {j}" for i, j in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExplicitGraph":
        lines = text.strip().splitlines()
        n, m = map(int, lines[0].split())
        edges = tuple(tuple(map(int, ln.split())) for ln in lines[1 : m + 1])
        if len(edges) != m:
            raise ValueError(f"expected {m} edges, found {len(edges)}")
        return cls(n=n, edges=edges)  # type: ignore[arg-type]

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | Path) -> "ExplicitGraph":
        return cls.from_text(Path(path).read_text())


@dataclass(frozen=True)
class ExactDistribution:
    """Exact pmf over component sizes 1..n, as rationals."""

    support: tuple[int, ...]
    probs: tuple[Fraction, ...]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(self.support, self.probs))

    def as_floats(self) -> dict[int, float]:
        return {k: float(v) for k, v in zip(self.support, self.probs)}

    def total(self) -> Fraction:
        return sum(self.probs, Fraction(0))

    def tv_distance(self, sizes: np.ndarray) -> float:
        """Total-variation distance to the empirical distribution of sizes."""
        m = len(sizes)
        counts = np.bincount(np.asarray(sizes), minlength=max(self.support) + 1)
        exact = self.as_dict()
        tv = 0.0
        for k in range(1, len(counts)):
            tv += abs(float(counts[k]) / m - float(exact.get(k, Fraction(0))))
        return 0.5 * tv


# (|C(0)|, |C1|, edges) -> number of graphs; computed once per n
_count_tables: dict[int, dict[tuple[int, int, int], int]] = {}


def _edge_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _component_count_table(n: int) -> dict[tuple[int, int, int], int]:
    if n in _count_tables:
        return _count_tables[n]
    pairs = _edge_pairs(n)
    m = len(pairs)
    n_masks = 1 << m
    masks = np.arange(n_masks, dtype=np.uint32)

    # per-vertex adjacency bitmaps across all graphs at once
    adj = [np.zeros(n_masks, dtype=np.uint8) for _ in range(n)]
    for b, (i, j) in enumerate(pairs):
        present = ((masks >> b) & 1).astype(np.uint8)
        adj[i] |= present << j
        adj[j] |= present << i

    def component_sizes_from(v: int) -> np.ndarray:
        reach = np.full(n_masks, 1 << v, dtype=np.uint8)
        for _ in range(n):
            grown = reach.copy()
            for i in range(n):
                has_i = ((reach >> i) & 1).astype(np.uint8)
                grown |= adj[i] * has_i
            if np.array_equal(grown, reach):
                break
            reach = grown
        return _POPCOUNT[reach]

    size_v = component_sizes_from(0)
    largest = size_v.copy()
    for v in range(1, n):
        np.maximum(largest, component_sizes_from(v), out=largest)

    e_count = _POPCOUNT[masks & 0xFF].astype(np.uint32)
    if m > 8:
        e_count += _POPCOUNT[(masks >> 8) & 0xFF]
    if m > 16:
        e_count += _POPCOUNT[(masks >> 16) & 0xFF]

    key = (size_v.astype(np.uint32) * (n + 1) + largest) * (m + 1) + e_count
    flat = np.bincount(key, minlength=(n + 1) * (n + 1) * (m + 1))
    table: dict[tuple[int, int, int], int] = {}
    for idx in np.nonzero(flat)[0]:
        e = int(idx) % (m + 1)
        rest = int(idx) // (m + 1)
        c1 = rest % (n + 1)
        cv = rest // (n + 1)
        table[(cv, c1, e)] = int(flat[idx])
    _count_tables[n] = table
    return table


def enumerate_exact(
    n: int, p: float | Fraction
) -> tuple[ExactDistribution, ExactDistribution]:
    """Exact distributions (dist_cv, dist_c1) of |C(0)| and |C1| in G(n, p).

    Every edge subset is enumerated, so n is capped at 7 (2^21 graphs).
    p may be a Fraction for human-readable rationals; a float is used at its
    exact binary-rational value, so the output is exact either way.
    """
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise ValueError(f"enumeration is limited to 1 <= n <= {ENUMERATION_MAX_N}, got {n}")
    pf = Fraction(p)
    if not 0 <= pf <= 1:
        raise ValueError(f"p must be in [0, 1], got {p!r}")
    qf = 1 - pf
    m = n * (n - 1) // 2
    table = _component_count_table(n)
    # p^e q^(m-e) for each possible edge count
    weights = [pf**e * qf ** (m - e) for e in range(m + 1)]
    cv_probs = [Fraction(0)] * (n + 1)
    c1_probs = [Fraction(0)] * (n + 1)
    for (cv, c1, e), count in table.items():
        w = count * weights[e]
        cv_probs[cv] += w
        c1_probs[c1] += w
    support = tuple(range(1, n + 1))
    return (
        ExactDistribution(support=support, probs=tuple(cv_probs[1:])),
        ExactDistribution(support=support, probs=tuple(c1_probs[1:])),
    )


def sample_explicit(params: GraphParams, rng: RngStream) -> ExplicitGraph:
    """Sample G(n, p) as an explicit edge list.

    Absent edges are skipped with geometric gaps over the lexicographic edge
    order, so the work is O(1 + p n^2) rather than O(n^2).  Guarded to
    n <= 10^5 and expected edge count <= 10^7.
    """
    n, p = params.n, params.p
    if n > SAMPLING_MAX_N:
        raise ValueError(f"explicit sampling refuses n={n} > {SAMPLING_MAX_N}")
    m_total = n * (n - 1) // 2
    if p * m_total > SAMPLING_MAX_EXPECTED_EDGES:
        raise ValueError(
            f"expected edge count {p * m_total:.3g} exceeds guard {SAMPLING_MAX_EXPECTED_EDGES:g}"
        )
    if p == 0.0 or m_total == 0:
        return ExplicitGraph(n=n, edges=())
    positions = []
    idx = -1
    while True:
        idx += rng.geometric_gap(p)
        if idx >= m_total:
            break
        positions.append(idx)
    return ExplicitGraph(n=n, edges=tuple(_decode_edge(k, n) for k in positions))


def _decode_edge(k: int, n: int) -> tuple[int, int]:
    # lexicographic rank k -> (i, j); cum(i) = edges in rows before i
    def cum(i: int) -> int:
        return i * (2 * n - i - 1) // 2

    i = int((2 * n - 1 - ((2 * n - 1) ** 2 - 8 * k) ** 0.5) / 2)
    i = max(0, min(i, n - 2))
    while cum(i + 1) <= k:
        i += 1
    while cum(i) > k:
        i -= 1
    j = k - cum(i) + i + 1
    return i, j


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def components_of(graph: ExplicitGraph) -> SweepResult:
    """Exact component sizes by union-find, in discovery (lowest-vertex) order."""
    uf = _UnionFind(graph.n)
    for i, j in graph.edges:
        uf.union(i, j)
    sizes = []
    seen = set()
    for v in range(graph.n):
        r = uf.find(v)
        if r not in seen:
            seen.add(r)
            sizes.append(uf.size[r])
    arr = np.asarray(sizes, dtype=np.int64)
    order = np.sort(arr)
    return SweepResult(
        largest=int(order[-1]),
        second_largest=int(order[-2]) if len(order) > 1 else 0,
        components=len(arr),
        sizes=arr,
    )


def component_size_of(graph: ExplicitGraph, v: int) -> int:
    uf = _UnionFind(graph.n)
    for i, j in graph.edges:
        uf.union(i, j)
    return uf.size[uf.find(v)]


def explore_on_graph(graph: ExplicitGraph, v: int) -> tuple[int, np.ndarray]:
    """Run the vertex-level exploration literally on an explicit graph.

    Vertex ordering is v first, then index order; newly activated vertices
    join a FIFO queue (component size does not depend on this choice, only
    the trace shape does).  Returns (size, Y trace of length size); size
    always equals the union-find size of v's component.
    """
    if not 0 <= v < graph.n:
        raise ValueError(f"vertex {v} out of range for n={graph.n}")
    neighbors: list[set[int]] = [set() for _ in range(graph.n)]
    for i, j in graph.edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    neutral = set(range(graph.n)) - {v}
    active = deque([v])
    y = 1
    trace = []
    while y > 0:
        w = active.popleft()
        newly = sorted(neighbors[w] & neutral)
        for u in newly:
            neutral.remove(u)
            active.append(u)
        y += len(newly) - 1
        trace.append(y)
    return len(trace), np.asarray(trace, dtype=np.int64)
