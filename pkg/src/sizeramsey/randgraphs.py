"""Random graph models: binomial, bipartite binomial, and the pairing model.

Every generator draws from an explicit RandomSource, so a seed fully
determines the output. Substreams derived from (seed, trial index) make
parallel Monte Carlo runs replayable: trial i draws the same values no
matter which worker executes it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, MultiGraph, VertexSet


class SamplingError(RuntimeError):
    """Rejection sampling exhausted its retry budget."""


class RandomSource:
    """Deterministic 64-bit seeded random stream (PCG64) with substreams."""

    def __init__(self, seed: int, _spawn_key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self._spawn_key = tuple(_spawn_key)
        ss = np.random.SeedSequence(self.seed, spawn_key=self._spawn_key)
        self.gen = np.random.Generator(np.random.PCG64(ss))

    def substream(self, index: int) -> "RandomSource":
        """Independent stream derived from (seed, ..., index)."""
        return RandomSource(self.seed, self._spawn_key + (int(index),))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, spawn_key={self._spawn_key})"


@dataclass(frozen=True)
class BipartiteGraph:
    """A graph together with its two partite vertex sets."""

    graph: Graph
    left: VertexSet
    right: VertexSet


@dataclass(frozen=True)
class Pairing:
    """Perfect matching on n*d labelled points grouped into n buckets.

    Point p lives in bucket p // d. Every point must appear in exactly one
    pair, which forces n*d to be even.
    """

    n: int
    d: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        points = self.n * self.d
        if points % 2 != 0:
            raise ValueError("n * d must be even to pair all points")
        touched = set()
        for x, y in self.pairs:
            touched.add(x)
            touched.add(y)
        if len(self.pairs) * 2 != points or len(touched) != points or \
                not all(0 <= p < points for p in touched):
            raise ValueError("pairs must cover each of the n*d points exactly once")

    def bucket(self, point: int) -> int:
        return point // self.d


@dataclass(frozen=True)
class TwoRoundUnion:
    """Union of two same-order graphs with per-edge round provenance.

    provenance maps each edge to a bitmask: 1 = first round only,
    2 = second round only, 3 = both.
    """

    graph: Graph
    provenance: dict[tuple[int, int], int]


def gnp(n: int, p: float, rng: RandomSource) -> Graph:
    """Binomial random graph: each of the C(n,2) pairs is an edge w.p. p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    edges = []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.gen.random(n - 1 - u) < p)
        edges.extend((u, u + 1 + int(x)) for x in hits)
    return Graph(n, edges)


def bipartite_gnp(n1: int, n2: int, p: float, rng: RandomSource) -> BipartiteGraph:
    """Binomial bipartite graph on parts 0..n1-1 and n1..n1+n2-1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    edges = []
    for u in range(n1):
        hits = np.flatnonzero(rng.gen.random(n2) < p)
        edges.extend((u, n1 + int(x)) for x in hits)
    n = n1 + n2
    return BipartiteGraph(
        graph=Graph(n, edges),
        left=VertexSet.of(n, range(n1)),
        right=VertexSet.of(n, range(n1, n)),
    )


def random_pairing(n: int, d: int, rng: RandomSource) -> Pairing:
    """Uniform perfect matching on n*d points (shuffle, pair consecutively)."""
    if (n * d) % 2 != 0:
        raise ValueError("n * d must be even to pair all points")
    perm = rng.gen.permutation(n * d)
    pairs = tuple((int(perm[2 * i]), int(perm[2 * i + 1])) for i in range(n * d // 2))
    return Pairing(n=n, d=d, pairs=pairs)


def project(pairing: Pairing) -> MultiGraph:
    """Collapse a pairing to the bucket multigraph, keeping loops/multiplicity."""
    d = pairing.d
    edges = []
    loops = 0
    seen: Counter[tuple[int, int]] = Counter()
    repeated = 0
    for x, y in pairing.pairs:
        u, v = x // d, y // d
        if u > v:
            u, v = v, u
        if u == v:
            loops += 1
        if seen[(u, v)]:
            repeated += 1
        seen[(u, v)] += 1
        edges.append((u, v))
    return MultiGraph(n=pairing.n, edges=tuple(edges), loops=loops, repeated=repeated)


def random_regular(n: int, d: int, rng: RandomSource, max_attempts: int = 10_000) -> Graph:
    """d-regular simple graph via rejection sampling over pairings.

    Raises SamplingError when no simple projection appears within
    max_attempts draws (the simplicity rate decays like exp(-(d^2-1)/4),
    so large d should use pairings directly instead).
    """
    if (n * d) % 2 != 0:
        raise ValueError("n * d must be even")
    for _ in range(max_attempts):
        mg = project(random_pairing(n, d, rng))
        if mg.is_simple():
            return Graph(n, mg.edges)
    raise SamplingError(
        f"no simple d-regular graph in {max_attempts} pairings (n={n}, d={d})"
    )


def two_round_union(g1: Graph, g2: Graph) -> TwoRoundUnion:
    """Edge union of two graphs on the same vertex set, with provenance."""
    if g1.n != g2.n:
        raise ValueError(f"vertex counts differ: {g1.n} vs {g2.n}")
    provenance: dict[tuple[int, int], int] = {}
    for e in g1.edges:
        provenance[e] = 1
    for e in g2.edges:
        provenance[e] = provenance.get(e, 0) | 2
    return TwoRoundUnion(graph=Graph(g1.n, provenance.keys()), provenance=provenance)
