"""Exact arrowing decisions, closed-form Ramsey values, and the cycle closer.

arrows_exact is the ground truth at tiny scale: it enumerates all 2^m edge
colorings and checks each against precomputed subgraph masks. Everything
else in the package that claims an arrowing consequence can be audited
against it (within the exponential budget).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from statistics import fmean, pstdev
from typing import Optional

from .coloring import EdgeColoring
from .graphs import Graph, VertexSet, WorkBudgetError, edges_between
from .randgraphs import RandomSource, gnp

_PATTERN_KINDS = ("cycles_at_most", "cycle", "clique", "path")


@dataclass(frozen=True)
class GraphPattern:
    """A one-parameter target family: bounded cycles, one cycle, clique, or path."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in _PATTERN_KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        floor = 3 if self.kind in ("cycles_at_most", "cycle") else 1
        if self.size < floor:
            raise ValueError(f"{self.kind} pattern needs size >= {floor}")

    @classmethod
    def cycles_at_most(cls, cap: int) -> "GraphPattern":
        return cls("cycles_at_most", cap)

    @classmethod
    def cycle(cls, length: int) -> "GraphPattern":
        return cls("cycle", length)

    @classmethod
    def clique(cls, order: int) -> "GraphPattern":
        return cls("clique", order)

    @classmethod
    def path(cls, order: int) -> "GraphPattern":
        return cls("path", order)

    def describe(self) -> str:
        return {"cycles_at_most": f"cycles<={self.size}",
                "cycle": f"cycle:{self.size}",
                "clique": f"clique:{self.size}",
                "path": f"path:{self.size}"}[self.kind]


@dataclass(frozen=True)
class ArrowQuery:
    """Red target family and blue target graph for an arrowing decision."""

    red: GraphPattern
    blue: GraphPattern


def _cycle_masks(g: Graph, size: int, exact: bool) -> list[int]:
    # Each cycle is anchored at its smallest vertex, walks through larger
    # vertices only, and is emitted once (second vertex < closing vertex).
    masks = []
    for s in range(g.n):
        stack = [(s, (s,), 0)]
        while stack:
            w, path, emask = stack.pop()
            neigh = g.adjacency[w]
            while neigh:
                low = neigh & -neigh
                x = low.bit_length() - 1
                neigh ^= low
                if x == s and len(path) >= 3 and path[1] < path[-1]:
                    if not exact or len(path) == size:
                        masks.append(emask | 1 << g.edge_id(w, s))
                elif x > s and x not in path and len(path) < size:
                    stack.append((x, path + (x,), emask | 1 << g.edge_id(w, x)))
    return masks


def _clique_masks(g: Graph, order: int) -> list[int]:
    masks = []
    for combo in combinations(range(g.n), order):
        pairs = list(combinations(combo, 2))
        if all(g.has_edge(u, v) for u, v in pairs):
            masks.append(sum(1 << g.edge_id(u, v) for u, v in pairs))
    return masks


def _path_masks(g: Graph, order: int) -> list[int]:
    if order == 1:
        return [0] if g.n >= 1 else []
    masks = []
    for s in range(g.n):
        stack = [(s, (s,), 0)]
        while stack:
            w, path, emask = stack.pop()
            if len(path) == order:
                if path[0] < path[-1]:
                    masks.append(emask)
                continue
            neigh = g.adjacency[w]
            while neigh:
                low = neigh & -neigh
                x = low.bit_length() - 1
                neigh ^= low
                if x not in path:
                    stack.append((x, path + (x,), emask | 1 << g.edge_id(w, x)))
    return masks


def subgraph_masks(g: Graph, pattern: GraphPattern) -> list[int]:
    """Edge-index masks of every copy of the pattern inside g."""
    if pattern.kind == "cycles_at_most":
        return _cycle_masks(g, pattern.size, exact=False)
    if pattern.kind == "cycle":
        return _cycle_masks(g, pattern.size, exact=True)
    if pattern.kind == "clique":
        return _clique_masks(g, pattern.size)
    return _path_masks(g, pattern.size)


def _scan_block(red_masks: list[int], blue_masks: list[int],
                start: int, stop: int) -> Optional[int]:
    # Bit i of a coloring is 1 when edge i is blue. A coloring defeats the
    # query when no red mask avoids the blue bits and no blue mask is
    # contained in them.
    for col in range(start, stop):
        hit = False
        for mask in red_masks:
            if mask & col == 0:
                hit = True
                break
        if hit:
            continue
        for mask in blue_masks:
            if mask & col == mask:
                hit = True
                break
        if not hit:
            return col
    return None


@dataclass(frozen=True)
class ArrowDecision:
    arrows: bool
    counterexample: Optional[EdgeColoring]
    colorings_checked: int


def arrows_exact(g: Graph, query: ArrowQuery, budget: int = 25,
                 workers: int = 1) -> ArrowDecision:
    """Decide arrowing by enumerating every red/blue coloring.

    True iff each of the 2^m colorings contains a red copy of the query's
    red family or a blue copy of its blue target; otherwise the defeating
    coloring with the smallest blue bitmask is returned (deterministic, even
    when the scan is split across workers). colorings_checked reports the
    deterministic count: counterexample index + 1, or 2^m on success.
    """
    if g.m > budget:
        raise WorkBudgetError(
            f"{g.m} edges exceed the {budget}-edge budget (2^{g.m} colorings)")
    red_masks = subgraph_masks(g, query.red)
    blue_masks = subgraph_masks(g, query.blue)
    total = 1 << g.m
    found: Optional[int] = None
    if workers <= 1 or total < (1 << 12):
        found = _scan_block(red_masks, blue_masks, 0, total)
    else:
        block = -(-total // (workers * 4))
        spans = [(lo, min(lo + block, total)) for lo in range(0, total, block)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_scan_block, red_masks, blue_masks, lo, hi)
                       for lo, hi in spans]
            # Consume in block order so the reported counterexample is the
            # global minimum; later futures are cancelled on first hit.
            for j, fut in enumerate(futures):
                col = fut.result()
                if col is not None:
                    found = col
                    for later in futures[j + 1:]:
                        later.cancel()
                    break
    if found is None:
        return ArrowDecision(True, None, total)
    return ArrowDecision(False, EdgeColoring(g, found), found + 1)


def ramsey_cycles_vs_clique(n: int, cap: int) -> int:
    """Classical Ramsey number for (cycles of length <= cap, clique on n).

    Closed form for cap > n: 2n - 1 when cap >= 2n - 1, else 2n.
    """
    if n < 2:
        raise ValueError("clique order must be at least 2")
    if cap <= n:
        raise ValueError(f"cycle cap {cap} must exceed the clique order {n}")
    return 2 * n - 1 if cap >= 2 * n - 1 else 2 * n


def _canonical_key(edge_subset: tuple[tuple[int, int], ...]) -> tuple:
    """Isomorphism-invariant key: degree-sorted relabeling, minimized over ties."""
    verts = sorted({v for e in edge_subset for v in e})
    deg = {v: 0 for v in verts}
    for u, v in edge_subset:
        deg[u] += 1
        deg[v] += 1
    by_degree = sorted(verts, key=lambda v: (-deg[v], v))
    groups: list[list[int]] = []
    for v in by_degree:
        if groups and deg[groups[-1][0]] == deg[v]:
            groups[-1].append(v)
        else:
            groups.append([v])
    best = None
    for perms in product(*(permutations(grp) for grp in groups)):
        order = [v for grp in perms for v in grp]
        rank = {v: i for i, v in enumerate(order)}
        relabeled = tuple(sorted(tuple(sorted((rank[u], rank[v]))) for u, v in edge_subset))
        if best is None or relabeled < best:
            best = relabeled
    return (len(verts), best)


@dataclass(frozen=True)
class SizeRamseyBound:
    """Minimal arrowing edge count found within a stated vertex cap.

    Exact over all graphs with at most vertex_cap vertices; an upper bound
    on the unrestricted minimum.
    """

    edges: int
    witness: Graph
    vertex_cap: int


def min_size_ramsey_exact(query: ArrowQuery, n_vertices_max: int,
                          budget: int = 25) -> Optional[SizeRamseyBound]:
    """Smallest edge count whose graphs (up to n_vertices_max vertices) arrow.

    Enumerates candidate graphs by edge count, pruning isomorphs via a
    degree-sorted canonical form, and decides each with arrows_exact.
    Returns None when not even the complete graph on the cap arrows.
    Restricted to tiny instances: blue target a path on 2..4 vertices and a
    vertex cap of at most 7.
    """
    if query.blue.kind != "path" or not 2 <= query.blue.size <= 4:
        raise ValueError("exhaustive search supports blue path targets on 2..4 vertices")
    if not 1 <= n_vertices_max <= 7:
        raise ValueError("vertex cap must be between 1 and 7")
    all_pairs = list(combinations(range(n_vertices_max), 2))
    for m in range(1, len(all_pairs) + 1):
        seen = set()
        for subset in combinations(all_pairs, m):
            key = _canonical_key(subset)
            if key in seen:
                continue
            seen.add(key)
            k, edges = key
            candidate = Graph(k, edges)
            if arrows_exact(candidate, query, budget=budget).arrows:
                return SizeRamseyBound(edges=m, witness=candidate,
                                       vertex_cap=n_vertices_max)
    return None


@dataclass(frozen=True)
class CycleWitness:
    """A closed cycle assembled from two path segments and two chords."""

    cycle: tuple[int, ...]
    chords: tuple[tuple[int, int], tuple[int, int]]
    halves: tuple[int, int]


def chord_candidates(n: int, i: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Position pairs (1-based) whose chords close half lengths i and n - i.

    Left pairs (l, L) satisfy (mid - l + 1) + (mid - L) = i with both
    positions below the middle mid = 3n/4; right pairs (r, R) satisfy
    (r - mid + 1) + (R - mid) = n - i with both above. Distinct i values
    yield disjoint pair sets because each fixes a different position sum.
    """
    half = 3 * n // 2
    mid = 3 * n // 4
    left = []
    for l in range(1, mid):
        L = half + 1 - i - l
        if 1 <= L <= mid - 1:
            left.append((l, L))
    right = []
    for r in range(mid + 1, half + 1):
        R = 5 * n // 2 - 1 - i - r
        if mid + 1 <= R <= half:
            right.append((r, R))
    return left, right


def close_cycle(path1: list[int], path2: list[int], chords: Graph,
                n: int) -> Optional[CycleWitness]:
    """Close an n-vertex cycle out of two path halves and chord edges.

    path1 and path2 are the two halves (3n/2 vertices each) of a long path;
    chords supplies the independently drawn extra edges. For each even half
    length i in [n/4, 3n/4] the search looks for one chord below both
    middles and one above, at positions that make the two arcs i and n - i
    long; candidates for distinct i are disjoint (asserted). Search order is
    ascending i, then ascending left position, then ascending right.
    """
    if n < 4 or n % 4 != 0:
        raise ValueError("cycle order must be a positive multiple of 4")
    half = 3 * n // 2
    if len(path1) != half or len(path2) != half:
        raise ValueError(f"each path half must have exactly {half} vertices")
    if set(path1) & set(path2):
        raise ValueError("path halves must be vertex-disjoint")

    def v(k: int) -> int:
        return path1[k - 1]

    def u(k: int) -> int:
        return path2[k - 1]

    inspected: set[tuple[int, int]] = set()
    for i in range(n // 4, 3 * n // 4 + 1, 2):
        left_pairs, right_pairs = chord_candidates(n, i)
        for l, L in left_pairs:
            pair = (v(l), u(L))
            assert pair not in inspected, "chord candidates must be disjoint across i"
            inspected.add(pair)
        for r, R in right_pairs:
            pair = (v(r), u(R))
            assert pair not in inspected, "chord candidates must be disjoint across i"
            inspected.add(pair)
        left = next(((l, L) for l, L in left_pairs if chords.has_edge(v(l), u(L))), None)
        if left is None:
            continue
        right = next(((r, R) for r, R in right_pairs if chords.has_edge(v(r), u(R))), None)
        if right is None:
            continue
        l, L = left
        r, R = right
        cycle = [v(k) for k in range(l, r + 1)]
        cycle.extend(u(k) for k in range(R, L - 1, -1))
        assert len(cycle) == n, "arc length bookkeeping must add up to n"
        return CycleWitness(cycle=tuple(cycle),
                            chords=((v(l), u(L)), (v(r), u(R))),
                            halves=(i, n - i))
    return None


def split_for_closing(path: list[int], n: int) -> tuple[list[int], list[int]]:
    """Split a 3n-vertex path into the two halves close_cycle expects.

    The first half is reversed and the second is mirror-indexed from the far
    end, which puts the two designated middle positions at the same parity
    of the original path (so in a bipartite host both land in the same
    part). Requires n divisible by 4, matching close_cycle.
    """
    if n < 4 or n % 4 != 0:
        raise ValueError("cycle order must be a positive multiple of 4")
    if len(path) < 3 * n:
        raise ValueError(f"need a path on at least {3 * n} vertices")
    half = 3 * n // 2
    h1 = list(path[:half][::-1])
    h2 = list(path[:3 * n][::-1][:half])
    return h1, h2


@dataclass(frozen=True)
class ExpansionEstimate:
    """Monte Carlo estimate of the sampled expansion-failure probability.

    Samples one random (S, T) pair per sampled graph, so the reported
    frequency underestimates the exhaustive all-pairs failure event.
    """

    trials: int
    failures: int
    frequency: float
    ci_low: float
    ci_high: float
    mean_crossing: float
    std_crossing: float
    set_size: int
    threshold: float
    sampled_pairs_only: bool = True


def expansion_trial(rng_root: RandomSource, trial: int, n: int, c: float,
                    d: float, set_size: int, threshold: float) -> tuple[int, bool]:
    """One seeded trial: sample the graph and one disjoint (S, T) pair."""
    sub = rng_root.substream(trial)
    order = round((c + 1) * n)
    g = gnp(order, d / n, sub)
    perm = sub.gen.permutation(order)
    s = VertexSet.of(order, (int(x) for x in perm[:set_size]))
    t = VertexSet.of(order, (int(x) for x in perm[set_size:2 * set_size]))
    crossing = edges_between(g, s, t)
    return crossing, crossing <= threshold + 1e-9


def summarize_expansion_trials(results: list[tuple[int, bool]], set_size: int,
                               threshold: float, z: float = 3.0) -> ExpansionEstimate:
    """Aggregate (crossing, failed) trial results into an estimate."""
    trials = len(results)
    if trials < 1:
        raise ValueError("need at least one trial")
    crossings = [crossing for crossing, _ in results]
    failures = sum(1 for _, failed in results if failed)
    freq = failures / trials
    halfwidth = z * math.sqrt(freq * (1 - freq) / trials)
    return ExpansionEstimate(
        trials=trials,
        failures=failures,
        frequency=freq,
        ci_low=max(0.0, freq - halfwidth),
        ci_high=min(1.0, freq + halfwidth),
        mean_crossing=fmean(crossings),
        std_crossing=pstdev(crossings),
        set_size=set_size,
        threshold=threshold,
    )


def monte_carlo_expansion(n: int, c: float, d: float, trials: int,
                          rng: RandomSource, set_size: Optional[int] = None,
                          threshold: Optional[float] = None,
                          z: float = 3.0) -> ExpansionEstimate:
    """Sampled relaxation of the exhaustive expansion check.

    Draws `trials` binomial graphs of order (c+1)n at density d/n, one
    uniformly random disjoint (S, T) pair each, and reports how often the
    crossing count fell at or below the threshold, with a +-z normal
    interval. Per-trial substreams make the estimate worker-independent.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if d / n > 1.0:
        raise ValueError(f"density d/n = {d / n:.3f} exceeds 1")
    k = round(c * n / 2) if set_size is None else set_size
    thr = c * n if threshold is None else threshold
    order = round((c + 1) * n)
    if 2 * k > order:
        raise ValueError(f"two sets of {k} vertices do not fit in {order}")
    results = [expansion_trial(rng, t, n, c, d, k, thr) for t in range(trials)]
    return summarize_expansion_trials(results, k, thr, z=z)
