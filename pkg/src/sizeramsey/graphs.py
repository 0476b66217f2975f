"""Bitset-backed simple graphs and the set/boundary/cycle primitives.

Vertices are dense integers 0..n-1. Adjacency rows are Python ints used as
bitsets, so set algebra, boundary counting and independence checks reduce to
bitwise ops and popcounts. The edge list is canonical: pairs (u, v) with
u < v sorted lexicographically, and the list index is the stable edge
identifier that colorings address.

Everything here is immutable after construction and safe to share across
concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class WorkBudgetError(RuntimeError):
    """An exact computation would exceed its configured work budget."""


@dataclass(frozen=True)
class VertexSet:
    """Immutable subset of [0, n) stored as a bitmask."""

    n: int
    mask: int = 0

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside [0, {n})")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and self.mask >> v & 1 == 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __bool__(self) -> bool:
        return self.mask != 0

    def _same_universe(self, other: "VertexSet") -> None:
        if self.n != other.n:
            raise ValueError("vertex sets live on different vertex counts")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._same_universe(other)
        return VertexSet(self.n, self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._same_universe(other)
        return VertexSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._same_universe(other)
        return VertexSet(self.n, self.mask & ~other.mask)

    def isdisjoint(self, other: "VertexSet") -> bool:
        self._same_universe(other)
        return self.mask & other.mask == 0

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ~self.mask & (1 << self.n) - 1)


class Graph:
    """Undirected simple graph on vertices 0..n-1 with bitset adjacency."""

    __slots__ = ("n", "edges", "adjacency", "_edge_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not 0 <= u < v < n:
                raise ValueError(f"edge ({u}, {v}) outside vertex range [0, {n})")
            canon.append((u, v))
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise ValueError(f"duplicate edge {canon[i]}")
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(canon)
        adjacency = [0] * n
        for u, v in canon:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        self.adjacency: tuple[int, ...] = tuple(adjacency)
        self._edge_index = {e: i for i, e in enumerate(canon)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and self.adjacency[u] >> v & 1 == 1

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self._edge_index[(u, v)]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return iter(VertexSet(self.n, self.adjacency[v]))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @classmethod
    def complete(cls, k: int) -> "Graph":
        return cls(k, [(u, v) for u in range(k) for v in range(u + 1, k)])

    @classmethod
    def cycle(cls, k: int) -> "Graph":
        if k < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def path(cls, k: int) -> "Graph":
        return cls(k, [(i, i + 1) for i in range(k - 1)])


@dataclass(frozen=True)
class MultiGraph:
    """Multigraph with loops, as produced by projecting a point pairing.

    `edges` keeps one entry per matching pair, (u, v) with u <= v; `loops`
    counts loop edges and `repeated` counts edges beyond the first between
    the same vertex pair (loop pairs included).
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    loops: int
    repeated: int

    def is_simple(self) -> bool:
        return self.loops == 0 and self.repeated == 0

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # a loop contributes 2 to its vertex
        return deg


def edges_between(g: Graph, s: VertexSet, t: VertexSet) -> int:
    """Number of g-edges with one endpoint in s and the other in t.

    s and t must be disjoint subsets of g's vertices.
    """
    if s.n != g.n or t.n != g.n:
        raise ValueError("vertex sets do not match the graph's vertex count")
    if not s.isdisjoint(t):
        raise ValueError("edges_between requires disjoint vertex sets")
    # Sum over the smaller side for speed; the count is symmetric.
    a, b = (s, t) if len(s) <= len(t) else (t, s)
    return sum((g.adjacency[u] & b.mask).bit_count() for u in a)


def has_cycle_at_most(g: Graph, length_cap: int) -> Optional[list[int]]:
    """Some cycle with at most `length_cap` vertices, or None.

    Scans edges in index order and runs a depth-capped BFS for the shortest
    cycle through each edge, so the witness is deterministic. Any cycle of
    length k contains an edge whose shortest through-cycle has length <= k,
    hence the scan is complete.
    """
    if length_cap < 3:
        raise ValueError("cycles have at least 3 vertices")
    for u, v in g.edges:
        # Shortest u-v path avoiding the edge (u, v) itself; cap depth so the
        # closed cycle has at most length_cap vertices.
        parent = {u: -1}
        frontier = [u]
        depth = 0
        found = False
        while frontier and depth < length_cap - 1 and not found:
            depth += 1
            nxt = []
            for w in frontier:
                neigh = g.adjacency[w]
                if w == u:
                    neigh &= ~(1 << v)
                while neigh:
                    low = neigh & -neigh
                    x = low.bit_length() - 1
                    neigh ^= low
                    if x not in parent:
                        parent[x] = w
                        if x == v:
                            found = True
                            break
                        nxt.append(x)
                if found:
                    break
            frontier = nxt
        if found:
            path = [v]
            while path[-1] != u:
                path.append(parent[path[-1]])
            path.reverse()  # starts at u, ends at v, closed by the edge (u, v)
            return path
    return None


def is_forest(g: Graph, restricted_to: Optional[VertexSet] = None) -> bool:
    """True iff the induced subgraph on the set has no cycle."""
    members = VertexSet.full(g.n) if restricted_to is None else restricted_to
    parent = {v: v for v in members}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u in members and v in members:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def spanning_forest(g: Graph) -> list[int]:
    """Edge indices of a maximal acyclic subgraph (n - #components edges)."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for i, (u, v) in enumerate(g.edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(i)
    return chosen


def square_graph(g: Graph) -> Graph:
    """Graph on the same vertices joining pairs at distance 1 or 2 in g."""
    masks = []
    for v in range(g.n):
        reach = g.adjacency[v]
        for w in VertexSet(g.n, g.adjacency[v]):
            reach |= g.adjacency[w]
        masks.append(reach & ~(1 << v))
    edges = []
    for u in range(g.n):
        higher = masks[u] >> (u + 1)
        while higher:
            low = higher & -higher
            edges.append((u, u + 1 + low.bit_length() - 1))
            higher ^= low
    return Graph(g.n, edges)


def greedy_max_independent(g: Graph, allowed: Optional[VertexSet] = None) -> VertexSet:
    """Maximal independent set inside `allowed`, greedy in ascending order.

    The result is independent in g and no allowed vertex can be added, which
    guarantees |A| >= |allowed| / (max degree over allowed + 1).
    """
    pool = VertexSet.full(g.n) if allowed is None else allowed
    if pool.n != g.n:
        raise ValueError("allowed set does not match the graph's vertex count")
    chosen = 0
    for v in pool:
        if g.adjacency[v] & chosen == 0:
            chosen |= 1 << v
    return VertexSet(g.n, chosen)


def high_degree_set(g: Graph, d: int) -> VertexSet:
    """Exactly the vertices of degree at least d + 1."""
    mask = 0
    for v in range(g.n):
        if g.degree(v) >= d + 1:
            mask |= 1 << v
    return VertexSet(g.n, mask)


def format_edge_list(g: Graph) -> str:
    """Serialize as 'n m' followed by one 'u v' line per edge, LF endings."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format written by format_edge_list."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return Graph(n, edges)
