"""Loopless undirected multigraphs with stable edge indices.

Vertices are the integers ``0..n-1`` and every edge keeps the index it was
given at construction time, so orientations and flow assignments can be
plain sequences indexed by edge.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

INFINITE_CONNECTIVITY = math.inf

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input (loops, bad endpoints, bad parameters)."""


@dataclass(frozen=True)
class MultiGraph:
    """Immutable loopless multigraph.

    Edges are stored as ``(lo, hi)`` pairs with ``lo < hi``; edge ``i`` is
    ``edges[i]``.  The reference orientation used throughout the flow code
    directs every edge from ``lo`` to ``hi``.
    """

    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative order {self.n}")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i} ({u}, {v}): endpoint out of range 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"edge {i} ({u}, {v}): loop")
            if u > v:
                raise GraphError(f"edge {i} ({u}, {v}): endpoints must be stored as (lo, hi)")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Symmetric edge-multiplicity matrix."""
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] += 1
            a[v][u] += 1
        return tuple(tuple(row) for row in a)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v] | {v}

    def multiplicity(self, u: int, v: int) -> int:
        return self.matrix[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and self.matrix[u][v] > 0

    def edges_between(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        """e(X, Y): number of edges with one end in X and the other in Y."""
        xs, ys = set(xs), set(ys)
        return sum(1 for u, v in self.edges if (u in xs and v in ys) or (u in ys and v in xs))

    @cached_property
    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    @cached_property
    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(component_of(self, 0)) == self.n

    def underlying_simple(self) -> MultiGraph:
        return MultiGraph(self.n, tuple(sorted(set(self.edges))))

    def complement(self) -> MultiGraph:
        """Complement of the underlying simple graph."""
        adj = self.adjacency
        return MultiGraph(
            self.n,
            tuple((u, v) for u, v in itertools.combinations(range(self.n), 2) if v not in adj[u]),
        )

    def relabel(self, perm: Sequence[int]) -> MultiGraph:
        """Graph with vertex ``v`` renamed to ``perm[v]``; edge indices kept."""
        return MultiGraph(self.n, tuple(_norm(perm[u], perm[v]) for u, v in self.edges))

    def edge_subgraph(self, edge_ids: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
        """Subgraph spanned by ``edge_ids``, compacted to its own vertices.

        Returns the subgraph and the map old vertex -> new vertex.
        """
        ids = sorted(set(edge_ids))
        verts = sorted({x for i in ids for x in self.edges[i]})
        vmap = {v: j for j, v in enumerate(verts)}
        sub = MultiGraph(len(verts), tuple(_norm(vmap[self.edges[i][0]], vmap[self.edges[i][1]]) for i in ids))
        return sub, vmap

    def induced(self, vertices: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
        """Induced subgraph G[S] (multiplicities kept), compacted."""
        verts = sorted(set(vertices))
        vmap = {v: j for j, v in enumerate(verts)}
        sub = MultiGraph(
            len(verts),
            tuple(_norm(vmap[u], vmap[v]) for u, v in self.edges if u in vmap and v in vmap),
        )
        return sub, vmap

    def induced_edge_ids(self, vertices: Iterable[int]) -> tuple[int, ...]:
        s = set(vertices)
        return tuple(i for i, (u, v) in enumerate(self.edges) if u in s and v in s)

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> MultiGraph:
    """Build a multigraph, keeping edges indexed in input order.

    >>> build_graph(2, [(0, 1), (1, 0)]).m
    2
    """
    out = []
    for i, e in enumerate(edges):
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise GraphError(f"edge {i} ({u}, {v}): loop")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {i} ({u}, {v}): endpoint out of range 0..{n - 1}")
        out.append(_norm(u, v))
    return MultiGraph(n, tuple(out))


def component_of(G: MultiGraph, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    adj = G.adjacency
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def connected_components(G: MultiGraph) -> list[set[int]]:
    left = set(range(G.n))
    comps = []
    while left:
        c = component_of(G, min(left))
        comps.append(c)
        left -= c
    return comps


def contract_edges(G: MultiGraph, X: Iterable[int]) -> tuple[MultiGraph, tuple[int, ...]]:
    """G/X: merge each component of (V, X), then drop the resulting loops.

    Parallel edges survive.  Returns the contracted graph and the merge map
    (old vertex -> new vertex).  New vertices are numbered by the smallest
    old vertex of their class, so an empty ``X`` is the identity.
    """
    pairs = []
    for i in X:
        if not 0 <= i < G.m:
            raise GraphError(f"edge index {i} out of range 0..{G.m - 1}")
        pairs.append(G.edges[i])
    return _quotient(G, pairs)


def identify_vertices(G: MultiGraph, blocks: Iterable[Iterable[int]]) -> tuple[MultiGraph, tuple[int, ...]]:
    """Identify each vertex block into a single vertex (loops dropped)."""
    pairs = []
    for block in blocks:
        b = sorted(block)
        pairs.extend((b[0], x) for x in b[1:])
    return _quotient(G, pairs)


def _quotient(G: MultiGraph, pairs: Iterable[Edge]) -> tuple[MultiGraph, tuple[int, ...]]:
    parent = list(range(G.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        a, b = find(u), find(v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(v) for v in range(G.n)})
    rank = {r: j for j, r in enumerate(roots)}
    merge = tuple(rank[find(v)] for v in range(G.n))
    edges = tuple(_norm(merge[u], merge[v]) for u, v in G.edges if merge[u] != merge[v])
    return MultiGraph(len(roots), edges), merge


def independence_number(G: MultiGraph) -> int:
    """Exact alpha of the underlying simple graph (bitmask branching)."""
    adj = [sum(1 << w for w in G.adjacency[v]) for v in range(G.n)]

    def best(cand: int) -> int:
        if cand == 0:
            return 0
        v = (cand & -cand).bit_length() - 1
        without = best(cand & ~(1 << v))
        with_v = 1 + best(cand & ~(1 << v) & ~adj[v])
        return max(without, with_v)

    return best((1 << G.n) - 1)


def has_triangle(G: MultiGraph) -> bool:
    adj = G.adjacency
    for u, v in set(G.edges):
        if adj[u] & adj[v]:
            return True
    return False


def alpha_le_2(G: MultiGraph) -> bool:
    """True iff the independence number is at most 2 (complement triangle-free)."""
    return not has_triangle(G.complement())


def edge_connectivity(G: MultiGraph) -> float:
    """Global minimum edge cut (multiplicities counted), by Stoer-Wagner.

    Disconnected graphs give 0; graphs with at most one vertex give
    ``INFINITE_CONNECTIVITY``.
    """
    n = G.n
    if n <= 1:
        return INFINITE_CONNECTIVITY
    if not G.is_connected:
        return 0
    w = [list(row) for row in G.matrix]
    active = list(range(n))
    best = math.inf
    while len(active) > 1:
        # maximum adjacency ordering over the current super-vertices
        weights = {v: 0 for v in active}
        added: list[int] = []
        remaining = set(active)
        last = active[0]
        while remaining:
            last = max(remaining, key=lambda v: (weights[v], -v))
            remaining.discard(last)
            added.append(last)
            for v in remaining:
                weights[v] += w[last][v]
        cut = weights[last]
        best = min(best, cut)
        prev = added[-2]
        for v in active:
            w[prev][v] += w[last][v]
            w[v][prev] = w[prev][v]
        w[prev][prev] = 0
        active.remove(last)
    return int(best)


def is_k_edge_connected(G: MultiGraph, k: int) -> bool:
    return edge_connectivity(G) >= k


def satisfies_ore(G: MultiGraph) -> bool:
    """Ore condition: d(u) + d(v) >= n for every non-adjacent pair."""
    deg = G.degrees
    return all(
        deg[u] + deg[v] >= G.n
        for u, v in itertools.combinations(range(G.n), 2)
        if not G.has_edge(u, v)
    )


def contains_subgraph(G: MultiGraph, H: MultiGraph, *, spanning: bool = False) -> bool:
    """Is there an injective vertex map H -> G carrying every edge of H onto an edge of G?

    Multiplicities are respected.  ``spanning`` additionally requires the
    two graphs to have the same order.
    """
    if H.n > G.n or H.m > G.m or (spanning and H.n != G.n):
        return False
    order = sorted(range(H.n), key=lambda v: (-H.degrees[v], v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        h = order[i]
        for g in range(G.n):
            if g in used or G.degrees[g] < H.degrees[h]:
                continue
            if all(G.matrix[g][mapping[x]] >= H.matrix[h][x] for x in H.adjacency[h] if x in mapping):
                mapping[h] = g
                used.add(g)
                if rec(i + 1):
                    return True
                del mapping[h]
                used.discard(g)
        return False

    return rec(0)
