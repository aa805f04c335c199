"""Exhaustive enumeration of small graphs up to isomorphism.

alpha(G) <= 2 exactly when the complement is triangle-free, so the census
grows triangle-free graphs one vertex at a time (a new vertex may only be
joined to an independent set) and complements them at the end.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .canon import canonical_form, canonical_graph
from .graph import MultiGraph, edge_connectivity, independence_number
from .graph6 import encode_graph6

MAX_CENSUS_ORDER = 10


class CensusBudgetError(ValueError):
    pass


def _subsets(n: int, adj: list[int], independent: bool) -> Iterator[int]:
    def rec(v: int, chosen: int) -> Iterator[int]:
        if v == n:
            yield chosen
            return
        yield from rec(v + 1, chosen)
        if not independent or not (adj[v] & chosen):
            yield from rec(v + 1, chosen | (1 << v))

    return rec(0, 0)


def _extend(classes: list[MultiGraph], independent: bool) -> list[MultiGraph]:
    seen: dict[bytes, MultiGraph] = {}
    for H in classes:
        n = H.n
        adj = [sum(1 << w for w in H.adjacency[v]) for v in range(n)]
        for mask in _subsets(n, adj, independent):
            G = MultiGraph(n + 1, H.edges + tuple((v, n) for v in range(n) if mask >> v & 1))
            key = canonical_form(G)
            if key not in seen:
                seen[key] = canonical_graph(G)
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def triangle_free_classes(n: int) -> tuple[MultiGraph, ...]:
    """One canonical representative per triangle-free graph on n vertices."""
    if n <= 0:
        return (MultiGraph(0),)
    return tuple(_extend(list(triangle_free_classes(n - 1)), independent=True))


@lru_cache(maxsize=None)
def graph_classes(n: int) -> tuple[MultiGraph, ...]:
    """One canonical representative per simple graph on n vertices."""
    if n <= 0:
        return (MultiGraph(0),)
    return tuple(_extend(list(graph_classes(n - 1)), independent=False))


def enumerate_census(
    n: int,
    *,
    alpha_le_2: bool = True,
    min_edge_connectivity: int = 0,
    simple: bool = True,
) -> Iterator[MultiGraph]:
    """Canonical representatives of the simple graphs of order n meeting the constraints.

    Yields in canonical-form order.  Orders above ``MAX_CENSUS_ORDER`` are
    refused, as are multigraph censuses (unbounded).
    """
    if not 1 <= n <= MAX_CENSUS_ORDER:
        raise CensusBudgetError(f"census order must be in 1..{MAX_CENSUS_ORDER}, got {n}")
    if not simple:
        raise CensusBudgetError("multigraph census is unbounded; only simple=True is supported")
    if alpha_le_2:
        pool = [canonical_graph(H.complement()) for H in triangle_free_classes(n)]
    else:
        pool = list(graph_classes(n))
    pool.sort(key=canonical_form)
    for G in pool:
        if min_edge_connectivity and edge_connectivity(G) < min_edge_connectivity:
            continue
        yield G


def census_row(G: MultiGraph) -> str:
    """``graph6 <TAB> n <TAB> m <TAB> edge_conn <TAB> alpha``."""
    lam = edge_connectivity(G)
    lam_s = "inf" if lam == float("inf") else str(int(lam))
    return f"{encode_graph6(G)}\t{G.n}\t{G.m}\t{lam_s}\t{independence_number(G)}"


def theorem_census(min_n: int = 4, max_n: int = 8) -> list[MultiGraph]:
    """Simple, 3-edge-connected graphs with alpha <= 2 for orders min_n..max_n."""
    out: list[MultiGraph] = []
    for n in range(min_n, max_n + 1):
        out.extend(enumerate_census(n, alpha_le_2=True, min_edge_connectivity=3))
    return out
