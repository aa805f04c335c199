"""Canonical forms for small multigraphs.

The canonical form is the lexicographically smallest upper-triangle
multiplicity vector over the vertex orderings reachable by
individualization-refinement: orderings are restricted to those compatible
with the (iteratively refined) degree partition, which is itself
isomorphism-invariant, so the minimum is a complete invariant.

Branches are also cut when two candidates in a cell are twins (swapping
them is an automorphism fixing everything individualized so far), which
keeps complete and empty graphs linear instead of factorial.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import MultiGraph

CanonicalForm = bytes


def _refine(colors: list[int], A: tuple[tuple[int, ...], ...]) -> list[int]:
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[w], A[v][w]) for w in range(n) if A[v][w])))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncolors:
            return new
        colors, ncolors = new, len(ranks)


def _individualize(colors: list[int], v: int) -> list[int]:
    keyed = [(c, 0 if w == v else 1) for w, c in enumerate(colors)]
    ranks = {s: i for i, s in enumerate(sorted(set(keyed)))}
    return [ranks[s] for s in keyed]


def _twins(A: tuple[tuple[int, ...], ...], u: int, v: int) -> bool:
    ru, rv = A[u], A[v]
    return all(ru[w] == rv[w] for w in range(len(A)) if w != u and w != v)


def _search(A, colors, best):
    n = len(colors)
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    target = min((c for c, k in counts.items() if k > 1), default=None)
    if target is None:
        order = sorted(range(n), key=colors.__getitem__)
        cert = tuple(A[order[i]][order[j]] for j in range(n) for i in range(j))
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, order
        return
    tried: list[int] = []
    for v in range(n):
        if colors[v] != target:
            continue
        if any(_twins(A, u, v) for u in tried):
            continue
        tried.append(v)
        _search(A, _refine(_individualize(colors, v), A), best)


@lru_cache(maxsize=1 << 15)
def _canonical(G: MultiGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    A = G.matrix
    best: list = [None, None]
    if G.n == 0:
        return (), ()
    _search(A, _refine([0] * G.n, A), best)
    return best[0], tuple(best[1])


def canonical_order(G: MultiGraph) -> tuple[int, ...]:
    """Vertices listed in canonical position order."""
    return _canonical(G)[1]


def canonical_form(G: MultiGraph) -> CanonicalForm:
    """Byte string equal for two graphs iff they are isomorphic."""
    cert, _ = _canonical(G)
    width = 1 if not cert or max(cert) < 256 else 2
    header = G.n.to_bytes(2, "big") + bytes([width])
    return header + b"".join(x.to_bytes(width, "big") for x in cert)


def canonical_graph(G: MultiGraph) -> MultiGraph:
    """The canonical relabeling of G, edges sorted."""
    order = canonical_order(G)
    pos = [0] * G.n
    for i, v in enumerate(order):
        pos[v] = i
    H = G.relabel(pos)
    return MultiGraph(H.n, tuple(sorted(H.edges)))


def are_isomorphic(G: MultiGraph, H: MultiGraph) -> bool:
    if G.n != H.n or G.m != H.m or sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_form(G) == canonical_form(H)
