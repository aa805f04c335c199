"""Brute-force reference implementations used only by the tests.

Nothing here imports the package's kernels, canonical labeling or census
code; each function is a direct transcription of a definition.
"""

from __future__ import annotations

import itertools
import math


def edges_of(G):
    return list(G.edges)


def brute_boundaries(n, edges, k):
    """Set of boundary tuples over every nowhere-zero assignment (reference orientation lo -> hi)."""
    out = set()
    for f in itertools.product(range(1, k), repeat=len(edges)):
        b = [0] * n
        for (u, v), x in zip(edges, f):
            b[u] = (b[u] + x) % k
            b[v] = (b[v] - x) % k
        out.add(tuple(b))
    return out


def brute_group_connected(G, k):
    if G.n <= 1:
        return True
    reach = brute_boundaries(G.n, edges_of(G), k)
    return len(reach) == k ** (G.n - 1)


def brute_nz_flow(G, k):
    return (0,) * G.n in brute_boundaries(G.n, edges_of(G), k)


def brute_orientation_set(G):
    """Every outdeg - indeg (mod 3) vector over all 2^m orientations."""
    out = set()
    for bits in itertools.product((0, 1), repeat=G.m):
        b = [0] * G.n
        for (u, v), bit in zip(G.edges, bits):
            t, h = (u, v) if bit else (v, u)
            b[t] = (b[t] + 1) % 3
            b[h] = (b[h] - 1) % 3
        out.add(tuple(b))
    return out


def brute_alpha(G):
    adj = {(u, v) for u, v in G.edges} | {(v, u) for u, v in G.edges}
    for r in range(G.n, 0, -1):
        for S in itertools.combinations(range(G.n), r):
            if all((a, b) not in adj for a, b in itertools.combinations(S, 2)):
                return r
    return 0


def brute_edge_connectivity(G):
    """Minimum over all vertex bipartitions of the crossing edge count."""
    if G.n <= 1:
        return math.inf
    best = math.inf
    for mask in range(1, 1 << (G.n - 1)):
        side = {v for v in range(G.n) if mask >> v & 1}
        best = min(best, sum(1 for u, v in G.edges if (u in side) != (v in side)))
    return best


def brute_key(G):
    """Lexicographically least sorted edge list over all vertex permutations."""
    best = None
    for p in itertools.permutations(range(G.n)):
        es = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in G.edges))
        if best is None or es < best:
            best = es
    return (G.n, best)


def brute_isomorphic(G, H):
    return G.n == H.n and G.m == H.m and brute_key(G) == brute_key(H)


def labeled_graphs(n):
    """Every simple labeled graph on n vertices as an edge list."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def brute_contains(G, H, spanning=False):
    if H.n > G.n or (spanning and H.n != G.n):
        return False
    from collections import Counter

    need = Counter(H.edges)
    have = Counter(G.edges)
    for img in itertools.permutations(range(G.n), H.n):
        if all(have[tuple(sorted((img[u], img[v])))] >= c for (u, v), c in need.items()):
            return True
    return False
