"""Contraction and lifting calculus for Z_3-connectivity.

Certified subgraphs come from a small pattern library (parallel pairs,
even wheels, K5, K5 minus an edge) or, in the exhaustive search, from the
flow oracle.  Contracting a certified subgraph never changes whether the
whole graph is Z_3-connected, so a trace ending in K1 is a certificate.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .canon import are_isomorphic, canonical_form
from .families import complete
from .flows import DEFAULT_MAX_EDGES, BudgetExceeded, is_group_connected
from .graph import (
    MultiGraph,
    connected_components,
    contract_edges,
)

MAX_SEARCH_ORDER = 9

PATTERN_NAMES = ("2-cycle", "even-wheel", "K5", "K5-", "oracle-verified")


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionStep:
    """One move.  ``edges`` index the graph the step is applied to."""

    kind: str  # "contract" or "lift"
    edges: tuple[int, ...] = ()
    pattern: str = ""
    triple: Optional[tuple[int, int, int]] = None

    def apply(self, G: MultiGraph) -> MultiGraph:
        if self.kind == "contract":
            return contract_edges(G, self.edges)[0]
        if self.kind == "lift":
            assert self.triple is not None
            u, v, w = self.triple
            e_uv, e_uw = self.edges if self.edges else (None, None)
            return lift(G, u, v, w, edge_uv=e_uv, edge_uw=e_uw)
        raise ReductionError(f"unknown step kind {self.kind!r}")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "edges": list(self.edges)}
        if self.pattern:
            d["pattern"] = self.pattern
        if self.triple is not None:
            d["triple"] = list(self.triple)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ReductionStep":
        triple = tuple(d["triple"]) if d.get("triple") is not None else None
        return cls(d["kind"], tuple(d.get("edges", ())), d.get("pattern", ""), triple)  # type: ignore[arg-type]


@dataclass(frozen=True)
class ReductionTrace:
    initial: MultiGraph
    steps: tuple[ReductionStep, ...] = ()
    terminal: MultiGraph = field(default_factory=lambda: MultiGraph(0))

    def replay(self) -> MultiGraph:
        G = self.initial
        for step in self.steps:
            G = step.apply(G)
        return G

    def verify(self, certify: bool = False) -> bool:
        """Replay reproduces ``terminal`` exactly; optionally re-certify each contraction."""
        G = self.initial
        for step in self.steps:
            if certify and step.kind == "contract":
                sub, _ = G.edge_subgraph(step.edges)
                if not is_group_connected(sub, 3):
                    return False
            G = step.apply(G)
        return G == self.terminal

    def to_jsonl(self) -> str:
        lines = [json.dumps({"initial": {"n": self.initial.n, "edges": [list(e) for e in self.initial.edges]}})]
        lines.extend(json.dumps(s.to_dict()) for s in self.steps)
        lines.append(json.dumps({"terminal": {"n": self.terminal.n, "edges": [list(e) for e in self.terminal.edges]}}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "ReductionTrace":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if len(rows) < 2 or "initial" not in rows[0] or "terminal" not in rows[-1]:
            raise ReductionError("trace needs an initial line, steps, and a terminal line")
        init, term = rows[0]["initial"], rows[-1]["terminal"]
        initial = MultiGraph(init["n"], tuple(tuple(e) for e in init["edges"]))
        terminal = MultiGraph(term["n"], tuple(tuple(e) for e in term["edges"]))
        return cls(initial, tuple(ReductionStep.from_dict(r) for r in rows[1:-1]), terminal)

    def to_tsv(self) -> str:
        out = []
        for i, s in enumerate(self.steps):
            detail = ",".join(map(str, s.triple)) if s.triple else ""
            out.append(f"{i}\t{s.kind}\t{s.pattern or '-'}\t{','.join(map(str, s.edges))}\t{detail}")
        return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------- lifting


def lift(
    G: MultiGraph,
    u: int,
    v: int,
    w: int,
    *,
    edge_uv: Optional[int] = None,
    edge_uw: Optional[int] = None,
) -> MultiGraph:
    """G with one uv and one uw edge removed and an edge vw appended.

    Requires d(u) >= 4 and v != w.  Surviving edges keep their relative
    order; the new edge is last.
    """
    if len({u, v, w}) != 3:
        raise ReductionError(f"lift needs three distinct vertices, got {(u, v, w)}")
    if G.degree(u) < 4:
        raise ReductionError(f"lift at {u}: degree {G.degree(u)} < 4")
    e1 = _pick_edge(G, u, v, edge_uv)
    e2 = _pick_edge(G, u, w, edge_uw)
    edges = [e for i, e in enumerate(G.edges) if i not in (e1, e2)]
    edges.append((min(v, w), max(v, w)))
    return MultiGraph(G.n, tuple(edges))


def _pick_edge(G: MultiGraph, a: int, b: int, want: Optional[int]) -> int:
    key = (min(a, b), max(a, b))
    if want is not None:
        if not 0 <= want < G.m or G.edges[want] != key:
            raise ReductionError(f"edge {want} is not an edge {a}{b}")
        return want
    for i, e in enumerate(G.edges):
        if e == key:
            return i
    raise ReductionError(f"no edge {a}{b} to lift")


def valid_lifts(G: MultiGraph) -> Iterator[tuple[int, int, int]]:
    """Triples (u, v, w) with d(u) >= 4, uv, uw edges, v < w."""
    for u in range(G.n):
        if G.degree(u) < 4:
            continue
        nb = sorted(G.neighbors(u))
        for v, w in itertools.combinations(nb, 2):
            yield (u, v, w)


# ---------------------------------------------------------------- patterns


def _first_edge_ids(G: MultiGraph) -> dict[tuple[int, int], int]:
    ids: dict[tuple[int, int], int] = {}
    for i, e in enumerate(G.edges):
        ids.setdefault(e, i)
    return ids


def _cycles_of_length(vertices: list[int], adj, length: int) -> Iterator[tuple[int, ...]]:
    """Simple cycles on ``vertices`` with exactly ``length`` vertices, each once."""
    vs = set(vertices)
    for start in sorted(vs):
        path = [start]

        def extend() -> Iterator[tuple[int, ...]]:
            last = path[-1]
            if len(path) == length:
                if start in adj[last] and path[1] < path[-1]:
                    yield tuple(path)
                return
            for nxt in sorted(adj[last]):
                if nxt in vs and nxt > start and nxt not in path:
                    path.append(nxt)
                    yield from extend()
                    path.pop()

        yield from extend()


def _even_wheels(G: MultiGraph, spokes: int) -> list[tuple[int, ...]]:
    ids = _first_edge_ids(G)
    adj = G.adjacency
    found = []
    for hub in range(G.n):
        nb = sorted(adj[hub])
        if len(nb) < spokes:
            continue
        for rim in _cycles_of_length(nb, adj, spokes):
            es = [ids[(min(hub, r), max(hub, r))] for r in rim]
            es += [ids[(min(a, b), max(a, b))] for a, b in zip(rim, rim[1:] + rim[:1])]
            found.append(tuple(sorted(es)))
    return found


def find_contractible_subgraph(G: MultiGraph) -> Optional[tuple[tuple[int, ...], str]]:
    """Smallest certified pattern in G as (edge ids, pattern name), or None.

    Patterns are ranked by number of vertices; on a 5-vertex set the
    densest pattern present (K5, then K5-, then the 4-wheel) is reported.
    Remaining ties go to the lexicographically smallest edge set.
    """
    ids = _first_edge_ids(G)
    seen: dict[tuple[int, int], int] = {}
    for i, e in enumerate(G.edges):
        if e in seen:
            return (seen[e], i), "2-cycle"
        seen[e] = i
    # 5-vertex patterns: K5 / K5- / W4 share vertex sets
    best5: Optional[tuple[int, tuple[int, ...], str]] = None
    for S in itertools.combinations(range(G.n), 5):
        pairs = [p for p in itertools.combinations(S, 2) if p in ids]
        if len(pairs) >= 9:
            name = "K5" if len(pairs) == 10 else "K5-"
            cand = (0 if name == "K5" else 1, tuple(sorted(ids[p] for p in pairs)), name)
            if best5 is None or cand < best5:
                best5 = cand
    if best5 is not None:
        return best5[1], best5[2]
    wheels = _even_wheels(G, 4)
    if wheels:
        return min(wheels), "even-wheel"
    for spokes in range(6, G.n, 2):
        wheels = _even_wheels(G, spokes)
        if wheels:
            return min(wheels), "even-wheel"
    return None


def reduce_greedy(G: MultiGraph) -> ReductionTrace:
    """Contract library patterns until none is left."""
    steps = []
    cur = G
    while True:
        hit = find_contractible_subgraph(cur)
        if hit is None:
            break
        edges, name = hit
        step = ReductionStep("contract", edges, name)
        steps.append(step)
        cur = step.apply(cur)
    return ReductionTrace(G, tuple(steps), cur)


# ------------------------------------------------------ certified closure


def attach_vertex_closure(
    G: MultiGraph,
    H_edges: Iterable[int],
    *,
    certify: bool = True,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> tuple[int, ...]:
    """Grow a Z_3-connected core by absorbing vertices with >= 2 edges into it.

    Returns every edge of G with both ends in the final core (adding edges
    to a Z_3-connected spanning subgraph keeps it Z_3-connected).
    """
    seed = sorted(set(H_edges))
    if not seed:
        raise ReductionError("empty seed")
    if certify:
        sub, _ = G.edge_subgraph(seed)
        if not is_group_connected(sub, 3, max_edges=max_edges):
            raise ReductionError("seed subgraph is not Z3-connected")
    core = {x for i in seed for x in G.edges[i]}
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            if v not in core and G.edges_between([v], core) >= 2:
                core.add(v)
                changed = True
    inside = set(G.induced_edge_ids(core))
    return tuple(sorted(inside | set(seed)))


# ------------------------------------------------- triangular connectivity


def triangularly_connected(G: MultiGraph) -> bool:
    """Every two edges linked through cycles of length <= 3."""
    if G.m == 0:
        raise ReductionError("triangular connectivity needs at least one edge")
    parent = list(range(G.m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(group: list[int]) -> None:
        r = find(group[0])
        for x in group[1:]:
            parent[find(x)] = r

    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(G.edges):
        by_pair.setdefault(e, []).append(i)
    for group in by_pair.values():
        if len(group) > 1:
            union(group)
    adj = G.adjacency
    for (a, b), group in by_pair.items():
        for c in adj[a] & adj[b]:
            if c > b:
                union(group + by_pair[(min(a, c), max(a, c))] + by_pair[(min(b, c), max(b, c))])
    return len({find(i) for i in range(G.m)}) == 1


@dataclass(frozen=True)
class WheelBlock:
    """Odd wheel W_k (k=1 is a triangle) on the listed vertices of the host graph."""

    spokes: int
    vertices: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"W_{self.spokes}"


def odd_wheel_size(G: MultiGraph) -> Optional[int]:
    """k if G is the odd wheel W_k (W_1 = triangle), else None."""
    if not G.is_simple or G.n < 3:
        return None
    if G.n == 3:
        return 1 if G.m == 3 else None
    k = G.n - 1
    if k % 2 == 0 or G.m != 2 * k:
        return None
    for hub in range(G.n):
        if G.degree(hub) != k:
            continue
        rim, _ = G.induced([v for v in range(G.n) if v != hub])
        if all(d == 2 for d in rim.degrees) and rim.is_connected:
            return k
    return None


def fan_decomposition(G: MultiGraph) -> Optional[list[WheelBlock]]:
    """Split G into odd wheels glued by 2-sums, or None if impossible.

    Each 2-sum shares one edge between the two sides, so the gluing edge
    must separate the rest of the graph.
    """
    if G.m == 0 or not triangularly_connected(G):
        raise ReductionError("fan decomposition needs a triangularly connected graph")
    if G.n > MAX_SEARCH_ORDER:
        raise BudgetExceeded(f"fan decomposition limited to n <= {MAX_SEARCH_ORDER}")
    verts = [v for v in range(G.n) if G.degree(v) > 0]
    sub, _ = G.induced(verts)
    shape = _decompose_shape(sub)
    if shape is None:
        return None
    return [WheelBlock(k, tuple(verts[j] for j in blk)) for k, blk in shape]


@lru_cache(maxsize=4096)
def _decompose_shape(G: MultiGraph) -> Optional[tuple[tuple[int, tuple[int, ...]], ...]]:
    if not G.is_simple:
        return None
    k = odd_wheel_size(G)
    if k is not None:
        return ((k, tuple(range(G.n))),)
    for x, y in G.edges:
        rest = [v for v in range(G.n) if v not in (x, y)]
        restG, rmap = G.induced(rest)
        back = {j: v for v, j in rmap.items()}
        comps = [sorted(back[c] for c in comp) for comp in connected_components(restG)]
        if len(comps) < 2:
            continue
        first, others = comps[0], comps[1:]
        for r in range(len(others)):
            for pick in itertools.combinations(range(len(others)), r):
                side_a = first + [v for i in pick for v in others[i]]
                side_b = [v for i, c in enumerate(others) if i not in pick for v in c]
                parts = []
                for side in (side_a, side_b):
                    vs = sorted(side + [x, y])
                    h, _ = G.induced(vs)
                    shape = _decompose_shape(h)
                    if shape is None:
                        break
                    parts.extend((kk, tuple(vs[j] for j in blk)) for kk, blk in shape)
                else:
                    return tuple(parts)
    return None


# ------------------------------------------------------ exhaustive search


def _quick_reject(H: MultiGraph) -> bool:
    return not H.is_connected or min(H.degrees) < 2


def certified_vertex_sets(
    G: MultiGraph, *, max_edges: int = DEFAULT_MAX_EDGES
) -> list[tuple[tuple[int, ...], str]]:
    """Minimal vertex sets S (|S| >= 2) whose induced subgraph is Z_3-connected.

    Supersets of a certified set are skipped: contracting the superset is
    the same as contracting the smaller set first and then the (still
    certified) image of the rest.  Subsets over the oracle budget are
    treated as uncertifiable.
    """
    found: list[tuple[tuple[int, ...], str]] = []
    masks: list[int] = []
    for r in range(2, G.n + 1):
        for S in itertools.combinations(range(G.n), r):
            mask = sum(1 << v for v in S)
            if any(m & mask == m for m in masks):
                continue
            H, _ = G.induced(S)
            if _quick_reject(H):
                continue
            if r == 2:
                name = "2-cycle"
            else:
                try:
                    if not is_group_connected(H, 3, max_edges=max_edges):
                        continue
                except BudgetExceeded:
                    continue
                name = "oracle-verified"
            found.append((S, name))
            masks.append(mask)
    return found


def _contract_step(G: MultiGraph, S: tuple[int, ...], name: str) -> ReductionStep:
    return ReductionStep("contract", G.induced_edge_ids(S), name)


def contracts_to(
    G: MultiGraph,
    target: str | MultiGraph,
    *,
    max_n: int = MAX_SEARCH_ORDER,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> Optional[ReductionTrace]:
    """Search contraction sequences of certified subgraphs ending at ``target``.

    ``target`` is "K1", "K4", or a graph.  Reaching it requires that no
    certified subgraph remains, i.e. it is a genuine Z_3-contraction
    outcome.  States are memoized by canonical form.
    """
    if G.n > max_n:
        raise BudgetExceeded(f"contraction search limited to n <= {max_n}, got {G.n}")
    goal = {"K1": complete(1), "K4": complete(4)}.get(target, target) if isinstance(target, str) else target
    if not isinstance(goal, MultiGraph):
        raise ReductionError(f"unknown target {target!r}")
    dead: set[bytes] = set()

    def dfs(cur: MultiGraph) -> Optional[list[ReductionStep]]:
        if cur.n < goal.n:
            return None
        key = canonical_form(cur)
        if key in dead:
            return None
        cands = certified_vertex_sets(cur, max_edges=max_edges)
        if not cands:
            if are_isomorphic(cur, goal):
                return []
            dead.add(key)
            return None
        for S, name in cands:
            step = _contract_step(cur, S, name)
            rest = dfs(step.apply(cur))
            if rest is not None:
                return [step] + rest
        dead.add(key)
        return None

    steps = dfs(G)
    if steps is None:
        return None
    trace = ReductionTrace(G, tuple(steps), MultiGraph(0))
    return ReductionTrace(G, trace.steps, trace.replay())


def z3_contraction(G: MultiGraph, *, max_edges: int = DEFAULT_MAX_EDGES) -> ReductionTrace:
    """One full Z_3-contraction: greedy patterns first, then oracle-certified sets."""
    trace = reduce_greedy(G)
    steps = list(trace.steps)
    cur = trace.terminal
    while True:
        cands = certified_vertex_sets(cur, max_edges=max_edges)
        if not cands:
            break
        S, name = cands[0]
        step = _contract_step(cur, S, name)
        steps.append(step)
        cur = step.apply(cur)
    return ReductionTrace(G, tuple(steps), cur)


def terminal_forms(G: MultiGraph, *, max_edges: int = DEFAULT_MAX_EDGES) -> set[bytes]:
    """Canonical forms of every reachable Z_3-contraction outcome (confluence probe)."""
    memo: dict[bytes, set[bytes]] = {}

    def rec(cur: MultiGraph) -> set[bytes]:
        key = canonical_form(cur)
        if key in memo:
            return memo[key]
        cands = certified_vertex_sets(cur, max_edges=max_edges)
        out: set[bytes] = set()
        if not cands:
            out.add(key)
        for S, name in cands:
            out |= rec(_contract_step(cur, S, name).apply(cur))
        memo[key] = out
        return out

    return rec(G)


def contracts_to_k4_minor(G: MultiGraph) -> bool:
    """Some edge set X has G/X isomorphic to K4 (ordinary contraction).

    Equivalently V(G) splits into four connected parts with exactly one
    edge between every two parts.
    """
    if G.n < 4:
        return False
    return any(_is_k4_quotient(G, blocks) for blocks in _set_partitions(list(range(G.n)), 4))


def _set_partitions(items: list[int], k: int) -> Iterator[list[list[int]]]:
    if not items:
        if k == 0:
            yield []
        return
    if k == 0:
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest, k - 1):
        yield [[first]] + p
    for p in _set_partitions(rest, k):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def _is_k4_quotient(G: MultiGraph, blocks: list[list[int]]) -> bool:
    where = {}
    for b, vs in enumerate(blocks):
        for v in vs:
            where[v] = b
    counts = [[0] * 4 for _ in range(4)]
    for u, v in G.edges:
        a, b = where[u], where[v]
        if a != b:
            counts[a][b] += 1
            counts[b][a] += 1
    if any(counts[a][b] != 1 for a in range(4) for b in range(a + 1, 4)):
        return False
    return all(G.induced(vs)[0].is_connected for vs in blocks)
