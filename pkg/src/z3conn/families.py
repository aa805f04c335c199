"""Standard graph families: complete graphs, cycles, wheels, bipartite graphs, 2-sums."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .graph import GraphError, MultiGraph, build_graph

FAMILY_TAGS = ("complete", "complete_minus_edge", "cycle", "wheel", "complete_bipartite", "two_sum")


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family member.

    ``params`` holds the size parameters: ``(n,)`` for complete graphs and
    cycles, ``(k,)`` for wheels, ``(m, n)`` for complete bipartite graphs.
    A ``two_sum`` spec carries its operands in ``left``/``right`` and the
    index of the identified edge in each operand in ``glue``.
    """

    tag: str
    params: tuple[int, ...] = ()
    left: Optional["FamilySpec"] = None
    right: Optional["FamilySpec"] = None
    glue: tuple[int, int] = field(default=(0, 0))


def complete(n: int) -> MultiGraph:
    if n < 1:
        raise GraphError(f"K_n needs n >= 1, got {n}")
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_minus_edge(n: int) -> MultiGraph:
    """K_n with the edge (0, 1) removed."""
    if n < 2:
        raise GraphError(f"K_n^- needs n >= 2, got {n}")
    return build_graph(n, [e for e in itertools.combinations(range(n), 2) if e != (0, 1)])


def cycle(n: int) -> MultiGraph:
    """C_n on 0..n-1; C_2 is a double edge."""
    if n < 2:
        raise GraphError(f"C_n needs n >= 2, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def wheel(k: int) -> MultiGraph:
    """W_k: rim 0..k-1 plus hub k.  W_1 is a triangle."""
    if k < 1:
        raise GraphError(f"W_k needs k >= 1, got {k}")
    if k == 1:
        return complete(3)
    rim = [(i, (i + 1) % k) for i in range(k)]
    return build_graph(k + 1, rim + [(k, i) for i in range(k)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    """K_{a,b} with sides 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise GraphError(f"K_(a,b) needs a, b >= 1, got {a}, {b}")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def two_sum(g: MultiGraph, h: MultiGraph, ge: int = 0, he: int = 0) -> MultiGraph:
    """Glue ``h`` onto ``g`` by identifying edge ``he`` of h with edge ``ge`` of g.

    The identified edge is kept once.  g keeps its labels; the endpoints of
    ``he`` map to those of ``ge`` (lo to lo) and the other vertices of h are
    appended in order.
    """
    if not (0 <= ge < g.m and 0 <= he < h.m):
        raise GraphError("2-sum needs an existing edge in each operand")
    x, y = g.edges[ge]
    a, b = h.edges[he]
    vmap = {a: x, b: y}
    nxt = g.n
    for v in range(h.n):
        if v not in vmap:
            vmap[v] = nxt
            nxt += 1
    edges = list(g.edges) + [(vmap[u], vmap[v]) for i, (u, v) in enumerate(h.edges) if i != he]
    return build_graph(nxt, edges)


def gen_family(spec: FamilySpec) -> MultiGraph:
    p = spec.params
    try:
        if spec.tag == "complete":
            return complete(*p)
        if spec.tag == "complete_minus_edge":
            return complete_minus_edge(*p)
        if spec.tag == "cycle":
            return cycle(*p)
        if spec.tag == "wheel":
            return wheel(*p)
        if spec.tag == "complete_bipartite":
            return complete_bipartite(*p)
    except TypeError as exc:
        raise GraphError(f"bad parameters {p!r} for family {spec.tag!r}") from exc
    if spec.tag == "two_sum":
        if spec.left is None or spec.right is None:
            raise GraphError("two_sum spec needs both operands")
        return two_sum(gen_family(spec.left), gen_family(spec.right), *spec.glue)
    raise GraphError(f"unknown family tag {spec.tag!r}")
