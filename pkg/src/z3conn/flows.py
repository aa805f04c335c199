"""Exact deciders for Z_k group connectivity and nowhere-zero Z_k flows.

All deciders work with a fixed reference orientation (every edge runs from
its lower endpoint to its higher one).  Reversing an edge is the same as
negating its value, so enumerating values under one orientation covers
every (orientation, assignment) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from . import kernels
from .graph import MultiGraph

DEFAULT_MAX_EDGES = 28
DEFAULT_MAX_ORIENTATION_EDGES = 30
DEFAULT_MAX_STATES = 1 << 22

METHODS = ("sweep", "gray")


class BudgetExceeded(RuntimeError):
    """The instance is larger than the configured enumeration budget."""


class DemandError(ValueError):
    pass


Orientation = tuple[int, ...]
FlowAssignment = tuple[int, ...]
BoundaryDemand = tuple[int, ...]


def boundary(G: MultiGraph, orientation: Sequence[int], f: Sequence[int], k: int) -> BoundaryDemand:
    """Out-sum minus in-sum of ``f`` at every vertex, mod k.

    ``orientation[i] == 1`` directs edge i from its lower endpoint to the
    higher one; 0 reverses it.
    """
    if len(orientation) != G.m or len(f) != G.m:
        raise ValueError(f"orientation/assignment length must equal m={G.m}")
    b = [0] * G.n
    for (lo, hi), bit, val in zip(G.edges, orientation, f):
        tail, head = (lo, hi) if bit else (hi, lo)
        b[tail] += val
        b[head] -= val
    return tuple(x % k for x in b)


def zero_sum_demands(n: int, k: int) -> Iterator[BoundaryDemand]:
    """All b in Z_k^n with sum 0, in index order."""
    if n == 0:
        yield ()
        return
    for idx in range(k ** (n - 1)):
        yield _decode(idx, n, k)


def _decode(idx: int, n: int, k: int) -> BoundaryDemand:
    b = []
    for _ in range(n - 1):
        idx, r = divmod(idx, k)
        b.append(r)
    b.append(-sum(b) % k)
    return tuple(b)


@dataclass(frozen=True)
class AchievableSet:
    """Set of realizable zero-sum boundary demands.

    ``bits[i]`` is 1 when the demand with base-k index ``i`` (vertices
    ``0..n-2``; vertex ``n-1`` forced by the zero sum) is realizable.
    """

    k: int
    n: int
    bits: bytes

    def index_of(self, b: Sequence[int]) -> int:
        if len(b) != self.n:
            raise DemandError(f"demand has {len(b)} entries, graph has {self.n} vertices")
        if sum(b) % self.k:
            raise DemandError(f"demand {tuple(b)} does not sum to 0 mod {self.k}")
        idx = 0
        for v in range(self.n - 2, -1, -1):
            idx = idx * self.k + b[v] % self.k
        return idx

    def __contains__(self, b: Sequence[int]) -> bool:
        return bool(self.bits[self.index_of(b)])

    def __len__(self) -> int:
        return sum(self.bits)

    @property
    def capacity(self) -> int:
        return len(self.bits)

    @property
    def is_full(self) -> bool:
        return len(self) == self.capacity

    def __iter__(self) -> Iterator[BoundaryDemand]:
        for idx, bit in enumerate(self.bits):
            if bit:
                yield _decode(idx, self.n, self.k) if self.n else ()

    def missing(self) -> list[BoundaryDemand]:
        """Zero-sum demands that no nowhere-zero assignment realizes."""
        return [_decode(i, self.n, self.k) for i, bit in enumerate(self.bits) if not bit]


def _check_budget(G: MultiGraph, k: int, max_edges: int, max_states: int) -> None:
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the oracle budget of {max_edges}; reduce the graph first")
    if G.n > 1 and k ** (G.n - 1) > max_states:
        raise BudgetExceeded(f"{k}^{G.n - 1} demand states exceeds the budget of {max_states}")


def _endpoints(G: MultiGraph, orientation: Sequence[int] | None) -> tuple[list[int], list[int]]:
    if orientation is None:
        return [u for u, _ in G.edges], [v for _, v in G.edges]
    if len(orientation) != G.m:
        raise ValueError(f"orientation length must equal m={G.m}")
    tails, heads = [], []
    for (lo, hi), bit in zip(G.edges, orientation):
        tails.append(lo if bit else hi)
        heads.append(hi if bit else lo)
    return tails, heads


def achievable_boundaries(
    G: MultiGraph,
    k: int = 3,
    *,
    max_edges: int = DEFAULT_MAX_EDGES,
    max_states: int = DEFAULT_MAX_STATES,
    method: str = "sweep",
    orientation: Sequence[int] | None = None,
) -> AchievableSet:
    """Exact set {boundary(f) : f nowhere-zero} for the given orientation.

    ``method="sweep"`` grows the reachable set edge by edge; ``"gray"``
    visits all (k-1)**m assignments in Gray-code order.  Both give the same
    set.  Exceeding ``max_edges`` raises ``BudgetExceeded``.
    """
    _check_budget(G, k, max_edges, max_states)
    if G.n == 0:
        return AchievableSet(k, 0, b"\x01")
    tails, heads = _endpoints(G, orientation)
    if method == "sweep":
        bits = kernels.sweep_boundaries(G.n, k, tails, heads)
    elif method == "gray":
        bits = kernels.gray_boundaries(G.n, k, tails, heads)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return AchievableSet(k, G.n, bytes(bits))


@lru_cache(maxsize=1 << 16)
def _connected_cached(G: MultiGraph, k: int, max_edges: int) -> bool:
    return achievable_boundaries(G, k, max_edges=max_edges).is_full


def is_group_connected(G: MultiGraph, k: int = 3, *, max_edges: int = DEFAULT_MAX_EDGES) -> bool:
    """Z_k-connectivity.  K1 is connected; disconnected graphs on 2+ vertices are not."""
    if G.n <= 1:
        return True
    if not G.is_connected:
        return False
    return _connected_cached(G, k, max_edges)


def has_nowhere_zero_flow(G: MultiGraph, k: int = 3, *, max_edges: int = DEFAULT_MAX_EDGES) -> bool:
    """Whether some nowhere-zero Z_k assignment has zero boundary everywhere."""
    if G.n == 0:
        return True
    return (0,) * G.n in achievable_boundaries(G, k, max_edges=max_edges)


def orientation_boundaries(G: MultiGraph, *, max_edges: int = DEFAULT_MAX_ORIENTATION_EDGES) -> AchievableSet:
    """All vectors |E+(v)| - |E-(v)| mod 3 reachable by some orientation."""
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the orientation budget of {max_edges}")
    if G.n == 0:
        return AchievableSet(3, 0, b"\x01")
    tails, heads = _endpoints(G, None)
    return AchievableSet(3, G.n, bytes(kernels.orientation_boundaries(G.n, tails, heads)))


def orientation_achieves(
    G: MultiGraph, b: Sequence[int], *, max_edges: int = DEFAULT_MAX_ORIENTATION_EDGES
) -> bool:
    """Is there an orientation with outdegree - indegree = b(v) (mod 3) everywhere?"""
    return b in orientation_boundaries(G, max_edges=max_edges)
