"""The exceptional graphs G1..G18, the Ore sub-catalog and the multigraph families.

The shipped data file is a cache, not an authority: ``derive_exception_set``
regenerates the exceptional classes from the census and the oracle, and
``align_names`` recovers the G-numbering from the structural facts listed
in ``NAME_FACTS`` (orders, degrees, unrealizable degree demands, subgraph
relations, 2-sums of odd wheels).  Names that those facts pin down on their
own are flagged ``aligned:text``; names that also need the reconstructed
family construction are flagged ``aligned:partial``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Optional

from .canon import canonical_form
from .census import theorem_census
from .families import complete
from .flows import has_nowhere_zero_flow, is_group_connected, orientation_achieves
from .graph import (
    MultiGraph,
    alpha_le_2,
    contains_subgraph,
    edge_connectivity,
    satisfies_ore,
)
from .graph6 import decode_graph6, encode_graph6
from .reduction import (
    contracts_to,
    contracts_to_k4_minor,
    fan_decomposition,
    triangularly_connected,
)

DATA_DIR = Path(__file__).with_name("data")
CATALOG_PATH = DATA_DIR / "catalog.tsv"
FAMILY_PATH = DATA_DIR / "families.tsv"

NAMES = tuple(f"G{i}" for i in range(1, 19))
ORE_NAMES = ("G1", "G2", "G3", "G4", "G5")
NO_FLOW_NAMES = ("G3", "G5", "G18")
FAMILY_FLOORS = {"G3": 2, "G4": 2, "G10": 2, "G11": 3}
EXPECTED_ORDER = {"G1": 4, **{f"G{i}": 7 for i in range(6, 14)}, **{f"G{i}": 8 for i in range(14, 19)}}


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph6: str
    order: int
    degrees: tuple[int, ...]
    flags: tuple[str, ...] = ()

    @property
    def graph(self) -> MultiGraph:
        return decode_graph6(self.graph6)

    @property
    def facts(self) -> list["NameFact"]:
        return [f for f in NAME_FACTS if self.name in f.names]

    def to_row(self) -> str:
        degs = ",".join(map(str, self.degrees))
        return f"{self.name}\t{self.graph6}\t{self.order}\t{degs}\t{','.join(self.flags)}"

    @classmethod
    def from_row(cls, line: str) -> "CatalogEntry":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise CatalogError(f"catalog row needs 5 fields: {line!r}")
        name, g6, order, degs, flags = parts
        return cls(
            name,
            g6,
            int(order),
            tuple(int(d) for d in degs.split(",") if d),
            tuple(f for f in flags.split(",") if f),
        )


@dataclass(frozen=True)
class FamilyEntry:
    """Multigraph family obtained by splitting one vertex of a base entry.

    The split vertex keeps the neighbours in ``u_side``; a new vertex
    (numbered ``base.n``) takes ``v_side``; the two are joined by m
    parallel edges.
    """

    name: str
    base: str
    floor: int
    split_vertex: Optional[int] = None
    u_side: tuple[int, ...] = ()
    v_side: tuple[int, ...] = ()

    @property
    def populated(self) -> bool:
        return self.split_vertex is not None

    def to_row(self) -> str:
        sv = "" if self.split_vertex is None else str(self.split_vertex)
        return "\t".join([self.name, self.base, str(self.floor), sv,
                          ",".join(map(str, self.u_side)), ",".join(map(str, self.v_side))])

    @classmethod
    def from_row(cls, line: str) -> "FamilyEntry":
        name, base, floor, sv, us, vs = line.rstrip("\n").split("\t")
        return cls(
            name, base, int(floor),
            int(sv) if sv else None,
            tuple(int(x) for x in us.split(",") if x),
            tuple(int(x) for x in vs.split(",") if x),
        )


# ------------------------------------------------------------------ facts


def _degree_demand_fails(G: MultiGraph, values: dict[int, int]) -> bool:
    """The demand b(v) = values[d(v)] is zero-sum and no orientation realizes it."""
    if any(d not in values for d in G.degrees):
        return False
    b = tuple(values[d] for d in G.degrees)
    return sum(b) % 3 == 0 and not orientation_achieves(G, b)


def two_k4_split(G: MultiGraph) -> Optional[int]:
    """Edges between two vertex-disjoint K4s covering an 8-vertex graph, if any."""
    if G.n != 8:
        return None
    for S in itertools.combinations(range(1, 8), 3):
        A = (0,) + S
        B = tuple(v for v in range(8) if v not in A)
        if all(G.has_edge(a, b) for a, b in itertools.combinations(A, 2)) and all(
            G.has_edge(a, b) for a, b in itertools.combinations(B, 2)
        ):
            return G.edges_between(A, B)
    return None


def is_odd_wheel_sum(G: MultiGraph) -> bool:
    return triangularly_connected(G) and fan_decomposition(G) is not None


def _flowless(G: MultiGraph) -> bool:
    return not has_nowhere_zero_flow(G, 3) and not contracts_to_k4_minor(G)


def _has_multiset_failure(G: MultiGraph, counts: dict[int, int]) -> bool:
    """Some zero-sum demand with the given value counts has no orientation."""
    vals = [v for v, c in sorted(counts.items()) for _ in range(c)]
    if len(vals) != G.n:
        return False
    from .flows import orientation_boundaries

    reach = orientation_boundaries(G)
    return any(b not in reach for b in set(itertools.permutations(vals)))


def _degree4_triangle(G: MultiGraph) -> bool:
    fours = [v for v in range(G.n) if G.degree(v) == 4]
    return len(fours) == 3 and all(G.has_edge(a, b) for a, b in itertools.combinations(fours, 2))


@dataclass(frozen=True)
class NameFact:
    """A structural fact about one or more named graphs.

    Unary facts (``arity == 1``) test each named graph on its own; binary
    facts test ``check(graph_of[names[0]], graph_of[names[1]])``.
    ``tier`` 2 facts depend on the reconstructed family construction.
    """

    key: str
    names: tuple[str, ...]
    text: str
    check: Callable[..., bool]
    arity: int = 1
    tier: int = 1


def _unary(key, names, text, check, tier=1):
    return NameFact(key, tuple(names), text, check, 1, tier)


def _binary(key, small, big, text, check):
    return NameFact(key, (small, big), text, check, 2)


_R = range
NAME_FACTS: list[NameFact] = [
    _unary("k4", ["G1"], "isomorphic to K4", lambda G: G.n == 4 and G.m == 6),
    _unary("ore", ORE_NAMES, "satisfies the Ore degree condition", satisfies_ore),
    _unary("not-ore", [f"G{i}" for i in _R(6, 19)], "violates the Ore degree condition",
           lambda G: not satisfies_ore(G)),
    _unary("order7", [f"G{i}" for i in _R(6, 14)], "order 7", lambda G: G.n == 7),
    _unary("order8", [f"G{i}" for i in _R(14, 19)], "order 8", lambda G: G.n == 8),
    _unary("flowless", NO_FLOW_NAMES, "no nowhere-zero 3-flow and no K4 quotient", _flowless),
    _unary("not-flowless", [n for n in NAMES if n not in NO_FLOW_NAMES],
           "has a nowhere-zero 3-flow or a K4 quotient", lambda G: not _flowless(G)),
    _unary("deg5", ["G7"], "has a vertex of degree 5", lambda G: 5 in G.degrees),
    _unary("g9-degrees", ["G9"], "has vertices of degree 3, 4 and 5 and no others",
           lambda G: set(G.degrees) == {3, 4, 5}),
    _unary("g9-demand", ["G9"], "b = 0 on degree-3/5 vertices, 1 on degree-4 vertices is unrealizable",
           lambda G: _degree_demand_fails(G, {3: 0, 4: 1, 5: 0})),
    _unary("deg6", ["G10", "G11"], "has a vertex of degree 6", lambda G: 6 in G.degrees),
    _unary("fan", ["G10", "G16", "G18"], "2-sum of odd wheels", is_odd_wheel_sum),
    _unary("g13-degrees", ["G13"], "degree multiset 3,3,3,3,4,4,4",
           lambda G: sorted(G.degrees) == [3, 3, 3, 3, 4, 4, 4]),
    _unary("g13-triangle", ["G13"], "the three degree-4 vertices form a triangle", _degree4_triangle),
    _unary("deg34-demand", ["G13", "G14", "G17"],
           "b = 0 on degree-3 vertices, 1 on degree-4 vertices is unrealizable",
           lambda G: _degree_demand_fails(G, {3: 0, 4: 1})),
    _unary("two-k4-3", ["G15", "G16", "G17"], "two disjoint K4s joined by 3 edges",
           lambda G: two_k4_split(G) == 3),
    _unary("two-k4-4", ["G18"], "two disjoint K4s joined by 4 edges", lambda G: two_k4_split(G) == 4),
    _unary("g15-demand", ["G15"], "some demand with values 0,0,0,0,1,1,2,2 is unrealizable",
           lambda G: _has_multiset_failure(G, {0: 4, 1: 2, 2: 2})),
    _binary("g8-in-g9", "G8", "G9", "G8 is a spanning subgraph of G9",
            lambda a, b: contains_subgraph(b, a, spanning=True)),
    _binary("g7-in-g10", "G7", "G10", "G7 is a spanning subgraph of G10",
            lambda a, b: contains_subgraph(b, a, spanning=True)),
    _binary("g11-in-g10", "G11", "G10", "G11 is a spanning subgraph of G10",
            lambda a, b: contains_subgraph(b, a, spanning=True)),
    _binary("g12-in-g10", "G12", "G10", "G12 is a spanning subgraph of G10",
            lambda a, b: contains_subgraph(b, a, spanning=True)),
    _binary("g6-in-g17", "G6", "G17", "G6 is a subgraph of G17",
            lambda a, b: contains_subgraph(b, a)),
]


def _family_fact(name: str) -> NameFact:
    want = name in FAMILY_FLOORS
    text = (f"admits a vertex split with floor {FAMILY_FLOORS[name]}" if want
            else "admits no vertex split family")

    def check(G: MultiGraph) -> bool:
        splits = vertex_splits(G)
        if not want:
            return not splits
        return bool(splits) and min(s[3] for s in splits) == FAMILY_FLOORS[name]

    return NameFact(f"family-{name}", (name,), text, check, 1, tier=2)


FAMILY_FACTS = [_family_fact(n) for n in NAMES if n != "G1"]


# ---------------------------------------------------------- vertex splits


def split_vertex(G: MultiGraph, w: int, u_side: Iterable[int], v_side: Iterable[int], m: int) -> MultiGraph:
    """Replace w by u (= w, keeps ``u_side``) and a new vertex v (takes ``v_side``), joined by m edges."""
    v = G.n
    edges = [e for e in G.edges if w not in e]
    edges += [(min(w, a), max(w, a)) for a in u_side]
    edges += [(b, v) for b in v_side]
    edges += [(w, v)] * m
    return MultiGraph(G.n + 1, tuple(edges))


def vertex_splits(G: MultiGraph, max_m: int = 4) -> list[tuple[int, tuple[int, ...], tuple[int, ...], int]]:
    """Splits (w, u_side, v_side, least m) giving a 3-edge-connected graph with alpha <= 2.

    A split with least m = 1 still needs m >= 2 to be a multigraph; the
    floor reported is max(2, least m).
    """
    out = []
    for w in range(G.n):
        nb = sorted(G.neighbors(w))
        for r in range(len(nb) + 1):
            for us in itertools.combinations(nb, r):
                vs = tuple(x for x in nb if x not in us)
                if (len(us), us) > (len(vs), vs):
                    continue
                for m in range(1, max_m + 1):
                    H = split_vertex(G, w, us, vs, m)
                    if edge_connectivity(H) >= 3 and alpha_le_2(H):
                        out.append((w, us, vs, max(2, m)))
                        break
    return out


def gen_family_instance(entry: FamilyEntry, m: int, catalog: Optional[list[CatalogEntry]] = None) -> MultiGraph:
    """The family member with multiplicity m between the two split vertices."""
    if m < entry.floor:
        raise CatalogError(f"{entry.name} needs m >= {entry.floor}, got {m}")
    if not entry.populated:
        raise CatalogError(f"{entry.name}: figure data unavailable (no construction data)")
    base = _by_name(catalog or load_catalog())[entry.base].graph
    H = split_vertex(base, entry.split_vertex, entry.u_side, entry.v_side, m)  # type: ignore[arg-type]
    if edge_connectivity(H) < 3 or not alpha_le_2(H):
        raise CatalogError(f"{entry.name} with m={m} violates 3-edge-connectivity or alpha <= 2")
    return H


def derive_family_entries(catalog: list[CatalogEntry]) -> list[FamilyEntry]:
    out = []
    for name, floor in FAMILY_FLOORS.items():
        G = _by_name(catalog)[name].graph
        splits = [s for s in vertex_splits(G) if s[3] == floor]
        if not splits:
            out.append(FamilyEntry(f"{name}'", name, floor))
            continue
        w, us, vs, _ = splits[0]
        out.append(FamilyEntry(f"{name}'", name, floor, w, us, vs))
    return out


def match_family(G: MultiGraph, families: Optional[list[FamilyEntry]] = None) -> Optional[tuple[str, int]]:
    """(family name, m) if G is isomorphic to a populated family instance."""
    if G.is_simple:
        return None
    m = max(max(row) for row in G.matrix)
    key = canonical_form(G)
    for fam in families if families is not None else load_families():
        if not fam.populated or m < fam.floor:
            continue
        H = gen_family_instance(fam, m)
        if H.n == G.n and canonical_form(H) == key:
            return fam.name, m
    return None


# -------------------------------------------------------------- derivation


def is_exceptional(G: MultiGraph) -> bool:
    """Neither Z3-contractible to K1 nor to K4 (K4 itself counts as exceptional)."""
    if G.n == 4 and G.m == 6 and G.is_simple:
        return True
    return contracts_to(G, "K1") is None and contracts_to(G, "K4") is None


def derive_exception_set(min_n: int = 4, max_n: int = 8) -> dict[bytes, MultiGraph]:
    """Census graphs that Z3-contract to neither K1 nor K4, keyed by canonical form."""
    return {canonical_form(G): G for G in theorem_census(min_n, max_n) if is_exceptional(G)}


def derive_ore_subcatalog(min_n: int = 4, max_n: int = 8) -> dict[bytes, MultiGraph]:
    """Census graphs satisfying the Ore condition that are not Z3-connected."""
    return {
        canonical_form(G): G
        for G in theorem_census(min_n, max_n)
        if satisfies_ore(G) and not is_group_connected(G, 3)
    }


def _solutions(graphs: list[MultiGraph], facts: list[NameFact]) -> list[dict[str, int]]:
    """All bijections name -> graph index satisfying every fact."""
    cand = {name: set(range(len(graphs))) for name in NAMES}
    for f in facts:
        if f.arity == 1:
            ok = {i for i, G in enumerate(graphs) if f.check(G)}
            for name in f.names:
                cand[name] &= ok
    binary = [f for f in facts if f.arity == 2]
    pair_cache: dict[tuple[str, int, int], bool] = {}
    order = sorted(NAMES, key=lambda nm: len(cand[nm]))
    sols: list[dict[str, int]] = []

    def consistent(assign: dict[str, int]) -> bool:
        for f in binary:
            a, b = f.names
            if a in assign and b in assign:
                key = (f.key, assign[a], assign[b])
                if key not in pair_cache:
                    pair_cache[key] = f.check(graphs[assign[a]], graphs[assign[b]])
                if not pair_cache[key]:
                    return False
        return True

    def rec(i: int, assign: dict[str, int], used: set[int]) -> None:
        if i == len(order):
            sols.append(dict(assign))
            return
        name = order[i]
        for g in sorted(cand[name]):
            if g in used:
                continue
            assign[name] = g
            used.add(g)
            if consistent(assign):
                rec(i + 1, assign, used)
            used.discard(g)
            del assign[name]

    rec(0, {}, set())
    return sols


def align_names(graphs: Iterable[MultiGraph]) -> dict[str, tuple[MultiGraph, str]]:
    """Assign G1..G18 to the derived exceptional classes.

    Returns name -> (graph, flag).  Raises CatalogError when the facts
    admit no consistent naming.
    """
    pool = sorted(graphs, key=canonical_form)
    if len(pool) != len(NAMES):
        raise CatalogError(f"expected {len(NAMES)} exceptional classes, got {len(pool)}")
    text_sols = _solutions(pool, NAME_FACTS)
    if not text_sols:
        raise CatalogError("no naming satisfies the structural facts")
    full_sols = _solutions(pool, NAME_FACTS + FAMILY_FACTS)
    chosen = full_sols[0] if full_sols else text_sols[0]
    out = {}
    for name in NAMES:
        fixed = len({s[name] for s in text_sols}) == 1
        out[name] = (pool[chosen[name]], "aligned:text" if fixed else "aligned:partial")
    return out


def build_entries(aligned: dict[str, tuple[MultiGraph, str]]) -> list[CatalogEntry]:
    out = []
    for name in NAMES:
        G, flag = aligned[name]
        flags = [flag]
        if satisfies_ore(G):
            flags.append("ore")
        if not has_nowhere_zero_flow(G, 3):
            flags.append("no-nz3")
        if name == "G1":
            flags.append("k4-special")
        out.append(CatalogEntry(name, encode_graph6(G), G.n, tuple(sorted(G.degrees)), tuple(flags)))
    return out


def regenerate(path: Path = CATALOG_PATH, family_path: Path = FAMILY_PATH) -> list[CatalogEntry]:
    """Derive, align and write both data files."""
    entries = build_entries(align_names(derive_exception_set().values()))
    path.write_text("".join(e.to_row() + "\n" for e in entries))
    fams = derive_family_entries(entries)
    family_path.write_text("".join(f.to_row() + "\n" for f in fams))
    return entries


# ---------------------------------------------------------------- loading


def load_catalog(path: Path | str = CATALOG_PATH) -> list[CatalogEntry]:
    lines = Path(path).read_text().splitlines()
    return [CatalogEntry.from_row(line) for line in lines if line.strip() and not line.startswith("#")]


def load_families(path: Path | str = FAMILY_PATH) -> list[FamilyEntry]:
    lines = Path(path).read_text().splitlines()
    return [FamilyEntry.from_row(line) for line in lines if line.strip() and not line.startswith("#")]


def _by_name(entries: list[CatalogEntry]) -> dict[str, CatalogEntry]:
    return {e.name: e for e in entries}


# ----------------------------------------------------------- verification


@dataclass
class CheckResult:
    entry: str
    check: str
    passed: bool
    detail: str = ""

    def to_row(self) -> str:
        return f"{self.entry}\t{self.check}\t{'pass' if self.passed else 'FAIL'}\t{self.detail}"


@dataclass
class CatalogReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def add(self, entry: str, check: str, passed: bool, detail: str = "") -> None:
        self.results.append(CheckResult(entry, check, bool(passed), detail))

    def to_tsv(self) -> str:
        return "entry\tcheck\tstatus\tdetail\n" + "".join(r.to_row() + "\n" for r in self.results)


def verify_entry(entry: CatalogEntry, report: CatalogReport) -> Optional[MultiGraph]:
    try:
        G = entry.graph
    except ValueError as exc:
        report.add(entry.name, "decode", False, str(exc))
        return None
    nm = entry.name
    report.add(nm, "decode", encode_graph6(G) == entry.graph6)
    report.add(nm, "order", G.n == entry.order, f"{G.n}")
    if nm in EXPECTED_ORDER:
        report.add(nm, "expected-order", G.n == EXPECTED_ORDER[nm], f"{G.n} vs {EXPECTED_ORDER[nm]}")
    report.add(nm, "degrees", tuple(sorted(G.degrees)) == entry.degrees)
    report.add(nm, "simple", G.is_simple)
    lam = edge_connectivity(G)
    report.add(nm, "3-edge-connected", lam >= 3, f"lambda={lam}")
    report.add(nm, "alpha<=2", alpha_le_2(G))
    report.add(nm, "min-degree>=3", min(G.degrees, default=0) >= 3)
    report.add(nm, "not-Z3-connected", not is_group_connected(G, 3))
    report.add(nm, "no-K1-contraction", contracts_to(G, "K1") is None)
    k4 = contracts_to(G, "K4") is not None
    report.add(nm, "K4-contraction-only-for-G1", k4 == (nm == "G1"), f"contracts_to_K4={k4}")
    return G


def verify_catalog(entries: list[CatalogEntry], *, tier: int = 2) -> CatalogReport:
    """Run every per-entry invariant and every named structural fact."""
    report = CatalogReport()
    graphs: dict[str, MultiGraph] = {}
    for e in entries:
        G = verify_entry(e, report)
        if G is not None:
            graphs[e.name] = G
    forms = [canonical_form(G) for G in graphs.values()]
    report.add("*", "pairwise-non-isomorphic", len(set(forms)) == len(forms), f"{len(set(forms))} classes")
    for fact in NAME_FACTS + (FAMILY_FACTS if tier >= 2 else []):
        if any(n not in graphs for n in fact.names):
            continue
        if fact.arity == 1:
            for n in fact.names:
                report.add(n, fact.key, fact.check(graphs[n]), fact.text)
        else:
            a, b = fact.names
            report.add(f"{a},{b}", fact.key, fact.check(graphs[a], graphs[b]), fact.text)
    return report


@lru_cache(maxsize=1)
def verified_catalog() -> tuple[CatalogEntry, ...]:
    """The shipped catalog after a full verification pass; refuses on any failure."""
    entries = load_catalog()
    report = verify_catalog(entries)
    if not report.ok:
        names = ", ".join(f"{r.entry}:{r.check}" for r in report.failures)
        raise CatalogError(f"catalog verification failed: {names}")
    return tuple(entries)


@lru_cache(maxsize=1)
def _index() -> dict[bytes, str]:
    return {canonical_form(e.graph): e.name for e in verified_catalog()}


def match_exception(G: MultiGraph, entries: Optional[list[CatalogEntry]] = None) -> Optional[str]:
    """Name of the catalog entry isomorphic to G, or None."""
    if entries is None:
        return _index().get(canonical_form(G))
    key = canonical_form(G)
    for e in entries:
        if canonical_form(e.graph) == key:
            return e.name
    return None


def k4() -> MultiGraph:
    return complete(4)
