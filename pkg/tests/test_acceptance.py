"""Acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL`` line that is printed in
the pytest terminal summary (and directly when this file is run as a
script).  Tolerances are exact: every criterion is a boolean or count claim.
"""

from __future__ import annotations

import random
import time
from collections import Counter

from conftest import record_acceptance
from z3conn import catalog as cat
from z3conn.canon import canonical_form
from z3conn.census import graph_classes, theorem_census
from z3conn.classifier import CONTRACTS_TO_K4, EXCEPTIONAL, Z3_CONNECTED, classify, predict_nz3
from z3conn.families import complete, complete_bipartite, complete_minus_edge, cycle, wheel
from z3conn.flows import (
    achievable_boundaries,
    has_nowhere_zero_flow,
    is_group_connected,
    orientation_achieves,
    zero_sum_demands,
)
from z3conn.graph import MultiGraph, contract_edges
from z3conn.reduction import attach_vertex_closure, certified_vertex_sets, lift, valid_lifts


def _report(num: int, title: str, failures: list, elapsed: float, limit: float | None) -> None:
    timed_out = limit is not None and elapsed > limit
    ok = not failures and not timed_out
    detail = f"{elapsed:.1f}s" + (f" (limit {limit:.0f}s)" if limit else "")
    if failures:
        detail += f"; {len(failures)} violation(s), first: {failures[0]}"
    if timed_out:
        detail += "; over time limit"
    record_acceptance(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
    assert ok, detail


def test_criterion_1_small_family_verdicts():
    t = time.perf_counter()
    expect = [
        ("K1", MultiGraph(1), 3, True),
        ("K5", complete(5), 3, True),
        ("K5-", complete_minus_edge(5), 3, True),
        ("K6", complete(6), 3, True),
        ("K6-", complete_minus_edge(6), 3, True),
        ("C2", cycle(2), 3, True),
        ("C3", cycle(3), 3, False),
        ("C4", cycle(4), 3, False),
    ]
    expect += [(f"C{n} Z{k}", cycle(n), k, k >= n + 1) for n in range(2, 6) for k in range(3, 7)]
    expect += [(f"W{s}", wheel(s), 3, s % 2 == 0) for s in range(2, 8)]
    expect += [
        ("K2,2", complete_bipartite(2, 2), 3, False),
        ("K2,3", complete_bipartite(2, 3), 3, False),
        ("K3,3", complete_bipartite(3, 3), 3, False),
        ("K3,4", complete_bipartite(3, 4), 3, False),
        ("K4,4", complete_bipartite(4, 4), 3, True),
    ]
    failures = [name for name, G, k, want in expect if is_group_connected(G, k) != want]
    _report(1, f"group-connectivity of {len(expect)} small families", failures, time.perf_counter() - t, 60)


def test_criterion_2_orientation_equivalence():
    t = time.perf_counter()
    failures, checked = [], 0
    for n in range(1, 6):
        for G in graph_classes(n):
            if not G.is_connected:
                continue
            A = achievable_boundaries(G, 3)
            for b in zero_sum_demands(n, 3):
                checked += 1
                if orientation_achieves(G, b) != (b in A):
                    failures.append((G.edges, b))
    _report(2, f"orientation <=> flow achievability ({checked} demand checks)", failures, time.perf_counter() - t, 300)


def test_criterion_3_derived_catalog():
    t = time.perf_counter()
    failures = []
    derived = cat.derive_exception_set(4, 8)
    if len(derived) != 18:
        failures.append(f"{len(derived)} classes")
    failures += [f"{G.edges} passes oracle" for G in derived.values() if is_group_connected(G, 3)]
    profile = Counter(G.n for G in derived.values())
    if profile != {4: 1, 6: 4, 7: 8, 8: 5}:
        failures.append(f"order profile {dict(profile)}")
    ore = cat.derive_ore_subcatalog()
    if {k for k, G in derived.items() if G.n == 6} != {k for k, G in ore.items() if G.n == 6}:
        failures.append("order-6 members differ from the Ore set")
    if len(derived) == 18:
        entries = cat.build_entries(cat.align_names(derived.values()))
        report = cat.verify_catalog(entries)
        failures += [f"{r.entry}:{r.check}" for r in report.failures]
        stored = {canonical_form(e.graph) for e in cat.load_catalog()}
        if stored != set(derived):
            failures.append("stored catalog differs from derivation")
    _report(3, "18 exceptional classes derived, profiled and verified", failures, time.perf_counter() - t, 900)


def _census_verdicts():
    return [(G, classify(G)) for G in theorem_census(4, 8)]


def test_criterion_4_census_equivalence():
    t = time.perf_counter()
    failures = []
    names = set()
    counts = Counter()
    stored = {canonical_form(e.graph) for e in cat.load_catalog()}
    for G, v in _census_verdicts():
        counts[v.outcome] += 1
        oracle = is_group_connected(G, 3)
        if (v.outcome == Z3_CONNECTED) != oracle:
            failures.append(f"{G.edges}: {v.outcome} vs oracle {oracle}")
        if (v.outcome == EXCEPTIONAL) != (canonical_form(G) in stored):
            failures.append(f"{G.edges}: exceptional mismatch")
        if v.outcome != EXCEPTIONAL and not v.replays():
            failures.append(f"{G.edges}: trace does not replay")
        if v.outcome == EXCEPTIONAL:
            names.add(v.name)
    if len(names) != 18:
        failures.append(f"{len(names)} distinct exceptional names")
    summary = ", ".join(f"{o}={counts[o]}" for o in (Z3_CONNECTED, CONTRACTS_TO_K4, EXCEPTIONAL))
    _report(4, f"classifier matches oracle on the n=4..8 census ({summary})", failures, time.perf_counter() - t, 900)


def test_criterion_5_nowhere_zero_prediction():
    t = time.perf_counter()
    failures, n = [], 0
    for G in theorem_census(4, 8):
        n += 1
        if predict_nz3(G) != has_nowhere_zero_flow(G, 3):
            failures.append(G.edges)
    _report(5, f"nowhere-zero 3-flow prediction on {n} census graphs", failures, time.perf_counter() - t, None)


def test_criterion_6_ore_subcatalog():
    t = time.perf_counter()
    ore = cat.derive_ore_subcatalog()
    failures = []
    if len(ore) != 5:
        failures.append(f"{len(ore)} classes")
    if canonical_form(complete(4)) not in ore:
        failures.append("K4 missing")
    _report(6, "Ore-condition sub-catalog has 5 classes including K4", failures, time.perf_counter() - t, None)


def test_criterion_7_reduction_calculus():
    t = time.perf_counter()
    rnd = random.Random(20240607)
    failures = []
    small = [G for n in range(2, 8) for G in graph_classes(n) if G.is_connected and G.m <= 12]
    # multigraphs: each small graph with one edge doubled
    small += [MultiGraph(G.n, G.edges + (G.edges[0],)) for G in small if 0 < G.m <= 11 and G.n <= 6]

    liftable = [G for G in small if any(True for _ in valid_lifts(G))]
    for _ in range(200):
        G = rnd.choice(liftable)
        u, v, w = rnd.choice(list(valid_lifts(G)))
        if is_group_connected(lift(G, u, v, w), 3) and not is_group_connected(G, 3):
            failures.append(f"lift {(u, v, w)} on {G.edges}")

    contractions = closures = 0
    for G in small:
        base = is_group_connected(G, 3)
        for S, _ in certified_vertex_sets(G):
            ids = G.induced_edge_ids(S)
            H, _ = contract_edges(G, ids)
            contractions += 1
            if is_group_connected(H, 3) != base:
                failures.append(f"contract {S} on {G.edges}")
            out = attach_vertex_closure(G, ids)
            closures += 1
            if not is_group_connected(G.edge_subgraph(out)[0], 3):
                failures.append(f"closure of {S} on {G.edges}")
    title = f"200 lifts, {contractions} contractions, {closures} closures"
    _report(7, title, failures, time.perf_counter() - t, None)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
