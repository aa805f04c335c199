import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import multigraphs
from z3conn.canon import are_isomorphic
from z3conn.census import graph_classes, theorem_census
from z3conn.families import complete, complete_minus_edge, cycle, two_sum, wheel
from z3conn.flows import BudgetExceeded, is_group_connected
from z3conn.graph import MultiGraph, build_graph, contract_edges
from z3conn.reduction import (
    ReductionError,
    ReductionStep,
    ReductionTrace,
    attach_vertex_closure,
    certified_vertex_sets,
    contracts_to,
    fan_decomposition,
    find_contractible_subgraph,
    lift,
    reduce_greedy,
    terminal_forms,
    triangularly_connected,
    valid_lifts,
    z3_contraction,
)

K1 = complete(1)
K4 = complete(4)


# ------------------------------------------------------------------ lifting


def test_lift_at_wheel_hub():
    W = wheel(4)  # hub 4, rim 0-1-2-3
    L = lift(W, 4, 0, 2)
    assert L.m == W.m - 1 and L.n == W.n
    assert L.degree(4) == 2 and L.multiplicity(0, 2) == 1


def test_lift_rejects_low_degree():
    with pytest.raises(ReductionError, match="degree 3"):
        lift(K4, 0, 1, 2)


def test_lift_rejects_missing_edge():
    G = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
    with pytest.raises(ReductionError):
        lift(G, 1, 0, 3)
    with pytest.raises(ReductionError):
        lift(complete(5), 0, 1, 1)


@given(multigraphs(min_n=3, max_n=6, max_m=12))
def test_lift_removes_one_edge(G):
    for u, v, w in itertools.islice(valid_lifts(G), 5):
        L = lift(G, u, v, w)
        assert L.m == G.m - 1 and L.n == G.n
        assert L.multiplicity(v, w) == G.multiplicity(v, w) + 1


def test_lifted_connected_implies_original_connected():
    rnd = random.Random(2)
    pool = [G for G in theorem_census(5, 7) if G.m <= 12] + [complete(5), wheel(6)]
    checked = 0
    while checked < 200:
        G = rnd.choice(pool)
        lifts = list(valid_lifts(G))
        if not lifts:
            continue
        u, v, w = rnd.choice(lifts)
        if is_group_connected(lift(G, u, v, w), 3):
            assert is_group_connected(G, 3)
        checked += 1


# ----------------------------------------------------------------- patterns


def test_pattern_two_cycle():
    G = build_graph(3, [(0, 1), (1, 2), (0, 2), (1, 2)])
    assert find_contractible_subgraph(G) == ((1, 3), "2-cycle")


def test_pattern_k5_in_k6():
    edges, name = find_contractible_subgraph(complete(6))
    sub, _ = complete(6).edge_subgraph(edges)
    assert name == "K5" and are_isomorphic(sub, complete(5))


def test_pattern_none_in_k4():
    assert find_contractible_subgraph(K4) is None


def test_pattern_k5_minus_and_wheels():
    assert find_contractible_subgraph(complete_minus_edge(5))[1] == "K5-"
    assert find_contractible_subgraph(wheel(4))[1] == "even-wheel"
    assert find_contractible_subgraph(wheel(6))[1] == "even-wheel"
    assert find_contractible_subgraph(wheel(5)) is None


@given(multigraphs(min_n=2, max_n=7, max_m=14))
def test_patterns_are_certified(G):
    hit = find_contractible_subgraph(G)
    if hit is not None:
        sub, _ = G.edge_subgraph(hit[0])
        assert is_group_connected(sub, 3)


# ------------------------------------------------------------------ greedy


def test_greedy_examples():
    assert reduce_greedy(wheel(4)).terminal == K1
    t = reduce_greedy(K4)
    assert t.steps == () and t.terminal == K4
    t = reduce_greedy(build_graph(3, [(0, 1), (0, 1), (1, 2), (0, 2)]))
    assert [s.pattern for s in t.steps] == ["2-cycle", "2-cycle"] and t.terminal == K1


def test_greedy_soundness_on_census():
    for G in theorem_census(4, 8):
        if G.m > 16:
            continue
        t = reduce_greedy(G)
        assert t.verify(certify=True)
        if t.terminal.n == 1:
            assert is_group_connected(G, 3)
        # contraction of a certified subgraph preserves the verdict
        assert is_group_connected(t.terminal, 3) == is_group_connected(G, 3)


def test_contraction_equivalence_on_small_graphs():
    for n in range(2, 7):
        for G in graph_classes(n):
            if G.m > 12 or not G.is_connected:
                continue
            for S, _ in certified_vertex_sets(G):
                H, _ = contract_edges(G, G.induced_edge_ids(S))
                assert is_group_connected(H, 3) == is_group_connected(G, 3)


# ---------------------------------------------------------------- search


def test_contracts_to_examples():
    t = contracts_to(K4, "K4")
    assert t is not None and t.steps == ()
    t = contracts_to(wheel(4), "K1")
    assert t is not None and t.verify(certify=True) and t.terminal == K1
    assert contracts_to(K4, "K1") is None
    assert contracts_to(wheel(5), "K1") is None


def test_contracts_to_rejects_bad_target_and_budget():
    with pytest.raises(ReductionError):
        contracts_to(K4, "K3")
    with pytest.raises(BudgetExceeded):
        contracts_to(complete(10), "K1")


def test_contracts_to_k1_iff_oracle():
    for G in theorem_census(4, 7):
        assert (contracts_to(G, "K1") is not None) == is_group_connected(G, 3)


def test_z3_contraction_terminal_has_no_certified_subgraph():
    for G in theorem_census(5, 7)[:40]:
        t = z3_contraction(G)
        assert t.verify(certify=True)
        assert certified_vertex_sets(t.terminal) == []


def test_single_terminal_class_on_census():
    for G in theorem_census(4, 7):
        assert len(terminal_forms(G)) == 1


# ----------------------------------------------------------------- closure


def test_closure_k5_in_k6():
    G = complete(6)
    seed = G.induced_edge_ids(range(5))
    assert attach_vertex_closure(G, seed) == tuple(range(15))


def test_closure_pendant_not_absorbed():
    G = build_graph(4, [(0, 1), (0, 1), (1, 2), (2, 3)])
    assert attach_vertex_closure(G, [0, 1]) == (0, 1)


def test_closure_isolated_vertex_untouched():
    G = MultiGraph(6, complete(5).edges)
    assert attach_vertex_closure(G, range(10)) == tuple(range(10))


def test_closure_rejects_uncertified_seed():
    with pytest.raises(ReductionError):
        attach_vertex_closure(K4, range(6))
    with pytest.raises(ReductionError):
        attach_vertex_closure(K4, [])


def test_closure_output_is_certified():
    for n in range(2, 7):
        for G in graph_classes(n):
            if G.m > 12:
                continue
            for S, _ in certified_vertex_sets(G):
                out = attach_vertex_closure(G, G.induced_edge_ids(S))
                sub, _ = G.edge_subgraph(out)
                assert is_group_connected(sub, 3)


# ------------------------------------------------------- triangular / fan


@pytest.mark.parametrize("G,expected", [(K4, True), (cycle(4), False), (wheel(5), True), (cycle(2), True)])
def test_triangularly_connected_examples(G, expected):
    assert triangularly_connected(G) is expected


def test_triangularly_connected_needs_edges():
    with pytest.raises(ReductionError):
        triangularly_connected(MultiGraph(3))


def test_fan_examples():
    assert [b.name for b in fan_decomposition(K4)] == ["W_3"]
    assert sorted(b.name for b in fan_decomposition(two_sum(complete(3), complete(3)))) == ["W_1", "W_1"]
    assert fan_decomposition(wheel(4)) is None
    with pytest.raises(ReductionError):
        fan_decomposition(cycle(4))


def test_fan_blocks_cover_graph():
    G = two_sum(wheel(5), K4, 0, 2)
    blocks = fan_decomposition(G)
    assert sorted(b.spokes for b in blocks) == [3, 5]
    assert set().union(*(b.vertices for b in blocks)) == set(range(G.n))


def test_fan_agrees_with_oracle():
    count = 0
    for n in range(3, 8):
        for G in graph_classes(n):
            if G.m == 0 or not G.is_connected or not triangularly_connected(G):
                continue
            count += 1
            assert (fan_decomposition(G) is None) == is_group_connected(G, 3)
    assert count > 200


# ------------------------------------------------------------------ traces


def test_trace_roundtrip_and_tamper():
    t = z3_contraction(complete(6))
    back = ReductionTrace.from_jsonl(t.to_jsonl())
    assert back == t and back.verify(certify=True)
    assert t.to_tsv().startswith("0\tcontract\tK5\t")
    bad = ReductionTrace(t.initial, t.steps, K4)
    assert not bad.verify()
    uncertified = ReductionTrace(K4, (ReductionStep("contract", (0, 1, 2), "oracle-verified"),), contract_edges(K4, (0, 1, 2))[0])
    assert uncertified.verify() and not uncertified.verify(certify=True)


def test_trace_parse_errors():
    with pytest.raises(ReductionError):
        ReductionTrace.from_jsonl('{"kind": "contract"}\n')
    with pytest.raises(ReductionError):
        ReductionStep("twist").apply(K4)


def test_lift_step_replays():
    G = complete(5)
    step = ReductionStep("lift", (), triple=(0, 1, 2))
    assert step.apply(G) == lift(G, 0, 1, 2)
    assert ReductionStep.from_dict(step.to_dict()) == step


@given(st.integers(2, 5))
def test_two_sum_of_triangles_chain_not_connected(k):
    G = complete(3)
    for _ in range(k - 1):
        G = two_sum(G, complete(3), G.m - 1, 0)
    assert triangularly_connected(G) and fan_decomposition(G) is not None
    assert not is_group_connected(G, 3)
