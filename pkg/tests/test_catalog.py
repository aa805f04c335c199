import random
from collections import Counter
from dataclasses import replace

import pytest

from z3conn import catalog as cat
from z3conn.canon import canonical_form
from z3conn.families import complete, wheel
from z3conn.flows import has_nowhere_zero_flow, is_group_connected
from z3conn.graph import alpha_le_2, contains_subgraph, edge_connectivity, satisfies_ore
from z3conn.graph6 import encode_graph6

STORED = cat.load_catalog()
BY_NAME = {e.name: e for e in STORED}

# oracle verdicts on the reconstructed family instances at their floors,
# frozen from the flow oracle: (Z3-connected, nowhere-zero 3-flow)
FAMILY_VERDICTS = {"G3'": (False, False), "G4'": (False, True), "G10'": (False, True), "G11'": (False, False)}


@pytest.fixture(scope="module")
def derived():
    return cat.derive_exception_set(4, 8)


def test_stored_catalog_passes_verification():
    report = cat.verify_catalog(STORED)
    assert report.ok, [r.to_row() for r in report.failures]
    assert report.to_tsv().startswith("entry\tcheck\tstatus\tdetail\n")
    assert {r.entry for r in report.results} >= set(cat.NAMES)


def test_stored_equals_derived(derived):
    assert len(derived) == 18
    assert set(derived) == {canonical_form(e.graph) for e in STORED}


def test_derived_order_four_is_k4(derived):
    small = [G for G in derived.values() if G.n == 4]
    assert len(small) == 1 and canonical_form(small[0]) == canonical_form(complete(4))


def test_derived_two_k4_classes(derived):
    names = sorted(cat.match_exception(G) for G in derived.values() if cat.two_k4_split(G) == 3)
    assert names == ["G15", "G16", "G17"]


def test_order_profile():
    assert Counter(e.order for e in STORED) == {4: 1, 6: 4, 7: 8, 8: 5}
    for name, n in cat.EXPECTED_ORDER.items():
        assert BY_NAME[name].order == n


def test_pairwise_non_isomorphic():
    assert len({canonical_form(e.graph) for e in STORED}) == 18


def test_entry_invariants():
    for e in STORED:
        G = e.graph
        assert encode_graph6(G) == e.graph6
        assert G.is_simple and edge_connectivity(G) >= 3 and alpha_le_2(G) and min(G.degrees) >= 3
        assert not is_group_connected(G, 3)


def test_structural_facts():
    g = {e.name: e.graph for e in STORED}
    assert set(g["G9"].degrees) == {3, 4, 5}
    assert sorted(g["G13"].degrees) == [3, 3, 3, 3, 4, 4, 4]
    assert g["G15"].n == 8
    assert contains_subgraph(g["G17"], g["G6"])
    assert contains_subgraph(g["G9"], g["G8"], spanning=True)
    assert cat.two_k4_split(g["G18"]) == 4


def test_flowless_members():
    for e in STORED:
        assert has_nowhere_zero_flow(e.graph, 3) == ("no-nz3" not in e.flags)
    for name in cat.NO_FLOW_NAMES:
        assert not has_nowhere_zero_flow(BY_NAME[name].graph, 3)


def test_alignment_reproduces_stored_names():
    aligned = cat.align_names(e.graph for e in STORED)
    for name, (G, flag) in aligned.items():
        assert canonical_form(G) == canonical_form(BY_NAME[name].graph)
        assert flag in BY_NAME[name].flags
    partial = sorted(n for n, (_, f) in aligned.items() if f == "aligned:partial")
    assert partial == ["G2", "G3", "G4", "G5"]


def test_alignment_needs_eighteen():
    with pytest.raises(cat.CatalogError):
        cat.align_names([complete(4)])


def test_ore_subcatalog():
    ore = cat.derive_ore_subcatalog()
    assert len(ore) == 5 and canonical_form(complete(4)) in ore
    assert all(satisfies_ore(G) for G in ore.values())
    assert sorted(cat.match_exception(G) for G in ore.values()) == list(cat.ORE_NAMES)


def test_match_exception():
    assert cat.match_exception(complete(4)) == "G1"
    assert cat.match_exception(wheel(4)) is None
    G = BY_NAME["G18"].graph
    perm = list(range(G.n))
    random.Random(3).shuffle(perm)
    assert cat.match_exception(G.relabel(perm)) == "G18"
    assert cat.match_exception(G.relabel(perm), STORED) == "G18"


# -------------------------------------------------------------- tampering


def _swap(name, g6):
    return [replace(e, graph6=g6) if e.name == name else e for e in STORED]


def _failed(report):
    return {(r.entry, r.check) for r in report.failures}


def test_connected_entry_is_named_failure():
    k5 = encode_graph6(complete(5))
    report = cat.verify_catalog(_swap("G1", k5), tier=1)
    assert ("G1", "not-Z3-connected") in _failed(report)


def test_two_edge_cut_entry_is_named_failure():
    # two K4s joined by two edges: alpha 2, 2-edge-connected
    from z3conn.graph import build_graph

    k4s = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    G = build_graph(8, k4s + [(a + 4, b + 4) for a, b in k4s] + [(0, 4), (1, 5)])
    report = cat.verify_catalog(_swap("G14", encode_graph6(G)), tier=1)
    assert ("G14", "3-edge-connected") in _failed(report)


def test_undecodable_entry():
    report = cat.verify_catalog(_swap("G2", "E~~"), tier=1)
    assert ("G2", "decode") in _failed(report)


def test_verified_catalog_refuses_bad_file(tmp_path, monkeypatch):
    bad = tmp_path / "catalog.tsv"
    bad.write_text("".join(e.to_row() + "\n" for e in _swap("G1", encode_graph6(complete(5)))))
    original = cat.load_catalog
    monkeypatch.setattr(cat, "load_catalog", lambda path=None: original(bad))
    cat.verified_catalog.cache_clear()
    try:
        with pytest.raises(cat.CatalogError, match="G1:not-Z3-connected"):
            cat.verified_catalog()
    finally:
        cat.verified_catalog.cache_clear()


def test_row_roundtrip(tmp_path):
    p = tmp_path / "c.tsv"
    p.write_text("# header comment\n" + "".join(e.to_row() + "\n" for e in STORED))
    assert cat.load_catalog(p) == STORED
    with pytest.raises(cat.CatalogError):
        cat.CatalogEntry.from_row("G1\tC~")


# ---------------------------------------------------------------- families


FAMS = {f.name: f for f in cat.load_families()}


def test_family_floors():
    assert {n: f.floor for n, f in FAMS.items()} == {"G3'": 2, "G4'": 2, "G10'": 2, "G11'": 3}


@pytest.mark.parametrize("name", sorted(FAMS))
def test_family_instances(name):
    fam = FAMS[name]
    base = BY_NAME[fam.base].graph
    for m in range(fam.floor, fam.floor + 3):
        H = cat.gen_family_instance(fam, m)
        assert H.n == base.n + 1 and H.m == base.m + m
        assert edge_connectivity(H) >= 3 and alpha_le_2(H) and not H.is_simple
        assert cat.match_family(H.relabel(list(reversed(range(H.n))))) == (name, m)
    H = cat.gen_family_instance(fam, fam.floor)
    assert (is_group_connected(H, 3), has_nowhere_zero_flow(H, 3)) == FAMILY_VERDICTS[name]


def test_family_floor_enforced():
    with pytest.raises(cat.CatalogError, match="m >= 3"):
        cat.gen_family_instance(FAMS["G11'"], 2)


def test_family_without_data():
    empty = cat.FamilyEntry("G3'", "G3", 2)
    with pytest.raises(cat.CatalogError, match="figure data unavailable"):
        cat.gen_family_instance(empty, 2)
    assert cat.FamilyEntry.from_row(empty.to_row()) == empty


def test_families_rederive():
    assert cat.derive_family_entries(STORED) == list(FAMS.values())


def test_simple_graph_matches_no_family():
    assert cat.match_family(complete(5)) is None
