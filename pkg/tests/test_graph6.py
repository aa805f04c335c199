import networkx as nx
import pytest
from hypothesis import given

from strategies import multigraphs
from z3conn.families import complete, cycle
from z3conn.graph import GraphError, MultiGraph
from z3conn.graph6 import Graph6Error, decode_graph6, encode_graph6, to_dot


def same(G, H):
    return G.n == H.n and sorted(G.edges) == sorted(H.edges)


def test_k4_hand_encoded():
    assert same(decode_graph6("C~"), complete(4))
    assert encode_graph6(complete(4)) == "C~"


def test_c5_hand_encoded():
    # column-order bits 1010011001, padded with 00: 101001 -> 'h', 100100 -> 'c'
    G = decode_graph6("Dhc")
    assert G.n == 5 and sorted(G.degrees) == [2] * 5 and G.is_connected
    assert encode_graph6(cycle(5)) == "Dhc"


def test_header_is_accepted():
    assert same(decode_graph6(">>graph6<<C~"), complete(4))


@pytest.mark.parametrize("n", [0, 1, 2, 62, 63, 64, 100])
def test_order_headers_roundtrip(n):
    G = MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))
    assert same(decode_graph6(encode_graph6(G)), G)


@given(multigraphs(max_n=12, max_m=30, simple=True))
def test_roundtrip(G):
    G = MultiGraph(G.n, tuple(sorted(G.edges, key=lambda e: (e[1], e[0]))))
    s = encode_graph6(G)
    H = decode_graph6(s)
    assert sorted(H.edges) == sorted(G.edges) and H.n == G.n
    assert encode_graph6(H) == s


@given(multigraphs(max_n=12, max_m=30, simple=True))
def test_matches_networkx_encoder(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    assert encode_graph6(G) == nx.to_graph6_bytes(g, header=False).decode().strip()


def test_encode_rejects_multigraph():
    with pytest.raises(Graph6Error):
        encode_graph6(cycle(2))


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "C a", "D~~~"])
def test_decode_rejects_malformed(bad):
    with pytest.raises(GraphError):
        decode_graph6(bad)


def test_decode_rejects_nonzero_padding():
    # n=2 has one bit and five padding bits
    assert decode_graph6("A_").m == 1
    with pytest.raises(Graph6Error, match="padding"):
        decode_graph6("A`")


def test_dot_export():
    text = to_dot(complete(3), "T")
    assert text.startswith("graph T {") and text.count("--") == 3
