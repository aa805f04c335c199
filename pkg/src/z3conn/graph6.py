"""graph6 encoding/decoding (bit-exact, zero padding) and DOT export."""

from __future__ import annotations

from .graph import GraphError, MultiGraph

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _encode_order(n: int) -> str:
    if n < 0:
        raise Graph6Error(f"negative order {n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def _decode_order(data: bytes) -> tuple[int, int]:
    """Return (n, offset of the adjacency bytes)."""
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 36-bit order header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 18-bit order header")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def encode_graph6(G: MultiGraph) -> str:
    """graph6 string of a simple graph.

    >>> from z3conn.families import complete
    >>> encode_graph6(complete(4))
    'C~'
    """
    if not G.is_simple:
        raise Graph6Error("graph6 cannot encode parallel edges")
    n = G.n
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if G.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [_encode_order(n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def decode_graph6(text: str) -> MultiGraph:
    """Parse one graph6 line (optional ``>>graph6<<`` header)."""
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError:
        raise Graph6Error(f"non-ASCII character in graph6 string {text!r}") from None
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error(f"character outside graph6 range in {text!r}")
    n, off = _decode_order(data)
    nbits = n * (n - 1) // 2
    body = data[off:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"graph6 body length {len(body)} does not match order {n} (expected {(nbits + 5) // 6})"
        )
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return MultiGraph(n, tuple(edges))


def to_dot(G: MultiGraph, name: str = "G") -> str:
    """Undirected DOT text; parallel edges are written once each."""
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(G.n))
    lines.extend(f"  {u} -- {v};" for u, v in G.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
