"""graph6 and plain edge-list text formats."""
from __future__ import annotations

from pathlib import Path

from .graph import MAX_ORDER, Graph, GraphError

HEADER = b">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    raise GraphError(f"order {n} too large for this codec")


def encode_graph6(g: Graph) -> bytes:
    """Encode ``g`` as a graph6 byte string (no header, no newline)."""
    if g.order > MAX_ORDER:
        raise GraphError(f"order {g.order} exceeds {MAX_ORDER}")
    out = bytearray(_encode_n(g.order))
    acc = 0
    nbits = 0
    rows = g.rows
    # upper triangle, column-major: (0,1),(0,2),(1,2),(0,3),...
    for j in range(1, g.order):
        col = rows[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(data: bytes | str) -> Graph:
    """Decode one graph6 string; an optional ``>>graph6<<`` header is accepted."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise GraphError("malformed graph6: empty input")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("malformed graph6: byte outside 63..126")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    else:
        if len(data) < 4:
            raise GraphError("malformed graph6: truncated size header")
        if data[1] == 126:
            raise GraphError("graph6 order overflow: 8-byte size form not supported")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    if n > MAX_ORDER:
        raise GraphError(f"graph6 order overflow: {n} > {MAX_ORDER}")
    total = n * (n - 1) // 2
    need = (total + 5) // 6
    if len(body) < need:
        raise GraphError("malformed graph6: truncated bit vector")
    if len(body) > need:
        raise GraphError("malformed graph6: trailing bytes")
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for byte in body:
        val = byte - 63
        for shift in range(5, -1, -1):
            if k >= total:
                if val >> shift & 1:
                    raise GraphError("malformed graph6: nonzero padding bits")
                continue
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def encode_edgelist(g: Graph) -> str:
    lines = [f"{g.order} {g.size}"] + [f"{u} {v}" for u, v in g.edge_list]
    return "\n".join(lines) + "\n"


def decode_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list needs an 'n m' header line")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header says {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    if g.size != m:
        raise GraphError("edge list contains duplicate edges")
    return g


def read_graph(path: str | Path) -> Graph:
    """Read a graph, choosing the format from the extension (``.g6`` or edge list)."""
    path = Path(path)
    if path.suffix.lower() in (".g6", ".graph6"):
        return decode_graph6(path.read_bytes().splitlines()[0])
    return decode_edgelist(path.read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() in (".g6", ".graph6"):
        path.write_bytes(encode_graph6(g) + b"\n")
    else:
        path.write_text(encode_edgelist(g))
