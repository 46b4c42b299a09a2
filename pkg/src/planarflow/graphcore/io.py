"""Reader and writer for the ``planarflow-graph v1`` text format (docs/format.md)."""

from __future__ import annotations

import logging
from pathlib import Path

from planarflow.errors import MalformedRotation, NonPlanar, ParseError
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.network import Edge, FlowNetwork
from planarflow.weights import INF

logger = logging.getLogger(__name__)

GRAPH_HEADER = "planarflow-graph v1"


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


def parse_graph(text: str) -> tuple[FlowNetwork, PlanarEmbedding]:
    lines = [
        (i + 1, raw.strip())
        for i, raw in enumerate(text.splitlines())
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines or lines[0][1] != GRAPH_HEADER:
        raise ParseError(f"missing header {GRAPH_HEADER!r}", lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise ParseError("missing size line", lines[0][0])
    lineno, size = lines[1]
    parts = size.split()
    if len(parts) != 2:
        raise ParseError("size line must be 'n m'", lineno)
    n, m = _int(parts[0], lineno), _int(parts[1], lineno)
    if len(lines) != 2 + n + m:
        last = lines[-1][0]
        raise ParseError(f"expected {n} rotation and {m} edge lines", last)

    rotation: list[list[int]] = [[] for _ in range(n)]
    seen_vertex = [False] * n
    for lineno, row in lines[2 : 2 + n]:
        tokens = row.split()
        v = _int(tokens[0], lineno)
        if not 0 <= v < n or seen_vertex[v]:
            raise ParseError(f"bad or repeated vertex id {v}", lineno)
        seen_vertex[v] = True
        rotation[v] = [_int(t, lineno) for t in tokens[1:]]
        if any(not 0 <= d < m for d in rotation[v]):
            raise ParseError(f"rotation of vertex {v} names an unknown edge", lineno)

    listed = sorted(d for r in rotation for d in r)
    if listed != list(range(m)):
        missing = sorted(set(range(m)) - set(listed))
        what = f"edge {missing[0]} is in no rotation" if missing else "an edge is listed twice in the rotations"
        raise ParseError(what, lines[1 + n][0] if n else lines[1][0])

    edges: list[Edge | None] = [None] * m
    for lineno, row in lines[2 + n :]:
        tokens = row.split()
        if len(tokens) != 5:
            raise ParseError("edge line must be 'edge_id tail head capacity cost'", lineno)
        e, tail, head = (_int(t, lineno) for t in tokens[:3])
        cap: int | float = INF if tokens[3] == "inf" else _int(tokens[3], lineno)
        cost = _int(tokens[4], lineno)
        if not 0 <= e < m or edges[e] is not None:
            raise ParseError(f"bad or repeated edge id {e}", lineno)
        if not (0 <= tail < n and 0 <= head < n):
            raise ParseError(f"edge {e} has an endpoint outside 0..{n - 1}", lineno)
        if cap != INF and cap < 0:
            raise ParseError(f"edge {e} has negative capacity", lineno)
        edges[e] = Edge(tail, head, cap, cost)

    full = [e for e in edges if e is not None]
    try:
        net = FlowNetwork(n, full)
        emb = PlanarEmbedding(rotation)
    except (ValueError, MalformedRotation, NonPlanar) as exc:
        raise ParseError(str(exc), lines[-1][0]) from exc
    for d, e in enumerate(net.edges):
        if emb.tail[d] != e.tail:
            raise ParseError(f"edge {d} is listed at vertex {emb.tail[d]} but its tail is {e.tail}", lines[1][0])
    return net, emb


def format_graph(net: FlowNetwork, emb: PlanarEmbedding) -> str:
    out = [GRAPH_HEADER, f"{net.n} {net.m}"]
    for v, r in enumerate(emb.rotation):
        out.append(" ".join([str(v), *map(str, r)]))
    for i, e in enumerate(net.edges):
        cap = "inf" if e.capacity == INF else str(int(e.capacity))
        out.append(f"{i} {e.tail} {e.head} {cap} {e.cost}")
    return "\n".join(out) + "\n"


def read_graph(path: Path | str) -> tuple[FlowNetwork, PlanarEmbedding]:
    text = Path(path).read_text(encoding="utf-8")
    net, emb = parse_graph(text)
    logger.info("read %s: n=%d m=%d", path, net.n, net.m)
    return net, emb


def write_graph(path: Path | str, net: FlowNetwork, emb: PlanarEmbedding) -> None:
    Path(path).write_text(format_graph(net, emb), encoding="utf-8")
