"""Index files (docs/format.md).

An index file is the header line ``planarflow-index v1`` followed by
sections. A section is a line ``<name> <length>`` and then exactly
``length`` characters of payload and a newline. The ``meta`` section and
every ``node:<id>`` section hold JSON; the ``graph`` section holds the
network in the graph text format with its current capacities. The
decomposition tree is not stored: it is rebuilt from the graph, which is
deterministic, and the piece graphs behind every DDG are re-attached.
"""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path

from pydantic import ValidationError

from planarflow.ddg import DenseDistanceGraph, boundary_groups, ddg_from_table, piece_graph
from planarflow.errors import ParseError
from planarflow.graphcore.io import format_graph, parse_graph
from planarflow.models import FaceRef, OracleMode
from planarflow.oracle.index import NodeData, OracleIndex, PairData
from planarflow.pdecomp.holes import hole_sequences
from planarflow.pdecomp.phi import phi_path
from planarflow.schemas import DDGRecord, IndexMeta, NodeRecord, PairRecord
from planarflow.weights import INF

logger = logging.getLogger(__name__)

INDEX_HEADER = "planarflow-index v1"


def _ddg_record(ddg: DenseDistanceGraph) -> DDGRecord:
    return DDGRecord(
        key=ddg.key,
        boundary=ddg.boundary,
        table=[[None if v == INF else int(v) for v in row] for row in ddg.table],
        price=sorted(ddg.price.items()),
    )


def _node_record(h: int, data: NodeData) -> NodeRecord:
    pairs = []
    for p in data.pairs.values():
        assert p.x.origin is not None and p.y.origin is not None
        pairs.append(
            PairRecord(
                key=p.key,
                x=(p.x.vertex, p.x.origin),
                y=(p.y.vertex, p.y.origin),
                negative=p.negative,
                cycle=p.cycle,
                ddg=None if p.ddg is None else _ddg_record(p.ddg),
            )
        )
    return NodeRecord(id=h, plain=_ddg_record(data.plain), pairs=pairs)


def _section(name: str, payload: str) -> str:
    return f"{name} {len(payload)}\n{payload}\n"


def dumps_index(index: OracleIndex) -> str:
    meta = IndexMeta(
        lam=index.lam,
        mode=index.mode.value,
        r=index.r,
        leaf_cutoff=index.leaf_cutoff,
        max_capacity=index.max_capacity,
        nodes=len(index.tree),
        next_key=index.next_key,
        frontier=index.frontier,
    )
    parts = [INDEX_HEADER + "\n", _section("meta", meta.model_dump_json())]
    parts.append(_section("graph", format_graph(index.net, index.emb)))
    for h in sorted(index.nodes):
        parts.append(_section(f"node:{h}", _node_record(h, index.nodes[h]).model_dump_json()))
    return "".join(parts)


def _sections(text: str) -> list[tuple[str, str]]:
    first, _, rest = text.partition("\n")
    if first != INDEX_HEADER:
        raise ParseError(f"missing header {INDEX_HEADER!r}", 1)
    out = []
    pos = len(first) + 1
    while pos < len(text):
        end = text.find("\n", pos)
        line = text.count("\n", 0, pos) + 1
        if end < 0:
            raise ParseError("truncated section header", line)
        fields = text[pos:end].split()
        if len(fields) != 2 or not fields[1].isdigit():
            raise ParseError(f"bad section header {text[pos:end]!r}", line)
        start = end + 1
        stop = start + int(fields[1])
        if text[stop : stop + 1] != "\n":
            raise ParseError(f"section {fields[0]} is shorter than {fields[1]} characters", line)
        out.append((fields[0], text[start:stop]))
        pos = stop + 1
    return out


def _table(record: DDGRecord) -> list[list[int | float]]:
    return [[INF if v is None else v for v in row] for row in record.table]


def loads_index(text: str) -> OracleIndex:
    sections = _sections(text)
    names = [name for name, _ in sections]
    if names[:2] != ["meta", "graph"]:
        raise ParseError("index must start with meta and graph sections")
    try:
        meta = IndexMeta.model_validate_json(sections[0][1])
        records = [NodeRecord.model_validate_json(payload) for _, payload in sections[2:]]
    except ValidationError as exc:
        raise ParseError(f"invalid index section: {exc}") from exc
    if meta.version != 1:
        raise ParseError(f"unsupported index version {meta.version}")
    net, emb = parse_graph(sections[1][1])
    mode = OracleMode(meta.mode)
    index = OracleIndex(net, emb, meta.lam, mode, meta.r, leaf_cutoff=meta.leaf_cutoff)
    if len(index.tree) != meta.nodes or index.frontier != meta.frontier:
        raise ParseError("rebuilt decomposition does not match the stored one")
    index.max_capacity = meta.max_capacity
    index.next_key = meta.next_key
    tree = index.tree
    for rec in records:
        piece = tree.piece(rec.id)
        if rec.plain.boundary != piece.boundary:
            raise ParseError(f"boundary of node {rec.id} does not match the rebuilt tree")
        groups = boundary_groups(piece.boundary, hole_sequences(piece))
        plain = ddg_from_table(
            rec.plain.key, piece.boundary, _table(rec.plain), groups, piece_graph(piece, index.weights)
        )
        data = NodeData(plain, groups)
        for p in rec.pairs:
            x, y = FaceRef(*p.x), FaceRef(*p.y)
            if p.negative or p.ddg is None:
                data.pairs[(x, y)] = PairData(p.key, x, y, True, list(p.cycle))
                continue
            weights = index.shifted(phi_path(tree, rec.id, x, y))
            ddg = ddg_from_table(
                p.key, piece.boundary, _table(p.ddg), groups, piece_graph(piece, weights), dict(p.ddg.price)
            )
            data.pairs[(x, y)] = PairData(p.key, x, y, False, ddg=ddg)
        index.nodes[rec.id] = data
    logger.info("loaded index lambda=%d with %d node records", index.lam, len(records))
    return index


def save_index(index: OracleIndex, path: Path | str) -> None:
    Path(path).write_text(dumps_index(index), encoding="utf-8")


def load_index(path: Path | str) -> OracleIndex:
    return loads_index(Path(path).read_text(encoding="utf-8"))


def index_digest(index: OracleIndex) -> str:
    """sha256 of the serialized index."""
    return hashlib.sha256(dumps_index(index).encode("utf-8")).hexdigest()
