"""r-divisions by recursive cycle separation."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from planarflow.config import get_settings
from planarflow.errors import TooSmall
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.graphcore.transforms import triangulate
from planarflow.models import SeparatorCriterion
from planarflow.pdecomp.holes import attach_simple_holes
from planarflow.pdecomp.piece import Piece, assign_boundary, make_piece
from planarflow.pdecomp.separator import cycle_separator, face_weights

logger = logging.getLogger(__name__)

CRITERIA = (SeparatorCriterion.VERTICES, SeparatorCriterion.BOUNDARY, SeparatorCriterion.HOLES)


@dataclass
class RDivision:
    r: int
    parent: PlanarEmbedding
    pieces: list[Piece]

    def __repr__(self) -> str:
        return f"RDivision(r={self.r}, pieces={len(self.pieces)}, boundary={len(self.boundary)})"

    @property
    def boundary(self) -> list[int]:
        return sorted({v for p in self.pieces for v in p.boundary})

    def pieces_with_slot(self, slot: int) -> list[int]:
        return [i for i, p in enumerate(self.pieces) if slot in set(p.slots)]


def _components(parent: PlanarEmbedding, slots: list[int]) -> list[list[int]]:
    root: dict[int, int] = {}

    def find(x: int) -> int:
        while root.setdefault(x, x) != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for k in slots:
        a, b = find(parent.tail[2 * k]), find(parent.head[2 * k])
        if a != b:
            root[a] = b
    groups: dict[int, list[int]] = {}
    for k in slots:
        groups.setdefault(find(parent.tail[2 * k]), []).append(k)
    return sorted(groups.values())


def _split(parent: PlanarEmbedding, piece: Piece, depth: int) -> list[list[int]] | None:
    local = piece.embedding
    tri = triangulate(local, 0)
    t = tri.embedding
    hole_faces = {t.face_of[local.faces[h][0]] for h in piece.holes}
    on_holes = {local.tail[d] for h in piece.holes for d in local.faces[h]}
    criterion = CRITERIA[depth % len(CRITERIA)]
    weights = face_weights(t, criterion, marked=on_holes, hole_faces=hole_faces, ignore=tri.apexes)
    try:
        sep = cycle_separator(t, weights)
    except TooSmall:
        return None
    inside: list[int] = []
    outside: list[int] = []
    for k in range(local.slots):
        a = t.face_of[2 * k] in sep.inside
        b = t.face_of[2 * k + 1] in sep.inside
        if a or b:
            inside.append(piece.slots[k])
        if not (a and b):
            outside.append(piece.slots[k])
    parts = [c for side in (inside, outside) if side for c in _components(parent, side)]
    if any(len(p) >= len(piece.slots) for p in parts):
        return None
    return parts


def r_division(emb: PlanarEmbedding, r: int, *, hole_budget: int | None = None) -> RDivision:
    """Pieces of at most ``r`` vertices and at most ``hole_budget`` holes each.

    Separator weights cycle through vertices, boundary vertices and holes
    by recursion depth. A piece that no separator shrinks is kept as it is,
    with a warning.
    """
    budget = hole_budget if hole_budget is not None else get_settings().hole_budget
    done: list[Piece] = []
    work: list[tuple[list[int], int]] = [(c, 0) for c in _components(emb, list(range(emb.slots)))]
    while work:
        slots, depth = work.pop()
        piece = make_piece(emb, slots)
        if piece.n <= r and len(piece.holes) <= budget:
            done.append(piece)
            continue
        parts = _split(emb, piece, depth)
        if parts is None:
            logger.warning(
                "piece with %d vertices and %d holes cannot be split further (r=%d)",
                piece.n, len(piece.holes), r,
            )
            done.append(piece)
            continue
        work.extend((p, depth + 1) for p in parts)
    done.sort(key=lambda p: p.slots[0])
    assign_boundary(done)
    for piece in done:
        attach_simple_holes(piece)
    division = RDivision(r, emb, done)
    logger.info(
        "r-division r=%d: %d pieces, max size %d, max boundary %d, max holes %d",
        r, len(done), max((p.n for p in done), default=0),
        max((len(p.boundary) for p in done), default=0),
        max((len(p.holes) for p in done), default=0),
    )
    return division
