"""Making the holes of a piece simple and pairwise vertex-disjoint.

A vertex with several hole corners is cut at each of them: the darts
between two consecutive hole corners become one copy of the vertex. Natural
faces are untouched. Copies are joined to the original by zero-weight aux
edges, so distances between the original vertices do not change, and any
price extends to the copies by copying.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from planarflow.config import get_settings
from planarflow.errors import InvariantViolation
from planarflow.graphcore.embedding import PlanarEmbedding
from planarflow.pdecomp.piece import Piece

logger = logging.getLogger(__name__)


@dataclass
class HoleSplit:
    piece: Piece
    aux: list[tuple[int, int]]     # (copy, original), local ids, zero weight both ways
    origin: list[int]              # local vertex -> local vertex of the input piece


def _hole_corners(emb: PlanarEmbedding, hole_darts: set[int]) -> dict[int, list[int]]:
    corners: dict[int, list[int]] = {}
    for d in sorted(hole_darts):
        corners.setdefault(emb.tail[d], []).append(d)
    return corners


def simplify_holes(piece: Piece) -> HoleSplit:
    emb = piece.embedding
    hole_darts = {d for h in piece.holes for d in emb.faces[h]}
    corners = _hole_corners(emb, hole_darts)
    rotation = [list(r) for r in emb.rotation]
    origin = list(range(emb.n))
    aux: list[tuple[int, int]] = []
    for v in sorted(corners):
        cuts = sorted(emb.pos[d] for d in corners[v])
        if len(cuts) < 2:
            continue
        r = emb.rotation[v]
        arcs = []
        for i, start in enumerate(cuts):
            stop = cuts[(i + 1) % len(cuts)]
            arcs.append([r[(start + j) % len(r)] for j in range((stop - start) % len(r) or len(r))])
        rotation[v] = arcs[0]
        for arc in arcs[1:]:
            copy = len(rotation)
            rotation.append(arc)
            origin.append(v)
            aux.append((copy, v))
    if not aux:
        return HoleSplit(piece, [], origin)

    new = PlanarEmbedding(rotation)
    natural = sorted({new.face_of[emb.faces[f][0]] for f in piece.natural})
    holes = sorted({new.face_of[d] for d in hole_darts})
    split = Piece(
        piece.slots,
        new,
        [piece.vertex_map[o] for o in origin],
        piece.dart_map,
        natural,
        holes,
        list(piece.boundary),
    )
    logger.debug("hole split: %d copies added, %d -> %d holes", len(aux), len(piece.holes), len(holes))
    return HoleSplit(split, aux, origin)


def holes_simple(piece: Piece) -> bool:
    """Every hole visits each vertex once and no vertex lies on two holes."""
    seen: set[int] = set()
    for h in piece.holes:
        vs = piece.embedding.face_vertices(h)
        if len(set(vs)) != len(vs) or seen & set(vs):
            return False
        seen.update(vs)
    return True


def attach_simple_holes(piece: Piece) -> Piece:
    """Fill in ``piece.simple``. Call after the boundary is assigned."""
    split = simplify_holes(piece)
    if get_settings().debug_asserts and not holes_simple(split.piece):
        raise InvariantViolation(f"holes of {piece!r} are still shared after the split")
    piece.simple = split
    return piece


def hole_sequences(piece: Piece) -> list[list[int]]:
    """Parent vertex ids around each simplified hole, duplicates removed."""
    split = (piece.simple or simplify_holes(piece)).piece
    out: list[list[int]] = []
    for h in split.holes:
        seq: list[int] = []
        for v in split.hole_vertices(h):
            if v not in seq:
                seq.append(v)
        out.append(seq)
    return out
