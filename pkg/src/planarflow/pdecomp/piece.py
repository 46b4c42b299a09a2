"""Pieces: edge-induced subgraphs of a plane graph, with their holes."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable

from planarflow.graphcore.embedding import PlanarEmbedding

if TYPE_CHECKING:
    from planarflow.pdecomp.holes import HoleSplit

logger = logging.getLogger(__name__)


@dataclass
class Piece:
    """A slot subset of a parent embedding.

    ``embedding`` is the induced sub-embedding with local ids;
    ``vertex_map`` and ``dart_map`` send local ids to parent ids. Faces of
    the piece that are faces of the parent are natural, the rest are holes.
    ``boundary`` holds parent vertex ids and is filled in by whoever knows
    the other pieces.
    ``simple`` is the same piece with simple, vertex-disjoint holes; the
    builders fill it in once the boundary is known.
    """

    slots: list[int]
    embedding: PlanarEmbedding
    vertex_map: list[int]
    dart_map: list[int]
    natural: list[int]                # local face ids
    holes: list[int]                  # local face ids
    boundary: list[int] = field(default_factory=list)
    simple: HoleSplit | None = field(default=None, repr=False, compare=False)

    def __repr__(self) -> str:
        return (
            f"Piece(n={self.embedding.n}, slots={len(self.slots)}, holes={len(self.holes)}, "
            f"boundary={len(self.boundary)})"
        )

    @property
    def n(self) -> int:
        return self.embedding.n

    @property
    def vertices(self) -> list[int]:
        return self.vertex_map

    def local_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertex_map)}

    def hole_vertices(self, hole: int) -> list[int]:
        """Parent ids around ``hole`` in face order, repeats included."""
        return [self.vertex_map[v] for v in self.embedding.face_vertices(hole)]


def make_piece(parent: PlanarEmbedding, slots: Iterable[int]) -> Piece:
    """Restrict ``parent`` to ``slots`` and classify the faces of the result."""
    slot_list = sorted(set(slots))
    emb, vertex_map, dart_map = parent.restrict(2 * s for s in slot_list)
    natural: list[int] = []
    holes: list[int] = []
    for f, face in enumerate(emb.faces):
        parent_darts = [dart_map[d] for d in face]
        pf = parent.face_of[parent_darts[0]]
        if len(parent.faces[pf]) == len(face) and all(parent.face_of[d] == pf for d in parent_darts):
            natural.append(f)
        else:
            holes.append(f)
    return Piece(slot_list, emb, vertex_map, dart_map, natural, holes)


def assign_boundary(pieces: list[Piece]) -> None:
    """Mark vertices shared by two or more pieces as boundary."""
    count: dict[int, int] = {}
    for p in pieces:
        for v in p.vertex_map:
            count[v] = count.get(v, 0) + 1
    for p in pieces:
        p.boundary = sorted(v for v in p.vertex_map if count[v] > 1)
