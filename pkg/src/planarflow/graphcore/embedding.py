"""Combinatorial plane embeddings given as rotation systems.

A dart is a directed edge id. ``rotation[v]`` lists the darts leaving ``v``
in clockwise order and darts ``d`` and ``d ^ 1`` are the two directions of
one edge. Faces are traced with ``next(d) = succ(d ^ 1)``.
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

from planarflow.errors import MalformedRotation, NonPlanar

logger = logging.getLogger(__name__)


class PlanarEmbedding:
    def __init__(self, rotation: Sequence[Sequence[int]], *, check: bool = True) -> None:
        self.rotation: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotation)
        self.n = len(self.rotation)
        darts = [d for r in self.rotation for d in r]
        self.m = len(darts)
        if self.m % 2:
            raise MalformedRotation(f"odd number of darts ({self.m})")
        self.tail = [-1] * self.m
        self.pos = [-1] * self.m
        for v, r in enumerate(self.rotation):
            for i, d in enumerate(r):
                if not 0 <= d < self.m:
                    raise MalformedRotation(f"dart {d} at vertex {v} is outside 0..{self.m - 1}")
                if self.tail[d] != -1:
                    raise MalformedRotation(f"dart {d} appears twice in the rotation system")
                self.tail[d] = v
                self.pos[d] = i
        self.head = [self.tail[d ^ 1] for d in range(self.m)]
        self._trace_faces()
        if check:
            self.check_euler()

    def __repr__(self) -> str:
        return f"PlanarEmbedding(n={self.n}, darts={self.m}, faces={len(self.faces)})"

    @property
    def slots(self) -> int:
        return self.m // 2

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def succ(self, d: int) -> int:
        """Next dart clockwise around the tail of ``d``."""
        r = self.rotation[self.tail[d]]
        return r[(self.pos[d] + 1) % len(r)]

    def pred(self, d: int) -> int:
        r = self.rotation[self.tail[d]]
        return r[self.pos[d] - 1]

    def face_next(self, d: int) -> int:
        return self.succ(d ^ 1)

    def _trace_faces(self) -> None:
        self.face_of = [-1] * self.m
        faces: list[tuple[int, ...]] = []
        for start in range(self.m):
            if self.face_of[start] != -1:
                continue
            cycle = []
            d = start
            while self.face_of[d] == -1:
                self.face_of[d] = len(faces)
                cycle.append(d)
                d = self.face_next(d)
            if d != start:
                raise MalformedRotation(f"face tracing from dart {start} does not close")
            faces.append(tuple(cycle))
        self.faces: tuple[tuple[int, ...], ...] = tuple(faces)

    def face_vertices(self, f: int) -> list[int]:
        return [self.tail[d] for d in self.faces[f]]

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted."""
        seen = [False] * self.n
        comps: list[list[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for d in self.rotation[v]:
                    w = self.head[d]
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def check_euler(self) -> None:
        comp_of = [0] * self.n
        comps = self.components()
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = i
        edges = [0] * len(comps)
        faces = [0] * len(comps)
        for d in range(0, self.m, 2):
            edges[comp_of[self.tail[d]]] += 1
        for face in self.faces:
            faces[comp_of[self.tail[face[0]]]] += 1
        for i, comp in enumerate(comps):
            if edges[i] == 0:
                continue
            chi = len(comp) - edges[i] + faces[i]
            if chi != 2:
                raise NonPlanar(f"component of vertex {comp[0]} has V - E + F = {chi}")

    def dual(self) -> PlanarEmbedding:
        """Dual embedding; dual dart ``d`` runs from ``face_of[d]`` to ``face_of[d ^ 1]``."""
        return PlanarEmbedding(self.faces)

    def restrict(self, darts: Iterable[int]) -> tuple[PlanarEmbedding, list[int], list[int]]:
        """Sub-embedding induced by the slots of ``darts``.

        Returns ``(embedding, vertex_map, dart_map)`` where the maps send
        local ids to ids of this embedding. Slot order is preserved.
        """
        slots = sorted({d >> 1 for d in darts})
        local_of: dict[int, int] = {}
        dart_map: list[int] = []
        for i, s in enumerate(slots):
            local_of[2 * s] = 2 * i
            local_of[2 * s + 1] = 2 * i + 1
            dart_map.extend((2 * s, 2 * s + 1))
        vertex_map = sorted({self.tail[d] for d in dart_map})
        rotation = [
            [local_of[d] for d in self.rotation[v] if d in local_of] for v in vertex_map
        ]
        return PlanarEmbedding(rotation), vertex_map, dart_map


def build_embedding(rotation: Sequence[Sequence[int]]) -> PlanarEmbedding:
    """Validate a rotation system and trace its faces."""
    emb = PlanarEmbedding(rotation)
    logger.debug("embedding with %d vertices, %d darts, %d faces", emb.n, emb.m, len(emb.faces))
    return emb
