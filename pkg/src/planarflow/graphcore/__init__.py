"""Flow networks, plane embeddings, transformations, generators and file I/O."""

from planarflow.graphcore.embedding import PlanarEmbedding, build_embedding
from planarflow.graphcore.generate import gen_planar
from planarflow.graphcore.io import format_graph, parse_graph, read_graph, write_graph
from planarflow.graphcore.network import Edge, FlowNetwork, add_reverse_edges, rev
from planarflow.graphcore.transforms import (
    Triangulation,
    connect_components,
    crossing_number,
    degree3_expand,
    triangulate,
)

__all__ = [
    "Edge",
    "FlowNetwork",
    "PlanarEmbedding",
    "Triangulation",
    "add_reverse_edges",
    "build_embedding",
    "connect_components",
    "crossing_number",
    "degree3_expand",
    "format_graph",
    "gen_planar",
    "parse_graph",
    "read_graph",
    "rev",
    "triangulate",
    "write_graph",
]
