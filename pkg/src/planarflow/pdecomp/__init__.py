"""Planar decompositions: separators, r-divisions, hole repair and the dual decomposition tree."""

from planarflow.pdecomp.holes import (
    HoleSplit,
    attach_simple_holes,
    hole_sequences,
    holes_simple,
    simplify_holes,
)
from planarflow.pdecomp.phi import (
    core_path,
    decompose_phi,
    decompose_phi_rdiv,
    element_path,
    phi_path,
)
from planarflow.pdecomp.piece import Piece, assign_boundary, make_piece
from planarflow.pdecomp.rdivision import RDivision, r_division
from planarflow.pdecomp.separator import Separator, cycle_separator, face_weights
from planarflow.pdecomp.tree import DecompTree, TreeNode, build_decomp_tree, dump_decomposition

__all__ = [
    "DecompTree",
    "HoleSplit",
    "Piece",
    "RDivision",
    "Separator",
    "TreeNode",
    "assign_boundary",
    "attach_simple_holes",
    "build_decomp_tree",
    "core_path",
    "cycle_separator",
    "decompose_phi",
    "decompose_phi_rdiv",
    "dump_decomposition",
    "element_path",
    "face_weights",
    "hole_sequences",
    "holes_simple",
    "make_piece",
    "phi_path",
    "r_division",
    "simplify_holes",
]
