"""Exact Steiner tree solvers and instance tooling for unit disk graphs.

The package builds disk intersection graphs with exact integer arithmetic,
decomposes unit-disk instances into clique grids, and solves the k-Steiner
tree decision problem three ways: a brute-force oracle, a contraction-based
FPT algorithm on top of Dreyfus-Wagner, and a shifting-based subexponential
dynamic program over nice clique path decompositions. Two hardness-reduction
generators double as verified test-case factories.
"""

from .geometry import DiskInstance, Graph, SteinerTree, build_intersection_graph, squared_distance
from .cliquegrid import CliqueGridRepr, CellGraph, compute_representation, validate_representation, cell_graph
from .oracle import SolveResult, brute_force_decide, brute_force_min, verify_tree

__all__ = [
    "DiskInstance",
    "Graph",
    "SteinerTree",
    "build_intersection_graph",
    "squared_distance",
    "CliqueGridRepr",
    "CellGraph",
    "compute_representation",
    "validate_representation",
    "cell_graph",
    "SolveResult",
    "brute_force_decide",
    "brute_force_min",
    "verify_tree",
]
