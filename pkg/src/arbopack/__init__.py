"""Matroid-constrained packing of arborescences and rooted trees.

Decides, constructs, verifies and cost-optimizes packings of
arborescences in digraphs with roots, and the corresponding rooted-tree
packings in undirected graphs via orientation.
"""

from .connectivity import (
    Certificate,
    check_independent_placement,
    check_m_connected,
    check_partition_connected,
)
from .graphs import Partition, RootedDigraph, RootedGraph
from .matroid import (
    ExplicitMatroid,
    FreeMatroid,
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    PartitionMatroid,
    UniformMatroid,
)
from .orientation import Orientation, TreePacking, decompose_edges, orient_m_connected, pack_undirected
from .packing import Packing, Tree, brute_force_packing, find_packing, pack_with_bound, verify_packing
from .polytope import RationalVector, min_cost_packing, separate

__all__ = [
    "Certificate", "ExplicitMatroid", "FreeMatroid", "GraphicMatroid",
    "LinearMatroid", "Matroid", "Orientation", "Packing", "Partition",
    "PartitionMatroid", "RationalVector", "RootedDigraph", "RootedGraph",
    "Tree", "TreePacking", "UniformMatroid", "brute_force_packing",
    "check_independent_placement", "check_m_connected",
    "check_partition_connected", "decompose_edges", "find_packing",
    "min_cost_packing", "orient_m_connected", "pack_undirected",
    "pack_with_bound", "separate", "verify_packing",
]

__version__ = "0.1.0"
