"""Strength, fractional arboricity and hypertree modulus of small hypergraphs."""

from .decompose import extract_levels, hdp, hsp, is_homogeneous, serial_split
from .errors import (
    AmbiguityError,
    ArgumentError,
    CapacityError,
    ConsistencyError,
    HypergraphError,
    InfeasibleError,
    NonConvergenceError,
    ValidationError,
)
from .fulkerson import blocker_omega, in_partition_polyhedron, verify_extreme
from .hypercore import Hypergraph, contract, from_edges, parse, shrink_partition, to_json
from .matroid import greedy_min_basis, is_hyperforest, is_hypertree, matroid_strength, rank
from .metrics import arboricity, strength
from .modulus import hypertree_family, mod1, mod2_mnp, multitree_family

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError",
    "arboricity",
    "ArgumentError",
    "blocker_omega",
    "CapacityError",
    "ConsistencyError",
    "contract",
    "extract_levels",
    "from_edges",
    "greedy_min_basis",
    "hdp",
    "hsp",
    "Hypergraph",
    "HypergraphError",
    "hypertree_family",
    "in_partition_polyhedron",
    "InfeasibleError",
    "is_homogeneous",
    "is_hyperforest",
    "is_hypertree",
    "matroid_strength",
    "mod1",
    "mod2_mnp",
    "multitree_family",
    "NonConvergenceError",
    "parse",
    "rank",
    "serial_split",
    "shrink_partition",
    "strength",
    "to_json",
    "ValidationError",
    "verify_extreme",
]
