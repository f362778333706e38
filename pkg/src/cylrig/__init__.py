"""Rigidity of cylindrical frameworks with two coincident points."""

from .coincident import (
    CanonicalFamily,
    FamilyViolation,
    RankReport,
    SetViolation,
    brute_uv_rank,
    is_uv_rigid,
    is_uv_rigid_sphere,
    is_uv_sparse,
    uv_rank,
    uv_sparsity_violation,
    val_family,
    val_set,
)
from .constructions import fixture, random_uv_independent
from .graph import DesignatedPair, Graph, contract_pair, delete_edge, induced_edge_count, parse_graph, serialize_graph
from .numeric import numeric_uv_rank
from .sparsity import SparsityParams, brute_sparse_rank, is_rigid_surface, is_sparse, sparse_rank

__version__ = "0.1.0"
