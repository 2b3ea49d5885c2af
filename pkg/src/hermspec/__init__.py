"""Hermitian adjacency spectra, four-way switching and rank-2 classification of mixed graphs."""

from ._kernels import BACKEND
from .graph import (
    MixedGraph,
    parse_edge_list,
    format_edge_list,
    underlying_graph,
    converse,
    gen_family,
    are_isomorphic,
)
from .spectral import (
    CharPoly,
    HermitianMatrix,
    hermitian_matrix,
    char_poly,
    graph_char_poly,
    eigenvalues,
    rank_exact,
    graph_rank,
    are_cospectral,
    are_antispectral,
)
from .switching import GaugePartition, Phase, apply_four_way, is_admissible, are_switching_equivalent
from .structure import Rank2Form, NotRank2, classify_rank2, cospectral_partition, antispectral_partition
from .dhs import mates_rank2, is_dhs_rank2, table_knn

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "MixedGraph",
    "parse_edge_list",
    "format_edge_list",
    "underlying_graph",
    "converse",
    "gen_family",
    "are_isomorphic",
    "CharPoly",
    "HermitianMatrix",
    "hermitian_matrix",
    "char_poly",
    "graph_char_poly",
    "eigenvalues",
    "rank_exact",
    "graph_rank",
    "are_cospectral",
    "are_antispectral",
    "GaugePartition",
    "Phase",
    "apply_four_way",
    "is_admissible",
    "are_switching_equivalent",
    "Rank2Form",
    "NotRank2",
    "classify_rank2",
    "cospectral_partition",
    "antispectral_partition",
    "mates_rank2",
    "is_dhs_rank2",
    "table_knn",
]
