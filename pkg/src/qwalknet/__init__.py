"""Continuous-time quantum walks on complex networks under link failures."""

from ._core import available_backends, get_backend, set_backend
from .datasets import GeneratorParams, LabeledNetwork, karate_club, load_edge_list, planted_partition
from .errors import ConvergenceError, EdgeListError, GraphError, QwalkError
from .experiments import (
    affinity,
    centrality_population_report,
    compare_generators,
    community_flow_agreement,
    edge_removal_sweep,
    laplacian_sweep_noncorrelation,
    partition_by_reference,
)
from .graph import (
    Graph,
    adjacency_matrix,
    degree_centrality,
    from_edge_list,
    is_connected,
    is_regular,
    laplacian_matrix,
    remove_edge,
)
from .spectral import SpectralDecomposition, eigh, exact_time_average, propagate
from .walk import (
    Generator,
    WalkConfig,
    average_populations,
    localized_state,
    probabilities,
    uniform_state,
)

__version__ = "0.1.0"
