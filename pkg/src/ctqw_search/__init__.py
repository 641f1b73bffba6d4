"""Continuous-time quantum-walk spatial search for multi-vertex marked states.

Graph-family generators and Laplacians, spectral decompositions with an
analytic hypercube eigenbasis, critical-jump-rate analysis, closed-form
hypercube combinatorics, a Laplacian-spectrum optimality certificate, and
exact Hamiltonian dynamics.
"""

from .errors import (
    DegenerateStateError,
    DisconnectedGraphError,
    InvalidInputError,
    InvalidParameterError,
    NumericError,
    OrthogonalStateError,
    PoleError,
)
from .graphs import (
    Graph,
    SrgParams,
    complete,
    complete_minus_disjoint_edges,
    export_dot,
    format_edge_list,
    hypercube,
    laplacian,
    paley,
    parse_dot,
    parse_edge_list,
    regular_multipartite,
    validate,
)
from .closed_forms import (
    ClosedFormResult,
    PairSpec,
    antipodal_pair,
    compose_inclusion_exclusion,
    general_pair,
    hypercube_exact,
    krawtchouk,
    pair_sums,
    single_vertex_sums,
    weight1_uniform,
)
from .linalg import (
    HypercubeEigenbasis,
    SpectralDecomposition,
    eig_sym,
    evolve,
    fwht,
    hypercube_eigenbasis,
    laplacian_decomposition,
)
from .optimality import (
    OPTIMALITY_THRESHOLD,
    OptimalityReport,
    StressStatistics,
    certify,
    certify_induced_complete,
    certify_multipartite,
    certify_srg,
    stress_random_states,
)
from .search import (
    MarkedState,
    SearchParameters,
    amplitude_approx,
    amplitude_exact_sum,
    f_of_mu,
    overlaps,
    search_params,
    solve_mu,
    uniform_state,
)
from .simulate import (
    DeviationReport,
    EvolutionTrace,
    compare,
    hamiltonian,
    run,
    run_hypercube,
)

__all__ = [
    "OPTIMALITY_THRESHOLD",
    "ClosedFormResult",
    "DegenerateStateError",
    "DeviationReport",
    "DisconnectedGraphError",
    "EvolutionTrace",
    "Graph",
    "HypercubeEigenbasis",
    "InvalidInputError",
    "InvalidParameterError",
    "MarkedState",
    "NumericError",
    "OptimalityReport",
    "OrthogonalStateError",
    "PairSpec",
    "PoleError",
    "SearchParameters",
    "SpectralDecomposition",
    "SrgParams",
    "StressStatistics",
    "amplitude_approx",
    "amplitude_exact_sum",
    "antipodal_pair",
    "certify",
    "certify_induced_complete",
    "certify_multipartite",
    "certify_srg",
    "compare",
    "complete",
    "complete_minus_disjoint_edges",
    "compose_inclusion_exclusion",
    "eig_sym",
    "evolve",
    "export_dot",
    "f_of_mu",
    "format_edge_list",
    "fwht",
    "general_pair",
    "hamiltonian",
    "hypercube",
    "hypercube_eigenbasis",
    "hypercube_exact",
    "krawtchouk",
    "laplacian",
    "laplacian_decomposition",
    "overlaps",
    "pair_sums",
    "paley",
    "parse_dot",
    "parse_edge_list",
    "regular_multipartite",
    "run",
    "run_hypercube",
    "search_params",
    "single_vertex_sums",
    "solve_mu",
    "stress_random_states",
    "uniform_state",
    "validate",
    "weight1_uniform",
]
