"""Graph invariants and exact certification for noncontextuality inequalities.

The package computes the four graph numbers that govern noncontextuality
inequalities -- independence number, Lovász number, fractional packing
number and edge clique cover number -- and verifies complete scenarios:
exhaustive noncontextual bounds, quantum values of explicit orthogonal
representations, polytope tightness certificates in exact arithmetic, and
Monte Carlo simulation of the sequential measurements that would test the
inequalities in the lab.
"""

from .graphs import (
    Graph,
    complement,
    complete_graph,
    cycle,
    edge_clique_cover_number,
    empty_graph,
    format_graph,
    independence_number,
    induced_subgraph,
    is_clique,
    is_isomorphic,
    johnson_5_2,
    max_clique,
    maximal_cliques,
    named_graph,
    parse_graph,
    petersen,
    set_vertices,
    vertex_set,
)
from .inequalities import (
    Inequality,
    evaluate_assignment,
    format_inequality,
    inequality_graph,
    kcbs,
    named_inequality,
    nchv_max,
    parse_inequality,
    twin,
)
from .lp import (
    LinearProgram,
    LpInfeasibleError,
    LpUnboundedError,
    fractional_packing_number,
    make_lp,
    simplex_solve,
)
from .theta import ThetaResult, eig_sym, lovasz_theta, sym_matrix
from .representations import (
    OrthoRep,
    RepValidation,
    SearchResult,
    SimulationResult,
    format_vectors,
    inequality_quantum_lhs,
    measure_sequence,
    named_representation,
    ortho_rep_search,
    parse_vectors,
    pentagon_dim3_representation,
    pentagon_handle_state,
    quantum_value,
    simulate_sequential,
    state_vector,
    twin_dim6_representation,
    twin_handle_state,
    validate_ortho_rep,
)
from .polytope import (
    AffineCertificate,
    all_deterministic_behaviors,
    apply_functional,
    behavior_layout,
    deterministic_behavior,
    exclusive_deterministic_behaviors,
    facet_check,
    facet_check_exclusive,
    inequality_functional,
    polytope_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "AffineCertificate",
    "Graph",
    "Inequality",
    "LinearProgram",
    "LpInfeasibleError",
    "LpUnboundedError",
    "OrthoRep",
    "RepValidation",
    "SearchResult",
    "SimulationResult",
    "ThetaResult",
    "all_deterministic_behaviors",
    "apply_functional",
    "behavior_layout",
    "complement",
    "complete_graph",
    "cycle",
    "deterministic_behavior",
    "edge_clique_cover_number",
    "eig_sym",
    "empty_graph",
    "evaluate_assignment",
    "exclusive_deterministic_behaviors",
    "facet_check",
    "facet_check_exclusive",
    "format_graph",
    "format_inequality",
    "format_vectors",
    "fractional_packing_number",
    "independence_number",
    "induced_subgraph",
    "inequality_functional",
    "inequality_graph",
    "inequality_quantum_lhs",
    "is_clique",
    "is_isomorphic",
    "johnson_5_2",
    "kcbs",
    "lovasz_theta",
    "make_lp",
    "max_clique",
    "maximal_cliques",
    "measure_sequence",
    "named_graph",
    "named_inequality",
    "named_representation",
    "nchv_max",
    "ortho_rep_search",
    "parse_graph",
    "parse_inequality",
    "parse_vectors",
    "pentagon_dim3_representation",
    "pentagon_handle_state",
    "petersen",
    "polytope_dimension",
    "quantum_value",
    "set_vertices",
    "simplex_solve",
    "simulate_sequential",
    "state_vector",
    "sym_matrix",
    "twin",
    "twin_dim6_representation",
    "twin_handle_state",
    "validate_ortho_rep",
    "vertex_set",
]
