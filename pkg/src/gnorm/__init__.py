"""Graph-norm functionals on step kernels, colouring symmetry analysis, and
machine-checkable non-norming certificates for bipartite graphs."""

from .config import DEFAULT, RunConfig
from .errors import (
    CapExceeded,
    GnormError,
    NotBalanced,
    ParseError,
    ShapeMismatch,
    VerificationFailed,
)
from .graphs import (
    BipartiteGraph,
    DegreeStats,
    EdgeColouring,
    complete_bipartite,
    count_two_edge_matchings,
    cycle,
    degree_stats,
    disjoint_union,
    enumerate_balanced_colourings,
    girth,
    graph_from_json,
    graph_to_json,
    is_balanced,
    is_biregular,
    is_eulerian,
    iter_balanced_colourings,
    star,
)
from .symmetry import (
    Automorphism,
    SymmetryReport,
    automorphisms,
    coloured_isomorphic,
    exists_transitive_colouring,
    is_edge_transitive,
    is_self_conjugate,
    is_transitive_colouring,
    isomorphic,
)
from .cycles import (
    CycleSet,
    FourCycleProfile,
    check_girth_cycle_law,
    check_two_path_law,
    classify_4cycles,
    enumerate_cycles,
    four_cycles_generate_cycle_space,
    kappa_alternating,
    maximizes_c1_plus_c3_minus_c2,
    maximizes_kappa_girth,
    potential_colouring,
)
from .kernels import Decoration, OnePlusEps, StepKernel, TrigKernel, phase_kernel
from .density import (
    perturbation_coefficients,
    rho_2m,
    s_max,
    second_order_expansion,
    t_decoration,
    t_density,
    trig_density,
)
from .falsify import (
    hatami_check,
    hatami_random_scan,
    hatami_violation_search,
    p1_check,
    triangle_falsifier,
)
from .constructions import (
    Tournament,
    bipartite_kneser,
    clockwise_tournament,
    colouring_from_tournament,
    count_directed_cycles,
    hypercube,
    hypercube_alpha,
    hypercube_beta,
    quadratic_residue_tournament,
    regular_tournaments,
    set_inclusion_graph,
    subdivide,
    subdivided_complete,
    tournament_from_colouring,
)
from .hypergraphs import (
    UniformHypergraph,
    codegree_profile,
    hypergraph_is_edge_transitive,
    hypergraph_is_self_complementary,
    link_hypergraph,
)
from .arithmetic import (
    class_A_membership,
    kneser_admissible,
    kneser_integrality_test,
    prime_divisor_pt,
    prime_in_range,
)
from .certify import Certificate, certify_family, certify_not_norming

__version__ = "0.1.0"
