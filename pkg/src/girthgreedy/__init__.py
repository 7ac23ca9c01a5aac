"""Randomized greedy independent sets in uniform hypergraphs of large girth."""

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    ParseError,
    GirthResult,
    DegreeProfile,
    berge_girth,
    degree_profile,
    dump_hypergraph,
    induced_subhypergraph,
    is_independent,
    is_linear,
    load_hypergraph,
    neighborhood,
    path_neighborhood,
    validate_girth_witness,
)
from .greedy import (
    GreedyOutcome,
    RootedHypertree,
    WeightAssignment,
    bonus_function,
    closure_vertex_set,
    defeats,
    greedy_by_ranking,
    greedy_uniform,
    influence_blocking_closure,
    is_influence_blocking,
    random_assignment,
    static_min_select,
)
from .generators import (
    TreeSpec,
    make_loose_berge_cycle,
    make_loose_path,
    make_tree,
    parse_generator_spec,
    petersen_graph,
    random_linear_bounded_degree,
    random_regular_girth,
)

__version__ = "0.1.0"
