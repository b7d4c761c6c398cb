"""Cardinality constrained path and cycle polytopes: inequalities, facet certificates,
separation and an exact branch-and-cut solver."""
from .exceptions import InvalidParameter, VerificationMismatch
from .model import (CardinalitySequence, Graph, IncidenceVector, build_complete_digraph, build_complete_graph,
                    build_graph, build_path_digraph, enumerate_cycles, enumerate_paths, enumerate_vertices,
                    forbidden_bracket)
from .linalg import affine_rank, bareiss_rank, in_affine_hull, modular_rank, rank
from .inequalities import (LinearInequality, NodePotentials, cardinality_bounds, cardinality_subgraph, cf_arc,
                           cf_node, custom, degree_constraint, flow_conservation, min_cut, modified_cf,
                           multiple_cycle_exclusion, node_potentials, nonnegativity, normalize,
                           one_sided_min_cut, parity_exclusion, regenerate, symmetrize)
from .facets import Answer, Verdict, facet_predicate
from .verify import (Polytope, SweepReport, certified_facets, is_facet, is_valid, polytope_dimension, sweep_ids,
                     sweep_theorem)
from .separation import (FractionalPoint, SeparationResult, Violation, max_flow, separate_cardinality_subgraph,
                         separate_cf_arc, separate_cf_greedy, separate_mcf, separate_one_sided_min_cut,
                         separate_parity_exclusion)
from .transform import deorient, lift_path_to_cycle, undirected_counterpart
from .lp import LPResult, lp_solve
from .solver import Instance, SolveLog, SolverConfig, solve

__version__ = "0.1.0"
