"""Tight triangulations of closed 3-manifolds: verification and construction.

The package decides tightness of a simplicial complex over an exact field
two independent ways (the definitional induced-subcomplex scan and the
polynomial closed-3-manifold criterion), provides the stacked-sphere and
summand-decomposition machinery those decisions rest on, and constructs
tight neighbourly handle quotients from stacked spheres.
"""

from .catalog import (boundary_simplex, builtin, complete_bipartite, complete_graph,
                      cycle_complex, icosahedron, moebius_band_5, projective_plane_6,
                      subdivided_k33_graph, suspension, torus_7)
from .complexes import (Complex, Face, MalformedComplexError, PreconditionError,
                        UnknownVertexError, UnsupportedDimensionError, Verdict,
                        connected_sum, from_facets, is_isomorphic, verify_closed_manifold)
from .construct import (AdmissibilityError, AdmissibleK, Certificate, HandleStep,
                        TopologyClass, admissible_k, candidate_handle_sites,
                        classify_topology, find_admissible_handle, handle_addition,
                        search_tight, stacked_sphere)
from .homology import (ChainData, betti, boundary_matrix, chain_data,
                       induced_map_injective, is_orientable)
from .linalg import GF2, QQ, FMatrix, FieldSpec, dim_sum, rank
from .planarity import KuratowskiWitness, find_kuratowski_subdivision, is_planar_graph
from .stacked import (CycleWitness, HypothesisViolationError, SummandList,
                      decompose_ti, induced_cycles, is_locally_stacked,
                      is_stacked_sphere, mod3_obstruction, triangle_bound_check,
                      verify_moebius, verify_stacked_certificate)
from .tightness import (CrossValidation, InternalInconsistencyError, SurfaceFVector,
                        TightnessReport, cross_validate, is_tight_bruteforce,
                        is_tight_fast_3manifold, is_tight_surface,
                        surface_fvector_bounds)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "AdmissibleK", "Certificate", "ChainData", "Complex",
    "CrossValidation", "CycleWitness", "FMatrix", "Face", "FieldSpec", "GF2",
    "HandleStep", "HypothesisViolationError", "InternalInconsistencyError",
    "KuratowskiWitness", "MalformedComplexError", "PreconditionError", "QQ",
    "SummandList", "SurfaceFVector", "TightnessReport", "TopologyClass",
    "UnknownVertexError", "UnsupportedDimensionError", "Verdict", "admissible_k",
    "betti", "boundary_matrix", "boundary_simplex", "builtin",
    "candidate_handle_sites", "chain_data", "classify_topology",
    "complete_bipartite", "complete_graph", "connected_sum", "cross_validate",
    "cycle_complex", "decompose_ti", "dim_sum", "find_admissible_handle",
    "find_kuratowski_subdivision", "from_facets", "handle_addition", "icosahedron",
    "induced_cycles", "induced_map_injective", "is_isomorphic", "is_locally_stacked",
    "is_orientable", "is_planar_graph", "is_stacked_sphere", "is_tight_bruteforce",
    "is_tight_fast_3manifold", "is_tight_surface", "moebius_band_5",
    "mod3_obstruction", "projective_plane_6", "rank", "search_tight",
    "stacked_sphere", "subdivided_k33_graph", "surface_fvector_bounds",
    "suspension", "torus_7", "triangle_bound_check", "verify_closed_manifold",
    "verify_moebius", "verify_stacked_certificate",
]
