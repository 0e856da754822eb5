"""Exact local h-polynomials of geometric triangulations of a simplex.

The package computes face counts, h-polynomials and local h-polynomials over
the rationals, builds triangulations by refinement, analyses the internal
edge graph, and decomposes triangulations with vanishing local h-polynomial
in dimensions 2 and 3 into replayable certificates.
"""

from .constructions import (
    TRIFORCE,
    TRIVIAL,
    Certificate,
    RefinementError,
    RefinementStep,
    cone,
    conical_facet_refine,
    facet_refine,
    join,
    random_iterated,
    replay,
    segment_family,
    segment_triforce_join,
    stellar_subdivision,
    triforce,
    trivial,
)
from .decomposition import (
    CoarsenableRegion,
    DecompositionError,
    coarsen,
    decompose,
    decompose_dim2,
    decompose_dim3,
    find_coarsenable_regions,
    verify_certificate,
)
from .graph import (
    component_reports,
    count_non_pyramid_facets,
    internal_edge_graph,
    pyramid_facets,
)
from .local_h import (
    LocalHMismatch,
    f_vector,
    flag_counts,
    h_polynomial,
    local_h,
    local_h_excess,
    local_h_mobius,
)
from .polynomial import IntPolynomial
from .triangulation import ReferenceSimplex, Triangulation

__version__ = "0.1.0"

__all__ = [
    "TRIFORCE", "TRIVIAL", "Certificate", "CoarsenableRegion", "DecompositionError",
    "IntPolynomial", "LocalHMismatch", "ReferenceSimplex", "RefinementError",
    "RefinementStep", "Triangulation", "coarsen", "component_reports", "cone",
    "conical_facet_refine", "count_non_pyramid_facets", "decompose", "decompose_dim2",
    "decompose_dim3", "f_vector", "facet_refine", "find_coarsenable_regions",
    "flag_counts", "h_polynomial", "internal_edge_graph", "join", "local_h",
    "local_h_excess", "local_h_mobius", "pyramid_facets", "random_iterated", "replay",
    "segment_family", "segment_triforce_join", "stellar_subdivision", "triforce",
    "trivial", "verify_certificate",
]
