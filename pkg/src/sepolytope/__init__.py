"""Exact invariants of symmetric edge polytopes and edge-deletion experiments."""

from .config import DEFAULT_LIMITS, Limits
from .ehrhart import diff_hstar, hstar_block_product, hstar_pointcount, hstar_triangulation
from .errors import (
    GraphValidationError,
    IdentityFailure,
    NoPathError,
    ParseError,
    PreconditionError,
    ResourceError,
    SepError,
)
from .geometry import edge_stats, enumerate_facets, f1, f1_combinatorial, f1_geometric, z2
from .graph import (
    Graph,
    canonical_code,
    complete_graph,
    cycle_graph,
    enumerate_connected_graphs,
    parse_edgelist,
    parse_graph6,
    to_graph6,
)
from .lab import c_ij, check_conj_sum, layered_sum, sweep, z_poly
from .poly import IntPolynomial, gamma_decompose

__version__ = "0.1.0"
