"""Exact Ext-group dimensions for SL2 (and GL2) in positive characteristic."""

__version__ = "0.1.0"

from .ext import (
    ExtEngine,
    ExtQuery,
    decompose_ext_k_nabla2,
    e2_corner_dim,
    e2_corner_report,
    ext_delta_nabla2,
    ext_k_gl2_top,
    ext_k_nabla2,
    hom_gl2_nabla,
    weyl_multiplicities_gl2,
)
from .hilbert import generator_ledger, hilbert
from .oracles import naive_ext_dim, orbit_linked
from .trace import dim_from_leaves, leaf_path_count, precursors, trace, verify_deficit
from .weights import in_block_of_two_p_s, p_decompose, same_block
