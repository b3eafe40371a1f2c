"""eoflex: binary MDS array codes with two parity columns.

Systematic XOR-only encoding over a tau*(p-1) x (k+2) lane grid, recovery
from any two column erasures, a GF(2) Gaussian-elimination oracle, and
XOR-level complexity instrumentation.
"""

from .codearray import CodeArray, ErasurePattern, mod_ring, xor_lanes
from .codec import encode, update_cell
from .decoder import decode
from .params import CodeParams, Regime, common_row_threshold, validate_params

__all__ = [
    "CodeArray",
    "CodeParams",
    "ErasurePattern",
    "Regime",
    "common_row_threshold",
    "decode",
    "encode",
    "mod_ring",
    "update_cell",
    "validate_params",
    "xor_lanes",
]
