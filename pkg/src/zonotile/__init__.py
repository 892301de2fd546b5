"""Exact zonotopal tilings, higher secondary polytopes, plabic graphs and soliton contour plots."""

from .geometry import Configuration, Rat, SignedSet, cyclic_polygon, eulerian, signed
from .secondary import (
    ChamberAtlas,
    HspSkeleton,
    enumerate_regular,
    hsp_skeleton,
    phi,
    vert_fib,
    vert_fib_k,
    vert_gkz,
    verify_vertex_identities,
)
from .tilings import (
    FlipError,
    InvalidTiling,
    NonGenericHeight,
    Tiling,
    apply_flip,
    flip_data,
    is_generic,
    opposite,
    sigma_from_heights,
    sigma_from_tiling,
    tiling_from_heights,
    vert,
)

__all__ = [
    "Configuration", "Rat", "SignedSet", "cyclic_polygon", "eulerian", "signed",
    "ChamberAtlas", "HspSkeleton", "enumerate_regular", "hsp_skeleton", "phi",
    "vert_fib", "vert_fib_k", "vert_gkz", "verify_vertex_identities",
    "FlipError", "InvalidTiling", "NonGenericHeight", "Tiling", "apply_flip", "flip_data",
    "is_generic", "opposite", "sigma_from_heights", "sigma_from_tiling", "tiling_from_heights", "vert",
]
