"""Blocks of dominant weights for affine Weyl groups, via antispherical and
periodic Kazhdan-Lusztig combinatorics."""

from .blocks import (
    BlockResult,
    ChainResult,
    DifferentBlocksError,
    TheoryConstraintError,
    block_of,
    chain_between,
    closure_oracle,
    delta_of,
    facet_context,
    r_of,
    relation_edge,
    same_orbit,
)
from .hecke import KLEngine, engine_for, reset_engines
from .laurent import LaurentPolynomial
from .root_data import RootSystem, build_root_system

__version__ = "0.1.0"
