"""Exact syzygy computations for Segre products of projective spaces.

The package computes graded Betti tables of Segre embeddings through an
Artinian reduction of the coordinate ring, using a straightening law to do
all ring arithmetic in a combinatorial standard basis.  It also evaluates
the recursive vanishing bound for Betti numbers, constructs explicit
non-vanishing witness cycles, and provides Borel-Weil-Bott / Schur
dimension utilities.  Everything is exact integer arithmetic; no floating
point is involved in any mathematical result.
"""

from .lattice import basis_R1, enumerate_paths, normalize_dims, standard_basis_indices
from .straighten import expand_in_B1, is_standard, monomial, multiply, straighten
from .pfunc import INFINITY, p_function, predicts_zero, vanishing_bound
from .koszul import BettiTable, betti_table, kpq_dim
from .witness import CycleSpec, build_cycle, verify_witness
from .bott import bwb_cohomology, dotted_sort, schur_dim

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "BettiTable",
    "CycleSpec",
    "basis_R1",
    "betti_table",
    "build_cycle",
    "bwb_cohomology",
    "dotted_sort",
    "enumerate_paths",
    "expand_in_B1",
    "is_standard",
    "kpq_dim",
    "monomial",
    "multiply",
    "normalize_dims",
    "p_function",
    "predicts_zero",
    "schur_dim",
    "standard_basis_indices",
    "straighten",
    "vanishing_bound",
    "verify_witness",
    "__version__",
]
