"""Skew-hermitian forms and unitary groups over finite local rings with involution.

The package builds finite local rings ``A`` with an involution ``*`` (twisted
quadratic extensions of Galois rings), puts non-degenerate skew-hermitian forms
on free right ``A``-modules, constructs symplectic bases for them, and counts
the associated unitary groups both by closed formula and by exhaustive search.
"""

from .errors import (
    AxiomFailure,
    BranchUnavailable,
    BudgetExceeded,
    DimensionMismatch,
    InternalDefect,
    InvalidSpec,
    NotAUnit,
    NotProper,
    RingMismatch,
    SkewUnitaryError,
)
from .ring import Element, Ring, RingSpec, RingStats, make_ring, quotient_ring
from .linalg import FormSpace, Matrix, Vector, standard_gram

__all__ = [
    "AxiomFailure",
    "BranchUnavailable",
    "BudgetExceeded",
    "DimensionMismatch",
    "Element",
    "FormSpace",
    "InternalDefect",
    "InvalidSpec",
    "Matrix",
    "NotAUnit",
    "NotProper",
    "Ring",
    "RingMismatch",
    "RingSpec",
    "RingStats",
    "SkewUnitaryError",
    "Vector",
    "make_ring",
    "quotient_ring",
    "standard_gram",
]
