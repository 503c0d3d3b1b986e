"""Exact multi-indexed Meixner-Pollaczek and continuous Hahn polynomials,
their recurrence relations, closure relations and numerical orthogonality checks."""

from .exact_core import GaussianRational, Poly
from .classical import ch_params, mp_params
from .multi_indexed import IndexSet, deformed_system

__all__ = ["GaussianRational", "Poly", "mp_params", "ch_params", "IndexSet", "deformed_system"]
__version__ = "0.1.0"
