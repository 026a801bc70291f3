"""Exact lattice models over truncated Witt rings.

Enumerates and cross-verifies the point sets of the split hermitian lattice
model: window lattices with a minuscule dual condition, their stratification,
the associated flag varieties over the residue field, the fiber spaces with
their semilinear forms, and the scalar-self-dual hearts of the deepest
stratum.  Every structural statement is an executable, falsifiable check.
"""

__version__ = "0.1.0"

from .coeff import CoeffRing, RingParams, make_ring
from .errors import (
    CeilingExceeded,
    ConsistencyError,
    PrecisionError,
    UsageError,
    WittlatError,
)
from .hermitian import HermitianSpace
from .lattice import Lattice

__all__ = [
    "CoeffRing",
    "RingParams",
    "make_ring",
    "HermitianSpace",
    "Lattice",
    "CeilingExceeded",
    "ConsistencyError",
    "PrecisionError",
    "UsageError",
    "WittlatError",
    "__version__",
]
