"""latc: exact-arithmetic lattice toolkit.

Voronoi relevant vectors, coefficient-width certificates for lattice bases,
the quadratic-width basis construction, relaxed generating-set certificates,
and a polynomial-space closest-vector solver streaming candidates from a
certified basis.
"""

from .errors import (
    BoundTooSmallError,
    CertificateUnsoundError,
    DependenceError,
    InfeasibleError,
    LatcError,
    MalformedInputError,
    NonUnimodularError,
    ResourceLimitError,
    SingularMatrixError,
    UnboundedError,
)
from .lattice import Lattice, format_latgram, parse_latgram

__version__ = "0.1.0"

__all__ = [
    "Lattice",
    "format_latgram",
    "parse_latgram",
    "LatcError",
    "SingularMatrixError",
    "UnboundedError",
    "InfeasibleError",
    "ResourceLimitError",
    "BoundTooSmallError",
    "NonUnimodularError",
    "DependenceError",
    "CertificateUnsoundError",
    "MalformedInputError",
    "__version__",
]
