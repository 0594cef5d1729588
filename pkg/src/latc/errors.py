"""Exception hierarchy shared across the toolkit."""


class LatcError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrixError(LatcError):
    """Inversion or solving was requested for a matrix with zero determinant."""


class UnboundedError(LatcError):
    """The linear program is unbounded in the objective direction."""


class InfeasibleError(LatcError):
    """The linear program has an empty feasible region."""


class ResourceLimitError(LatcError):
    """An enumeration exceeded its configured candidate or dimension cap."""


class BoundTooSmallError(LatcError):
    """A search ball was too small to contain enough independent points."""


class NonUnimodularError(LatcError):
    """A basis transform was expected to be unimodular but is not."""


class DependenceError(LatcError):
    """Input vectors were expected to be linearly independent but are not."""


class CertificateUnsoundError(LatcError):
    """A compactness certificate failed verification against the lattice."""


class MalformedInputError(LatcError):
    """An input file does not conform to its declared format."""
