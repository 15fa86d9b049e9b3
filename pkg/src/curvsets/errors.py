"""Exception types shared across the package."""


class CurvsetsError(Exception):
    """Base class for all errors raised by curvsets."""


class MatricesDiffer(CurvsetsError, ValueError):
    """Two configurations do not share the same distance matrix."""


class NotRealizable(CurvsetsError, ValueError):
    """A symmetric matrix is not the distance matrix of any circle configuration."""


class InvalidClusterStructure(CurvsetsError, ValueError):
    """Cluster-structure data violates the defining constraints."""


class NotNormalized(CurvsetsError, ValueError):
    """Operation requires a configuration whose first point sits at angle 0."""


class EmptyIndexSet(CurvsetsError, ValueError):
    """Restriction requires a non-empty set of cluster indices."""


class IndexOutOfRange(CurvsetsError, IndexError):
    """A 1-based point or cluster index lies outside its valid range."""


class DimensionMismatch(CurvsetsError, ValueError):
    """Barycentric coordinates do not match the cluster structure's size."""


class NotSymmetric(CurvsetsError, ValueError):
    """Matrix is not symmetric within tolerance."""


class NotPSD(CurvsetsError, ValueError):
    """Matrix is not positive semidefinite within tolerance."""


class SizeLimitExceeded(CurvsetsError, RuntimeError):
    """Exact computation refused because the input exceeds the configured cap."""


class InvalidRange(CurvsetsError, ValueError):
    """Numeric argument outside its documented domain."""


class RankDisagreement(CurvsetsError, RuntimeError):
    """Modular ranks over independent primes disagree; rational rank is unsafe."""
