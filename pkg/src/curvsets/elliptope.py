"""Correlation-matrix certification for circle distance matrices.

Applying cos(pi * d) entrywise to a realizable geodesic distance matrix
produces the Gram matrix of unit vectors in the plane: symmetric, unit
diagonal, positive semidefinite, rank at most 2.  This module provides that
transform, the PSD / rank certificates, and the geodesic-to-chord-length
conversion, all in floating point with explicit tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .circle import DistanceMatrix
from .errors import DimensionMismatch, NotPSD, NotSymmetric

__all__ = [
    "CorrelationMatrix",
    "MembershipReport",
    "cosine_transform",
    "is_psd",
    "gram_rank",
    "geodesic_to_chordal",
    "chordal_to_geodesic",
    "elliptope_membership",
    "PSD_TOL",
    "RANK_TOL",
    "SYM_TOL",
]

PSD_TOL = 1e-9
RANK_TOL = 1e-8
SYM_TOL = 1e-12

MatrixLike = Union["CorrelationMatrix", np.ndarray, list]


def _square_float(A: MatrixLike) -> np.ndarray:
    if isinstance(A, CorrelationMatrix):
        return A.entries
    M = np.asarray(A, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


@dataclass(frozen=True)
class CorrelationMatrix:
    """A symmetric unit-diagonal matrix with entries in [-1, 1].

    Parameters
    ----------
    entries : ndarray
        Square float array.  Symmetry and the unit diagonal are enforced
        within ``SYM_TOL``; entries may exceed [-1, 1] by at most ``SYM_TOL``.

    Raises
    ------
    NotSymmetric
        If the matrix is not symmetric within tolerance.
    DimensionMismatch
        If the array is not square.
    ValueError
        If the diagonal is not 1 or entries leave [-1, 1].
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        M = np.asarray(self.entries, dtype=np.float64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
        if not np.allclose(M, M.T, atol=SYM_TOL, rtol=0.0):
            raise NotSymmetric("matrix is not symmetric within 1e-12")
        if not np.allclose(np.diag(M), 1.0, atol=SYM_TOL, rtol=0.0):
            raise ValueError("diagonal entries must equal 1 within 1e-12")
        if M.min() < -1.0 - SYM_TOL or M.max() > 1.0 + SYM_TOL:
            raise ValueError("entries must lie in [-1, 1] within 1e-12")
        M = M.copy()
        M.flags.writeable = False
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _distances_as_floats(M: Union[DistanceMatrix, np.ndarray, list]) -> np.ndarray:
    if isinstance(M, DistanceMatrix):
        return np.array(
            [[float(v) for v in row] for row in M.rows()], dtype=np.float64
        )
    A = np.asarray(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def cosine_transform(M: Union[DistanceMatrix, np.ndarray, list]) -> CorrelationMatrix:
    """Entrywise ``cos(pi * d)`` of a geodesic distance matrix.

    Distances are in units of pi (so 1 means antipodal), hence the factor.
    The diagonal is set to exactly 1.

    Examples
    --------
    >>> cosine_transform([[0.0, 1.0], [1.0, 0.0]]).entries
    array([[ 1., -1.],
           [-1.,  1.]])
    """
    D = _distances_as_floats(M)
    C = np.cos(np.pi * D)
    np.fill_diagonal(C, 1.0)
    C = np.clip((C + C.T) / 2.0, -1.0, 1.0)
    return CorrelationMatrix(entries=C)


def is_psd(A: MatrixLike, tol: float = PSD_TOL) -> tuple[bool, float]:
    """Whether the smallest eigenvalue of a symmetric matrix is >= -tol.

    Returns
    -------
    (bool, float)
        The verdict and the witness (smallest) eigenvalue.

    Raises
    ------
    NotSymmetric
        If the input is not symmetric within ``SYM_TOL``.
    """
    M = _square_float(A)
    if not np.allclose(M, M.T, atol=SYM_TOL, rtol=0.0):
        raise NotSymmetric("eigenvalue certification needs a symmetric matrix")
    if M.shape[0] == 0:
        return True, 0.0
    eigs = np.linalg.eigvalsh(M)
    smallest = float(eigs[0])
    return smallest >= -tol, smallest


def gram_rank(A: MatrixLike, tol: float = RANK_TOL, psd_tol: float = PSD_TOL) -> int:
    """Numerical rank of a PSD matrix: eigenvalues strictly above ``tol``.

    Raises
    ------
    NotPSD
        If the smallest eigenvalue is below ``-psd_tol``.
    """
    M = _square_float(A)
    ok, smallest = is_psd(M, tol=psd_tol)
    if not ok:
        raise NotPSD(f"smallest eigenvalue {smallest:.3e} is below -{psd_tol:.0e}")
    if M.shape[0] == 0:
        return 0
    eigs = np.linalg.eigvalsh(M)
    return int(np.count_nonzero(eigs > tol))


def geodesic_to_chordal(M: Union[DistanceMatrix, np.ndarray, list]) -> np.ndarray:
    """Chord lengths ``2 sin(pi d / 2)`` from geodesic distances in units of pi.

    Antipodal points (d = 1) map to the diameter 2; a quarter turn maps to
    sqrt(2).

    Examples
    --------
    >>> float(geodesic_to_chordal([[0.0, 1.0], [1.0, 0.0]])[0, 1])
    2.0
    """
    D = _distances_as_floats(M)
    return 2.0 * np.sin(np.pi * D / 2.0)


def chordal_to_geodesic(C: Union[np.ndarray, list]) -> np.ndarray:
    """Inverse of :func:`geodesic_to_chordal`: ``(2 / pi) arcsin(c / 2)``."""
    A = np.asarray(C, dtype=np.float64)
    return 2.0 * np.arcsin(np.clip(A / 2.0, -1.0, 1.0)) / np.pi


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of the PSD / rank certification of a cosine-transformed matrix.

    ``rank`` is None when the PSD test already failed.  ``in_elliptope`` is
    the PSD verdict (unit diagonal is enforced by construction);
    ``circle_consistent`` additionally requires rank at most 2, the signature
    of distance matrices realizable on the circle.
    """

    n: int
    psd: bool
    min_eigenvalue: float
    rank: Optional[int]
    in_elliptope: bool
    circle_consistent: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "psd": self.psd,
            "min_eigenvalue": self.min_eigenvalue,
            "rank": self.rank,
            "in_elliptope": self.in_elliptope,
            "circle_consistent": self.circle_consistent,
        }


def elliptope_membership(
    M: Union[DistanceMatrix, np.ndarray, list],
    psd_tol: float = PSD_TOL,
    rank_tol: float = RANK_TOL,
) -> MembershipReport:
    """Certify the cosine transform of a distance matrix.

    For a distance matrix realizable on the circle the report shows PSD with
    rank at most 2.  A failed PSD test (or rank above 2) certifies that no
    circle configuration has these distances.

    Examples
    --------
    >>> r = elliptope_membership([[0, 0.5, 0.5], [0.5, 0, 1.0], [0.5, 1.0, 0]])
    >>> r.psd, r.rank
    (True, 2)
    >>> elliptope_membership([[0, 1, 1], [1, 0, 1], [1, 1, 0]]).psd
    False
    """
    C = cosine_transform(M)
    psd, smallest = is_psd(C, tol=psd_tol)
    rank: Optional[int] = None
    if psd:
        rank = gram_rank(C, tol=rank_tol, psd_tol=psd_tol)
    return MembershipReport(
        n=C.n,
        psd=psd,
        min_eigenvalue=smallest,
        rank=rank,
        in_elliptope=psd,
        circle_consistent=psd and rank is not None and rank <= 2,
    )
