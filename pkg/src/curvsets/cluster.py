"""Cluster structures: the combinatorial type of a circle configuration.

A cluster structure on ``n`` points with ``m`` clusters is a map
``c : {1..n} -> {+-1, ..., +-m}`` with ``c(1) = +1`` whose absolute value hits
every cluster index.  It records, for each point, which of the ``m`` distinct
folded positions the point occupies (the cluster) and on which semicircle it
sits (the sign).  Together with a point of the standard simplex (the gaps
between consecutive folded positions, in units of pi) this reconstructs the
configuration exactly, via :func:`phi`.

All arithmetic is exact (``Fraction``); indices in the public API follow the
mathematical convention and are 1-based where they denote points or clusters.

>>> from fractions import Fraction
>>> c = ClusterStructure((1, -2, 3))
>>> t = BarycentricPoint.from_values([Fraction(1, 3), Fraction(1, 4), Fraction(5, 12)])
>>> phi(c, t).angles
(Fraction(0, 1), Fraction(4, 3), Fraction(7, 12))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .circle import CirclePoint, Configuration, DistanceMatrix, chirality, distance_matrix, fold
from .errors import (
    DimensionMismatch,
    EmptyIndexSet,
    IndexOutOfRange,
    InvalidClusterStructure,
    NotNormalized,
)

__all__ = [
    "ClusterStructure",
    "BarycentricPoint",
    "prefix_sum",
    "phi",
    "induced_cluster",
    "vertex",
    "vertex_set",
    "restrict",
    "transpose",
    "reverse_barycentric",
    "predicted_distance",
    "convex_decomposition",
]


@dataclass(frozen=True)
class ClusterStructure:
    """A signed surjective labelling of points by clusters.

    ``values[i]`` is ``c(i+1)``: a nonzero integer whose absolute value is the
    cluster of point ``i+1`` and whose sign marks the semicircle.  Validation
    happens on construction and raises :class:`InvalidClusterStructure`:
    the first value must be ``+1``, every value must satisfy
    ``1 <= |c(i)| <= m``, and every cluster in ``{1..m}`` must be hit.

    ``m`` may be given explicitly (to assert an intended cluster count) and
    defaults to ``max |c(i)|``.

    >>> ClusterStructure((1, -2, 3)).m
    3
    """

    values: tuple[int, ...]
    m: Optional[int] = None

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise InvalidClusterStructure("no points")
        if any(v == 0 for v in vals):
            raise InvalidClusterStructure("cluster values must be nonzero")
        if vals[0] != 1:
            raise InvalidClusterStructure(f"c(1) must be +1, got {vals[0]}")
        m = self.m if self.m is not None else max(abs(v) for v in vals)
        object.__setattr__(self, "m", int(m))
        if m < 1:
            raise InvalidClusterStructure(f"m must be positive, got {m}")
        used = {abs(v) for v in vals}
        if max(used) > m:
            raise InvalidClusterStructure(
                f"cluster {max(used)} exceeds the declared count m={m}"
            )
        missing = set(range(1, m + 1)) - used
        if missing:
            raise InvalidClusterStructure(f"clusters {sorted(missing)} are never used")

    @property
    def n(self) -> int:
        return len(self.values)

    def value(self, i: int) -> int:
        """``c(i)`` for a 1-based point index."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"point index {i} outside 1..{self.n}")
        return self.values[i - 1]

    def sign(self, i: int) -> int:
        return 1 if self.value(i) > 0 else -1

    def cluster(self, i: int) -> int:
        return abs(self.value(i))

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)


@dataclass(frozen=True)
class BarycentricPoint:
    """Exact barycentric coordinates: m rationals in [0, 1] summing to 1."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = tuple(Fraction(v) for v in self.coords)
        object.__setattr__(self, "coords", cs)
        if not cs:
            raise ValueError("need at least one coordinate")
        if any(v < 0 or v > 1 for v in cs):
            raise ValueError("coordinates must lie in [0, 1]")
        if sum(cs) != 1:
            raise ValueError(f"coordinates must sum to 1, got {sum(cs)}")

    @classmethod
    def from_values(cls, values: Iterable) -> "BarycentricPoint":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def m(self) -> int:
        return len(self.coords)

    def __getitem__(self, idx: int) -> Fraction:
        return self.coords[idx]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)


def prefix_sum(t: BarycentricPoint, j: int) -> Fraction:
    """The angle offset of cluster ``j``: the sum of the first ``j - 1`` gaps.

    ``j`` ranges over ``1..m+1``; ``prefix_sum(t, 1) == 0`` and
    ``prefix_sum(t, m + 1) == 1``.
    """
    if not 1 <= j <= t.m + 1:
        raise IndexOutOfRange(f"cluster index {j} outside 1..{t.m + 1}")
    return sum(t.coords[: j - 1], Fraction(0))


def _check_dims(c: ClusterStructure, t: BarycentricPoint) -> None:
    if t.m != c.m:
        raise DimensionMismatch(f"barycentric point has {t.m} coordinates, structure has m={c.m}")


def phi(c: ClusterStructure, t: BarycentricPoint) -> Configuration:
    """The configuration encoded by a cluster structure and its simplex point.

    Point ``i`` is placed at angle ``prefix_sum(t, |c(i)|)`` on the upper
    semicircle when ``c(i) > 0``, and at the antipode of that when
    ``c(i) < 0``.  The first point always lands at angle 0.
    """
    _check_dims(c, t)
    offsets = [Fraction(0)] * (c.m + 1)
    for j in range(1, c.m + 1):
        offsets[j] = offsets[j - 1] + t.coords[j - 1]
    angles = []
    for v in c.values:
        a = offsets[abs(v) - 1]
        angles.append(a if v > 0 else a + 1)
    return Configuration.from_angles(angles)


def induced_cluster(x: Configuration) -> tuple[ClusterStructure, BarycentricPoint]:
    """Recover the cluster structure and gap vector of a normalised configuration.

    Requires ``x[0]`` at angle 0 (:class:`NotNormalized` otherwise).  Folding
    pushes every point into the upper semicircle; the sorted distinct folded
    angles become the clusters, each point's sign is its chirality, and the
    gaps (including the final gap up to the antipode of the basepoint) are the
    barycentric coordinates.  Inverse to :func:`phi`:

    >>> x = Configuration.from_angles([0, "4/3", "7/12"])
    >>> c, t = induced_cluster(x)
    >>> (c.values, t.coords)
    ((1, -2, 3), (Fraction(1, 3), Fraction(1, 4), Fraction(5, 12)))
    >>> phi(c, t) == x
    True
    """
    if x[0].angle != 0:
        raise NotNormalized("first point must sit at angle 0")
    folded = fold(x).angles  # all in [0, 1) since the basepoint is at 0
    levels = sorted(set(folded))
    cluster_of = {a: j + 1 for j, a in enumerate(levels)}
    values = tuple(chirality(p) * cluster_of[a] for p, a in zip(x, folded))
    m = len(levels)
    gaps = [levels[j + 1] - levels[j] for j in range(m - 1)]
    gaps.append(1 - levels[-1])
    return ClusterStructure(values, m), BarycentricPoint(tuple(gaps))


def vertex(c: ClusterStructure, k: int) -> Configuration:
    """The k-th corner configuration: clusters up to ``k`` collapse onto the
    basepoint, the rest onto its antipode (signs preserved resp. flipped).

    Every coordinate is 0 or 1, so corner configurations are the sign
    patterns reachable from ``c``.
    """
    if not 1 <= k <= c.m:
        raise IndexOutOfRange(f"corner index {k} outside 1..{c.m}")
    angles = []
    for v in c.values:
        component = (1 if v > 0 else -1) * (1 if abs(v) <= k else -1)
        angles.append(Fraction(0) if component == 1 else Fraction(1))
    return Configuration.from_angles(angles)


def vertex_set(c: ClusterStructure) -> tuple[Configuration, ...]:
    """All corner configurations ``vertex(c, 1..m)``.  Pairwise distinct."""
    return tuple(vertex(c, k) for k in range(1, c.m + 1))


def restrict(c: ClusterStructure, indices: Iterable[int]) -> ClusterStructure:
    """The cluster structure on the face of the simplex supported on ``indices``.

    Collapsing every gap outside ``indices`` merges consecutive clusters:
    cluster ``a`` is renumbered to the position of the smallest retained index
    ``>= a``, and clusters beyond the largest retained index wrap around onto
    cluster 1 with flipped sign.

    >>> restrict(ClusterStructure((1, -2, 3)), {1, 3}).values
    (1, -2, 2)
    >>> restrict(ClusterStructure((1, -2, 3)), {2}).values
    (1, -1, -1)
    """
    ks = sorted(set(int(k) for k in indices))
    if not ks:
        raise EmptyIndexSet("restriction needs at least one cluster index")
    if ks[0] < 1 or ks[-1] > c.m:
        raise IndexOutOfRange(f"cluster indices {ks} outside 1..{c.m}")
    # position[a] = 1-based rank j of the smallest retained k_j >= a, else None
    out = []
    for v in c.values:
        a = abs(v)
        s = 1 if v > 0 else -1
        if a > ks[-1]:
            out.append(-s)  # wraps past the last retained gap
        else:
            j = next(idx + 1 for idx, k in enumerate(ks) if a <= k)
            out.append(s * j)
    return ClusterStructure(tuple(out), len(ks))


def transpose(c: ClusterStructure) -> ClusterStructure:
    """The mirror structure, matching reflection of the configuration.

    Cluster 1 is fixed; cluster ``a >= 2`` maps to ``m + 2 - a`` with the sign
    flipped.  An involution; it has no fixed points when ``m >= 2``.

    >>> transpose(ClusterStructure((1, -2, 3))).values
    (1, 3, -2)
    >>> transpose(ClusterStructure((1, 2, 3))).values
    (1, -3, -2)
    """
    m = c.m
    out = tuple(
        v if abs(v) == 1 else (-1 if v > 0 else 1) * (m + 2 - abs(v))
        for v in c.values
    )
    return ClusterStructure(out, m)


def reverse_barycentric(t: BarycentricPoint) -> BarycentricPoint:
    """Reverse the gap order; the simplex coordinate matching :func:`transpose`."""
    return BarycentricPoint(tuple(reversed(t.coords)))


def predicted_distance(c: ClusterStructure, t: BarycentricPoint, i: int, j: int) -> Fraction:
    """Closed-form geodesic distance between points ``i`` and ``j`` of ``phi(c, t)``.

    Equal-sign points are separated by the gap sum between their clusters;
    opposite signs give the complement to 1.
    """
    _check_dims(c, t)
    vi, vj = c.value(i), c.value(j)
    gap = abs(prefix_sum(t, abs(vj)) - prefix_sum(t, abs(vi)))
    return gap if (vi > 0) == (vj > 0) else 1 - gap


def convex_decomposition(
    c: ClusterStructure, t: BarycentricPoint
) -> tuple[tuple[Fraction, DistanceMatrix], ...]:
    """Weights and corner distance matrices whose convex combination is exact:

    ``sum(t_k * distance_matrix(vertex(c, k)))  ==  distance_matrix(phi(c, t))``

    entrywise over the rationals.
    """
    _check_dims(c, t)
    return tuple(
        (t.coords[k - 1], distance_matrix(vertex(c, k))) for k in range(1, c.m + 1)
    )
