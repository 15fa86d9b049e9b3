"""Exact geometry of point configurations on the unit circle.

Angles are rational multiples of pi, stored as ``Fraction`` values in units of
pi and normalised into ``[0, 2)``.  Geodesic distances then live in ``[0, 1]``
(so ``1`` means antipodal).  Everything in this module is exact: no floats
appear anywhere.

>>> from fractions import Fraction
>>> x = Configuration.from_angles([0, Fraction(4, 3), Fraction(7, 12)])
>>> distance_matrix(x).rows()[0]
(Fraction(0, 1), Fraction(2, 3), Fraction(7, 12))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import MatricesDiffer, NotRealizable

RationalLike = Union[Fraction, int, str]

__all__ = [
    "CirclePoint",
    "Configuration",
    "DistanceMatrix",
    "Isometry",
    "geodesic_distance",
    "distance_matrix",
    "apply_isometry",
    "recover_isometry",
    "normalize",
    "chirality",
    "fold",
    "realize_matrix",
    "parse_distance_matrix",
    "format_distance_matrix",
    "parse_configuration",
    "format_configuration",
]


def _as_angle(value: RationalLike) -> Fraction:
    """Coerce to a Fraction and reduce modulo 2 into [0, 2)."""
    return Fraction(value) % 2


@dataclass(frozen=True)
class CirclePoint:
    """A point on the circle, identified by its angle in units of pi.

    The angle is reduced modulo 2 on construction, so two points are equal
    exactly when they coincide on the circle.

    >>> CirclePoint(Fraction(7, 3))
    CirclePoint(angle=Fraction(1, 3))
    >>> CirclePoint(-1) == CirclePoint(1)
    True
    """

    angle: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "angle", _as_angle(self.angle))

    def antipode(self) -> "CirclePoint":
        """The diametrically opposite point (angle shifted by pi)."""
        return CirclePoint(self.angle + 1)


@dataclass(frozen=True)
class Configuration:
    """An ordered tuple of at least one circle point.

    >>> len(Configuration.from_angles([0, 1]))
    2
    """

    points: tuple[CirclePoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        if not pts:
            raise ValueError("a configuration needs at least one point")
        if not all(isinstance(p, CirclePoint) for p in pts):
            raise TypeError("configuration entries must be CirclePoint")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_angles(cls, angles: Iterable[RationalLike]) -> "Configuration":
        return cls(tuple(CirclePoint(_as_angle(a)) for a in angles))

    @property
    def angles(self) -> tuple[Fraction, ...]:
        return tuple(p.angle for p in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[CirclePoint]:
        return iter(self.points)

    def __getitem__(self, i: int) -> CirclePoint:
        return self.points[i]


@dataclass(frozen=True)
class DistanceMatrix:
    """A symmetric matrix of exact geodesic distances in units of pi.

    Invariants enforced on construction: square, zero diagonal, symmetric,
    every entry in [0, 1].
    """

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0:
            raise ValueError("empty matrix")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            if row[i] != 0:
                raise ValueError("diagonal must be zero")
            for j, v in enumerate(row):
                if not 0 <= v <= 1:
                    raise ValueError(f"entry ({i},{j}) = {v} outside [0, 1]")
                if v != rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[RationalLike]]) -> "DistanceMatrix":
        return cls(tuple(tuple(Fraction(v) for v in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.entries

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class Isometry:
    """An isometry of the circle: optional reflection, then a rotation.

    The reflection negates angles (fixing angle 0); applying the isometry to
    angle ``a`` yields ``rotation - a`` when ``reflect`` else ``rotation + a``,
    everything modulo 2.

    >>> tau = Isometry(Fraction(1, 2), reflect=True)
    >>> tau.apply(CirclePoint(Fraction(1, 3)))
    CirclePoint(angle=Fraction(1, 6))
    """

    rotation: Fraction
    reflect: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", _as_angle(self.rotation))
        object.__setattr__(self, "reflect", bool(self.reflect))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(Fraction(0), False)

    def apply(self, p: CirclePoint) -> CirclePoint:
        a = -p.angle if self.reflect else p.angle
        return CirclePoint(self.rotation + a)

    def compose(self, other: "Isometry") -> "Isometry":
        """The isometry 'self after other' (``self.compose(other) == self o other``).

        >>> r = Isometry(Fraction(1, 4))
        >>> s = Isometry(0, reflect=True)
        >>> r.compose(s).apply(CirclePoint(Fraction(1, 8))) == r.apply(s.apply(CirclePoint(Fraction(1, 8))))
        True
        """
        rot = self.rotation + (-other.rotation if self.reflect else other.rotation)
        return Isometry(rot, self.reflect ^ other.reflect)

    def inverse(self) -> "Isometry":
        if self.reflect:
            return Isometry(self.rotation, True)
        return Isometry(-self.rotation, False)


def geodesic_distance(p: CirclePoint, q: CirclePoint) -> Fraction:
    """Shortest arc between two points, in units of pi (range [0, 1]).

    >>> geodesic_distance(CirclePoint(0), CirclePoint(Fraction(4, 3)))
    Fraction(2, 3)
    """
    delta = (p.angle - q.angle) % 2
    return min(delta, 2 - delta)


def distance_matrix(x: Configuration) -> DistanceMatrix:
    """The matrix of pairwise geodesic distances of a configuration."""
    pts = x.points
    n = len(pts)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = geodesic_distance(pts[i], pts[j])
            rows[i][j] = d
            rows[j][i] = d
    return DistanceMatrix(tuple(tuple(r) for r in rows))


def apply_isometry(tau: Isometry, x: Configuration) -> Configuration:
    """Apply an isometry pointwise.  Distance matrices are unchanged."""
    return Configuration(tuple(tau.apply(p) for p in x))


def recover_isometry(x: Configuration, y: Configuration) -> Isometry:
    """Find an isometry carrying ``x`` onto ``y`` pointwise.

    Requires ``distance_matrix(x) == distance_matrix(y)``; raises
    :class:`MatricesDiffer` otherwise.  Only two candidates exist: the pure
    rotation matching the first points, and the reflection-then-rotation
    matching them; one of the two always works when the matrices agree.
    Prefers the pure rotation when both fit.
    """
    if len(x) != len(y):
        raise MatricesDiffer("configurations have different sizes")
    if distance_matrix(x) != distance_matrix(y):
        raise MatricesDiffer("configurations have different distance matrices")
    rotation = Isometry(y[0].angle - x[0].angle, False)
    reflection = Isometry(y[0].angle + x[0].angle, True)
    for tau in (rotation, reflection):
        if all(tau.apply(p) == q for p, q in zip(x, y)):
            return tau
    raise AssertionError("unreachable: equal distance matrices admit an isometry")


def normalize(x: Configuration) -> Configuration:
    """Rotate so the first point sits at angle 0.  Distances are unchanged."""
    return apply_isometry(Isometry(-x[0].angle, False), x)


def chirality(p: CirclePoint) -> int:
    """Sign of a point: +1 on the upper closed-open semicircle, -1 on the lower.

    The split is by angle: ``[0, 1)`` maps to +1 and ``[1, 2)`` to -1, so the
    antipode of the basepoint (angle exactly 1) lands in the -1 branch.

    >>> chirality(CirclePoint(Fraction(1, 2))), chirality(CirclePoint(1))
    (1, -1)
    """
    return 1 if p.angle < 1 else -1


def fold(x: Configuration) -> Configuration:
    """Reflect each point across the centre if it lies in the lower semicircle
    relative to the first point.

    Point ``i`` is multiplied (as a unit complex number) by the chirality of
    its angle relative to ``x[0]``; afterwards every point lies in the closed-
    open semicircle starting at ``x[0]``.

    >>> fold(Configuration.from_angles([0, Fraction(4, 3), Fraction(7, 12)])).angles
    (Fraction(0, 1), Fraction(1, 3), Fraction(7, 12))
    """
    base = x[0].angle
    out = []
    for p in x:
        sigma = chirality(CirclePoint(p.angle - base))
        out.append(p if sigma == 1 else p.antipode())
    return Configuration(tuple(out))


def realize_matrix(M: DistanceMatrix) -> Configuration:
    """Reconstruct a configuration with the given distance matrix.

    The first point is placed at angle 0 and the others at ``M[0][i]`` or
    ``2 - M[0][i]``; the branch is anchored by the first point that is neither
    aligned with nor antipodal to the basepoint, and the remaining signs are
    resolved against that anchor.  The full matrix is verified at the end, and
    :class:`NotRealizable` is raised if no assignment reproduces it.

    The output is deterministic: the anchor always takes the ``+`` branch.
    """
    n = M.n
    row0 = M.entries[0]
    angles: list[Fraction | None] = [Fraction(0)] + [None] * (n - 1)
    anchor = next((i for i in range(1, n) if row0[i] != 0 and row0[i] != 1), None)
    if anchor is None:
        # every point is aligned or antipodal with the basepoint: forced
        for i in range(1, n):
            angles[i] = row0[i]
    else:
        angles[anchor] = row0[anchor]
        a_pt = CirclePoint(row0[anchor])
        for i in range(1, n):
            if i == anchor:
                continue
            if row0[i] == 0 or row0[i] == 1:
                angles[i] = row0[i]
                continue
            placed = None
            for cand in (row0[i], 2 - row0[i]):
                if geodesic_distance(CirclePoint(cand), a_pt) == M[i, anchor]:
                    placed = cand
                    break
            if placed is None:
                raise NotRealizable(
                    f"no placement of point {i} is consistent with the anchor"
                )
            angles[i] = placed
    x = Configuration.from_angles(angles)  # type: ignore[arg-type]
    if distance_matrix(x) != M:
        raise NotRealizable("matrix entries are mutually inconsistent")
    return x


# --------------------------------------------------------------------------
# plain-text serialisation
#
# Distance matrix: first line is n, then n lines of n whitespace-separated
# rationals ("p/q" or integers), distances in units of pi.
# Configuration: a single line of n rationals, angles in [0, 2) in units of pi.


def format_distance_matrix(M: DistanceMatrix) -> str:
    lines = [str(M.n)]
    for row in M.entries:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_distance_matrix(text: str) -> DistanceMatrix:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty distance-matrix text")
    try:
        n = int(tokens[0])
    except ValueError as exc:
        raise ValueError(f"first token must be the size, got {tokens[0]!r}") from exc
    body = tokens[1:]
    if n < 1 or len(body) != n * n:
        raise ValueError(f"expected {n}x{n} entries, got {len(body)} tokens")
    rows = [[Fraction(body[i * n + j]) for j in range(n)] for i in range(n)]
    return DistanceMatrix.from_rows(rows)


def format_configuration(x: Configuration) -> str:
    return " ".join(str(a) for a in x.angles) + "\n"


def parse_configuration(text: str) -> Configuration:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty configuration text")
    return Configuration.from_angles(Fraction(t) for t in tokens)
