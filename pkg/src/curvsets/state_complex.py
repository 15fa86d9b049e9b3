"""The simplicial complex of cluster structures on n points.

Corner configurations have every coordinate 0 or 1, so with the first
coordinate pinned to 0 a corner is an (n-1)-bit pattern; bit ``i-2`` is set
exactly when coordinate ``i`` sits at angle 1.  The integer value of that
pattern is the vertex id, and vertices are ordered by id.  Each cluster
structure with m clusters spans the (m-1)-simplex on its m corner ids; a
structure and its transpose span the same simplex, and nothing else collides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from .circle import Configuration, DistanceMatrix, realize_matrix
from .cluster import (
    BarycentricPoint,
    ClusterStructure,
    induced_cluster,
    transpose,
)
from .errors import InvalidRange

__all__ = [
    "SignVertex",
    "SimplicialComplex",
    "MinimalSimplex",
    "stirling2",
    "f_vector_formula",
    "euler_characteristic_formula",
    "raw_structure_count",
    "enumerate_cluster_structures",
    "build_state_complex",
    "simplex_counts",
    "minimal_simplex",
    "verify_complex",
    "complex_to_json_dict",
]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind (set partitions of n into k blocks).

    Defined for 0 <= k <= n; raises InvalidRange outside that window.
    """
    if n < 0 or k < 0 or k > n:
        raise InvalidRange(f"stirling2 needs 0 <= k <= n, got n={n} k={k}")
    row = [1]  # row for n = 0
    for _ in range(n):
        prev = row
        row = [0] * (len(prev) + 1)
        for kk in range(1, len(row)):
            row[kk] = kk * (prev[kk] if kk < len(prev) else 0) + prev[kk - 1]
    return row[k]


def f_vector_formula(n: int) -> tuple[int, ...]:
    """Closed-form simplex counts by dimension (0 .. n-1).

    Examples
    --------
    >>> f_vector_formula(3)
    (4, 6, 4)
    >>> f_vector_formula(5)
    (16, 120, 400, 480, 192)
    """
    if n < 1:
        raise InvalidRange("n must be >= 1")
    if n == 1:
        return (1,)
    out = [2 ** (n - 1)]
    for m in range(1, n):
        out.append(2 ** (n - 2) * math.factorial(m) * stirling2(n, m + 1))
    return tuple(out)


def euler_characteristic_formula(n: int) -> int:
    if n < 1:
        raise InvalidRange("n must be >= 1")
    return 1 if n == 1 else 2 ** (n - 2)


def raw_structure_count(n: int, m: int) -> int:
    """Number of cluster structures with exactly m clusters, before merging."""
    if n < 1 or not 1 <= m <= n:
        raise InvalidRange(f"need n >= 1 and 1 <= m <= n, got n={n} m={m}")
    return 2 ** (n - 1) * math.factorial(m - 1) * stirling2(n, m)


# --------------------------------------------------------------------------
# enumeration


def _enumerate_values(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Value tuples of all (m, n) cluster structures, lexicographic order."""
    choices = [v for v in range(-m, m + 1) if v != 0]
    buf = [1] * n
    full = (1 << m) - 1

    def rec(i: int, seen: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if seen == full:
                yield tuple(buf)
            return
        if m - bin(seen).count("1") > n - i:
            return  # cannot reach surjectivity with the slots left
        for v in choices:
            buf[i] = v
            yield from rec(i + 1, seen | (1 << (abs(v) - 1)))

    return rec(1, 1)


def enumerate_cluster_structures(n: int, m: int) -> Iterator[ClusterStructure]:
    """All cluster structures on n points with m clusters, in lexicographic
    order of their signed value tuples.  Deterministic."""
    if n < 1 or not 1 <= m <= n:
        raise InvalidRange(f"need n >= 1 and 1 <= m <= n, got n={n} m={m}")
    for vals in _enumerate_values(n, m):
        yield ClusterStructure(vals, m)


def _vertex_bits(values: tuple[int, ...], k: int) -> int:
    """Vertex id of the k-th corner of a structure given by its value tuple."""
    b = 0
    for pos in range(1, len(values)):
        v = values[pos]
        # coordinate is -1 iff sign(v) and [|v| <= k] disagree
        if (v < 0) == (abs(v) <= k):
            b |= 1 << (pos - 1)
    return b


def _transpose_values(values: tuple[int, ...], m: int) -> tuple[int, ...]:
    return tuple(
        v if abs(v) == 1 else (-(m + 2 - abs(v)) if v > 0 else (m + 2 - abs(v)))
        for v in values
    )


@dataclass(frozen=True)
class SignVertex:
    """A corner of the complex: sign pattern with the first coordinate +1."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << (self.n - 1)):
            raise InvalidRange(f"bits {self.bits} outside 0..2^{self.n - 1} - 1")

    @property
    def signs(self) -> tuple[int, ...]:
        return (1,) + tuple(
            -1 if (self.bits >> i) & 1 else 1 for i in range(self.n - 1)
        )

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVertex":
        ss = tuple(signs)
        if not ss or ss[0] != 1 or any(s not in (-1, 1) for s in ss):
            raise InvalidRange(f"signs must start with +1 and be +-1, got {ss}")
        bits = 0
        for i, s in enumerate(ss[1:]):
            if s == -1:
                bits |= 1 << i
        return cls(len(ss), bits)

    def configuration(self) -> Configuration:
        return Configuration.from_angles(0 if s == 1 else 1 for s in self.signs)


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplices per dimension, as sorted tuples of vertex ids.

    ``simplices[d]`` is a sorted tuple of strictly increasing (d+1)-tuples.
    ``labels[s]`` is the lexicographically smaller of the (one or two) value
    tuples of the cluster structures spanning simplex ``s``.
    """

    n: int
    simplices: dict[int, tuple[tuple[int, ...], ...]]
    labels: dict[tuple[int, ...], tuple[int, ...]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return max(self.simplices)

    @property
    def vertices(self) -> tuple[SignVertex, ...]:
        return tuple(SignVertex(self.n, b) for b in range(1 << (self.n - 1)))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.simplices[d]) for d in sorted(self.simplices))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(sx) for d, sx in self.simplices.items())

    def __contains__(self, simplex: tuple[int, ...]) -> bool:
        d = len(simplex) - 1
        return d in self.simplices and tuple(simplex) in set(self.simplices[d])


def build_state_complex(n: int, check_merge_classes: bool = False) -> SimplicialComplex:
    """Enumerate all cluster structures on n points and collect their simplices.

    Structures sharing a vertex set are merged; with ``check_merge_classes``
    each merge class is verified to be exactly a transpose pair (or a
    singleton when m = 1).

    Examples
    --------
    >>> K = build_state_complex(3)
    >>> K.f_vector()
    (4, 6, 4)
    >>> K.euler_characteristic()
    2
    """
    if n < 1:
        raise InvalidRange("n must be >= 1")
    simplices: dict[int, tuple[tuple[int, ...], ...]] = {}
    labels: dict[tuple[int, ...], tuple[int, ...]] = {}
    for m in range(1, n + 1):
        classes: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for vals in _enumerate_values(n, m):
            simplex = tuple(sorted(_vertex_bits(vals, k) for k in range(1, m + 1)))
            found = classes.get(simplex)
            if found is None:
                classes[simplex] = [vals]
            else:
                found.append(vals)
        if not classes:
            continue
        for simplex, members in classes.items():
            if check_merge_classes:
                if m == 1:
                    assert len(members) == 1, (simplex, members)
                else:
                    assert len(members) == 2, (simplex, members)
                    assert _transpose_values(members[0], m) == members[1], members
            labels[simplex] = min(
                min(vals, _transpose_values(vals, m)) for vals in members
            )
        simplices[m - 1] = tuple(sorted(classes))
    return SimplicialComplex(n=n, simplices=simplices, labels=labels)


# --------------------------------------------------------------------------
# fast counting (no explicit complex), used for large n


def _surjection_values(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Unsigned cluster assignments u with u(1) = 1 hitting all of 1..m."""
    buf = [1] * n
    full = (1 << m) - 1

    def rec(i: int, seen: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if seen == full:
                yield tuple(buf)
            return
        if m - bin(seen).count("1") > n - i:
            return
        for v in range(1, m + 1):
            buf[i] = v
            yield from rec(i + 1, seen | (1 << (v - 1)))

    return rec(1, 1)


def simplex_counts(n: int, chunk: int = 4096) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(raw, deduplicated) simplex counts for m = 1..n clusters, by vectorised
    enumeration.

    Every sign pattern combines with every unsigned surjective assignment, so
    the 2^(n-1) sign choices are batched through numpy; simplices are packed
    into 64-bit keys (7 bits per vertex id), which bounds this path at n <= 8.
    """
    if n < 1:
        raise InvalidRange("n must be >= 1")
    if n > 8:
        raise InvalidRange("counting path packs vertex ids in 64 bits; n <= 8 only")
    nb = n - 1
    signs = np.arange(1 << nb, dtype=np.uint64)
    shifts = np.arange(nb, dtype=np.uint64)[None, None, :]
    raw_counts = []
    dedup_counts = []
    for m in range(1, n + 1):
        ks = np.arange(1, m + 1, dtype=np.uint64)[None, :, None]
        raw = 0
        parts = []
        surj = list(_surjection_values(n, m))
        U = np.array(surj, dtype=np.uint64)[:, 1:].reshape(len(surj), nb)
        for lo in range(0, len(U), chunk):
            Uc = U[lo:lo + chunk]
            masks = ((Uc[:, None, :] > ks) << shifts).sum(axis=2, dtype=np.uint64)
            verts = masks[:, None, :] ^ signs[None, :, None]
            verts.sort(axis=2)
            keys = np.zeros(verts.shape[:2], dtype=np.uint64)
            for k in range(m):
                keys |= verts[:, :, k] << np.uint64(7 * k)
            raw += keys.size
            parts.append(np.unique(keys))
        merged = np.unique(np.concatenate(parts)) if parts else np.empty(0, np.uint64)
        raw_counts.append(int(raw))
        dedup_counts.append(int(merged.size))
    return tuple(raw_counts), tuple(dedup_counts)


# --------------------------------------------------------------------------
# locating a matrix in the complex


@dataclass(frozen=True)
class MinimalSimplex:
    """Where a realizable distance matrix lives inside the complex.

    ``simplex`` is sorted ascending; ``vertex_order`` lists the same ids in
    corner order, pairing with ``barycentric`` so that the weighted corner
    distance matrices reproduce the input exactly.
    """

    simplex: tuple[int, ...]
    vertex_order: tuple[int, ...]
    structure: ClusterStructure
    barycentric: BarycentricPoint
    configuration: Configuration
    canonical_label: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.simplex) - 1


def minimal_simplex(M: DistanceMatrix) -> MinimalSimplex:
    """The unique smallest simplex whose convex hull contains ``M``.

    Raises :class:`curvsets.errors.NotRealizable` when ``M`` is not the
    distance matrix of any configuration.
    """
    x = realize_matrix(M)  # places the first point at angle 0
    c, t = induced_cluster(x)
    order = tuple(_vertex_bits(c.values, k) for k in range(1, c.m + 1))
    return MinimalSimplex(
        simplex=tuple(sorted(order)),
        vertex_order=order,
        structure=c,
        barycentric=t,
        configuration=x,
        canonical_label=min(c.values, _transpose_values(c.values, c.m)),
    )


# --------------------------------------------------------------------------
# structural verification and export


def verify_complex(
    K: SimplicialComplex, check_intersections: Optional[bool] = None
) -> list[str]:
    """Structural audit; returns human-readable violations (empty = clean).

    Checks: simplex tuples strictly increasing, per-dimension lists sorted and
    duplicate-free, vertex ids in range, downward closure, and (for n <= 5,
    or when forced) that every pairwise simplex intersection is again a
    simplex.  Never raises on dirty data.
    """
    bad: list[str] = []
    nverts = 1 << (K.n - 1)
    sets = {d: set(sx) for d, sx in K.simplices.items()}
    for d, sx in sorted(K.simplices.items()):
        if list(sx) != sorted(set(sx)):
            bad.append(f"dimension {d}: simplex list not sorted/unique")
        for s in sx:
            if len(s) != d + 1:
                bad.append(f"dimension {d}: {s} has wrong length")
                continue
            if list(s) != sorted(set(s)):
                bad.append(f"dimension {d}: {s} not strictly increasing")
            if any(not 0 <= v < nverts for v in s):
                bad.append(f"dimension {d}: {s} has vertex id out of range")
            if d > 0:
                lower = sets.get(d - 1, set())
                for i in range(d + 1):
                    face = s[:i] + s[i + 1:]
                    if face not in lower:
                        bad.append(f"face {face} of {s} missing from dimension {d - 1}")
    if check_intersections is None:
        check_intersections = K.n <= 5
    if check_intersections and not bad:
        every = [s for sx in K.simplices.values() for s in sx]
        pool = {s for s in every}
        for i, a in enumerate(every):
            sa = set(a)
            for b in every[i + 1:]:
                cap = tuple(sorted(sa.intersection(b)))
                if cap and cap not in pool:
                    bad.append(f"intersection {cap} of {a} and {b} is not a simplex")
    return bad


def complex_to_json_dict(K: SimplicialComplex) -> dict:
    """JSON-ready dict: n, vertex sign patterns (ascending by id), simplices
    per dimension, and canonical labels keyed by dimension then id tuple."""
    labels: dict[str, dict[str, list[int]]] = {}
    for s, lab in K.labels.items():
        d = str(len(s) - 1)
        labels.setdefault(d, {})[",".join(map(str, s))] = list(lab)
    return {
        "n": K.n,
        "vertices": [list(v.signs) for v in K.vertices],
        "simplices": {
            str(d): [list(s) for s in sx] for d, sx in sorted(K.simplices.items())
        },
        "labels": labels,
    }
