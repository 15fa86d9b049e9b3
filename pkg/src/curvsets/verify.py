"""Seeded, reproducible verification suites over random exact inputs.

Three runners, shared by the command line and the test harness:

* :func:`run_identity_suite` — the exact identities tying the convex
  parametrization, induced structures, restriction, transposition, and
  circle isometries together.  Everything is rational arithmetic; a failure
  carries a printable witness.
* :func:`run_minimality_check` — exhaustive certification (small n) that the
  located simplex is a face of every simplex whose closed hull contains the
  sample, by exact barycentric solves.
* :func:`run_elliptope_sweep` — floating-point PSD/rank certification of
  cosine-transformed distance matrices over many random configurations.

Random angles and barycentric coordinates are rationals with bounded
denominator drawn from ``random.Random(seed)``, so runs are reproducible
across platforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .circle import (
    Configuration,
    DistanceMatrix,
    Isometry,
    apply_isometry,
    distance_matrix,
    normalize,
    realize_matrix,
    recover_isometry,
)
from .cluster import (
    BarycentricPoint,
    ClusterStructure,
    convex_decomposition,
    induced_cluster,
    phi,
    restrict,
    reverse_barycentric,
    transpose,
)
from .elliptope import cosine_transform, gram_rank, is_psd
from .state_complex import build_state_complex, minimal_simplex

__all__ = [
    "PropertyResult",
    "SuiteReport",
    "ElliptopeSweepReport",
    "random_angle",
    "random_configuration",
    "random_isometry",
    "random_cluster_structure",
    "random_barycentric",
    "run_identity_suite",
    "run_minimality_check",
    "run_elliptope_sweep",
]

_REFLECT = Isometry(rotation=Fraction(0), reflect=True)

DEFAULT_MAX_DENOMINATOR = 1000


# --------------------------------------------------------------------------
# random exact inputs


def random_angle(
    rng: random.Random, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> Fraction:
    """A rational angle in [0, 2) in units of pi, denominator <= the bound."""
    q = rng.randint(1, max_denominator)
    return Fraction(rng.randrange(2 * q), q)


def random_configuration(
    rng: random.Random, n: int, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> Configuration:
    """n independent random rational points on the circle."""
    return Configuration.from_angles(
        random_angle(rng, max_denominator) for _ in range(n)
    )


def random_isometry(
    rng: random.Random, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> Isometry:
    """A random rational rotation, reflected with probability one half."""
    return Isometry(
        rotation=random_angle(rng, max_denominator), reflect=rng.random() < 0.5
    )


def random_cluster_structure(
    rng: random.Random, n: int, m: Optional[int] = None
) -> ClusterStructure:
    """A random (m, n) cluster structure; m is drawn uniformly if omitted.

    Surjectivity is guaranteed by planting one occurrence of each cluster
    2..m at distinct positions; remaining positions draw uniformly.
    """
    if m is None:
        m = rng.randint(1, n)
    values = [0] * n
    values[0] = 1
    rest = list(range(1, n))
    rng.shuffle(rest)
    for k, pos in zip(range(2, m + 1), rest):
        values[pos] = k
    for pos in rest[m - 1 :]:
        values[pos] = rng.randint(1, m)
    for i in range(1, n):
        if rng.random() < 0.5:
            values[i] = -values[i]
    return ClusterStructure(values=tuple(values), m=m)


def random_barycentric(
    rng: random.Random,
    m: int,
    support: Optional[Sequence[int]] = None,
    max_total: int = 400,
) -> BarycentricPoint:
    """A random rational point of the simplex with m coordinates.

    Coordinates are strictly positive on ``support`` (1-based; defaults to
    all of 1..m) and exactly zero elsewhere.
    """
    sup = sorted(support) if support is not None else list(range(1, m + 1))
    q = rng.randint(max(len(sup), 2), max_total)
    cuts = sorted(rng.sample(range(1, q), len(sup) - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [q])]
    coords = [Fraction(0)] * m
    for k, part in zip(sup, parts):
        coords[k - 1] = Fraction(part, q)
    return BarycentricPoint(coords=tuple(coords))


# --------------------------------------------------------------------------
# report plumbing


@dataclass(frozen=True)
class PropertyResult:
    """Aggregate outcome of one property at one n."""

    name: str
    n: int
    samples: int
    failures: int
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json_dict(self) -> dict:
        return {
            "property": self.name,
            "n": self.n,
            "samples": self.samples,
            "failures": self.failures,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class SuiteReport:
    """A batch of property results with an overall verdict."""

    suite: str
    seed: int
    results: tuple[PropertyResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "results": [r.to_json_dict() for r in self.results],
        }


class _Tally:
    """Collects failures for one property, keeping the first witness."""

    def __init__(self, name: str, n: int) -> None:
        self.name = name
        self.n = n
        self.samples = 0
        self.failures = 0
        self.witness: Optional[str] = None

    def check(self, ok: bool, witness: str) -> None:
        self.samples += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness

    def result(self) -> PropertyResult:
        return PropertyResult(
            name=self.name,
            n=self.n,
            samples=self.samples,
            failures=self.failures,
            counterexample=self.witness,
        )


def _show(c: ClusterStructure, t: BarycentricPoint) -> str:
    return f"c={list(c.values)} t={[str(v) for v in t]}"


# --------------------------------------------------------------------------
# the identity suite


def run_identity_suite(
    ns: Sequence[int] = (2, 3, 4, 5, 6, 7),
    samples: int = 1000,
    seed: int = 0,
    isometry_trials: int = 100,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> SuiteReport:
    """Exercise the exact identities on random (c, t) pairs and configurations.

    Per n the suite checks, with ``samples`` draws each:

    a. the convex identity: the coefficient-weighted vertex matrices sum to
       the distance matrix of the parametrized configuration, exactly;
    b. round trip: the induced structure of an interior point recovers
       (c, t) on the nose;
    c. boundary collapse: zeroing coordinates outside a proper support
       lands on the restriction, with the compressed coordinates;
    d. transpose equivariance: reversing barycentric coordinates and
       transposing the structure reflects the configuration;
    e. distance matrices are isometry-invariant (``isometry_trials`` draws);
    f. an isometry is recovered from every matched pair of configurations;
    g. a realized matrix reproduces the normalized configuration up to
       reflection.

    Returns a :class:`SuiteReport`; zero failures means every identity held.
    """
    rng = random.Random(seed)
    results: list[PropertyResult] = []
    for n in ns:
        conv = _Tally("convex_identity", n)
        rtrip = _Tally("interior_round_trip", n)
        collapse = _Tally("boundary_collapse", n)
        equiv = _Tally("transpose_equivariance", n)
        for _ in range(samples):
            c = random_cluster_structure(rng, n)
            t = random_barycentric(rng, c.m)
            x = phi(c, t)
            D = distance_matrix(x)

            total = [[Fraction(0)] * n for _ in range(n)]
            for coeff, mat in convex_decomposition(c, t):
                for i in range(n):
                    row = mat.entries[i]
                    for j in range(n):
                        total[i][j] += coeff * row[j]
            conv.check(
                all(
                    total[i][j] == D.entries[i][j]
                    for i in range(n)
                    for j in range(n)
                ),
                _show(c, t),
            )

            ind_c, ind_t = induced_cluster(x)
            rtrip.check(ind_c == c and ind_t == t, _show(c, t))

            rho_c = transpose(c)
            rho_t = reverse_barycentric(t)
            equiv.check(
                phi(rho_c, rho_t) == apply_isometry(_REFLECT, x)
                and transpose(rho_c) == c,
                _show(c, t),
            )

            if n >= 2:
                cb = random_cluster_structure(rng, n, m=rng.randint(2, n))
                size = rng.randint(1, cb.m - 1)
                support = sorted(rng.sample(range(1, cb.m + 1), size))
                tb = random_barycentric(rng, cb.m, support=support)
                xb = phi(cb, tb)
                ind_cb, ind_tb = induced_cluster(xb)
                expected = restrict(cb, support)
                compressed = BarycentricPoint(
                    coords=tuple(tb[k - 1] for k in support)
                )
                collapse.check(
                    ind_cb == expected
                    and ind_tb == compressed
                    and phi(expected, compressed) == xb,
                    f"{_show(cb, tb)} support={support}",
                )

        inv = _Tally("isometry_invariance", n)
        rec = _Tally("isometry_recovery", n)
        real = _Tally("realization_round_trip", n)
        for _ in range(isometry_trials):
            x = random_configuration(rng, n, max_denominator)
            g = random_isometry(rng, max_denominator)
            y = apply_isometry(g, x)
            inv.check(
                distance_matrix(y) == distance_matrix(x),
                f"x={[str(p.angle) for p in x]} g=({g.rotation},{g.reflect})",
            )
            try:
                h = recover_isometry(x, y)
                rec.check(
                    apply_isometry(h, x) == y,
                    f"x={[str(p.angle) for p in x]} g=({g.rotation},{g.reflect})",
                )
            except Exception as exc:  # pragma: no cover - indicates a real bug
                rec.check(False, f"raised {exc!r}")

        for _ in range(samples):
            x = normalize(random_configuration(rng, n, max_denominator))
            try:
                back = realize_matrix(distance_matrix(x))
                real.check(
                    back == x or back == apply_isometry(_REFLECT, x),
                    f"x={[str(p.angle) for p in x]}",
                )
            except NotRealizable:  # pragma: no cover - indicates a real bug
                real.check(False, f"not realizable: {[str(p.angle) for p in x]}")

        results.extend(
            t.result() for t in (conv, rtrip, collapse, equiv, inv, rec, real)
        )
    return SuiteReport(suite="identities", seed=seed, results=tuple(results))


# --------------------------------------------------------------------------
# minimality of the located simplex


def _flatten(D: DistanceMatrix) -> tuple[Fraction, ...]:
    n = D.n
    return tuple(D.entries[i][j] for i in range(n) for j in range(i + 1, n))


def _barycentric_solve(
    vertices: Sequence[tuple[Fraction, ...]], target: tuple[Fraction, ...]
) -> Optional[list[Fraction]]:
    """Exact coefficients writing target as an affine combination of vertices,
    or None when target is outside their affine span.

    The vertex matrices of a simplex are affinely independent, so the
    combination is unique when it exists.
    """
    k = len(vertices)
    rows = [
        [vertices[j][idx] for j in range(k)] + [target[idx]]
        for idx in range(len(target))
    ]
    rows.append([Fraction(1)] * k + [Fraction(1)])

    pivot_of_col: list[int] = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            return None  # dependent vertices: never happens for real simplices
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_of_col.append(r)
        r += 1
    if any(row[k] for row in rows[r:]):
        return None  # inconsistent: target outside the affine span
    return [rows[pivot_of_col[col]][k] for col in range(k)]


def run_minimality_check(
    ns: Sequence[int] = (2, 3, 4, 5), samples: int = 200, seed: int = 0
) -> SuiteReport:
    """Certify located simplices minimal by brute force over the whole complex.

    For every sample matrix, every simplex whose closed convex hull contains
    the matrix (decided by an exact rational solve against the 0/1 vertex
    matrices) must have the located simplex as a face.
    """
    rng = random.Random(seed)
    results: list[PropertyResult] = []
    for n in ns:
        K = build_state_complex(n)
        vertex_vecs = [
            _flatten(distance_matrix(v.configuration())) for v in K.vertices
        ]
        all_simplices = [
            s for d in sorted(K.simplices) for s in K.simplices[d]
        ]
        tally = _Tally("located_simplex_is_minimal", n)
        for _ in range(samples):
            x = normalize(random_configuration(rng, n))
            D = distance_matrix(x)
            target = _flatten(D)
            located = minimal_simplex(D)
            mine = set(located.simplex)

            ok = True
            witness = f"x={[str(p.angle) for p in x]}"
            containing = 0
            for s in all_simplices:
                coeffs = _barycentric_solve([vertex_vecs[v] for v in s], target)
                if coeffs is None or any(v < 0 for v in coeffs):
                    continue
                containing += 1
                if not mine <= set(s):
                    ok = False
                    witness += f" simplex={s} located={sorted(mine)}"
                    break
            if containing == 0:
                ok = False
                witness += " (no simplex contains the sample at all)"
            tally.check(ok, witness)
        results.append(tally.result())
    return SuiteReport(suite="minimality", seed=seed, results=tuple(results))


# --------------------------------------------------------------------------
# elliptope sweep


@dataclass(frozen=True)
class ElliptopeSweepReport:
    """PSD / rank statistics for cosine-transformed random distance matrices."""

    seed: int
    samples: int
    per_n: dict[int, dict]
    non_member_rejected: bool

    @property
    def passed(self) -> bool:
        return self.non_member_rejected and all(
            row["failures"] == 0 for row in self.per_n.values()
        )

    def to_json_dict(self) -> dict:
        return {
            "suite": "elliptope",
            "seed": self.seed,
            "samples": self.samples,
            "per_n": {str(n): row for n, row in sorted(self.per_n.items())},
            "non_member_rejected": self.non_member_rejected,
            "passed": self.passed,
        }


NON_MEMBER = [[1.0, -0.9, -0.9], [-0.9, 1.0, -0.9], [-0.9, -0.9, 1.0]]


def run_elliptope_sweep(
    ns: Sequence[int] = tuple(range(3, 13)),
    samples: int = 500,
    seed: int = 0,
    psd_tol: float = 1e-9,
    rank_tol: float = 1e-8,
) -> ElliptopeSweepReport:
    """Check PSD and rank <= 2 of cos(pi D) over many random configurations,
    and that the classic non-PSD correlation pattern is rejected."""
    rng = random.Random(seed)
    per_n: dict[int, dict] = {}
    for n in ns:
        failures = 0
        worst_eig = float("inf")
        max_rank = 0
        witness: Optional[str] = None
        for _ in range(samples):
            x = random_configuration(rng, n)
            C = cosine_transform(distance_matrix(x))
            psd, smallest = is_psd(C, tol=psd_tol)
            rank = gram_rank(C, tol=rank_tol, psd_tol=psd_tol) if psd else -1
            worst_eig = min(worst_eig, smallest)
            max_rank = max(max_rank, rank)
            if not psd or rank > 2:
                failures += 1
                if witness is None:
                    witness = f"x={[str(p.angle) for p in x]}"
        per_n[n] = {
            "samples": samples,
            "failures": failures,
            "min_eigenvalue": worst_eig,
            "max_rank": max_rank,
            "counterexample": witness,
        }
    rejected, _ = is_psd(NON_MEMBER, tol=psd_tol)
    return ElliptopeSweepReport(
        seed=seed,
        samples=samples,
        per_n=per_n,
        non_member_rejected=not rejected,
    )
