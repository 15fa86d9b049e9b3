"""Rank engine: modular elimination, Bareiss, and backend selection.

The reference implementation below is deliberately naive (row-reduce over
GF(p) with Python ints) so the fast blocked kernels are checked against
something that cannot share their bugs.
"""

import os
from fractions import Fraction

import numpy as np
import pytest

from curvsets._rank import (
    MODULAR_PRIMES,
    active_backend,
    rank_bareiss,
    rank_mod_p,
    rank_rational,
)
from curvsets.errors import InvalidRange
from curvsets.homology import boundary_matrices


def naive_rank_mod_p(A, p):
    M = [[int(x) % p for x in row] for row in np.asarray(A)]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [(v * inv) % p for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def naive_rank_rational(A):
    M = [[Fraction(int(x)) for x in row] for row in np.asarray(A)]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pivot = M[r][c]
        for i in range(r + 1, rows):
            if M[i][c]:
                f = M[i][c] / pivot
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def random_matrices(seed=7, count=20, max_side=12, low=-5, high=6):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        r = int(rng.integers(1, max_side))
        c = int(rng.integers(1, max_side))
        A = rng.integers(low, high, size=(r, c))
        # sometimes force rank deficiency by duplicating a row
        if r >= 2 and rng.random() < 0.5:
            A[int(rng.integers(r))] = A[int(rng.integers(r))]
        out.append(A.astype(np.int64))
    return out


class TestModularRank:
    @pytest.mark.parametrize("p", [2, 3, 5, *MODULAR_PRIMES])
    def test_against_naive_on_random(self, p):
        for A in random_matrices():
            assert rank_mod_p(A, p) == naive_rank_mod_p(A, p)

    def test_small_block_forces_multiple_panels(self):
        for A in random_matrices(seed=11, count=8, max_side=20):
            expect = naive_rank_mod_p(A, 97)
            assert rank_mod_p(A, 97, block=3) == expect

    def test_identity_and_zero(self):
        assert rank_mod_p(np.eye(9, dtype=np.int64), 5) == 9
        assert rank_mod_p(np.zeros((4, 7), dtype=np.int64), 5) == 0

    def test_torsion_is_visible_mod_2(self):
        A = np.array([[2]], dtype=np.int64)
        assert rank_mod_p(A, 2) == 0
        assert rank_mod_p(A, 3) == 1

    def test_rejects_bad_p(self):
        with pytest.raises(InvalidRange):
            rank_mod_p(np.eye(2, dtype=np.int64), 1)

    def test_rejects_overflowing_block(self):
        # block * (p-1)^2 must stay under 2^53
        with pytest.raises(InvalidRange):
            rank_mod_p(np.eye(2, dtype=np.int64), MODULAR_PRIMES[0], block=10 ** 6)
        with pytest.raises(InvalidRange):
            rank_mod_p(np.eye(2, dtype=np.int64), 3, block=0)


class TestBareiss:
    def test_against_fraction_elimination(self):
        for A in random_matrices(seed=3):
            assert rank_bareiss(A) == naive_rank_rational(A)

    def test_known_values(self):
        assert rank_bareiss(np.array([[1, 2], [2, 4]])) == 1
        assert rank_bareiss(np.array([[1, 2], [3, 4]])) == 2
        assert rank_bareiss(np.zeros((3, 3), dtype=int)) == 0

    def test_rank_not_fooled_by_mod_p_collapse(self):
        # rank over Q is 2 but over GF(2) it drops
        A = np.array([[1, 1], [1, 3]], dtype=np.int64)
        assert rank_bareiss(A) == 2
        assert rank_mod_p(A, 2) == 1


class TestRankRational:
    def test_small_matrices_match_fraction_oracle(self):
        for A in random_matrices(seed=19):
            assert rank_rational(A) == naive_rank_rational(A)

    def test_large_path_uses_modular_agreement(self):
        # 70x70 exceeds the Bareiss short-side cutoff
        rng = np.random.default_rng(0)
        A = rng.integers(-3, 4, size=(70, 70)).astype(np.int64)
        expect = naive_rank_mod_p(A, MODULAR_PRIMES[0])
        assert rank_rational(A) == expect

    def test_empty(self):
        assert rank_rational(np.zeros((0, 5), dtype=np.int64)) == 0


class TestBoundaryMatrices:
    """The kernels' real workload: boundary maps of the n-point complex."""

    def test_n4_ranks_all_primes_and_backends(self, chain4):
        for d, B in chain4.boundaries.items():
            A = np.asarray(B.todense(), dtype=np.int64)
            expect = naive_rank_mod_p(A, 3)
            for backend in ("numpy", "numba"):
                assert rank_mod_p(A, 3, backend=backend) == expect

    def test_n5_rational_ranks(self, chain5):
        # frozen from an independent run of the naive eliminator
        expect = {1: 15, 2: 105, 3: 289, 4: 191}
        for d, B in chain5.boundaries.items():
            A = np.asarray(B.todense(), dtype=np.int64)
            assert rank_rational(A) == expect[d]
            assert naive_rank_mod_p(A, MODULAR_PRIMES[1]) == expect[d]


class TestBackendSelection:
    def test_explicit_choices(self):
        assert active_backend("numpy") == "numpy"
        assert active_backend("numba") == "numba"

    def test_unknown_backend_rejected(self):
        with pytest.raises(InvalidRange):
            active_backend("cuda")

    def test_env_flag(self, monkeypatch):
        monkeypatch.setenv("CURVATURE_BACKEND", "numpy")
        assert active_backend() == "numpy"
        monkeypatch.setenv("CURVATURE_BACKEND", "nonsense")
        with pytest.raises(InvalidRange):
            active_backend()

    def test_argument_overrides_env(self, monkeypatch):
        monkeypatch.setenv("CURVATURE_BACKEND", "numpy")
        assert active_backend("numba") == "numba"

    def test_backends_agree_on_rectangular(self):
        rng = np.random.default_rng(42)
        A = rng.integers(-9, 10, size=(40, 95)).astype(np.int64)
        r_np = rank_mod_p(A, MODULAR_PRIMES[2], backend="numpy")
        r_nb = rank_mod_p(A, MODULAR_PRIMES[2], backend="numba")
        assert r_np == r_nb == naive_rank_mod_p(A, MODULAR_PRIMES[2])
