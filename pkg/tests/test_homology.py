"""Chain complexes, Smith form, closed-form groups, and the verifier."""

import itertools
import json
import math

import numpy as np
import pytest
import scipy.sparse as sp

from curvsets.errors import InvalidRange, SizeLimitExceeded
from curvsets.homology import (
    ChainComplex,
    HomologyGroup,
    betti_over_field,
    boundary_matrices,
    boundary_triples,
    closed_form_all,
    closed_form_homology,
    format_boundary_triples,
    integer_homology,
    smith_normal_form,
    verify_homology,
)


def int_det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * int_det(minor)
    return total


def invariant_factors_by_minors(A):
    """Textbook determinant-divisor computation; only viable for tiny inputs."""
    M = [[int(x) for x in row] for row in np.asarray(A)]
    R, C = len(M), len(M[0]) if M else 0
    divisors = [1]
    for k in range(1, min(R, C) + 1):
        g = 0
        for ri in itertools.combinations(range(R), k):
            for ci in itertools.combinations(range(C), k):
                sub = [[M[r][c] for c in ci] for r in ri]
                g = math.gcd(g, int_det(sub))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


class TestChainComplexValidation:
    def test_accepts_consistent_data(self):
        B1 = sp.csc_matrix(np.array([[1], [-1]], dtype=np.int64))
        C = ChainComplex(dims=(2, 1), boundaries={1: B1})
        assert C.top_degree == 1

    def test_rejects_bad_entries(self):
        B1 = sp.csc_matrix(np.array([[2], [-1]], dtype=np.int64))
        with pytest.raises(ValueError):
            ChainComplex(dims=(2, 1), boundaries={1: B1})

    def test_rejects_wrong_shape(self):
        B1 = sp.csc_matrix(np.array([[1, 0], [0, 1]], dtype=np.int64))
        with pytest.raises(ValueError):
            ChainComplex(dims=(2, 1), boundaries={1: B1})

    def test_rejects_missing_degree(self):
        B2 = sp.csc_matrix(np.array([[1], [1]], dtype=np.int64))
        with pytest.raises(ValueError):
            ChainComplex(dims=(1, 2, 1), boundaries={2: B2})

    def test_rejects_nonzero_composition(self):
        one = sp.csc_matrix(np.array([[1]], dtype=np.int64))
        with pytest.raises(ValueError):
            ChainComplex(dims=(1, 1, 1), boundaries={1: one, 2: one})


class TestBoundaryMatrices:
    def test_shapes_match_f_vector(self, st4, chain4):
        assert chain4.dims == st4.f_vector()
        for d, B in chain4.boundaries.items():
            assert B.shape == (chain4.dims[d - 1], chain4.dims[d])

    def test_column_support_is_d_plus_1(self, chain5):
        for d, B in chain5.boundaries.items():
            counts = np.diff(B.indptr)
            assert (counts == d + 1).all()

    def test_triples_round_trip(self, chain4):
        text = format_boundary_triples(chain4, 2)
        lines = text.strip().splitlines()
        R, C = map(int, lines[0].split())
        assert (R, C) == chain4.boundaries[2].shape
        parsed = [tuple(map(int, ln.split())) for ln in lines[1:]]
        assert parsed == boundary_triples(chain4, 2)

    def test_triples_bad_degree(self, chain4):
        with pytest.raises(InvalidRange):
            boundary_triples(chain4, 99)


class TestBettiOverField:
    def test_n3(self, st3):
        C = boundary_matrices(st3)
        assert betti_over_field(C, 0) == (1, 0, 1)
        assert betti_over_field(C, 2) == (1, 0, 1)
        assert betti_over_field(C, 3) == (1, 0, 1)

    def test_n4(self, chain4):
        assert betti_over_field(chain4, 0) == (1, 0, 3, 0)
        assert betti_over_field(chain4, 3) == (1, 0, 3, 0)
        # one order-2 summand in degree 2 shows up twice over GF(2)
        assert betti_over_field(chain4, 2) == (1, 0, 4, 1)

    def test_n5(self, chain5):
        assert betti_over_field(chain5, 0) == (1, 0, 6, 0, 1)
        assert betti_over_field(chain5, 2) == (1, 0, 11, 5, 1)

    def test_rejects_composite(self, chain4):
        with pytest.raises(InvalidRange):
            betti_over_field(chain4, 4)
        with pytest.raises(InvalidRange):
            betti_over_field(chain4, 1)


class TestSmithNormalForm:
    def test_textbook_matrix(self):
        A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        assert smith_normal_form(A) == [2, 6, 12]

    def test_diagonal_inputs(self):
        assert smith_normal_form(np.diag([2, 3])) == [1, 6]
        assert smith_normal_form(np.diag([4, 6])) == [2, 12]

    def test_small_full_rank(self):
        assert smith_normal_form([[1, 2], [3, 4]]) == [1, 2]

    def test_zero_and_empty(self):
        assert smith_normal_form(np.zeros((3, 2), dtype=int)) == []
        assert smith_normal_form(np.zeros((0, 4), dtype=int)) == []

    def test_sparse_input(self):
        A = sp.csc_matrix(np.diag([2, 3]))
        assert smith_normal_form(A) == [1, 6]

    def test_random_small_vs_minor_gcds(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            r = int(rng.integers(1, 5))
            c = int(rng.integers(1, 5))
            A = rng.integers(-4, 5, size=(r, c))
            assert smith_normal_form(A) == invariant_factors_by_minors(A)

    def test_divisibility_chain(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            A = rng.integers(-6, 7, size=(6, 6))
            fs = smith_normal_form(A)
            assert all(b % a == 0 for a, b in zip(fs, fs[1:]))
            assert all(f > 0 for f in fs)

    def test_boundary_of_n4(self, chain4):
        fs = smith_normal_form(chain4.boundaries[3])
        assert fs.count(2) == 1  # the single order-2 class in degree 2
        assert set(fs) == {1, 2}


class TestHomologyGroup:
    def test_from_invariant_factors(self):
        g = HomologyGroup.from_invariant_factors(3, [1, 1, 2])
        assert g == HomologyGroup(betti=3, torsion2=1)
        g = HomologyGroup.from_invariant_factors(0, [2, 2, 2, 2, 2])
        assert g.torsion2 == 5
        g = HomologyGroup.from_invariant_factors(1, [6])
        assert g.torsion2 == 1 and g.other_torsion == (3,)
        g = HomologyGroup.from_invariant_factors(0, [12])
        assert g.torsion2 == 0 and g.other_torsion == (3, 4)

    @pytest.mark.parametrize(
        "group, text",
        [
            (HomologyGroup(1), "Z"),
            (HomologyGroup(0), "0"),
            (HomologyGroup(3, 1), "Z^3 + Z/2"),
            (HomologyGroup(6, 5), "Z^6 + (Z/2)^5"),
            (HomologyGroup(0, 2), "(Z/2)^2"),
            (HomologyGroup(1, 0, (9,)), "Z + Z/9"),
        ],
    )
    def test_str(self, group, text):
        assert str(group) == text


class TestClosedForm:
    def test_small_n(self):
        assert [str(g) for g in closed_form_all(2)] == ["Z", "0"]
        assert [str(g) for g in closed_form_all(3)] == ["Z", "0", "Z"]
        assert [str(g) for g in closed_form_all(4)] == ["Z", "0", "Z^3 + Z/2", "0"]
        assert [str(g) for g in closed_form_all(5)] == [
            "Z",
            "0",
            "Z^6 + (Z/2)^5",
            "0",
            "Z",
        ]

    def test_n6(self):
        gs = closed_form_all(6)
        assert [g.betti for g in gs] == [1, 0, 10, 0, 5, 0]
        assert [g.torsion2 for g in gs] == [0, 0, 16, 0, 1, 0]

    def test_no_odd_torsion_ever(self):
        for n in range(2, 12):
            for g in closed_form_all(n):
                assert g.other_torsion == ()

    def test_rejects_bad_args(self):
        with pytest.raises(InvalidRange):
            closed_form_homology(1, 0)
        with pytest.raises(InvalidRange):
            closed_form_homology(4, -1)


class TestIntegerHomology:
    def test_n4_exact(self, chain4):
        groups = integer_homology(chain4)
        assert [str(g) for g in groups] == ["Z", "0", "Z^3 + Z/2", "0"]
        assert groups == closed_form_all(4)

    def test_n5_exact(self, chain5):
        groups = integer_homology(chain5)
        assert groups == closed_form_all(5)

    def test_cap_refusal(self, chain5):
        with pytest.raises(SizeLimitExceeded):
            integer_homology(chain5, snf_cap=100)

    def test_cap_env_var(self, chain4, monkeypatch):
        monkeypatch.setenv("CURVATURE_SNF_CAP", "5")
        with pytest.raises(SizeLimitExceeded):
            integer_homology(chain4)
        monkeypatch.setenv("CURVATURE_SNF_CAP", "not-a-number")
        with pytest.raises(InvalidRange):
            integer_homology(chain4)

    def test_argument_beats_env(self, chain4, monkeypatch):
        monkeypatch.setenv("CURVATURE_SNF_CAP", "5")
        assert integer_homology(chain4, snf_cap=10 ** 6) == closed_form_all(4)


class TestVerifyHomology:
    def test_n4_all_checks_pass(self):
        report = verify_homology(4)
        assert report.n == 4
        assert report.passed
        assert report.betti_q == (1, 0, 3, 0)
        assert report.betti_gf2 == (1, 0, 4, 1)
        assert report.torsion2_observed == (0, 0, 1, 0)
        assert report.snf_groups == closed_form_all(4)
        assert all(v is True for v in report.checks.values())

    def test_snf_disabled_by_caller(self):
        report = verify_homology(3, snf=False)
        assert report.passed
        assert report.snf_groups is None
        assert report.snf_skip_reason is not None
        assert report.checks["snf_matches_closed_form"] is None

    def test_json_dict_serialises(self):
        report = verify_homology(3)
        doc = report.to_json_dict()
        text = json.dumps(doc, sort_keys=True)
        assert '"passed": true' in text
        assert doc["n"] == 3

    def test_rejects_n1(self):
        with pytest.raises(InvalidRange):
            verify_homology(1)
