"""Exact mod-p linear algebra: hand-checked cases plus brute-force oracles."""

import itertools

import numpy as np
import pytest

from ftors import linalg as la


def test_check_prime_rejects_composites():
    for bad in (0, 1, 4, 6, 9, 100):
        with pytest.raises(ValueError):
            la.check_prime(bad)
    for good in (2, 3, 5, 7, 11):
        la.check_prime(good)


def test_fparray_reduces_mod_p():
    a = la.fparray([[7, -1], [5, 12]], 5)
    assert a.tolist() == [[2, 4], [0, 2]]
    assert a.dtype == np.int64


def test_rref_hand_case_mod5():
    a = [[2, 4, 1], [1, 2, 0]]
    r, rk, pivots = la.rref(a, 5)
    # row one scales by 3 = inv(2); row two then clears its tail
    assert rk == 2
    assert pivots == [0, 2]
    assert r.tolist() == [[1, 2, 0], [0, 0, 1]]
    # dependent rows mod 5: (2,4,1) is twice (1,2,3)
    r2, rk2, piv2 = la.rref([[2, 4, 1], [1, 2, 3]], 5)
    assert rk2 == 1 and piv2 == [0]
    assert r2.tolist() == [[1, 2, 3], [0, 0, 0]]


def test_rref_is_idempotent():
    rng = np.random.default_rng(7)
    for p in (2, 5):
        for _ in range(25):
            a = la.random_matrix(4, 5, p, rng)
            r, rk, piv = la.rref(a, p)
            r2, rk2, piv2 = la.rref(r, p)
            assert np.array_equal(r, r2)
            assert (rk, piv) == (rk2, piv2)


def test_rank_matches_row_count_of_rref():
    a = [[1, 2], [2, 4], [0, 1]]
    assert la.rank(a, 5) == 2
    assert la.rank([[0, 0], [0, 0]], 5) == 0
    assert la.rank(la.identity(3), 2) == 3


def test_kernel_basis_annihilates_and_has_right_size():
    rng = np.random.default_rng(11)
    for p in (2, 3, 5):
        for _ in range(30):
            rows = int(rng.integers(1, 5))
            cols = int(rng.integers(1, 6))
            a = la.random_matrix(rows, cols, p, rng)
            k = la.kernel_basis(a, p)
            assert k.shape[0] == cols
            # rank-nullity
            assert k.shape[1] == cols - la.rank(a, p)
            if k.shape[1]:
                assert np.all(la.matmul(a, k, p) == 0)
                assert la.rank(k, p) == k.shape[1]


def test_solve_exhaustive_mod2():
    """Compare against trying every candidate vector over F_2."""
    cells = list(itertools.product((0, 1), repeat=6))
    for flat in cells:
        a = np.array(flat, dtype=np.int64).reshape(2, 3)
        for b_flat in itertools.product((0, 1), repeat=2):
            b = np.array(b_flat, dtype=np.int64).reshape(2, 1)
            solvable = any(
                np.array_equal(a @ np.array(x).reshape(3, 1) % 2, b)
                for x in itertools.product((0, 1), repeat=3))
            got, hom = la.solve(a, b, 2)
            if solvable:
                assert got is not None
                assert np.array_equal(la.matmul(a, got, 2), b)
                if hom.shape[1]:
                    shifted = (got + hom[:, :1]) % 2
                    assert np.array_equal(la.matmul(a, shifted, 2), b)
            else:
                assert got is None


def test_solve_random_consistent_systems_mod5():
    rng = np.random.default_rng(23)
    for _ in range(40):
        a = la.random_matrix(4, 3, 5, rng)
        x = la.random_matrix(3, 2, 5, rng)
        b = la.matmul(a, x, 5)
        got, _ = la.solve(a, b, 5)
        assert got is not None
        assert np.array_equal(la.matmul(a, got, 5), b)


def test_column_space_basis_spans_columns():
    a = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    c = la.column_space_basis(a, 5)
    assert c.shape == (3, 2)
    # every original column solves against the basis
    for j in range(3):
        col = np.array(a, dtype=np.int64)[:, j:j + 1] % 5
        assert la.solve(c, col, 5)[0] is not None


def test_coords_in_basis_roundtrip():
    rng = np.random.default_rng(3)
    basis = la.random_matrix(4, 2, 5, rng)
    while la.rank(basis, 5) < 2:
        basis = la.random_matrix(4, 2, 5, rng)
    coeff = la.random_matrix(2, 3, 5, rng)
    vecs = la.matmul(basis, coeff, 5)
    got = la.coords_in_basis(basis, vecs, 5)
    assert np.array_equal(got, coeff)


def test_complement_indices_complete_a_basis():
    basis = np.array([[1, 0], [0, 1], [0, 0]], dtype=np.int64)
    extra = la.complement_indices(basis, 5)
    assert extra == [2]
    full = np.hstack([basis, la.identity(3)[:, extra]])
    assert la.rank(full, 5) == 3


def test_is_invertible_matches_rank():
    rng = np.random.default_rng(5)
    for _ in range(30):
        a = la.random_matrix(3, 3, 5, rng)
        assert la.is_invertible(a, 5) == (la.rank(a, 5) == 3)
    assert not la.is_invertible(la.zeros(2, 2), 5)
    assert la.is_invertible(la.identity(4), 2)


def test_inv_scalar():
    for p in (2, 3, 5, 7):
        for x in range(1, p):
            assert la.inv_scalar(x, p) * x % p == 1
