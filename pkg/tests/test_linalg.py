import numpy as np
import pytest

from replika.errors import ReplikaError
from replika.linalg import (
    FpMatrix,
    PrimeField,
    charpoly,
    factor_poly,
    kernel_basis,
    left_kernel,
    pdivmod,
    pmul,
    poly_eval_matrix,
    rank,
    row_reduce,
    rref,
    solve_left,
    solve_linear,
)

F101 = PrimeField(101)


def test_prime_check():
    with pytest.raises(ReplikaError):
        PrimeField(91)
    PrimeField(2)
    PrimeField(32003)


def test_row_reduce_identity():
    m = FpMatrix(F101, np.eye(2, dtype=np.int64))
    r, pivots, rk = row_reduce(m)
    assert r == m
    assert pivots == [0, 1]
    assert rk == 2


def test_row_reduce_zero():
    m = FpMatrix(F101, np.zeros((3, 2), dtype=np.int64))
    r, pivots, rk = row_reduce(m)
    assert r == m
    assert pivots == []
    assert rk == 0


def test_row_reduce_rank_one():
    # hand row reduction: [[1,2],[2,4]] ~ [[1,2],[0,0]]
    m = FpMatrix(F101, [[1, 2], [2, 4]])
    r, pivots, rk = row_reduce(m)
    assert r.array.tolist() == [[1, 2], [0, 0]]
    assert rk == 1


def test_kernel_identity_empty():
    m = FpMatrix(F101, np.eye(4, dtype=np.int64))
    assert kernel_basis(m).rows == 0


def test_kernel_zero_matrix():
    m = FpMatrix(F101, np.zeros((3, 2), dtype=np.int64))
    k = kernel_basis(m)
    assert k.rows == 3
    assert rank(k.array, 101) == 3


def test_kernel_left_span():
    # v [[1,2],[2,4]] = 0 solved by hand: v = (2, -1) up to scale
    m = FpMatrix(F101, [[1, 2], [2, 4]])
    k = kernel_basis(m)
    assert k.rows == 1
    v = k.array[0]
    assert (v @ m.array % 101 == 0).all()
    assert (v[0] * 1 + v[1] * 2) % 101 == 0


def test_solve_identity():
    a = FpMatrix(F101, np.eye(3, dtype=np.int64))
    x = solve_linear(a, [5, 6, 7])
    assert x.array.tolist() == [[5, 6, 7]]


def test_solve_inconsistent():
    a = FpMatrix(F101, np.zeros((2, 2), dtype=np.int64))
    assert solve_linear(a, [1, 0]) is None


def test_solve_back_substitution():
    # x [[1,1],[0,1]] = [1,2] -> x = [1,1] by hand
    a = FpMatrix(F101, [[1, 1], [0, 1]])
    x = solve_linear(a, [1, 2])
    assert x.array.tolist() == [[1, 1]]


def test_rank_plus_kernel_dim(field):
    rng = np.random.default_rng(7)
    for _ in range(20):
        rows, cols = rng.integers(1, 9, size=2)
        m = rng.integers(0, field.p, size=(rows, cols))
        assert rank(m, field.p) + left_kernel(m, field.p).shape[0] == rows


def test_rref_idempotent(field):
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = rng.integers(0, field.p, size=(5, 7))
        r1, piv1 = rref(m, field.p)
        r2, piv2 = rref(r1, field.p)
        assert (r1 == r2).all() and piv1 == piv2


def test_solve_left_exact(field):
    rng = np.random.default_rng(13)
    for _ in range(20):
        a = rng.integers(0, field.p, size=(4, 6))
        x0 = rng.integers(0, field.p, size=4)
        b = (x0 @ a) % field.p
        x = solve_left(a, b, field.p)
        assert x is not None
        assert ((x @ a) % field.p == b).all()


def test_charpoly_matches_eigen_structure():
    p = 101
    a = np.diag([3, 3, 7]).astype(np.int64)
    f = charpoly(a, p)
    # (x-3)^2 (x-7)
    expected = pmul(pmul([(-3) % p, 1], [(-3) % p, 1], p), [(-7) % p, 1], p)
    assert f == expected


def test_factor_poly_and_eval():
    p = 101
    rng = np.random.default_rng(3)
    # f = (x-1)^2 (x^2+1) over F_101; x^2+1 has roots iff -1 is a QR mod 101
    f = pmul(pmul([p - 1, 1], [p - 1, 1], p), [1, 0, 1], p)
    factors = factor_poly(f, p, rng)
    total = [1]
    for q, e in factors:
        assert q[-1] == 1
        for _ in range(e):
            total = pmul(total, q, p)
    assert total == f


def test_poly_eval_matrix_cayley_hamilton():
    p = 32003
    rng = np.random.default_rng(5)
    a = rng.integers(0, p, size=(5, 5))
    f = charpoly(a, p)
    assert not poly_eval_matrix(f, a, p).any()


def test_pdivmod_roundtrip():
    p = 101
    f = [3, 2, 1, 5]
    g = [1, 1]
    q, r = pdivmod(f, g, p)
    back = pmul(q, g, p)
    back = [(a + b) % p for a, b in zip(back + [0] * 4, r + [0] * 4)][: len(f)]
    while back and back[-1] == 0:
        back.pop()
    assert back == f
