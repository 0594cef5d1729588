import random
from fractions import Fraction

import pytest

from latc.errors import InfeasibleError, SingularMatrixError, UnboundedError
from latc.linalg import (
    det,
    dot,
    gcd_of_minors,
    hnf,
    hnf_pivot_rows,
    identity,
    int_matrix,
    inverse,
    kernel_basis,
    lp_max,
    mat,
    mat_mul,
    mat_vec,
    rank,
    solve,
    transpose,
    xgcd,
)


def test_hnf_identity():
    h, u = hnf(identity(3))
    assert h == identity(3)
    assert abs(det(u)) == 1
    assert mat_mul(u, identity(3)) == h


def test_hnf_preserves_determinant():
    m = ((2, 0), (1, 1))
    h, u = hnf(m)
    assert abs(det(u)) == 1
    assert mat_mul(u, m) == h
    assert abs(det(h)) == 2


def test_hnf_one_by_one():
    h, u = hnf(((4,),))
    assert h == ((4,),)
    assert u == ((1,),)


def test_hnf_shape_convention():
    rng = random.Random(7)
    for _ in range(25):
        rows = tuple(
            tuple(rng.randint(-5, 5) for _ in range(4)) for _ in range(rng.randint(1, 4))
        )
        h, u = hnf(rows)
        assert mat_mul(u, rows) == h
        assert abs(det(u)) == 1
        piv = hnf_pivot_rows(h)
        pivot_cols = []
        for i in piv:
            cols = [j for j in range(4) if h[i][j] != 0]
            pivot_cols.append(cols[-1])
            assert h[i][cols[-1]] > 0
        assert pivot_cols == sorted(pivot_cols)
        # entries below a pivot are reduced modulo it
        for idx, i in enumerate(piv):
            c = pivot_cols[idx]
            for k in piv[idx + 1:]:
                assert 0 <= h[k][c] < h[i][c]


def test_hnf_zero_matrix():
    h, u = hnf(((0, 0), (0, 0)))
    assert h == ((0, 0), (0, 0))
    assert abs(det(u)) == 1


def test_kernel_basis():
    m = ((1, 1, 1),)
    k = kernel_basis(m)
    assert len(k) == 2
    for row in k:
        assert dot(row, (1, 1, 1)) == 0
    # spans the full kernel: (1,-1,0) and (0,1,-1) must be integer combos
    assert rank(k) == 2
    assert gcd_of_minors(k, 2) == 1


def test_det_identity():
    assert det(identity(4)) == 1


def test_det_dn_basis():
    # columns e1+en, e2-e1, ..., en-e(n-1); as a matrix of rows here
    for n in (3, 4, 5):
        cols = []
        b1 = [0] * n
        b1[0] = 1
        b1[-1] += 1
        cols.append(b1)
        for i in range(1, n):
            b = [0] * n
            b[i] = 1
            b[i - 1] = -1
            cols.append(b)
        assert abs(det(mat(cols))) == 2


def test_inverse_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 4)
        while True:
            m = tuple(
                tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n))
                for _ in range(n)
            )
            if det(m) != 0:
                break
        assert mat_mul(inverse(m), m) == identity(n)


def test_inverse_lambda5_basis_gives_dual_basis():
    # basis columns {(1,1,1,1,1), 3 e2, ..., 3 e5}; dual basis = inverse-transpose
    n, a = 5, 3
    cols = [[1] * n] + [[3 if i == j else 0 for i in range(n)] for j in range(1, n)]
    b = transpose(mat(cols))  # rows of b are ambient coordinates; columns basis vectors
    dual = transpose(inverse(b))
    # dual columns pair with basis columns as the identity
    assert mat_mul(transpose(dual), b) == identity(n)
    first = tuple(row[0] for row in dual)
    second = tuple(row[1] for row in dual)
    assert first == (1, 0, 0, 0, 0)
    assert second == (Fraction(-1, 3), Fraction(1, 3), 0, 0, 0)
    # dual lattice membership: entries in (1/3)Z with integral sum
    for j in range(n):
        col = tuple(row[j] for row in dual)
        assert all((3 * x).denominator == 1 for x in col)
        assert sum(col).denominator == 1


def test_solve_and_singular():
    m = ((2, 1), (1, 1))
    x = solve(m, (3, 2))
    assert mat_vec(m, x) == (3, 2)
    with pytest.raises(SingularMatrixError):
        inverse(((1, 1), (1, 1)))


def test_int_matrix_rejects_fractions():
    with pytest.raises(ValueError):
        int_matrix(((Fraction(1, 2),),))


def test_xgcd():
    for a, b in ((12, 18), (-4, 6), (0, 5), (7, 0), (-3, -9)):
        g, s, t = xgcd(a, b)
        assert g >= 0
        assert s * a + t * b == g


def test_lp_max_square():
    cons = []
    for i in range(2):
        row = [0, 0]
        row[i] = 1
        cons.append((tuple(row), Fraction(1, 2)))
        row2 = [0, 0]
        row2[i] = -1
        cons.append((tuple(row2), Fraction(1, 2)))
    value, arg = lp_max((1, 0), cons)
    assert value == Fraction(1, 2)
    value, arg = lp_max((1, 1), cons)
    assert value == 1
    assert arg == (Fraction(1, 2), Fraction(1, 2))


def test_lp_max_z2_voronoi_support():
    # facets of the unit-cube cell: 2 x . v <= ||v||^2 over v in F
    cons = []
    for v in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        cons.append(((2 * v[0], 2 * v[1]), 1))
    value, _ = lp_max((1, 1), cons)
    assert value == 1


def test_lp_unbounded():
    with pytest.raises(UnboundedError):
        lp_max((1, 0), [((0, 1), 1)])


def test_lp_infeasible():
    with pytest.raises(InfeasibleError):
        lp_max((1,), [((1,), 0), ((-1,), -1)])


def test_lp_degenerate_objective():
    value, arg = lp_max((0, 0), [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
    assert value == 0
