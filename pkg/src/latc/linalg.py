"""Exact dense linear algebra over the rationals and integers.

Vectors are tuples, matrices are row-major tuples of tuples.  Entries are
``int`` or ``fractions.Fraction``; nothing here ever rounds.  Scalars stay
eagerly normalized because Fraction reduces on every operation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import InfeasibleError, SingularMatrixError, UnboundedError

Vec = tuple
Mat = tuple


def vec(xs) -> Vec:
    return tuple(xs)


def mat(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vneg(x):
    return tuple(-a for a in x)


def vscale(c, x):
    return tuple(c * a for a in x)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Mat, x) -> Vec:
    return tuple(dot(row, x) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def det(m: Mat) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pivot = a[col][col]
        result *= pivot
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / pivot
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return sign * result


def inverse(m: Mat) -> Mat:
    """Exact inverse; raises SingularMatrixError when det = 0."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("inverse requires a square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    b = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        b[col] = [x / pivot for x in b[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return mat(b)


def int_matrix(m: Mat) -> Mat:
    """Cast an exactly-integral rational matrix to int entries."""
    out = []
    for row in m:
        new = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError("matrix entry %s is not integral" % (x,))
            new.append(f.numerator)
        out.append(tuple(new))
    return tuple(out)


def solve(m: Mat, rhs) -> Vec:
    """Solve m x = rhs exactly for square nonsingular m."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def rank(m: Mat) -> int:
    rows = [[Fraction(x) for x in row] for row in m]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot = rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / pivot
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def xgcd(a: int, b: int):
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _hnf_upper(rows):
    """Classic row HNF: pivots leftmost-first, entries above a pivot reduced.

    Returns (H, U) as mutable lists with H = U * rows and det U = +-1.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        nz = [i for i in range(r, m) if h[i][c] != 0]
        if not nz:
            continue
        if nz[0] != r:
            i = nz[0]
            h[r], h[i] = h[i], h[r]
            u[r], u[i] = u[i], u[r]
        for i in range(r + 1, m):
            if h[i][c] == 0:
                continue
            g, s, t = xgcd(h[r][c], h[i][c])
            ar, ai = h[r][c] // g, h[i][c] // g
            h[r], h[i] = (
                [s * x + t * y for x, y in zip(h[r], h[i])],
                [-ai * x + ar * y for x, y in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [s * x + t * y for x, y in zip(u[r], u[i])],
                [-ai * x + ar * y for x, y in zip(u[r], u[i])],
            )
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == m:
            break
    return h, u


def hnf(m: Mat):
    """Row-style Hermite normal form in the lower-left convention.

    Returns (H, U) with H = U * m, U unimodular.  Pivots are the rightmost
    nonzero entries of their rows, strictly positive, with column indices
    increasing from top to bottom; entries below a pivot are reduced into
    [0, pivot).  Zero rows, if any, come first.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    reversed_cols = [row[::-1] for row in m]
    h1, u1 = _hnf_upper(reversed_cols)
    h = tuple(tuple(h1[nrows - 1 - i][ncols - 1 - j] for j in range(ncols)) for i in range(nrows))
    u = tuple(tuple(u1[nrows - 1 - i]) for i in range(nrows))
    return h, u


def hnf_pivot_rows(h: Mat):
    """Indices of the nonzero rows of a lower-left HNF matrix."""
    return [i for i, row in enumerate(h) if any(x != 0 for x in row)]


def kernel_basis(m: Mat):
    """Basis of the integer kernel {x : m @ x = 0} for an integer matrix.

    Rows of the result generate the full kernel lattice (a saturated
    sublattice of Z^ncols), via the zero rows of the HNF transform of m^T.
    """
    mt = transpose(m)
    h, u = hnf(mt)
    return tuple(u[i] for i in range(len(h)) if all(x == 0 for x in h[i]))


def gcd_of_minors(rows, k: int) -> int:
    """gcd of all k x k minors of a k x n integer matrix (0 if rank < k)."""
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        sub = tuple(tuple(row[c] for c in cols) for row in rows)
        d = det(sub)
        g = _gcd_int(g, abs(d.numerator))
        if g == 1:
            return 1
    return g


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _pivot_to_optimal(tableau, basis, cost, allowed_cols):
    """Bland-rule simplex pivoting to optimality for a min problem.

    tableau rows are [coeffs..., rhs]; basis[i] is the basic column of row i.
    Raises UnboundedError when an entering column has no positive entry.
    """
    m = len(tableau)
    while True:
        # reduced costs: c_j - sum_i c_{basis[i]} * T[i][j]
        entering = None
        for j in allowed_cols:
            red = cost[j] - sum(cost[basis[i]] * tableau[i][j] for i in range(m))
            if red < 0:
                entering = j
                break
        if entering is None:
            return
        leaving = None
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise UnboundedError("objective is unbounded")
        piv = tableau[leaving][entering]
        tableau[leaving] = [x / piv for x in tableau[leaving]]
        for i in range(m):
            if i != leaving and tableau[i][entering] != 0:
                f = tableau[i][entering]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leaving])]
        basis[leaving] = entering


def simplex_min_eq(cost, a_rows, rhs):
    """Minimize cost . x subject to A x = rhs, x >= 0 (two-phase, exact).

    Returns (value, x).  Raises InfeasibleError / UnboundedError.
    """
    m = len(a_rows)
    ncols = len(cost)
    tableau = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-x for x in row]
            b = -b
        # artificial block
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row.append(b)
        tableau.append(row)
    basis = [ncols + i for i in range(m)]
    total = ncols + m
    phase1_cost = [Fraction(0)] * ncols + [Fraction(1)] * m
    _pivot_to_optimal(tableau, basis, phase1_cost, range(total))
    p1_value = sum(phase1_cost[basis[i]] * tableau[i][-1] for i in range(m))
    if p1_value != 0:
        raise InfeasibleError("constraints have no feasible point")
    # Phase 2: artificials stay frozen at zero (never eligible to enter).
    phase2_cost = [Fraction(x) for x in cost] + [Fraction(0)] * m
    _pivot_to_optimal(tableau, basis, phase2_cost, range(ncols))
    x = [Fraction(0)] * ncols
    for i in range(m):
        if basis[i] < ncols:
            x[basis[i]] = tableau[i][-1]
    value = sum(phase2_cost[j] * x[j] for j in range(ncols))
    return value, tuple(x)


def lp_max(objective, constraints):
    """Maximize objective . x over {x : row . x <= bound for all constraints}.

    x is free; exact rational pivoting with Bland's anti-cycling rule.
    Returns (value, argmax).  The argmax is re-checked against every
    constraint and, for a nonzero objective, against tightness of at least
    one constraint.
    """
    n = len(objective)
    if not constraints:
        if any(c != 0 for c in objective):
            raise UnboundedError("no constraints restrict a nonzero objective")
        return Fraction(0), tuple(Fraction(0) for _ in range(n))
    m = len(constraints)
    a_rows = []
    rhs = []
    for row, bound in constraints:
        split = [Fraction(x) for x in row] + [-Fraction(x) for x in row]
        slack = [Fraction(1) if j == len(a_rows) else Fraction(0) for j in range(m)]
        a_rows.append(split + slack)
        rhs.append(Fraction(bound))
    cost = [-Fraction(x) for x in objective] + [Fraction(x) for x in objective]
    cost += [Fraction(0)] * m
    value, xfull = simplex_min_eq(cost, a_rows, rhs)
    x = tuple(xfull[j] - xfull[n + j] for j in range(n))
    opt = dot(objective, x)
    assert opt == -value
    tight = False
    for row, bound in constraints:
        lhs = dot(row, x)
        assert lhs <= bound, "simplex returned an infeasible point"
        if lhs == bound:
            tight = True
    if any(c != 0 for c in objective):
        assert tight, "optimum of a nonzero objective must sit on a tight constraint"
    return opt, x
