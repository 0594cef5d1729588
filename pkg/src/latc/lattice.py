"""Lattices in exact Gram-matrix form.

A rank-n lattice is stored as its Gram matrix (symmetric positive definite,
rational).  Lattice vectors are integer coefficient tuples with respect to
the implicit basis; dual vectors are rational coefficient tuples with
respect to the dual basis, so that the pairing of a dual vector with a
lattice vector is the plain dot product of coefficient tuples and the dual
lattice in dual coordinates is exactly Z^n.

An optional ambient basis (d x n, columns are the basis vectors) records an
embedding; it must reproduce the Gram matrix exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import floor, gcd

from .errors import ResourceLimitError
from . import linalg
from .linalg import Mat, Vec, dot, hnf, inverse, mat, mat_mul, mat_vec, transpose, vadd, vscale

COSET_DIM_LIMIT = 12


class Lattice:
    """A lattice given by its Gram matrix, with optional ambient embedding."""

    __slots__ = ("n", "gram", "ambient_basis", "_cache")

    def __init__(self, gram, ambient_basis=None):
        g = mat(tuple(Fraction(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("gram matrix must be square")
        if n == 0:
            raise ValueError("lattice rank must be positive")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        self.n = n
        self.gram = g
        self._cache = {}
        # positive definiteness comes out of the LDL pass
        self._ldl()
        if ambient_basis is not None:
            amb = mat(tuple(Fraction(x) for x in row) for row in ambient_basis)
            if any(len(row) != n for row in amb):
                raise ValueError("ambient basis must have n columns")
            if mat_mul(transpose(amb), amb) != g:
                raise ValueError("ambient basis does not reproduce the gram matrix")
            self.ambient_basis = amb
        else:
            self.ambient_basis = None

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.gram == other.gram
            and self.ambient_basis == other.ambient_basis
        )

    def __hash__(self):
        return hash((self.gram, self.ambient_basis))

    def __repr__(self):
        return "Lattice(n=%d)" % self.n

    def _ldl(self):
        """Cholesky-style decomposition over squared quantities, no roots.

        Returns (d, mu) with q(t) = sum_i d[i] * (t_i + sum_{j>i} mu[i][j] t_j)^2.
        Raises ValueError if the Gram matrix is not positive definite.
        """
        cached = self._cache.get("ldl")
        if cached is not None:
            return cached
        n = self.n
        a = [[Fraction(x) for x in row] for row in self.gram]
        d = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            dii = a[i][i]
            if dii <= 0:
                raise ValueError("gram matrix is not positive definite")
            d.append(dii)
            for j in range(i + 1, n):
                mu[i][j] = a[i][j] / dii
            for k in range(i + 1, n):
                for l in range(k, n):
                    a[k][l] -= dii * mu[i][k] * mu[i][l]
                    a[l][k] = a[k][l]
        result = (tuple(d), mat(mu))
        self._cache["ldl"] = result
        return result

    def inner(self, x, y) -> Fraction:
        """Gram pairing x^T G y of two coefficient tuples."""
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                acc += xi * dot(self.gram[i], y)
        return acc

    def norm2(self, v) -> Fraction:
        """Squared norm of a (possibly rational) coefficient tuple."""
        return self.inner(v, v)

    def dual(self) -> "Lattice":
        """The dual lattice; its Gram matrix is the inverse Gram matrix."""
        cached = self._cache.get("dual")
        if cached is not None:
            return cached
        ginv = inverse(self.gram)
        amb = None
        if self.ambient_basis is not None:
            amb = mat_mul(self.ambient_basis, ginv)
        d = Lattice(ginv, amb)
        d._cache["dual"] = self
        self._cache["dual"] = d
        return d

    def membership(self, x):
        """Integer coefficient tuple if all coordinates are integral, else None."""
        out = []
        for c in x:
            f = Fraction(c)
            if f.denominator != 1:
                return None
            out.append(f.numerator)
        return tuple(out)

    def cosets_mod_2(self, limit: int = COSET_DIM_LIMIT):
        """Yield the 2^n - 1 nonzero residues of L/2L as {0,1}^n tuples, lex order."""
        if self.n > limit:
            raise ResourceLimitError(
                "coset sweep over 2^%d residues exceeds the limit n <= %d" % (self.n, limit)
            )
        for residue in product((0, 1), repeat=self.n):
            if any(residue):
                yield residue


def fraction_tuple(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def reduce_half_open(x) -> tuple[Fraction, int]:
    """Reduce x into [-1/2, 1/2); returns (reduced, integer shift removed)."""
    f = Fraction(x)
    shift = floor(f + Fraction(1, 2))
    return f - shift, shift


def _primitive_integer_direction(y) -> Vec:
    """Scale a nonzero rational tuple to a primitive integer tuple (same ray)."""
    fracs = [Fraction(c) for c in y]
    if all(c == 0 for c in fracs):
        raise ValueError("direction vector must be nonzero")
    denom = 1
    for c in fracs:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in fracs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return tuple(c // g for c in ints)


def _section_transform(w: Vec):
    """Unimodular U with U w^T = (0,...,0,1)^T for a primitive integer w.

    The first n-1 rows of U form a basis of the full integer kernel of
    x -> w . x, and U^{-1} e_n maps to +-w's dual fiber direction.
    """
    column = tuple((wi,) for wi in w)
    h, u = hnf(column)
    if h[-1][0] != 1 or any(h[i][0] != 0 for i in range(len(w) - 1)):
        raise ValueError("direction vector must be primitive")
    return u


def sublattice_section(lattice: Lattice, y):
    """Section L' = L  cut by  {v : <y, v> = 0} for a nonzero dual vector y.

    Returns (Lp, embed) where Lp has rank n-1 and embed (n x (n-1), integer
    columns) maps Lp coefficients to L coefficients.  The embedded basis
    spans the full section, not a finite-index sublattice.
    """
    w = _primitive_integer_direction(y)
    u = _section_transform(w)
    rows = u[:-1]
    gram_p = mat_mul(mat_mul(rows, lattice.gram), transpose(rows))
    amb = None
    if lattice.ambient_basis is not None:
        amb = mat_mul(lattice.ambient_basis, transpose(rows))
    embed = transpose(rows)
    return Lattice(gram_p, amb), embed


def project_dual(lattice: Lattice, y1):
    """Project the dual lattice along a primitive dual vector y1.

    Returns (dual_of_section, lift).  lift maps a dual vector of the section
    (coefficients over the section's dual basis) to a dual vector of L that
    projects onto it and whose coefficient along y1 lies in [-1/2, 1/2).
    Raises ValueError for non-primitive y1.
    """
    c1 = []
    for c in y1:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError("y1 must be a dual lattice member (integral coefficients)")
        c1.append(f.numerator)
    c1 = tuple(c1)
    g = 0
    for c in c1:
        g = gcd(g, c)
    if g != 1:
        raise ValueError("y1 must be primitive (divide out the gcd first)")
    u = _section_transform(c1)
    rows = u[:-1]
    u_inv = linalg.int_matrix(inverse(u))
    fiber = tuple(r[-1] for r in u_inv)  # U^{-1} e_n
    gram_p = mat_mul(mat_mul(rows, lattice.gram), transpose(rows))
    section = Lattice(gram_p)
    gstar = lattice.dual().gram
    denom = lattice.dual().inner(c1, c1)
    alpha_fiber = lattice.dual().inner(fiber, c1) / denom
    if abs(alpha_fiber) != 1:
        raise AssertionError("fiber direction must project to +-y1")
    u_inv_cols = transpose(u_inv)

    def lift(yp):
        if len(yp) != lattice.n - 1:
            raise ValueError("section dual vector has wrong length")
        c0 = tuple(
            sum(u_inv_cols[j][i] * yp[j] for j in range(lattice.n - 1))
            for i in range(lattice.n)
        )
        alpha0 = lattice.dual().inner(c0, c1) / denom
        _, shift = reduce_half_open(alpha0)
        steps = -shift if alpha_fiber == 1 else shift
        return vadd(c0, vscale(steps, fiber))

    return section.dual(), lift


def coords_from_ambient(lattice: Lattice, ambient_vec) -> Vec:
    """Coefficient tuple of an ambient-space vector lying in the lattice span."""
    if lattice.ambient_basis is None:
        raise ValueError("lattice carries no ambient basis")
    v = fraction_tuple(ambient_vec)
    rhs = mat_vec(transpose(lattice.ambient_basis), v)
    coords = linalg.solve(lattice.gram, rhs)
    back = mat_vec(lattice.ambient_basis, coords)
    if back != v:
        raise ValueError("vector is not in the lattice span")
    return coords


def dual_coords_from_ambient(lattice: Lattice, ambient_vec) -> Vec:
    """Dual coefficient tuple of an ambient dual vector: pairings with the basis."""
    if lattice.ambient_basis is None:
        raise ValueError("lattice carries no ambient basis")
    return mat_vec(transpose(lattice.ambient_basis), fraction_tuple(ambient_vec))


def _format_fraction(x) -> str:
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


def format_latgram(lattice: Lattice) -> str:
    """Serialize to the "latgram v1" text format."""
    lines = ["latgram 1 n=%d" % lattice.n]
    for row in lattice.gram:
        lines.append(" ".join(_format_fraction(x) for x in row))
    if lattice.ambient_basis is not None:
        lines.append("ambient d=%d" % len(lattice.ambient_basis))
        for row in lattice.ambient_basis:
            lines.append(" ".join(_format_fraction(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_latgram(text: str) -> Lattice:
    """Parse the "latgram v1" format; raises MalformedInputError on any defect."""
    from .errors import MalformedInputError

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedInputError("empty latgram file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "latgram" or head[1] != "1" or not head[2].startswith("n="):
        raise MalformedInputError("bad latgram header: %r" % lines[0])
    try:
        n = int(head[2][2:])
    except ValueError:
        raise MalformedInputError("bad rank in header: %r" % lines[0])
    if n <= 0:
        raise MalformedInputError("rank must be positive")
    if len(lines) < 1 + n:
        raise MalformedInputError("truncated gram matrix")

    def parse_row(line, width):
        parts = line.split()
        if len(parts) != width:
            raise MalformedInputError("expected %d entries, got %r" % (width, line))
        try:
            return tuple(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError("bad rational in %r" % line)

    gram = [parse_row(lines[1 + i], n) for i in range(n)]
    ambient = None
    rest = lines[1 + n:]
    if rest:
        head = rest[0].split()
        if len(head) != 2 or head[0] != "ambient" or not head[1].startswith("d="):
            raise MalformedInputError("bad ambient header: %r" % rest[0])
        try:
            d = int(head[1][2:])
        except ValueError:
            raise MalformedInputError("bad ambient dimension: %r" % rest[0])
        if len(rest) != 1 + d:
            raise MalformedInputError("ambient block has wrong row count")
        ambient = [parse_row(rest[1 + i], n) for i in range(d)]
    try:
        return Lattice(gram, ambient)
    except ValueError as exc:
        raise MalformedInputError(str(exc))
