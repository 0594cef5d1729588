"""Constructors and closed-form oracles for the built-in lattice families.

Families: Zn (integer lattice), Dn (checkerboard), A2 (hexagonal), AnStar
(dual of the A_n root lattice, stored in Gram form), and LambdaNA, the
congruence family { z in Z^n : z_1 = ... = z_n mod a }.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import Lattice, coords_from_ambient
from .linalg import inverse, mat

FAMILIES = ("Zn", "Dn", "AnStar", "LambdaNA", "A2")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    a: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown family %r" % (self.family,))
        if self.n < 1:
            raise ValueError("rank must be positive")
        if self.family == "A2" and self.n != 2:
            raise ValueError("A2 is two-dimensional")
        if self.family == "Dn" and self.n < 3:
            raise ValueError("Dn needs n >= 3")
        if self.family == "LambdaNA":
            a = self.a if self.a is not None else default_modulus(self.n)
            if a < 2:
                raise ValueError("LambdaNA needs a >= 2")
            object.__setattr__(self, "a", a)
        elif self.a is not None:
            raise ValueError("parameter a only applies to LambdaNA")


def default_modulus(n: int) -> int:
    return (n + 1) // 2


def _ambient_from_columns(cols):
    n = len(cols)
    d = len(cols[0])
    ambient = tuple(tuple(Fraction(cols[j][i]) for j in range(n)) for i in range(d))
    return ambient


def generate(spec: FamilySpec) -> Lattice:
    """Build the lattice for a family spec, with an ambient basis where integral."""
    n = spec.n
    if spec.family == "Zn":
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return Lattice(eye, eye)
    if spec.family == "A2":
        return Lattice([[2, -1], [-1, 2]])
    if spec.family == "Dn":
        cols = []
        b1 = [0] * n
        b1[0] = 1
        b1[n - 1] += 1
        cols.append(b1)
        for i in range(1, n):
            b = [0] * n
            b[i] = 1
            b[i - 1] = -1
            cols.append(b)
        ambient = _ambient_from_columns(cols)
        gram = [[sum(cols[i][k] * cols[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
        return Lattice(gram, ambient)
    if spec.family == "AnStar":
        # dual of the tridiagonal A_n Gram matrix (2 on the diagonal, -1 off)
        an = [[0] * n for _ in range(n)]
        for i in range(n):
            an[i][i] = 2
            if i + 1 < n:
                an[i][i + 1] = -1
                an[i + 1][i] = -1
        return Lattice(inverse(mat(an)))
    if spec.family == "LambdaNA":
        a = spec.a
        cols = [[1] * n]
        for i in range(1, n):
            b = [0] * n
            b[i] = a
            cols.append(b)
        ambient = _ambient_from_columns(cols)
        gram = [[sum(cols[i][k] * cols[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
        return Lattice(gram, ambient)
    raise AssertionError("unreachable")


def in_congruence_lattice(n: int, a: int, z) -> bool:
    """Membership in { z in Z^n : all coordinates congruent mod a }."""
    ints = []
    for x in z:
        f = Fraction(x)
        if f.denominator != 1:
            return False
        ints.append(f.numerator)
    return all((ints[i] - ints[0]) % a == 0 for i in range(1, n))


def lambda_n_relevant_closed_form(n: int, a: int):
    """The strict relevant vectors of LambdaNA in ambient coordinates.

    Valid under the closed form's hypothesis n >= 4, a = ceil(n/2).  For
    each nonempty proper index set S the parameter l takes both roundings
    of a|S|/n, collapsing to the single integral value when they coincide.
    Returns the deduplicated, sorted ambient vector list (includes +-1...1).
    """
    if n < 4:
        raise ValueError("closed form needs n >= 4")
    if a != default_modulus(n):
        raise ValueError("closed form needs a = ceil(n/2)")
    out = {tuple([1] * n), tuple([-1] * n)}
    for mask in range(1, 2**n - 1):
        members = [i for i in range(n) if mask >> i & 1]
        k = len(members)
        lo = a * k // n
        ells = {lo} if a * k % n == 0 else {lo, lo + 1}
        for ell in ells:
            v = [-ell] * n
            for i in members:
                v[i] = a - ell
            out.add(tuple(v))
    return sorted(out)


def lambda_n_relevant_coords(lattice: Lattice, n: int, a: int):
    """Closed-form strict set mapped to coefficient tuples of the lattice."""
    coords = []
    for v in lambda_n_relevant_closed_form(n, a):
        z = coords_from_ambient(lattice, v)
        ints = lattice.membership(z)
        if ints is None:
            raise AssertionError("closed-form vector is not a lattice member")
        coords.append(ints)
    return sorted(coords)


def dual_lambda_n_membership(n: int, a: int, y) -> bool:
    """Membership in the dual family lattice: (1/a) Z^n with integral sum."""
    total = Fraction(0)
    for x in y:
        f = Fraction(x)
        if a % f.denominator != 0:
            return False
        total += f
    return total.denominator == 1
