"""Shared helpers for the test suite."""

import random
from fractions import Fraction
from itertools import combinations

from latc.families import FamilySpec, generate
from latc.lattice import Lattice
from latc.linalg import det, identity, mat, mat_mul, mat_vec, solve, transpose


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    """Product of random elementary row operations; |det| = 1 by construction."""
    u = [list(row) for row in identity(n)]
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-1, 1))
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]
    return mat(u)


def random_lattice(rng: random.Random, n: int, entry_bound: int = 50) -> Lattice:
    """Random unimodular congruence of diag(1..n), entries bounded."""
    diag = [[i + 1 if i == j else 0 for j in range(n)] for i in range(n)]
    while True:
        u = random_unimodular(rng, n)
        gram = mat_mul(mat_mul(transpose(u), mat(diag)), u)
        if max(abs(x) for row in gram for x in row) <= entry_bound:
            return Lattice(gram)


def random_rational_target(rng: random.Random, n: int, spread: int = 6):
    den = rng.randint(1, 7)
    return tuple(Fraction(rng.randint(-spread * den, spread * den), den) for _ in range(n))


def family(name: str, n: int, a=None) -> Lattice:
    return generate(FamilySpec(name, n, a))


def cell_vertices(vd, lattice):
    """Test oracle: Voronoi cell vertices by solving n-subsets of tight facets.

    Exponential; meant for n <= 4 only.
    """
    n = lattice.n
    rows = []
    for v in vd.strict:
        rows.append((mat_vec(lattice.gram, v), vd.norm2[v]))
    vertices = set()
    for sub in combinations(rows, n):
        m = tuple(tuple(2 * x for x in row) for row, _ in sub)
        if det(m) == 0:
            continue
        rhs = tuple(b for _, b in sub)
        x = solve(m, rhs)
        ok = True
        for row, b in rows:
            if 2 * sum(r * xi for r, xi in zip(row, x)) > b:
                ok = False
                break
        if ok:
            vertices.add(x)
    return sorted(vertices)
