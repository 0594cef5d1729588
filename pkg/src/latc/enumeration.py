"""Exhaustive exact search primitives.

All enumeration is done by recursive coordinate bounding on the rational
Cholesky-style decomposition of the Gram matrix; bounds propagate as exact
inequalities on squared partial sums, so no square roots (and no floating
point) appear anywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt

from .errors import BoundTooSmallError, ResourceLimitError
from .lattice import Lattice, fraction_tuple
from .linalg import Vec, dot, vsub

DEFAULT_CANDIDATE_CAP = 10**7
CAP_ENV_VAR = "LATC_CANDIDATE_CAP"


def candidate_cap(cap=None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_CANDIDATE_CAP


def _ints_in_quadratic(w: Fraction, rho: Fraction):
    """Inclusive integer range {x : (x - w)^2 <= rho}; may come back empty."""
    if rho < 0:
        return 1, 0
    s = isqrt(int(rho))
    fw = floor(w)
    hi = fw + s + 2
    lowest = fw - s - 2
    while hi >= lowest and (hi - w) * (hi - w) > rho:
        hi -= 1
    lo = lowest
    while lo <= hi and (lo - w) * (lo - w) > rho:
        lo += 1
    return lo, hi


def points_in_ball(lattice: Lattice, center, r2, cap=None):
    """All integer coefficient tuples v with norm2(v - center) <= r2, sorted lex.

    center may be None (origin) or a rational tuple in basis coordinates.
    Raises ResourceLimitError when more than `cap` candidate coordinates are
    inspected (default 10^7, overridable via LATC_CANDIDATE_CAP).
    """
    n = lattice.n
    r2 = Fraction(r2)
    if r2 < 0:
        raise ValueError("squared radius must be nonnegative")
    c = fraction_tuple(center) if center is not None else tuple(Fraction(0) for _ in range(n))
    d, mu = lattice._ldl()
    limit = candidate_cap(cap)
    out = []
    xs = [0] * n
    counter = [0]

    def descend(i: int, budget: Fraction):
        murow = mu[i]
        w = c[i]
        for j in range(i + 1, n):
            mij = murow[j]
            if mij:
                w -= mij * (xs[j] - c[j])
        lo, hi = _ints_in_quadratic(w, budget / d[i])
        for xi in range(lo, hi + 1):
            counter[0] += 1
            if counter[0] > limit:
                raise ResourceLimitError(
                    "ball enumeration exceeded the %d-candidate cap" % limit
                )
            xs[i] = xi
            spent = d[i] * (xi - w) * (xi - w)
            if i == 0:
                out.append(tuple(xs))
            else:
                descend(i - 1, budget - spent)

    descend(n - 1, r2)
    out.sort()
    return out


def babai_rounding(lattice: Lattice, target) -> Vec:
    """Nearest-plane rounding of a rational tuple; a cheap good coset point."""
    n = lattice.n
    t = fraction_tuple(target)
    d, mu = lattice._ldl()
    xs = [0] * n
    for i in range(n - 1, -1, -1):
        w = t[i]
        for j in range(i + 1, n):
            mij = mu[i][j]
            if mij:
                w -= mij * (xs[j] - t[j])
        xs[i] = floor(w + Fraction(1, 2))
    return tuple(xs)


@dataclass
class CosetShortest:
    """Shortest vectors of one residue class modulo 2L."""

    residue: Vec
    min_norm2: Fraction
    minimizers: tuple

    def __post_init__(self):
        assert self.minimizers, "a coset always has a shortest vector"
        for v in self.minimizers:
            neg = tuple(-x for x in v)
            assert neg in self.minimizers, "minimizers must be closed under negation"


def shortest_in_coset(lattice: Lattice, residue, cap=None) -> CosetShortest:
    """Global minimizers of the squared norm over residue + 2L.

    The search runs over the doubled lattice centered at -residue/2; the
    starting radius is the norm of the best of the {0,1}^n representative
    and a nearest-plane rounding, both of which lie in the coset.
    """
    residue = tuple(int(r) for r in residue)
    if not any(residue):
        raise ValueError("residue must be a nonzero class of L/2L")
    doubled = lattice._cache.get("doubled")
    if doubled is None:
        doubled = Lattice(tuple(tuple(4 * x for x in row) for row in lattice.gram))
        lattice._cache["doubled"] = doubled
    center = tuple(Fraction(-r, 2) for r in residue)
    z0 = babai_rounding(doubled, center)
    u0 = tuple(r + 2 * z for r, z in zip(residue, z0))
    r2 = min(lattice.norm2(residue), lattice.norm2(u0))
    zs = points_in_ball(doubled, center, r2, cap=cap)
    vs = [tuple(r + 2 * z for r, z in zip(residue, zz)) for zz in zs]
    norms = [lattice.norm2(v) for v in vs]
    best = min(norms)
    minimizers = tuple(sorted(v for v, nv in zip(vs, norms) if nv == best))
    return CosetShortest(residue, best, minimizers)


def cvp_bruteforce(lattice: Lattice, target, cap=None):
    """Exact set of all closest lattice vectors to a rational target.

    Returns (closest, dist2) with closest sorted lexicographically.
    """
    t = fraction_tuple(target)
    z0 = babai_rounding(lattice, t)
    r2 = lattice.norm2(vsub(z0, t))
    if r2 == 0:
        return [z0], Fraction(0)
    pts = points_in_ball(lattice, t, r2, cap=cap)
    dists = [(lattice.norm2(vsub(p, t)), p) for p in pts]
    best = min(d for d, _ in dists)
    closest = sorted(p for d, p in dists if d == best)
    return closest, best


def independent_filter():
    """Incremental rational echelon used for independence extraction."""
    basis = []

    def try_add(v):
        work = [Fraction(x) for x in v]
        for pivot_col, pivot_row in basis:
            if work[pivot_col] != 0:
                f = work[pivot_col] / pivot_row[pivot_col]
                work = [x - f * y for x, y in zip(work, pivot_row)]
        for col, x in enumerate(work):
            if x != 0:
                basis.append((col, work))
                return True
        return False

    return try_add


def successive_minima_gauge(gauge, dual_lattice: Lattice, search_bound2, cap=None):
    """Successive minima of a symmetric gauge over dual lattice points.

    Enumerates dual points of squared Euclidean norm <= search_bound2, sorts
    them by (gauge, lex) and greedily extracts n linearly independent
    witnesses.  The reported values are the true successive minima whenever
    the ball covers the gauge ball of the largest reported value.  Raises
    BoundTooSmallError when fewer than n independent points are found.
    """
    n = dual_lattice.n
    pts = [p for p in points_in_ball(dual_lattice, None, search_bound2, cap=cap) if any(p)]
    items = sorted((gauge(p), p) for p in pts)
    try_add = independent_filter()
    minima = []
    for value, p in items:
        if try_add(p):
            minima.append((value, p))
            if len(minima) == n:
                return minima
    raise BoundTooSmallError(
        "found %d independent points within the ball, need %d" % (len(minima), n)
    )
