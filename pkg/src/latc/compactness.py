"""Coefficient-width certificates and compactness constants.

The searches work in dual coordinates, where the dual lattice is Z^n and
the pairing with a lattice vector is the plain dot product.  A basis is
c-compact exactly when the corresponding dual basis consists of integer
tuples whose pairing with every target vector is at most c in absolute
value, so certifying and searching both reduce to integer combinatorics
plus exact rank and determinant tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    CertificateUnsoundError,
    DependenceError,
    MalformedInputError,
    NonUnimodularError,
    ResourceLimitError,
)
from .enumeration import independent_filter, points_in_ball
from .lattice import (
    Lattice,
    coords_from_ambient,
    dual_coords_from_ambient,
    project_dual,
    sublattice_section,
)
from .linalg import (
    Mat,
    det,
    dot,
    gcd_of_minors,
    hnf,
    hnf_pivot_rows,
    identity,
    int_matrix,
    inverse,
    kernel_basis,
    mat,
    mat_mul,
    mat_vec,
    solve,
    transpose,
    vneg,
    vscale,
    xgcd,
)
from .voronoi import VoronoiData, positive_rep, relevant_vectors, support_function

DEFAULT_SEARCH_NODE_CAP = 2 * 10**6


@dataclass
class CompactnessCertificate:
    """A certified basis: unimodular transform, width, kind, witnesses."""

    transform: Mat
    width: int
    kind: str
    witnesses: dict

    def __post_init__(self):
        assert self.kind in ("strict", "weak")


@dataclass
class RelaxedCertificate:
    """Independent dual generators of bounded gauge (superlattice allowed)."""

    generators: tuple
    width: int
    lambdas: tuple | None = None


@dataclass
class CSearchResult:
    """Outcome of a compactness search: exact value or a lower bound."""

    value: int | None
    certificate: CompactnessCertificate | None
    searched_up_to: int

    @property
    def exact(self) -> bool:
        return self.value is not None


def gauge(y, targets) -> Fraction:
    """max_v |<y, v>| over the target vectors (coefficient-tuple pairing)."""
    best = Fraction(0)
    for v in targets:
        val = abs(dot(y, v))
        if val > best:
            best = val
    return best


def coefficient_width(lattice: Lattice, transform, targets):
    """Width of the targets in the basis given by the transform's columns.

    Returns (width, witnesses) where witnesses maps each target to its
    coefficient tuple in the certified basis.  Raises NonUnimodularError
    unless |det transform| = 1.
    """
    tm = mat(transform)
    d = det(tm)
    if abs(d) != 1:
        raise NonUnimodularError("transform determinant is %s" % (d,))
    tinv = int_matrix(inverse(tm))
    witnesses = {}
    width = 0
    for v in targets:
        coeffs = mat_vec(tinv, v)
        assert mat_vec(tm, coeffs) == tuple(v)
        witnesses[tuple(v)] = coeffs
        w = max(abs(c) for c in coeffs)
        if w > width:
            width = w
    return width, witnesses


def _generator_decomposition(vd: VoronoiData):
    """Integer coefficients of each unit vector over the strict set.

    The strict vectors generate the lattice, so the HNF of their row matrix
    has unimodular pivot rows; back-substitution expresses e_i over those
    rows and the transform maps the expression back to strict vectors.
    Returns the per-coordinate sums K_i = sum_j |coeff_ij|.
    """
    rows = vd.strict
    h, u = hnf(rows)
    piv = hnf_pivot_rows(h)
    n = len(rows[0])
    if len(piv) != n:
        raise ValueError("strict relevant vectors do not span the lattice")
    hp = [h[i] for i in piv]
    up = [u[i] for i in piv]
    pivot_cols = []
    for row in hp:
        col = max(j for j in range(n) if row[j] != 0)
        pivot_cols.append(col)
    prod = 1
    for r, c in zip(hp, pivot_cols):
        prod *= r[c]
    if abs(prod) != 1:
        raise ValueError("strict relevant vectors generate a proper sublattice")
    sums = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        lam = [0] * n
        for k in range(n - 1, -1, -1):
            c = pivot_cols[k]
            lam[k] = e[c] // hp[k][c]
            if lam[k]:
                e = [x - lam[k] * y for x, y in zip(e, hp[k])]
        assert all(x == 0 for x in e)
        over_f = [0] * len(rows)
        for k in range(n):
            if lam[k]:
                over_f = [x + lam[k] * y for x, y in zip(over_f, up[k])]
        sums.append(sum(abs(x) for x in over_f))
    return sums


def dual_candidates(lattice: Lattice, vd: VoronoiData, targets, c: int):
    """All positive-lex dual integer tuples y != 0 with gauge(y, targets) <= c.

    Complete by the bounding-box argument: |y_i| <= c * K_i where K_i comes
    from expressing e_i over the strict generators.  Enumerated by a
    coordinate recursion that prunes on partial pairings.  Sorted by
    (gauge, lex); only one representative per antipodal pair is kept.
    """
    n = lattice.n
    key = ("gen_decomp",)
    sums = lattice._cache.get(key)
    if sums is None:
        sums = _generator_decomposition(vd)
        lattice._cache[key] = sums
    box = [c * k for k in sums]
    tlist = [tuple(v) for v in targets]
    m = len(tlist)
    # slack[i][t]: largest |pairing| the coordinates >= i can still contribute
    slack = [[0] * m for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for t in range(m):
            slack[i][t] = slack[i + 1][t] + abs(tlist[t][i]) * box[i]
    out = []
    y = [0] * n
    partial = [0] * m

    def descend(i: int):
        if i == n:
            g = max(abs(p) for p in partial)
            out.append((Fraction(g), tuple(y)))
            return
        for yi in range(-box[i], box[i] + 1):
            y[i] = yi
            ok = True
            for t in range(m):
                p = partial[t] + yi * tlist[t][i]
                if abs(p) > c + slack[i + 1][t]:
                    ok = False
                    break
            if not ok:
                continue
            saved = partial[:]
            for t in range(m):
                partial[t] += yi * tlist[t][i]
            descend(i + 1)
            partial[:] = saved
        y[i] = 0

    descend(0)
    cands = []
    for g, yy in out:
        if g > c or not any(yy):
            continue
        if positive_rep(yy) != yy:
            continue
        cands.append((g, yy))
    cands.sort()
    return cands


def _find_unimodular_subset(cands, n: int, node_cap: int):
    """First (in candidate order) n-subset forming a unimodular matrix.

    Candidates are (gauge, vector) sorted ascending; the DFS keeps partial
    selections primitive (gcd of all k x k minors equal to 1), which is
    necessary for extension to a basis.  Returns the rows or None.  A quick
    precheck rejects candidate sets that do not even generate Z^n.
    """
    vectors = [v for _, v in cands]
    if len(vectors) < n:
        return None
    h, _ = hnf(vectors)
    piv = hnf_pivot_rows(h)
    if len(piv) != n:
        return None
    prod = 1
    for i in piv:
        last_nonzero = max(j for j in range(n) if h[i][j] != 0)
        prod *= h[i][last_nonzero]
    if abs(prod) != 1:
        return None
    nodes = [0]

    def descend(start: int, chosen):
        k = len(chosen)
        if k == n:
            return list(chosen)
        for idx in range(start, len(vectors)):
            nodes[0] += 1
            if nodes[0] > node_cap:
                raise ResourceLimitError(
                    "basis search exceeded the %d-node cap" % node_cap
                )
            cand = vectors[idx]
            trial = chosen + [cand]
            if gcd_of_minors(trial, k + 1) != 1:
                continue
            found = descend(idx + 1, trial)
            if found is not None:
                return found
        return None

    return descend(0, [])


def _certificate_from_dual_rows(lattice, rows, kind, targets):
    y = mat(rows)
    transform = int_matrix(inverse(y))
    width, witnesses = coefficient_width(lattice, transform, targets)
    return CompactnessCertificate(transform, width, kind, witnesses)


def compute_c(lattice: Lattice, kind: str = "strict", c_max: int | None = None,
              node_cap: int = DEFAULT_SEARCH_NODE_CAP) -> CSearchResult:
    """Exact compactness constant (strict kind) or its weak variant.

    For c = 1, 2, ... collect the dual lattice vectors of gauge <= c over
    the target set and search for n of them forming a dual basis; the
    transform of the certificate is the corresponding primal basis.  When
    no basis exists up to c_max the result carries only the lower bound.
    """
    if kind not in ("strict", "weak"):
        raise ValueError("kind must be 'strict' or 'weak'")
    vd = relevant_vectors(lattice)
    targets = vd.strict if kind == "strict" else vd.weak
    if c_max is None:
        c_max = lattice.n * lattice.n
    for c in range(1, c_max + 1):
        cands = dual_candidates(lattice, vd, targets, c)
        rows = _find_unimodular_subset(cands, lattice.n, node_cap)
        if rows is not None:
            cert = _certificate_from_dual_rows(lattice, rows, kind, targets)
            assert cert.width == c
            return CSearchResult(c, cert, c)
    return CSearchResult(None, None, c_max)


def compute_cbar(lattice: Lattice, c_max: int | None = None, lambdas: bool = True):
    """Relaxed compactness constant: smallest integer c admitting n
    independent dual lattice vectors of gauge <= c over the strict set.

    Returns (cbar, RelaxedCertificate).  When `lambdas` is set, the exact
    successive minima of the gauge are extracted from the final candidate
    set (the set {gauge <= cbar} covers all witnesses, so the greedy values
    are exact) and reported on the certificate for diagnostics.
    """
    vd = relevant_vectors(lattice)
    targets = vd.strict
    n = lattice.n
    if c_max is None:
        c_max = n * n
    for c in range(1, c_max + 1):
        cands = dual_candidates(lattice, vd, targets, c)
        try_add = independent_filter()
        extracted = []
        for g, y in cands:
            if try_add(y):
                extracted.append((g, y))
                if len(extracted) == n:
                    break
        if len(extracted) < n:
            continue
        lam = tuple(g for g, _ in extracted) if lambdas else None
        gens = tuple(y for _, y in extracted)
        return c, RelaxedCertificate(gens, c, lam)
    raise ResourceLimitError("no independent gauge-%d set found up to c = %d" % (n, c_max))


def cbar3_certificate_lambda_n(n: int) -> RelaxedCertificate:
    """The explicit relaxed certificate for the congruence family at a = ceil(n/2).

    Builds the n dual vectors (e_i - e_n)/a plus the all-ones completion
    (1/a) * (1,...,1) for even n or (1/a,...,1/a,2/a) for odd n, verifies
    dual membership, independence, and gauge at most 3, and returns them in
    dual coordinates of the family lattice.
    """
    from . import families

    if n < 4:
        raise ValueError("certificate construction needs n >= 4")
    a = families.default_modulus(n)
    spec = families.FamilySpec("LambdaNA", n, a)
    lattice = families.generate(spec)
    vd = relevant_vectors(lattice)
    ambient = []
    for i in range(n - 1):
        y = [Fraction(0)] * n
        y[i] = Fraction(1, a)
        y[n - 1] = -Fraction(1, a)
        ambient.append(tuple(y))
    if n % 2 == 0:
        last = tuple(Fraction(1, a) for _ in range(n))
    else:
        last = tuple([Fraction(1, a)] * (n - 1) + [Fraction(2, a)])
    ambient.append(last)
    coords = []
    width = 0
    for y in ambient:
        if not families.dual_lambda_n_membership(n, a, y):
            raise AssertionError("certificate vector is not in the dual lattice")
        cy = dual_coords_from_ambient(lattice, y)
        iy = lattice.membership(cy)
        assert iy is not None
        g = gauge(iy, vd.strict)
        assert g <= 3
        width = max(width, int(g) + (0 if g.denominator == 1 else 1))
        coords.append(iy)
    if abs(det(mat(coords))) == 0:
        raise DependenceError("certificate vectors are dependent")
    return RelaxedCertificate(tuple(coords), max(width, 1))


def _saturation_basis(rows):
    """Basis of span(rows) intersected with Z^N (the saturated sublattice)."""
    comp = kernel_basis(rows)
    if not comp:
        return identity(len(rows[0]))
    return kernel_basis(comp)


def _coords_in(basis_rows, v):
    """Rational coordinates of v over the given independent integer rows."""
    import itertools

    m = len(basis_rows)
    ncols = len(basis_rows[0])
    for sel in itertools.combinations(range(ncols), m):
        sub = tuple(tuple(basis_rows[i][j] for j in sel) for i in range(m))
        if det(sub) != 0:
            lam = solve(transpose(sub), tuple(v[j] for j in sel))
            back = [sum(lam[i] * basis_rows[i][j] for i in range(m)) for j in range(ncols)]
            if tuple(back) != tuple(Fraction(x) for x in v):
                raise ValueError("vector is outside the span")
            return lam
    raise DependenceError("basis rows are dependent")


def _int_coords_in(basis_rows, v):
    """Integer coordinates over a saturated basis; integrality is checked."""
    lam = _coords_in(basis_rows, v)
    out = []
    for x in lam:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError("coordinates are not integral")
        out.append(f.numerator)
    return tuple(out)


def _unit_pairing_point(y):
    """Integer x with y . x = 1 for a primitive integer tuple y."""
    n = len(y)
    g = y[0]
    coeff = [0] * n
    coeff[0] = 1
    for i in range(1, n):
        g2, s, t = xgcd(g, y[i])
        coeff = [s * c for c in coeff]
        coeff[i] += t
        g = g2
    if g == -1:
        g, coeff = 1, [-c for c in coeff]
    if g != 1:
        raise ValueError("tuple is not primitive")
    assert dot(coeff, y) == 1
    return tuple(coeff)


def _crosspolytope_coefficients(generators, point):
    """Unique decomposition of a span member over independent generators.

    Membership of `point` in rho * conv(+-generators) is then the exact test
    sum |mu_i| <= rho.
    """
    return _coords_in(generators, point)


def lift_independent_to_basis(dual_lattice: Lattice, vectors):
    """Turn n independent dual lattice vectors into a dual basis with small
    crosspolytope coefficients.

    Produces u_1..u_n, a basis of Z^n (dual coordinates), with u_1 in
    conv(+-v_1) and u_k in (k/2) * conv(+-v_1..+-v_k) for k >= 2.  The inner
    step enumerates the coset x0 + <u_1..u_{k-1}> near the fractional target
    within the crosspolytope bound.  Raises DependenceError on dependent
    input.
    """
    vs = [tuple(int(x) for x in v) for v in vectors]
    n = dual_lattice.n
    if len(vs) != n or len(vs[0]) != n:
        raise ValueError("need n independent vectors of length n")
    if det(mat(vs)) == 0:
        raise DependenceError("input vectors are dependent")
    us = []
    for k in range(1, n + 1):
        if k == 1:
            g = 0
            for x in vs[0]:
                g = gcd(g, x)
            us.append(tuple(x // g for x in vs[0]))
            continue
        sat = _saturation_basis(vs[:k])
        assert len(sat) == k
        a_rows = [_int_coords_in(sat, u) for u in us]
        vk = _int_coords_in(sat, vs[k - 1])
        b_rows = [_int_coords_in(sat, v) for v in vs[: k - 1]]
        kern = kernel_basis(a_rows)
        assert len(kern) == 1
        y = kern[0]
        t_pair = dot(y, vk)
        assert t_pair != 0
        if abs(t_pair) == 1:
            uk_coords = vk if t_pair == 1 else vneg(vk)
        else:
            x0 = _unit_pairing_point(y)
            target = tuple(Fraction(x, t_pair) for x in vk)
            uk_coords = _coset_point_in_crosspolytope(
                x0, a_rows, b_rows, target, Fraction(k - 1, 2)
            )
        uk = tuple(
            sum(uk_coords[i] * sat[i][j] for i in range(k)) for j in range(n)
        )
        mu = _crosspolytope_coefficients(vs[:k], uk)
        bound = max(Fraction(k, 2), Fraction(1))
        assert sum(abs(m) for m in mu) <= bound, "lifted vector escapes the crosspolytope"
        us.append(uk)
    if abs(det(mat(us))) != 1:
        raise AssertionError("lift did not produce a dual basis")
    return tuple(us)


def _coset_point_in_crosspolytope(x0, step_rows, gen_rows, target, rho):
    """Point of x0 + span_Z(step_rows) inside target + rho * conv(+-gen_rows).

    All rows live in Z^k with step_rows and gen_rows spanning the same
    (k-1)-dimensional subspace; the translate always contains a point by the
    covering bound, and the lexicographically smallest gauge minimizer is
    returned for determinism.
    """
    import itertools
    import math

    m = len(gen_rows)
    kdim = len(x0)
    sel = None
    bsub = None
    for cols in itertools.combinations(range(kdim), m):
        sub = tuple(tuple(row[j] for j in cols) for row in gen_rows)
        if det(sub) != 0:
            sel = cols
            bsub = sub
            break
    assert sel is not None
    bsub_inv = inverse(transpose(bsub))
    base = tuple(Fraction(x0[j]) - target[j] for j in sel)
    mu0 = mat_vec(bsub_inv, base)
    m_rows = [mat_vec(bsub_inv, tuple(row[j] for j in sel)) for row in step_rows]
    # mu(c) = mu0 + sum_i c_i * m_rows[i]; invert to bound the c box
    minv = inverse(mat(m_rows))
    centers = mat_vec(transpose(minv), tuple(-x for x in mu0))
    ranges = []
    for i, ci in enumerate(centers):
        ri = rho * sum(abs(minv[j][i]) for j in range(m))
        ranges.append(range(math.ceil(ci - ri), math.floor(ci + ri) + 1))
    best = None
    for cs in itertools.product(*ranges):
        mu = list(mu0)
        for i, ci in enumerate(cs):
            if ci:
                mu = [x + ci * y for x, y in zip(mu, m_rows[i])]
        norm = sum(abs(x) for x in mu)
        if norm <= rho:
            point = list(x0)
            for i, ci in enumerate(cs):
                if ci:
                    point = [p + ci * s for p, s in zip(point, step_rows[i])]
            key = (norm, tuple(point))
            if best is None or key < best:
                best = key
    assert best is not None, "crosspolytope translate misses the coset"
    return best[1]


def n2_compact_basis(lattice: Lattice):
    """The quadratic-width basis from the recursive dual construction.

    Picks a dual vector minimizing the support function of the Voronoi
    cell, sections the lattice along it, recurses, and lifts the
    sub-basis back with carry coefficients in [-1/2, 1/2).  Returns
    (transform, width); the width is certified against the strict set and
    is always at most n^2.
    """
    rows = _n2_dual_rows(lattice)
    y = mat(rows)
    assert abs(det(y)) == 1
    transform = int_matrix(inverse(y))
    vd = relevant_vectors(lattice)
    width, _ = coefficient_width(lattice, transform, vd.strict)
    assert width <= lattice.n**2, "construction exceeded its quadratic width bound"
    return transform, width


def _support_minimal_dual_vector(lattice: Lattice, vd: VoronoiData):
    """Dual lattice vector minimizing the support function of the cell.

    Uses the packing-radius lower bound h(y)^2 >= (min_norm/4) ||y||^2 to
    keep the Euclidean search ball tight: start from the ball that covers
    every y with h(y) <= 1 and enlarge it to the sound radius implied by
    the best value found so far.  The optimum exists within the ball for
    h <= (7/10) n, a rational over-approximation of the 2n/pi bound.
    """
    n = lattice.n
    dual = lattice.dual()
    min_norm = min(vd.norm2[v] for v in vd.strict)
    quarter = min_norm / 4
    cap2 = Fraction(49 * n * n * 4, 100) / min_norm
    bound2 = min(Fraction(4) / min_norm, cap2)
    best_h = None
    best_y = None
    while True:
        cands = [
            p
            for p in points_in_ball(dual, None, bound2)
            if any(p) and positive_rep(p) == p
        ]
        cands.sort(key=lambda p: (dual.norm2(p), p))
        for y in cands:
            if best_h is not None and quarter * dual.norm2(y) >= best_h * best_h:
                break
            h = support_function(vd, lattice, y)
            if best_h is None or h < best_h:
                best_h, best_y = h, y
        if best_h is None:
            assert bound2 < cap2, "theory ball cannot be empty of dual vectors"
            bound2 = min(4 * bound2, cap2)
            continue
        sound2 = best_h * best_h / quarter
        if sound2 <= bound2 or bound2 >= cap2:
            break
        bound2 = min(sound2, cap2)
    assert best_y is not None
    assert best_h <= Fraction(7 * n, 10)
    return best_y


def _n2_dual_rows(lattice: Lattice):
    n = lattice.n
    if n == 1:
        return ((1,),)
    vd = relevant_vectors(lattice)
    best_y = _support_minimal_dual_vector(lattice, vd)
    g = 0
    for x in best_y:
        g = gcd(g, x)
    assert g == 1, "a support-minimal dual vector is automatically primitive"
    section, _ = sublattice_section(lattice, best_y)
    _, lift = project_dual(lattice, best_y)
    sub_rows = _n2_dual_rows(section)
    rows = [best_y]
    for r in sub_rows:
        lifted = lift(r)
        rows.append(tuple(int(x) for x in lifted))
    return tuple(rows)


def binary_generating_set(transform, width: int):
    """The doubling generating set {2^j b_i : 0 <= j <= floor(log2 width)}."""
    if width < 1:
        raise ValueError("width must be at least 1")
    m = width.bit_length() - 1
    cols = transpose(mat(transform))
    out = []
    for col in cols:
        for j in range(m + 1):
            out.append(vscale(2**j, col))
    return tuple(out)


def signed_binary_digits(alpha: int, m: int):
    """Digits sigma_j in {-1,0,1} with alpha = sum 2^j sigma_j, j <= m."""
    if abs(alpha) >= 2 ** (m + 1):
        raise ValueError("coefficient out of range for %d digits" % (m + 1))
    sign = 1 if alpha >= 0 else -1
    bits = []
    a = abs(alpha)
    for _ in range(m + 1):
        bits.append(sign * (a & 1))
        a >>= 1
    return tuple(bits)


def binary_witness(transform, width: int, target):
    """Signed digit matrix reconstructing target over the doubling set."""
    m = width.bit_length() - 1
    tm = mat(transform)
    tinv = int_matrix(inverse(tm))
    coeffs = mat_vec(tinv, target)
    digits = [signed_binary_digits(a, m) for a in coeffs]
    # audit: recombine
    n = len(coeffs)
    cols = transpose(tm)
    acc = [0] * n
    for i in range(n):
        for j in range(m + 1):
            if digits[i][j]:
                acc = [x + digits[i][j] * (2**j) * y for x, y in zip(acc, cols[i])]
    assert tuple(acc) == tuple(target)
    return tuple(digits)


@dataclass
class SuperbasisResult:
    accepted: bool
    reason: str | None
    transform: Mat | None = None
    width: int | None = None


def obtuse_superbasis(lattice: Lattice, vectors) -> SuperbasisResult:
    """Check an obtuse superbasis and extract its compact basis.

    Accepts n+1 coefficient tuples b_0..b_n when they sum to zero, have
    pairwise nonpositive Gram inner products, and b_1..b_n form a basis;
    the returned transform is that basis with its width certified against
    the strict relevant vectors (always 1 on acceptance).
    """
    vs = [tuple(int(x) for x in v) for v in vectors]
    n = lattice.n
    if len(vs) != n + 1:
        raise ValueError("need n+1 vectors")
    total = [0] * n
    for v in vs:
        total = [a + b for a, b in zip(total, v)]
    if any(total):
        return SuperbasisResult(False, "sum")
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if lattice.inner(vs[i], vs[j]) > 0:
                return SuperbasisResult(False, "obtuseness")
    transform = transpose(mat(vs[1:]))
    if abs(det(transform)) != 1:
        return SuperbasisResult(False, "rank")
    vd = relevant_vectors(lattice)
    width, _ = coefficient_width(lattice, transform, vd.strict)
    return SuperbasisResult(True, None, transform, width)


def d4_punctured_basis(lattice: Lattice, y):
    """The width-2 puncture basis of the checkerboard lattice in rank 4.

    Input y is a coefficient tuple whose ambient image is a +-1 vector (a
    norm-4 coset minimizer).  The dual basis {y/2, e_1, e_2, e_3} in ambient
    coordinates is inverted into a primal basis transform; the result keeps
    every +-1 weak vector except +-y at width 1 and +-y itself at width 2.
    """
    if lattice.ambient_basis is None or lattice.n != 4:
        raise ValueError("lattice must be the rank-4 checkerboard lattice with ambient basis")
    amb = mat_vec(lattice.ambient_basis, tuple(int(x) for x in y))
    if sorted(abs(x) for x in amb) != [1, 1, 1, 1]:
        raise ValueError("vector is not a norm-4 weak coset minimizer")
    dual_cols = [tuple(Fraction(x, 2) for x in amb)]
    for i in range(3):
        e = [Fraction(0)] * 4
        e[i] = Fraction(1)
        dual_cols.append(tuple(e))
    dual_mat = transpose(mat(dual_cols))
    primal = transpose(inverse(dual_mat))
    amb_inv = inverse(lattice.ambient_basis)
    transform = int_matrix(mat_mul(amb_inv, primal))
    if abs(det(transform)) != 1:
        raise AssertionError("puncture construction must be unimodular")
    return transform


def verify_certificate(lattice: Lattice, cert: CompactnessCertificate) -> None:
    """Re-derive the width of a certificate; raise CertificateUnsoundError on drift."""
    vd = relevant_vectors(lattice)
    targets = vd.strict if cert.kind == "strict" else vd.weak
    try:
        width, witnesses = coefficient_width(lattice, cert.transform, targets)
    except NonUnimodularError as exc:
        raise CertificateUnsoundError(str(exc))
    if width != cert.width:
        raise CertificateUnsoundError(
            "stored width %d, recomputed %d" % (cert.width, width)
        )
    for v, w in cert.witnesses.items():
        if witnesses.get(tuple(v)) != tuple(w):
            raise CertificateUnsoundError("witness mismatch for %s" % (v,))


def format_latcert(cert: CompactnessCertificate) -> str:
    """Serialize to the "latcert v1" text format."""
    n = len(cert.transform)
    lines = ["latcert 1 n=%d kind=%s width=%d" % (n, cert.kind, cert.width)]
    lines.append("transform")
    for row in cert.transform:
        lines.append(" ".join(str(x) for x in row))
    lines.append("witnesses %d" % len(cert.witnesses))
    for v in sorted(cert.witnesses):
        w = cert.witnesses[v]
        lines.append(
            "%s : %s" % (" ".join(str(x) for x in v), " ".join(str(x) for x in w))
        )
    return "\n".join(lines) + "\n"


def parse_latcert(text: str) -> CompactnessCertificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedInputError("empty latcert file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "latcert" or head[1] != "1":
        raise MalformedInputError("bad latcert header: %r" % lines[0])
    fields = {}
    for part in head[2:]:
        if "=" not in part:
            raise MalformedInputError("bad latcert header field: %r" % part)
        key, _, value = part.partition("=")
        fields[key] = value
    try:
        n = int(fields.get("n", ""))
        width = int(fields.get("width", ""))
    except ValueError:
        raise MalformedInputError("bad latcert header fields")
    kind = fields.get("kind")
    if kind not in ("strict", "weak") or n <= 0 or width < 0:
        raise MalformedInputError("bad latcert header fields")
    if len(lines) < 2 + n or lines[1] != "transform":
        raise MalformedInputError("missing transform block")
    try:
        transform = mat(tuple(int(x) for x in lines[2 + i].split()) for i in range(n))
    except ValueError:
        raise MalformedInputError("bad transform entries")
    if any(len(row) != n for row in transform):
        raise MalformedInputError("transform must be %d x %d" % (n, n))
    idx = 2 + n
    witnesses = {}
    if idx < len(lines):
        head = lines[idx].split()
        if len(head) != 2 or head[0] != "witnesses":
            raise MalformedInputError("bad witnesses header: %r" % lines[idx])
        try:
            count = int(head[1])
        except ValueError:
            raise MalformedInputError("bad witness count")
        if len(lines) != idx + 1 + count:
            raise MalformedInputError("witness block has wrong length")
        for ln in lines[idx + 1:]:
            if ":" not in ln:
                raise MalformedInputError("bad witness line: %r" % ln)
            left, right = ln.split(":")
            try:
                v = tuple(int(x) for x in left.split())
                w = tuple(int(x) for x in right.split())
            except ValueError:
                raise MalformedInputError("bad witness entries: %r" % ln)
            if len(v) != n or len(w) != n:
                raise MalformedInputError("witness length mismatch")
            witnesses[v] = w
    return CompactnessCertificate(transform, width, kind, witnesses)
