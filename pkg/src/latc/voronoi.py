"""Voronoi relevant vectors, the facet description, and the support function.

Strictly relevant vectors are the residue classes mod 2L with exactly one
antipodal pair of shortest vectors; weakly relevant vectors are all coset
minimizers (every nonzero residue contributes).  Canonical order everywhere:
antipodal pairs sorted by their positive-lex representative, the positive
representative first within a pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .enumeration import shortest_in_coset
from .lattice import Lattice, fraction_tuple
from .linalg import Vec, dot, mat_vec, simplex_min_eq, vneg


def positive_rep(v: Vec) -> Vec:
    """The representative of {v, -v} whose first nonzero coefficient is positive."""
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return vneg(v)
    return v


def _paired_order(vectors):
    """Sort a negation-closed set into (rep, -rep) pairs by rep, lex."""
    reps = sorted({positive_rep(v) for v in vectors})
    out = []
    for r in reps:
        out.append(r)
        out.append(vneg(r))
    return tuple(out)


@dataclass
class VoronoiData:
    """Strict and weak relevant vectors with their squared norms."""

    strict: tuple
    weak: tuple
    norm2: dict

    def strict_pairs(self):
        return [self.strict[i] for i in range(0, len(self.strict), 2)]

    def weak_pairs(self):
        return [self.weak[i] for i in range(0, len(self.weak), 2)]


def relevant_vectors(lattice: Lattice, coset_limit: int = 12, cap=None) -> VoronoiData:
    """Compute the strict and weak relevant vector sets by coset enumeration.

    A residue class contributes all its minimizers to the weak set, and
    contributes to the strict set exactly when it has a single antipodal
    pair of minimizers.
    """
    cached = lattice._cache.get("voronoi")
    if cached is not None:
        return cached
    strict = []
    weak = []
    norms = {}
    for residue in lattice.cosets_mod_2(limit=coset_limit):
        cs = shortest_in_coset(lattice, residue, cap=cap)
        for v in cs.minimizers:
            weak.append(v)
            norms[v] = cs.min_norm2
        if len(cs.minimizers) == 2:
            strict.extend(cs.minimizers)
    vd = VoronoiData(_paired_order(strict), _paired_order(weak), norms)
    lattice._cache["voronoi"] = vd
    return vd


def in_dilated_cell(vd: VoronoiData, lattice: Lattice, x, s) -> bool:
    """Whether x lies in s * V, tested against the strict facet description."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("dilation factor must be positive")
    xf = fraction_tuple(x)
    for v in vd.strict:
        if 2 * lattice.inner(xf, v) > s * vd.norm2[v]:
            return False
    return True


def support_function(vd: VoronoiData, lattice: Lattice, y) -> Fraction:
    """Exact support function of the Voronoi cell at a dual vector y.

    Evaluates max { <x, y> : x in V } through the LP dual of the facet
    description: minimize sum_v mu_v ||v||^2 over mu >= 0 subject to
    sum_v mu_v (2 G v) = y.  The dual has only n equality rows, which keeps
    the exact pivoting cheap even with many facets.
    """
    yf = fraction_tuple(y)
    if all(c == 0 for c in yf):
        return Fraction(0)
    cols = lattice._cache.get("support_columns")
    if cols is None:
        cols = [tuple(2 * c for c in mat_vec(lattice.gram, v)) for v in vd.strict]
        lattice._cache["support_columns"] = cols
    m = len(cols)
    n = lattice.n
    a_rows = [[cols[j][i] for j in range(m)] for i in range(n)]
    cost = [vd.norm2[v] for v in vd.strict]
    value, _ = simplex_min_eq(cost, a_rows, yf)
    return value


def format_relevant(vd: VoronoiData) -> str:
    """CLI emission: one `F ...`/`C ...` line per vector plus a count summary."""
    lines = []
    strict_set = set(vd.strict)
    for v in vd.strict:
        lines.append("F %s norm2=%d/%d" % (
            " ".join(str(c) for c in v),
            vd.norm2[v].numerator,
            vd.norm2[v].denominator,
        ))
    for v in vd.weak:
        if v in strict_set:
            continue
        lines.append("C %s norm2=%d/%d" % (
            " ".join(str(c) for c in v),
            vd.norm2[v].numerator,
            vd.norm2[v].denominator,
        ))
    lines.append("|F|=%d |C|=%d" % (len(vd.strict), len(vd.weak)))
    return "\n".join(lines) + "\n"
