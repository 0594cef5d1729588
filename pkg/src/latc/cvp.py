"""Closest-vector search: the iterative facet walk with scaling outer loop.

Two candidate sources feed the walk: a materialized relevant-vector list,
or a stream over {Bz : ||z||_inf <= c} generated odometer-style from a
compactness certificate.  The streaming source never materializes its
vectors, which is the whole point: solver state is the target, the running
best violation, and loop counters.

The walk itself runs over cleared denominators, so every comparison in the
hot loop is integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .compactness import CompactnessCertificate
from .errors import CertificateUnsoundError
from .lattice import Lattice, fraction_tuple
from .linalg import Vec, transpose
from .voronoi import VoronoiData, in_dilated_cell


@dataclass
class CvpSolution:
    closest: Vec
    dist2: Fraction
    scale_k: int
    iterations: int
    candidates_scanned: int
    peak_live_vectors: int


def candidate_stream(cert: CompactnessCertificate):
    """Yield all (2c+1)^n - 1 nonzero bounded combinations of the certified basis.

    Fixed odometer order over coefficient tuples; nothing is materialized.
    """
    c = cert.width
    cols = transpose(cert.transform)
    n = len(cols)
    for z in product(range(-c, c + 1), repeat=n):
        if not any(z):
            continue
        yield tuple(sum(z[i] * cols[i][j] for i in range(n)) for j in range(n))


class MaterializedCandidates:
    """Candidate source backed by an explicit relevant-vector list."""

    kind = "materialized"

    def __init__(self, vd: VoronoiData):
        self.vectors = vd.strict
        # the list itself is held live, plus target/best/current loop state
        self.peak_live_vectors = len(self.vectors) + 3

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


class StreamingCandidates:
    """Candidate source streaming from a compactness certificate."""

    kind = "streaming"

    def __init__(self, cert: CompactnessCertificate):
        self.cert = cert
        self.n = len(cert.transform)
        # target, current candidate, best violation: constant live state
        self.peak_live_vectors = 3

    def __iter__(self):
        return candidate_stream(self.cert)

    def __len__(self):
        return (2 * self.cert.width + 1) ** self.n - 1


def _denominator_lcm(values) -> int:
    from math import gcd

    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // gcd(out, d)
    return out


class _WalkState:
    """Integer-cleared walk arithmetic shared by the scale probe and the loop."""

    def __init__(self, lattice: Lattice, target):
        t = fraction_tuple(target)
        self.n = lattice.n
        gd = _denominator_lcm(x for row in lattice.gram for x in row)
        self.gram_int = tuple(tuple(int(x * gd) for x in row) for row in lattice.gram)
        self.gram_den = gd
        td = _denominator_lcm(t)
        self.t_den = td
        self.tau = [int(x * td) for x in t]
        self.scanned = 0

    def pairing(self, p) -> int:
        # tau^T Gi p, proportional to <t, p> by t_den * gram_den
        gi = self.gram_int
        tau = self.tau
        n = self.n
        acc = 0
        for i in range(n):
            pi = p[i]
            if pi:
                row = gi[i]
                acc += pi * sum(tau[j] * row[j] for j in range(n))
        return acc

    def norm_scaled(self, p) -> int:
        # p^T Gi p, proportional to ||p||^2 by gram_den
        gi = self.gram_int
        n = self.n
        acc = 0
        for i in range(n):
            pi = p[i]
            if pi:
                row = gi[i]
                acc += pi * sum(p[j] * row[j] for j in range(n))
        return acc

    def has_violation(self, source, scale: int) -> bool:
        td = self.t_den
        for p in source:
            self.scanned += 1
            if 2 * self.pairing(p) > scale * td * self.norm_scaled(p):
                return True
        return False

    def max_violation(self, source, scale: int):
        """Most violated candidate at this scale: max ratio, ties by lex."""
        td = self.t_den
        best = None  # (num, den, vector) with ratio num/den
        for p in source:
            self.scanned += 1
            num = 2 * self.pairing(p)
            den = self.norm_scaled(p)
            if num <= scale * td * den:
                continue
            if best is None or num * best[1] > best[0] * den or (
                num * best[1] == best[0] * den and p < best[2]
            ):
                best = (num, den, tuple(p))
        return None if best is None else best[2]

    def subtract(self, p, scale: int):
        td = self.t_den
        self.tau = [x - scale * td * pi for x, pi in zip(self.tau, p)]

    def current_target(self):
        td = self.t_den
        return tuple(Fraction(x, td) for x in self.tau)

    def dist2(self) -> Fraction:
        acc = 0
        for i in range(self.n):
            xi = self.tau[i]
            if xi:
                row = self.gram_int[i]
                acc += xi * sum(self.tau[j] * row[j] for j in range(self.n))
        return Fraction(acc, self.t_den * self.t_den * self.gram_den)


def _scale_level(state: _WalkState, source) -> int:
    """Smallest k >= 0 with no violated inequality at dilation 2^k.

    Doubling first, then binary refinement of the exponent.
    """
    if not state.has_violation(source, 1):
        return 0
    lo = 0  # violated at 2^lo
    hi = 1
    while state.has_violation(source, 2**hi):
        lo = hi
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if state.has_violation(source, 2**mid):
            lo = mid
        else:
            hi = mid
    return hi


def mv_walk(lattice: Lattice, source, target, check_vd: VoronoiData | None = None,
            collect_level_stats: bool = False):
    """Walk the target into the Voronoi cell by subtracting violated facets.

    The candidate source must cover the strict relevant vectors.  Scaling:
    the walk starts at the smallest k with target inside 2^k V and works
    one power of two at a time; within a level it always subtracts the
    candidate with the largest violation ratio (ties broken by lex order).
    Returns a CvpSolution; when check_vd is given the final residue is
    verified against the true facet description and a failure raises
    CertificateUnsoundError.
    """
    state = _WalkState(lattice, target)
    k = _scale_level(state, source)
    iterations = 0
    acc = [0] * lattice.n
    level_stats = []
    for level in range(k, 0, -1):
        scale = 2 ** (level - 1)
        level_iters = 0
        while True:
            p = state.max_violation(source, scale)
            if p is None:
                break
            state.subtract(p, scale)
            acc = [a + scale * pi for a, pi in zip(acc, p)]
            iterations += 1
            level_iters += 1
        level_stats.append(level_iters)
        if check_vd is not None and not in_dilated_cell(
            check_vd, lattice, state.current_target(), Fraction(scale)
        ):
            raise CertificateUnsoundError(
                "walk stalled outside the dilated cell: candidate source "
                "does not cover the relevant vectors"
            )
    solution = CvpSolution(
        closest=tuple(acc),
        dist2=state.dist2(),
        scale_k=k,
        iterations=iterations,
        candidates_scanned=state.scanned,
        peak_live_vectors=getattr(source, "peak_live_vectors", len(source) + 3),
    )
    if collect_level_stats:
        return solution, level_stats
    return solution


def cvp_compact(lattice: Lattice, cert: CompactnessCertificate, target,
                check_vd: VoronoiData | None = None):
    """Closest vector using only the certificate's polynomial-size data."""
    return mv_walk(lattice, StreamingCandidates(cert), target, check_vd=check_vd)


def cvp_materialized(lattice: Lattice, vd: VoronoiData, target):
    """Closest vector with the relevant-vector table held in memory."""
    return mv_walk(lattice, MaterializedCandidates(vd), target, check_vd=vd)
