"""Command-line surface.

Every command prints deterministic, byte-stable text for fixed inputs and
seeds: rationals as p/q, vectors as space- or comma-separated integers,
matrices row per line.  Exit codes: 0 success, 1 usage error, 2 malformed
input file, 3 resource limit exceeded, 4 unsound certificate.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import compactness as comp
from . import cvp as cvpmod
from . import families
from .enumeration import cvp_bruteforce
from .errors import (
    CertificateUnsoundError,
    LatcError,
    MalformedInputError,
    ResourceLimitError,
)
from .lattice import Lattice, format_latgram, parse_latgram
from .linalg import mat
from .voronoi import format_relevant, relevant_vectors


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _frac_str(x) -> str:
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInputError("cannot read %s: %s" % (path, exc))


def _load_lattice(path: str) -> Lattice:
    return parse_latgram(_read_text(path))


def _load_int_matrix(path: str):
    rows = []
    for ln in _read_text(path).splitlines():
        ln = ln.strip()
        if not ln:
            continue
        try:
            rows.append(tuple(int(x) for x in ln.split()))
        except ValueError:
            raise MalformedInputError("bad integer row: %r" % ln)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise MalformedInputError("matrix rows must be nonempty and equal length")
    return mat(rows)


def _parse_target(text: str, n: int):
    parts = text.split(",")
    if len(parts) != n:
        raise MalformedInputError("target needs %d comma-separated rationals" % n)
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise MalformedInputError("bad rational in target %r" % text)


def _emit(out, text: str):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _family_lattice(args) -> Lattice:
    spec = families.FamilySpec(args.family, args.n, getattr(args, "a", None))
    return families.generate(spec)


def cmd_gen(args, out):
    lat = _family_lattice(args)
    text = format_latgram(lat)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _relevant_parallel(lat: Lattice, jobs: int, cap):
    """Deterministic parallel coset sweep; results re-sorted canonically."""
    from concurrent.futures import ProcessPoolExecutor

    from .voronoi import VoronoiData, _paired_order

    residues = list(lat.cosets_mod_2())
    gram_text = format_latgram(lat)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_coset_worker, [(gram_text, r) for r in residues]))
    strict = []
    weak = []
    norms = {}
    for _, min_norm, minimizers in sorted(results):
        for v in minimizers:
            weak.append(v)
            norms[v] = min_norm
        if len(minimizers) == 2:
            strict.extend(minimizers)
    vd = VoronoiData(_paired_order(strict), _paired_order(weak), norms)
    lat._cache["voronoi"] = vd
    return vd


def _coset_worker(payload):
    gram_text, residue = payload
    from .enumeration import shortest_in_coset

    lat = parse_latgram(gram_text)
    cs = shortest_in_coset(lat, residue)
    return residue, cs.min_norm2, cs.minimizers


def cmd_relvec(args, out):
    lat = _load_lattice(args.lattice)
    if args.jobs > 1:
        vd = _relevant_parallel(lat, args.jobs, args.cap)
    else:
        vd = relevant_vectors(lat, coset_limit=args.coset_limit, cap=args.cap)
    out.write(format_relevant(vd))
    return 0


def cmd_certify(args, out):
    lat = _load_lattice(args.lattice)
    if args.cert:
        cert = comp.parse_latcert(_read_text(args.cert))
        comp.verify_certificate(lat, cert)
        _emit(out, "width=%d kind=%s ok" % (cert.width, cert.kind))
        return 0
    if not args.basis:
        raise UsageError("certify needs --basis or --cert")
    transform = _load_int_matrix(args.basis)
    vd = relevant_vectors(lat)
    targets = vd.strict if args.kind == "strict" else vd.weak
    width, _ = comp.coefficient_width(lat, transform, targets)
    _emit(out, "width=%d kind=%s" % (width, args.kind))
    return 0


def cmd_compactness(args, out):
    lat = _load_lattice(args.lattice)
    c_max = args.max_c if args.max_c else lat.n * lat.n
    result = comp.compute_c(lat, kind=args.kind, c_max=c_max)
    label = "c" if args.kind == "strict" else "chi"
    if result.value is None:
        _emit(out, "%s>%d" % (label, result.searched_up_to))
        return 0
    _emit(out, "%s=%d" % (label, result.value))
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(comp.format_latcert(result.certificate))
    return 0


def cmd_relaxed(args, out):
    lat = _load_lattice(args.lattice)
    c_max = args.max_c if args.max_c else lat.n * lat.n
    cbar, cert = comp.compute_cbar(lat, c_max=c_max, lambdas=not args.no_lambdas)
    if cert.lambdas:
        _emit(out, "cbar=%d lambda_n=%s" % (cbar, _frac_str(cert.lambdas[-1])))
    else:
        _emit(out, "cbar=%d" % cbar)
    for y in cert.generators:
        _emit(out, "g %s" % " ".join(str(c) for c in y))
    if args.check_lambda_na:
        n, a = args.check_lambda_na
        expected = families.generate(families.FamilySpec("LambdaNA", n, a))
        if expected.gram != lat.gram:
            raise MalformedInputError(
                "lattice file does not match the congruence family (n=%d, a=%d)" % (n, a)
            )
        explicit = comp.cbar3_certificate_lambda_n(n)
        assert explicit.width <= 3
        assert cbar <= explicit.width
        _emit(out, "lambda-check n=%d a=%d width=%d ok" % (n, a, explicit.width))
    return 0


def cmd_n2basis(args, out):
    lat = _load_lattice(args.lattice)
    transform, width = comp.n2_compact_basis(lat)
    _emit(out, "transform")
    for row in transform:
        _emit(out, " ".join(str(x) for x in row))
    _emit(out, "width=%d bound=%d" % (width, lat.n * lat.n))
    return 0


def cmd_gens(args, out):
    lat = _load_lattice(args.lattice)
    cert = comp.parse_latcert(_read_text(args.cert))
    comp.verify_certificate(lat, cert)
    gens = comp.binary_generating_set(cert.transform, cert.width)
    m = cert.width.bit_length() - 1
    _emit(out, "gens n=%d c=%d M=%d size=%d" % (lat.n, cert.width, m, len(gens)))
    for g in gens:
        _emit(out, "g %s" % " ".join(str(x) for x in g))
    vd = relevant_vectors(lat)
    for v in vd.strict:
        digits = comp.binary_witness(cert.transform, cert.width, v)
        flat = " ".join(
            ",".join(str(d) for d in row) for row in digits
        )
        _emit(out, "witness %s : %s" % (" ".join(str(x) for x in v), flat))
    return 0


def cmd_superbasis(args, out):
    lat = _load_lattice(args.lattice)
    vectors = _load_int_matrix(args.vectors)
    if len(vectors) != lat.n + 1:
        raise MalformedInputError("superbasis file needs n+1 rows")
    result = comp.obtuse_superbasis(lat, vectors)
    if not result.accepted:
        _emit(out, "reject reason=%s" % result.reason)
        return 0
    _emit(out, "accept width=%d" % result.width)
    for row in result.transform:
        _emit(out, " ".join(str(x) for x in row))
    return 0


def _solution_line(sol) -> str:
    return "closest=%s dist2=%s k=%d iters=%d scanned=%d peak=%d" % (
        ",".join(str(x) for x in sol.closest),
        _frac_str(sol.dist2),
        sol.scale_k,
        sol.iterations,
        sol.candidates_scanned,
        sol.peak_live_vectors,
    )


def cmd_cvp(args, out):
    lat = _load_lattice(args.lattice)
    cert = comp.parse_latcert(_read_text(args.cert))
    target = _parse_target(args.target, lat.n)
    check_vd = relevant_vectors(lat) if args.check else None
    sol = cvpmod.cvp_compact(lat, cert, target, check_vd=check_vd)
    _emit(out, _solution_line(sol))
    return 0


def cmd_oracle(args, out):
    lat = _load_lattice(args.lattice)
    target = _parse_target(args.target, lat.n)
    closest, dist2 = cvp_bruteforce(lat, target, cap=args.cap)
    _emit(
        out,
        "closest=%s dist2=%s ties=%d"
        % (",".join(str(x) for x in closest[0]), _frac_str(dist2), len(closest)),
    )
    return 0


def _bench_target_row(payload):
    gram_text, cert_text, strict, norms, idx, target = payload
    lat = parse_latgram(gram_text)
    cert = comp.parse_latcert(cert_text)
    from .voronoi import VoronoiData

    vd = VoronoiData(strict, strict, dict(norms))
    target = tuple(Fraction(x) for x in target)
    mat_sol = cvpmod.mv_walk(lat, cvpmod.MaterializedCandidates(vd), target)
    str_sol = cvpmod.cvp_compact(lat, cert, target)
    agree = mat_sol.dist2 == str_sol.dist2
    return idx, mat_sol, str_sol, agree


def cmd_bench(args, out):
    lat = _family_lattice(args)
    vd = relevant_vectors(lat)
    c_max = args.max_c if args.max_c else lat.n * lat.n
    result = comp.compute_c(lat, c_max=c_max)
    if result.value is None:
        raise ResourceLimitError("no certificate found up to c=%d" % c_max)
    cert = result.certificate
    rng = random.Random(args.seed)
    targets = []
    for _ in range(args.targets):
        den = rng.randint(1, 7)
        targets.append(
            tuple(Fraction(rng.randint(-6 * den, 6 * den), den) for _ in range(lat.n))
        )
    _emit(
        out,
        "bench family=%s n=%d a=%s targets=%d seed=%d c=%d |F|=%d"
        % (
            args.family,
            args.n,
            args.a if args.a is not None else "-",
            args.targets,
            args.seed,
            result.value,
            len(vd.strict),
        ),
    )
    header = "%4s  %-12s %2s %6s %6s %9s %9s %9s %9s" % (
        "idx", "dist2", "k", "it_mat", "it_str", "scan_mat", "scan_str", "peak_mat", "peak_str"
    )
    _emit(out, header)
    payloads = [
        (format_latgram(lat), comp.format_latcert(cert), vd.strict,
         tuple(vd.norm2.items()), i, tuple(map(str, t)))
        for i, t in enumerate(targets)
    ]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = sorted(pool.map(_bench_target_row, payloads))
    else:
        rows = [_bench_target_row(p) for p in payloads]
    all_agree = True
    peak_mat = peak_str = 0
    for idx, mat_sol, str_sol, agree in rows:
        all_agree = all_agree and agree
        peak_mat = max(peak_mat, mat_sol.peak_live_vectors)
        peak_str = max(peak_str, str_sol.peak_live_vectors)
        _emit(
            out,
            "%4d  %-12s %2d %6d %6d %9d %9d %9d %9d"
            % (
                idx,
                _frac_str(mat_sol.dist2),
                mat_sol.scale_k,
                mat_sol.iterations,
                str_sol.iterations,
                mat_sol.candidates_scanned,
                str_sol.candidates_scanned,
                mat_sol.peak_live_vectors,
                str_sol.peak_live_vectors,
            ),
        )
    if not all_agree:
        raise CertificateUnsoundError("materialized and streaming answers disagree")
    _emit(out, "summary peak_mat=%d peak_str=%d agree=%d/%d" % (
        peak_mat, peak_str, len(rows), len(rows)))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="latc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_flags(p, bench=False):
        p.add_argument("--family", required=True, choices=families.FAMILIES)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=int, default=None)

    p = sub.add_parser("gen", help="write a lattice file for a built-in family")
    add_family_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("relvec", help="strict and weak relevant vectors")
    p.add_argument("lattice")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--coset-limit", type=int, default=12)
    p.set_defaults(func=cmd_relvec)

    p = sub.add_parser("certify", help="width of a basis or stored certificate")
    p.add_argument("lattice")
    p.add_argument("--basis", default=None)
    p.add_argument("--cert", default=None)
    p.add_argument("--kind", choices=("strict", "weak"), default="strict")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("compactness", help="exact compactness constant search")
    p.add_argument("lattice")
    p.add_argument("--kind", choices=("strict", "weak"), default="strict")
    p.add_argument("--max-c", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_compactness)

    p = sub.add_parser("relaxed", help="relaxed compactness constant")
    p.add_argument("lattice")
    p.add_argument("--max-c", type=int, default=None)
    p.add_argument("--no-lambdas", action="store_true")
    p.add_argument("--check-lambda-na", nargs=2, type=int, metavar=("N", "A"), default=None)
    p.set_defaults(func=cmd_relaxed)

    p = sub.add_parser("n2basis", help="quadratic-width basis construction")
    p.add_argument("lattice")
    p.set_defaults(func=cmd_n2basis)

    p = sub.add_parser("gens", help="binary generating set with witnesses")
    p.add_argument("lattice")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("superbasis", help="obtuse superbasis check and extraction")
    p.add_argument("lattice")
    p.add_argument("--vectors", required=True)
    p.set_defaults(func=cmd_superbasis)

    p = sub.add_parser("cvp", help="closest vector via certificate streaming")
    p.add_argument("lattice")
    p.add_argument("--cert", required=True)
    p.add_argument("-t", "--target", required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_cvp)

    p = sub.add_parser("oracle", help="closest vector by exhaustive search")
    p.add_argument("lattice")
    p.add_argument("-t", "--target", required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="materialized versus streaming comparison")
    add_family_flags(p, bench=True)
    p.add_argument("--targets", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-c", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except MalformedInputError as exc:
        print("malformed input: %s" % exc, file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return 3
    except CertificateUnsoundError as exc:
        print("certificate unsound: %s" % exc, file=sys.stderr)
        return 4
    except ValueError as exc:
        print("malformed input: %s" % exc, file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
