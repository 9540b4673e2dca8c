"""Command-line front end.

Exit codes: 0 success, 1 checked property failed, 2 usage error, 3 I/O or format error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bounds, certify, constructions, report
from .entropy import Virtual, parse_vars
from .model import CodeFormatError, CodeParams, load, save, to_json, to_variable_system, verify
from .proofs import appendix_proof_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _perm(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"permutation must be comma-separated integers: {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _beta_range(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("beta range must be start:stop:step")
    a, b, step = (_rational(p) for p in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("beta step must be positive")
    out, x = [], a
    while x <= b:
        out.append(x)
        x += step
    return out


def _params_spec(text: str) -> dict:
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or key.strip() not in ("N", "k", "d", "alpha"):
            raise argparse.ArgumentTypeError(f"params must look like N=4,k=3,d=3,alpha=6 (got {item!r})")
        out[key.strip()] = _rational(value) if key.strip() == "alpha" else int(value)
    missing = {"N", "k", "d", "alpha"} - set(out)
    if missing:
        raise argparse.ArgumentTypeError(f"params missing {sorted(missing)}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regencert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a code from a family")
    g.add_argument("--family", required=True, choices=constructions.FAMILIES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--w", type=int, help="layer size (layered)")
    g.add_argument("--k", type=int, help="recovery threshold (rbt_mbr, mds_msr, replication)")
    g.add_argument("--d", type=int, help="repair degree (mds_msr, replication)")
    g.add_argument("--size", type=int, default=1, help="file size (replication)")
    g.add_argument("--q", type=int, help="field prime")
    g.add_argument("--scramble-seed", type=int, help="apply a seeded random change of bases")
    g.add_argument("--out", help="output file (default stdout)")

    v = sub.add_parser("verify", help="check storage, access and repair")
    v.add_argument("code")
    v.add_argument("--sample", type=int, help="check at most this many subsets per family")
    v.add_argument("--seed", type=int, help="seed for --sample")

    e = sub.add_parser("entropy", help="exact entropy of a set of variables")
    e.add_argument("code")
    e.add_argument("--vars", required=True, help='e.g. "W1,S_2_3"')
    e.add_argument("--given", default="", help="conditioning variables")
    e.add_argument("--ell", type=int, help="ell for virtual nodes V1.. (identity ordering, n = N)")
    e.add_argument("--v", type=int, default=0, help="number of virtual nodes")

    b = sub.add_parser("bounds", help="FR, linear-code and PK15 bound table as CSV")
    b.add_argument("--N", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--alpha", type=_rational, required=True)
    b.add_argument("--beta", type=_rational, required=True)
    b.add_argument("--n", type=int, help="shortened length (default: every n in k..min(N, d+1))")
    b.add_argument("--vmax", type=int, default=8)
    b.add_argument("--B", type=_rational, help="file size; fills the slack column")

    c = sub.add_parser("certify", help="certificate JSON for a theorem on a code")
    c.add_argument("code")
    c.add_argument("--theorem", required=True, choices=["1", "2", "cor2", "3"])
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--v", type=int, default=0)
    c.add_argument("--n", type=int, help="shortened length (default min(N, d+1))")
    c.add_argument("--perm", type=_perm, help='node ordering, e.g. "4,3,2,1"')
    c.add_argument("--search-perms", action="store_true",
                   help="also report the orderings with largest Delta and least slack (N <= 8)")

    gp = sub.add_parser("gap", help="Delta and the three chain-rule gaps")
    gp.add_argument("code")
    gp.add_argument("--ell", type=int, required=True)
    gp.add_argument("--n", type=int)
    gp.add_argument("--perm", type=_perm)

    t = sub.add_parser("tradeoff", help="CSV of (beta, FR minimum, best linear bound)")
    t.add_argument("--params", type=_params_spec, required=True, help="N=..,k=..,d=..,alpha=..")
    t.add_argument("--beta-range", type=_beta_range, required=True, help="start:stop:step")
    t.add_argument("--n", type=int)
    t.add_argument("--vmax", type=int, default=8)

    p = sub.add_parser("proofs433", help="replay one of the three (4,3,3) outer-bound proofs on a code")
    p.add_argument("code")
    p.add_argument("--proof", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--perm", type=_perm)

    s4 = sub.add_parser("section4", help="the (k=2p, d=3p, alpha=2p, beta=1) example")
    s4.add_argument("--p", type=int, required=True)
    s4.add_argument("--vmax", type=int, default=8)
    return parser


def _gen(args, out):
    try:
        spec = constructions.ConstructionSpec(args.family, args.n, args.w, args.k, args.d, args.size, args.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    code = spec.build()
    if args.scramble_seed is not None:
        code = constructions.scrambled(code, args.scramble_seed)
    if args.out:
        save(code, args.out)
    else:
        out.write(to_json(code))
    return EXIT_OK


def _ordering(code, args, default_n=None):
    N = code.N
    n = args.n if args.n is not None else (default_n or min(N, code.params.d + 1))
    perm = args.perm or tuple(range(1, N + 1))
    return certify.Ordering(perm, n, args.ell)


def _verify(args, out):
    if args.sample is not None and args.seed is None:
        raise UsageError("--sample needs an explicit --seed")
    rep = verify(load(args.code), sample=args.sample, seed=args.seed or 0)
    out.write(report.dumps(rep.to_dict()))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _entropy(args, out):
    code = load(args.code)
    sysm = to_variable_system(code)
    if args.v:
        if args.ell is None:
            raise UsageError("virtual nodes need --ell")
        o = certify.Ordering.identity(code.N, code.N, args.ell)
        vs = certify.build_virtual_nodes(code, o, args.v)
        sysm = sysm.extended({Virtual(u): s for u, s in enumerate(vs, 1)})
    out.write(f"{sysm.H_cond(parse_vars(args.vars), parse_vars(args.given))}\n")
    return EXIT_OK


def _bounds(args, out):
    P = CodeParams(args.N, args.k, args.d, args.alpha, args.beta)
    rep = bounds.bound_table(P, None if args.n is None else [args.n], args.vmax)
    out.write(report.bound_report_csv(rep, args.B))
    return EXIT_OK


def _certify(args, out):
    code = load(args.code)
    o = _ordering(code, args)
    try:
        if args.theorem == "1":
            cert = certify.theorem1_certify(code, o)
        elif args.theorem == "2":
            cert = certify.theorem2_certify(code, o, args.v)
        elif args.theorem == "cor2":
            cert = certify.corollary2_certify(code, o, args.v)
        else:
            cert = certify.theorem3_certify(code, o, args.v)
    except certify.CertificationError as exc:
        out.write(report.dumps(report.certificate_dict(exc.certificate)))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    doc = report.certificate_dict(cert)
    if args.search_perms:
        found = certify.search_orderings(code, o.n, o.ell)
        doc["search"] = {"max_delta": {"ordering": found["max_delta"][0].to_dict(), "Delta": found["max_delta"][1]},
                         "min_slack": {"ordering": found["min_slack"][0].to_dict(), "slack": found["min_slack"][1]}}
    out.write(report.dumps(doc))
    return EXIT_OK


def _gap(args, out):
    code = load(args.code)
    o = _ordering(code, args)
    total, parts = certify.delta(code, o)
    gaps = [certify.gap_terms(code, o, j) for j in range(1, o.ell + 1)]
    doc = {
        "code": code.name,
        "ordering": o.to_dict(),
        "Delta": total,
        "Delta_terms": {f"S_{i}_{j}": t for (i, j), t in parts.items()},
        "gaps": [{"j": g.j, "C1": {str(i): x for i, x in g.c1.items()},
                  "C2": {str(i): x for i, x in g.c2.items()}, "C3": g.c3,
                  "identities_hold": g.identities_hold} for g in gaps],
    }
    out.write(report.dumps(doc))
    return EXIT_OK if all(g.identities_hold for g in gaps) else EXIT_FAIL


def _tradeoff(args, out):
    pr = args.params
    betas = args.beta_range
    if not betas:
        raise UsageError("empty beta range")
    P = CodeParams(pr["N"], pr["k"], pr["d"], pr["alpha"], betas[0])
    rows = bounds.tradeoff(P, betas, args.n, args.vmax)
    out.write(report.rows_csv(("beta", "fr_min", "best_linear"), rows))
    return EXIT_OK


def _proofs(args, out):
    t = appendix_proof_check(load(args.code), args.proof, args.perm)
    out.write(report.dumps(report.transcript_dict(t)))
    return EXIT_OK if t.holds else EXIT_FAIL


def _section4(args, out):
    out.write(report.dumps(report.section4_dict(bounds.section4_table(args.p, args.vmax))))
    return EXIT_OK


HANDLERS = {"gen": _gen, "verify": _verify, "entropy": _entropy, "bounds": _bounds,
            "certify": _certify, "gap": _gap, "tradeoff": _tradeoff, "proofs433": _proofs,
            "section4": _section4}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return HANDLERS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except certify.HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, CodeFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
