"""
Command-line front end.

    hkl compute {kl,r,rtilde,rel-rtilde} --u U --v V [--z Z]
    hkl hcds --u U --v V [--format text|json]
    hkl caravan --v V --z Z --y 1:3,2:4,...
    hkl verify --n N [--scope all|lower|explicit] [--checks ...] [--jobs J] ...

Exit codes: 0 success, 1 violation (or unresolved result), 2 usage error
(including u not <= v), 3 resource guard, 4 malformed permutation,
5 invalid order ideal.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bbdvw import relative_rtilde_def
from .bruhat import build_interval
from .camels import (
    CaravanError,
    blocks_of_ideal,
    build_caravan,
    camels_and_crossings,
    lambda_via_camels,
    render_caravan,
    theta_length,
    theta_via_product,
)
from .hypercube import (
    compute_cluster,
    enumerate_hcds,
    has_property_E,
    is_hypercube_decomposition,
    is_strong_cluster,
    numerical_criterion,
    principal_ideal,
)
from .klr import DEFAULT_CACHE, kl_polynomial, r_polynomial, rtilde_polynomial
from .permutation import Permutation, bruhat_leq
from .sweep import CHECKS, GuardError, SweepConfig, cache_path, run_sweep, summarize, write_report

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_PARSE = 4
EXIT_IDEAL = 5


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _perm(text: str, what: str, n: int | None = None) -> Permutation:
    try:
        p = Permutation.parse(text)
    except (ValueError, TypeError) as exc:
        raise CLIError(f"cannot parse {what} {text!r}: {exc}", EXIT_PARSE) from None
    if n is not None and p.n != n:
        raise CLIError(f"{what} = {p} is not in S_{n}", EXIT_PARSE)
    return p


def _pair(args) -> tuple[Permutation, Permutation]:
    u = _perm(args.u, "u")
    v = _perm(args.v, "v", u.n)
    if not bruhat_leq(u, v):
        raise CLIError("u not ≤ v", EXIT_USAGE)
    return u, v


def _load_cache(n: int):
    path = cache_path(n)
    if path is not None:
        DEFAULT_CACHE.load(path)
    return path


def _save_cache(path):
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        DEFAULT_CACHE.dump(path)


def cmd_compute(args) -> int:
    u, v = _pair(args)
    path = _load_cache(u.n)
    if args.kind == "kl":
        poly = kl_polynomial(u, v)
    elif args.kind == "r":
        poly = r_polynomial(u, v)
    elif args.kind == "rtilde":
        poly = rtilde_polynomial(u, v)
    else:
        if args.z is None:
            raise CLIError("rel-rtilde needs --z", EXIT_USAGE)
        z = _perm(args.z, "z", u.n)
        if not (bruhat_leq(u, z) and bruhat_leq(z, v)):
            raise CLIError(f"z = {z} is not in [{u},{v}]", EXIT_IDEAL)
        ideal = principal_ideal(build_interval(u, v), z)
        poly = relative_rtilde_def(u, v, ideal.members)
    _save_cache(path)
    print(poly)
    print(json.dumps(poly.to_json()))
    return EXIT_OK


def _hcd_summary(ideal) -> dict:
    u, v = ideal.interval.u, ideal.interval.v
    rep = is_hypercube_decomposition(ideal)
    cl = compute_cluster(ideal, u)
    strong, sw = is_strong_cluster(cl)
    nc, nw = numerical_criterion(cl)
    e = has_property_E(ideal, u)
    return {
        "interval": [str(u), str(v)],
        "z": str(ideal.top),
        "hd1": rep.hd1, "hd2": rep.hd2, "hd3": rep.hd3,
        "strong_at_u": strong,
        "nc_at_u": nc,
        "property_E": e.label,
        "witnesses": rep.witnesses + [w for w in (sw, nw) if w],
    }


def cmd_hcds(args) -> int:
    u, v = _pair(args)
    rows = [_hcd_summary(ideal) for ideal in enumerate_hcds(build_interval(u, v))]
    if args.format == "json":
        print(json.dumps(rows, indent=1, default=str))
    else:
        for r in rows:
            print(f"z={r['z']}  strong={'yes' if r['strong_at_u'] else 'no'}"
                  f"  nc={'yes' if r['nc_at_u'] else 'no'}  E={r['property_E']}")
    return EXIT_OK


def _arcs(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            a, b = part.split(":")
            out.append((int(a), int(b)))
        except ValueError:
            raise CLIError(f"bad arc {part!r}; expected i:j", EXIT_USAGE) from None
    return out


def cmd_caravan(args) -> int:
    v = _perm(args.v, "v")
    z = _perm(args.z, "z", v.n)
    e = Permutation(tuple(range(1, v.n + 1)))
    if not (bruhat_leq(z, v)):
        raise CLIError(f"z = {z} is not in [{e},{v}]", EXIT_IDEAL)
    ideal = principal_ideal(build_interval(e, v), z)
    try:
        blocks = blocks_of_ideal(ideal)
        Y = _arcs(args.y)
        car = build_caravan(Y, blocks)
    except CaravanError as exc:
        raise CLIError(str(exc), EXIT_IDEAL) from None
    camels, cross = camels_and_crossings(car)
    print(render_caravan(car))
    print(f"blocks: {blocks}")
    print(f"camels: {len(camels)}  cross: {cross}")
    print(f"|Lambda(Y)|: {lambda_via_camels(Y, blocks)}  l(theta(Y)): {theta_length(Y, blocks)}")
    print(f"theta(Y): {theta_via_product(Y, blocks, v)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) if args.checks else CHECKS
    pairs = ()
    if args.scope == "explicit":
        if not (args.u and args.v):
            raise CLIError("--scope explicit needs --u and --v", EXIT_USAGE)
        us, vs = args.u.split(";"), args.v.split(";")
        if len(us) != len(vs):
            raise CLIError("--u and --v lists differ in length", EXIT_USAGE)
        for a, b in zip(us, vs):
            u = _perm(a, "u", args.n)
            v = _perm(b, "v", args.n)
            if not bruhat_leq(u, v):
                raise CLIError(f"u not ≤ v: {u}, {v}", EXIT_USAGE)
        pairs = tuple(zip(us, vs))
    try:
        config = SweepConfig(n=args.n, scope=args.scope, checks=checks, jobs=args.jobs,
                             limit=args.limit, pairs=pairs, allow_large=args.allow_large)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None
    try:
        records = run_sweep(config)
    except (GuardError, OverflowError) as exc:
        raise CLIError(str(exc), EXIT_GUARD) from None
    write_report(records, args.output, args.format, config)
    summary = summarize(records)
    fails = sum(s["fail"] for s in summary.values())
    unknown = sum(s["unknown"] for s in summary.values())
    print(f"{len(records)} records, {fails} violations, {unknown} unknown", file=sys.stderr)
    if fails or (unknown and not args.downgrade_unknown):
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hkl", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="one polynomial for an interval")
    p.add_argument("kind", choices=["kl", "r", "rtilde", "rel-rtilde"])
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--z", help="top of the principal ideal (rel-rtilde only)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("hcds", help="hypercube decompositions [u,z] of [u,v]")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_hcds)

    p = sub.add_parser("caravan", help="caravan of an antichain in a lower interval")
    p.add_argument("--v", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--y", required=True, help="arcs as i:j, comma separated")
    p.set_defaults(func=cmd_caravan)

    p = sub.add_parser("verify", help="exhaustive sweep over intervals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scope", choices=["all", "lower", "explicit"], default="lower")
    p.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)}")
    p.add_argument("--u", help="explicit scope: ';'-separated list")
    p.add_argument("--v", help="explicit scope: ';'-separated list")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--limit", type=int)
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--downgrade-unknown", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
