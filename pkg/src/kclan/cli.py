"""Command line interface.

Exit codes: 0 ok / PASS, 1 FAIL, 2 usage or input error, 3 internal check failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chernmather import (
    METHODS, NonPolynomialError, chern_mather, expand_localized, identity_check,
)
from .clan import (
    ClanError, closure_set, enumerate_clans, format_clan, is_smooth, orbit_dimension,
    orbit_poset, parse_clan, phi, root_type, tau,
)
from .resolution import (
    InternalCheckError, SpecError, build_spec, fiber_table, is_small, mu_image,
    tangent_weights, z_fixed_points,
)
from .weyl import parse_index_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(out, text):
    out.write(text if text.endswith("\n") else text + "\n")


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _write_json(args, obj, out):
    target = args.json
    text = _dump(obj)
    if target in (None, "-"):
        _emit(out, text)
    else:
        with open(target, "w") as fh:
            fh.write(text + "\n")


def _parse_clan_arg(text, args, flag="clan"):
    try:
        return parse_clan(text, getattr(args, "p", None), getattr(args, "q", None))
    except ClanError as exc:
        raise UsageError(f"--{flag}: {exc}") from exc


def _spec_from_args(args):
    if args.v0 is None:
        raise UsageError("--v0 is required")
    v0 = _parse_clan_arg(args.v0, args, "v0")
    try:
        I = parse_index_set(args.I or "")
    except ValueError as exc:
        raise UsageError(f"--I: {exc}") from exc
    try:
        return build_spec(v0, I)
    except SpecError as exc:
        raise UsageError(f"--v0/--I: {exc}") from exc


def _fmt_set(s):
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


# --- verbs ------------------------------------------------------------------

def cmd_clans_list(args, out):
    if args.p is None or args.q is None:
        raise UsageError("--p and --q are required")
    try:
        clans = enumerate_clans(args.p, args.q)
    except ClanError as exc:
        raise UsageError(f"--p/--q: {exc}") from exc
    rows = [{"clan": format_clan(c), "dim": orbit_dimension(c), "tau": sorted(tau(c)),
             "smooth": is_smooth(c) is not None} for c in clans]
    if args.json is not None:
        _write_json(args, rows, out)
    else:
        for r in rows:
            _emit(out, f"{r['clan']}\t{r['dim']}\t{_fmt_set(r['tau'])}\t{'smooth' if r['smooth'] else '-'}")
    return EXIT_OK


def cmd_clan_info(args, out):
    v = _parse_clan_arg(args.clan, args)
    blocks = is_smooth(v)
    info = {
        "clan": format_clan(v, blocks),
        "p": v.p, "q": v.q,
        "length": orbit_dimension(v),
        "tau": sorted(tau(v)),
        "smooth": blocks is not None,
        "blocks": blocks.to_json() if blocks else None,
        "phi": str(phi(v)),
        "root_types": {str(i): root_type(v, i).value for i in range(1, v.n)},
    }
    if args.json is not None:
        _write_json(args, info, out)
        return EXIT_OK
    _emit(out, f"clan: {info['clan']}")
    _emit(out, f"signature: ({v.p},{v.q})")
    _emit(out, f"length: {info['length']}")
    _emit(out, f"tau: {_fmt_set(info['tau'])}")
    _emit(out, "smooth: " + (f"yes, blocks {format_clan(v, blocks)}" if blocks else "no"))
    _emit(out, f"phi: {info['phi']}")
    for i in range(1, v.n):
        _emit(out, f"s{i}: {info['root_types'][str(i)]}")
    return EXIT_OK


def cmd_poset(args, out):
    if args.below is not None:
        v = _parse_clan_arg(args.below, args, "below")
        P = orbit_poset(v.p, v.q, below=v)
    else:
        if args.p is None or args.q is None:
            raise UsageError("--p and --q are required without --below")
        P = orbit_poset(args.p, args.q)
    if args.dot:
        _emit(out, P.to_dot())
    elif args.json is not None:
        _write_json(args, P.to_json(), out)
    else:
        for y, v in P.covers:
            _emit(out, f"{format_clan(y)} < {format_clan(v)}")
    return EXIT_OK


def cmd_resolution_check(args, out):
    spec = _spec_from_args(args)
    rep = is_small(spec)
    data = spec.to_json()
    data["certificate"] = rep.to_json()
    if args.json is not None:
        _write_json(args, data, out)
        return EXIT_OK
    _emit(out, f"v0: {data['v0']}")
    _emit(out, f"I: {_fmt_set(spec.I)}")
    _emit(out, f"v: {data['v']}")
    _emit(out, f"dim Z: {spec.dim}")
    _emit(out, f"small: {'yes' if rep.small else 'no'}")
    for i, pat in rep.violations:
        _emit(out, f"  violation at s{i}: {pat}")
    return EXIT_OK


def cmd_resolution_fixed_points(args, out):
    spec = _spec_from_args(args)
    pts = z_fixed_points(spec)
    if args.limit is not None:
        pts = pts[:args.limit]
    if args.json is not None:
        _write_json(args, [x.to_json(spec) for x in pts], out)
        return EXIT_OK
    for x in pts:
        ws = " ".join("(" + ",".join(str(c) for c in w) + ")" for w in tangent_weights(spec, x))
        _emit(out, f"[{x.x0}; {x.x1}; {x.x2}] -> {mu_image(x)}\t{ws}")
    return EXIT_OK


def cmd_fibers_table(args, out):
    spec = _spec_from_args(args)
    orbits = None
    if args.orbit:
        orbits = [_parse_clan_arg(t, argparse.Namespace(p=spec.p, q=spec.q), "orbit") for t in args.orbit]
    try:
        rows = fiber_table(spec, orbits)
    except SpecError as exc:
        raise UsageError(f"--orbit: {exc}") from exc
    if args.json is not None:
        _write_json(args, [{"orbit": format_clan(y), "k": k, "euler": e} for y, k, e in rows], out)
        return EXIT_OK
    for y, k, e in rows:
        fib = "pt" if k == 0 else " x ".join(["P1"] * k)
        _emit(out, f"{format_clan(y)}\tk={k}\t{fib}\tchi={e}")
    return EXIT_OK


def _compute(args):
    spec = _spec_from_args(args)
    method = "restriction" if args.method == "both" else args.method
    res = chern_mather(spec, method=method, threads=args.threads)
    if args.method == "both":
        other = expand_localized(res.localized, "basis")
        if other != res.expansion:
            raise InternalCheckError("expansion routes disagree")
    if not identity_check(res.localized, res.expansion, seed=args.seed):
        raise InternalCheckError("random-point identity check failed")
    return res


def cmd_cm_compute(args, out):
    res = _compute(args)
    if args.json is not None:
        _write_json(args, res.to_json(), out)
        if args.json not in (None, "-"):
            _emit(out, f"wrote {args.json}")
        return EXIT_OK
    _emit(out, f"# {res.label}: v = {format_clan(res.spec.v)}")
    for w, p in res.expansion.items():
        _emit(out, f"{w}\t{p}")
    _emit(out, f"# positivity: {'PASS' if res.positivity.verdict else 'FAIL'}")
    return EXIT_OK


def cmd_cm_verify(args, out):
    res = _compute(args)
    rep = res.positivity
    if args.json is not None:
        _write_json(args, rep.to_json(), out)
    else:
        _emit(out, f"{'PASS' if rep.verdict else 'FAIL'}: {len(res.expansion)} coefficients checked")
        for w, exps, c in rep.witnesses:
            _emit(out, f"  w={w} monomial exponents {list(exps)} coefficient {c}")
    return EXIT_OK if rep.verdict else EXIT_FAIL


# --- parser -----------------------------------------------------------------

def _add_common(p, clan=True, spec=False, json_flag=True):
    if clan:
        p.add_argument("--p", type=int, help="size of the first GL factor")
        p.add_argument("--q", type=int, help="size of the second GL factor")
    if spec:
        p.add_argument("--v0", help='smooth clan, e.g. "(1,1|2,2)"')
        p.add_argument("--I", default="", help="commuting simple reflections, e.g. 3,5")
    if json_flag:
        p.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                       help="emit JSON (to PATH, or stdout when omitted)")


def build_parser():
    ap = argparse.ArgumentParser(prog="kclan", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    clans = sub.add_parser("clans", help="enumerate clans")
    clans_sub = clans.add_subparsers(dest="action", required=True)
    p = clans_sub.add_parser("list")
    _add_common(p)
    p.set_defaults(func=cmd_clans_list)

    clan = sub.add_parser("clan", help="inspect one clan")
    clan_sub = clan.add_subparsers(dest="action", required=True)
    p = clan_sub.add_parser("info")
    p.add_argument("clan")
    _add_common(p)
    p.set_defaults(func=cmd_clan_info)

    p = sub.add_parser("poset", help="closure order (covers)")
    _add_common(p)
    p.add_argument("--below", help="restrict to the lower interval of this clan")
    p.add_argument("--dot", action="store_true", help="emit a DOT digraph")
    p.set_defaults(func=cmd_poset)

    res = sub.add_parser("resolution", help="resolution specs")
    res_sub = res.add_subparsers(dest="action", required=True)
    p = res_sub.add_parser("check")
    _add_common(p, clan=False, spec=True)
    p.set_defaults(func=cmd_resolution_check)
    p = res_sub.add_parser("fixed-points")
    _add_common(p, clan=False, spec=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_resolution_fixed_points)

    fib = sub.add_parser("fibers", help="fiber types")
    fib_sub = fib.add_subparsers(dest="action", required=True)
    p = fib_sub.add_parser("table")
    _add_common(p, clan=False, spec=True)
    p.add_argument("--orbit", action="append", help="only this orbit (repeatable)")
    p.set_defaults(func=cmd_fibers_table)

    cm = sub.add_parser("cm", help="equivariant Chern-Mather classes")
    cm_sub = cm.add_subparsers(dest="action", required=True)
    for name, fn in (("compute", cmd_cm_compute), ("verify", cmd_cm_verify)):
        p = cm_sub.add_parser(name)
        _add_common(p, clan=False, spec=True)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0, help="seed for random identity checks")
        p.add_argument("--method", choices=METHODS + ("both",), default="restriction")
        p.set_defaults(func=fn)
    return ap


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        print("kclan: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"kclan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalCheckError, NonPolynomialError, AssertionError) as exc:
        print(f"kclan: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
