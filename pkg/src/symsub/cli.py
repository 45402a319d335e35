"""Command-line driver: validate, verify, xlattice, catalog, sl2lab.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, report
from .rootdata import ValidationError
from .suites import SUITES, InputError, check, run_suite, validate_document, xlattice_report

DEFAULT_SEED = 20240607
MAX_PRIME = 13


def _emit(rep, fmt, out):
    out.write(report.to_json(rep) if fmt == "json" else report.to_text(rep))


def _params_of(ird):
    return {str(ird.datum.nodes[i]): [p.sign, p.exponent] for i, p in sorted(ird.params.items())}


def _load_entry(ref: str, sign=None):
    """(name, document, IRootDatum) for a catalog name or a JSON file."""
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"{ref}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        validate_document(doc)
        ird = catalog.parse_entry(doc)
        if sign is not None:
            ird = ird.with_params({i: type(p)(sign, p.exponent) for i, p in ird.params.items()})
        return doc.get("name", os.path.basename(ref)), doc, ird
    try:
        doc = catalog.raw_entry(ref)
    except KeyError:
        raise InputError(f"unknown entry {ref!r}; see `symsub catalog`") from None
    ird = catalog.get(ref, sign=sign)
    doc = dict(doc, varsigma={str(k): v for k, v in _params_of(ird).items()})
    return doc["name"], doc, ird


def cmd_validate(args, out) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    checks = validate_document(doc)
    name = doc.get("name", os.path.basename(args.path)) if isinstance(doc, dict) else args.path
    rep = report.make_report("validate", name, doc, checks, {}, {}, None)
    _emit(rep, args.format, out)
    return 0 if rep["status"] == "pass" else 1


def cmd_verify(args, out) -> int:
    name, doc, ird = _load_entry(args.entry, args.sign)
    suites = SUITES if args.suite == "all" else (args.suite,)
    checks = []
    batteries = {}
    for s in suites:
        cs, bats = run_suite(s, ird, depth=args.depth, eps_black=args.epsilon_black, seed=args.seed)
        for c in cs:
            checks.append(dict(c, name=f"{s}: {c['name']}"))
        for k, v in bats.items():
            batteries[k] = v
    rep = report.make_report(args.suite, name, doc, checks, batteries, _params_of(ird), args.seed,
                             {"note": "battery equality is evidence of equality in the algebra, not proof"})
    _emit(rep, args.format, out)
    return 0 if rep["status"] == "pass" else 1


def cmd_xlattice(args, out) -> int:
    name, doc, ird = _load_entry(args.entry)
    xr = xlattice_report(ird)
    checks = [check("X_iota has no odd torsion", all(m & (m - 1) == 0 for m in xr["torsion"])),
              check("(id - theta)/2 splits the image after inverting 2", xr["splitting_after_inverting_2"])]
    rep = report.make_report("xlattice", name, doc, checks, {}, _params_of(ird), None, {"xlattice": xr})
    if args.format == "json":
        out.write(report.to_json(rep))
    else:
        inv = " + ".join(xr["X_iota"]) or "0"
        yb = "0" if not xr["Y_iota_basis"] else "span " + ", ".join(str(v) for v in xr["Y_iota_basis"])
        lines = [f"{name}:"]
        lines.append("  X_iota = X" if xr["X_iota_equals_X"] else f"  X_iota = {inv}")
        lines.append(f"  free rank {xr['free_rank']}, torsion {xr['torsion'] or 'none'}")
        lines.append(f"  Y^iota = {yb}")
        lines.append(f"  pairing matrix {xr['pairing_matrix']}")
        lines.append("  pairing perfect" if xr["perfect"] else "  pairing not perfect")
        out.write("\n".join(lines) + "\n")
    return 0 if rep["status"] == "pass" else 1


def cmd_catalog(args, out) -> int:
    if args.export:
        try:
            out.write(catalog.export_json(args.export) + "\n")
        except KeyError:
            raise InputError(f"unknown entry {args.export!r}") from None
        return 0
    rows = []
    for n in catalog.entry_names():
        e = catalog.raw_entry(n)
        aliases = sorted(a for a, t in catalog.ALIASES.items() if t == n)
        rows.append({"name": n, "aliases": aliases, "black": e["black"], "tau": e["tau"],
                     "note": e.get("note", "")})
    if args.format == "json":
        out.write(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    else:
        for r in rows:
            al = f" (aliases: {', '.join(r['aliases'])})" if r["aliases"] else ""
            out.write(f"{r['name']}{al}: black={r['black']} tau={r['tau']} {r['note']}\n")
    return 0


def cmd_sl2lab(args, out) -> int:
    from .grouplab import sl2_table
    tab = sl2_table(tuple(args.primes), args.sign)
    normative = tab["normative"]
    checks = []
    for row in tab["rows"]:
        checks.append(check(f"p={row['p']}: |SL2(F_p)| = p(p^2-1)", row["group_order"] == row["expected_order"],
                            row))
        checks.append(check(f"p={row['p']}: |K(F_p)| = #conic = p - 1", row["equal"] and row["conic_count"] == row["p"] - 1,
                            row, vacuous=not normative))
    w = tab["char2_witness"]
    checks.append(check("(u+v+1)^2 = u^2-v^2-1 mod 2, not mod 3", w["ok"], w))
    doc = {"entry": "SL2-split", "primes": list(args.primes), "sign": tab["sign"]}
    extra = {"table": tab["rows"]}
    if not normative:
        extra["note"] = "informational: the non-default sign is not normative"
    rep = report.make_report("sl2lab", "SL2-split", doc, checks, {}, {"1": [tab["sign"], 0]}, None, extra)
    if args.format == "json":
        out.write(report.to_json(rep))
    else:
        out.write(f"SL2 over F_p, sbar = {tab['sign']:+d}" + ("" if normative else " (non-normative)") + "\n")
        out.write("   p  |SL2(F_p)|  |K(F_p)|  conic  equal\n")
        for r in tab["rows"]:
            out.write(f"{r['p']:4d}  {r['group_order']:9d}  {r['fixed_points']:8d}  {r['conic_count']:5d}  {r['equal']}\n")
        out.write(f"char 2 witness: (u+v+1)^2 - (u^2-v^2-1) = {w['difference']} -> "
                  f"{'zero' if w['zero_mod_2'] else 'nonzero'} mod 2\n")
    return 0 if rep["status"] == "pass" else 1


def _prime(s):
    try:
        p = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s}") from None
    if p < 3 or p % 2 == 0 or any(p % k == 0 for k in range(3, int(p ** 0.5) + 1, 2)) or p > MAX_PRIME:
        raise argparse.ArgumentTypeError(f"{p} is not an odd prime <= {MAX_PRIME}")
    return p


def _sign(s):
    v = int(s)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="symsub", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="validate an iota-root datum file")
    p.add_argument("path")
    common(p)
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("entry", help="catalog name, alias, or JSON file")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--sign", type=_sign, default=None, help="override every white parameter sign")
    p.add_argument("--epsilon-black", type=_sign, default=-1, help="eps on black nodes (negative control: +1)")
    common(p)
    p = sub.add_parser("xlattice", help="X_iota, Y^iota and their pairing")
    p.add_argument("entry")
    common(p)
    p = sub.add_parser("catalog", help="list or export catalog entries")
    p.add_argument("--export", metavar="NAME")
    common(p)
    p = sub.add_parser("sl2lab", help="finite-field counts for the rank-one symmetric subgroup")
    p.add_argument("--primes", type=_prime, nargs="+", default=[3, 5, 7])
    p.add_argument("--sign", type=_sign, default=None)
    common(p)
    return ap


COMMANDS = {"validate": cmd_validate, "verify": cmd_verify, "xlattice": cmd_xlattice,
            "catalog": cmd_catalog, "sl2lab": cmd_sl2lab}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "depth", 0) is not None and getattr(args, "depth", 0) < 0:
        print("symsub: error: --depth must be nonnegative", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.cmd](args, out)
    except InputError as exc:
        print(f"symsub: input error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"symsub: validation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
