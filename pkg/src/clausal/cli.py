"""Command line: ``clausal solve | gen | check``.

Exit codes for ``solve``: 10 SAT-VERIFIED, 20 UNSAT, 30 UNKNOWN, 1 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .battery import ManifestError, check_battery, read_manifest, write_battery, MANIFEST
from .extract import DEFAULT_BUDGET, Outcome
from .formula import DimacsError, parse_dimacs
from .oracle import DENSITIES, GeneratorConfig, battery_configs
from .propagate import InvariantViolation
from .solver import part_a, prepare, solve
from .partition import dump_elements

EXIT = {Outcome.SAT_VERIFIED: 10, Outcome.UNSAT: 20, Outcome.UNKNOWN: 30}
EXIT_INPUT = 1


def _report(path: str, out, args) -> dict:
    return {
        "input": path,
        "outcome": out.status.value,
        "reason": out.reason,
        "witness": out.witness_line() if out.assignment is not None else None,
        "stats": {k: v for k, v in out.stats.items() if k != "bounds"},
        "bounds": out.stats.get("bounds", {}),
        "order": args.order,
        "seed": args.seed,
    }


def cmd_solve(args) -> int:
    try:
        f = parse_dimacs(Path(args.path).read_bytes())
    except (OSError, DimacsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    order = args.order
    if order == "worklist" and args.seed is not None:
        order = "shuffle"
    out = solve(f, extract=args.extract, order=order, seed=args.seed,
                vertex_order=args.vertex_order, max_backtracks=args.max_backtracks)
    rep = _report(args.path, out, args)
    if args.dump_elements and not f.has_empty_clause:
        p = prepare(f)
        state, _ = part_a(p, order=order, seed=args.seed)
        rep["elements"] = dump_elements(p.elements, state.r).splitlines()
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        print(f"s {rep['outcome']}")
        if rep["reason"]:
            print(f"c reason: {rep['reason']}")
        for k, v in rep["stats"].items():
            print(f"c {k}: {v:.4f}" if isinstance(v, float) else f"c {k}: {v}")
        for k, ok in rep["bounds"].items():
            print(f"c bound {k}: {'pass' if ok else 'FAIL'}")
        for line in rep.get("elements", []):
            print(f"c {line}")
        if rep["witness"]:
            print(rep["witness"])
    return EXIT[out.status]


def cmd_gen(args) -> int:
    if args.sweep:
        configs = battery_configs(args.seed, args.count, range(args.n_min, args.n_max + 1), DENSITIES)
    else:
        if args.n is None or args.m is None:
            print("error: gen needs --n and --m (or --sweep)", file=sys.stderr)
            return EXIT_INPUT
        configs = [GeneratorConfig(args.seed + i, args.n, args.m) for i in range(args.count)]
    try:
        entries = write_battery(configs, Path(args.out))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {len(entries)} instances to {args.out}/{MANIFEST}")
    return 0


def cmd_check(args) -> int:
    manifest = Path(args.manifest)
    directory = manifest.parent if manifest.is_file() else manifest
    if not manifest.is_file():
        manifest = manifest / MANIFEST
    try:
        entries = read_manifest(manifest)
        summary = check_battery(entries, directory, budget=args.max_backtracks, jobs=args.jobs)
    except (OSError, ManifestError, DimacsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({
            "rates": summary.rates(),
            "false_negatives": len(summary.false_negatives),
            "unverified_sat": len(summary.bad_sat_claims),
            "bound_failures": len(summary.bound_failures),
        }, indent=2))
    else:
        print(summary.table())
    return 0 if summary.ok else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clausal", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="solve a DIMACS CNF file")
    s.add_argument("path")
    s.add_argument("--extract", action="store_true", help="run Part B and verify a witness")
    s.add_argument("--json", action="store_true")
    s.add_argument("--order", choices=["worklist", "lifo", "sweep", "shuffle"], default="worklist")
    s.add_argument("--vertex-order", choices=["key", "most-constrained"], default="key")
    s.add_argument("--max-backtracks", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--dump-elements", action="store_true")
    s.add_argument("--seed", type=int, default=None, help="shuffle seed for the worklist")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="write random 3SAT instances and an oracle-labelled manifest")
    g.add_argument("--out", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--count", type=int, default=1, help="instances (per grid cell with --sweep)")
    g.add_argument("--sweep", action="store_true", help=f"density grid {DENSITIES} over n range")
    g.add_argument("--n-min", type=int, default=4)
    g.add_argument("--n-max", type=int, default=12)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="cross-check the solver against a labelled battery")
    c.add_argument("manifest", help="manifest file or battery directory")
    c.add_argument("--max-backtracks", type=int, default=None, help="default 2^n per instance")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
