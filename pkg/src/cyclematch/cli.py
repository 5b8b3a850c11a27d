"""Command-line entry point.

Exit codes: 0 success, 2 invalid input, 3 capacity limit / unknown result,
4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from .errors import CapacityError, InvalidInputError
from .family import (
    anchored_family,
    extremal_family,
    family_from_json,
    parse_family_lines,
)
from .matching import DEFAULT_NU_CAP, nu_p
from .perms import DEFAULT_ENUM_CAP, SnkEnumeration, parse_cycle
from .report import bound_record, dumps, emc_record, make_report, results_csv, stirling_table_csv
from .search import Limits, emc_exact, grid, sweep
from .stirling import StirlingTable, emc_bound, stirling_unsigned
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAPACITY = 3
EXIT_VERIFY_FAILED = 4

SUITE_DEFAULT_MAX_N = {"recurrence": 12, "lemmas": 60, "pie": 6, "construction": 8}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> List[int]:
    """'3', '3:6' (inclusive), '3-6' or '1,4,5'."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        for sep in (":", "-"):
            if sep in part[1:]:
                a, b = part.split(sep, 1)
                out.extend(range(int(a), int(b) + 1))
                break
        else:
            out.append(int(part))
    return out


def max_workers() -> int:
    env = os.environ.get("CYCLEMATCH_MAX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidInputError(f"CYCLEMATCH_MAX_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _limits(args) -> Limits:
    return Limits(ground_cap=args.ground_cap, hyperedge_cap=args.hyperedge_cap, max_nodes=args.max_nodes)


def cmd_stirling(args, argv) -> int:
    if args.table is not None:
        t = StirlingTable(args.table)
        _emit(stirling_table_csv(t.rows(), args.table), args.output)
        return EXIT_OK
    if args.n is None or args.k is None:
        raise InvalidInputError("give N K, or --table N")
    if args.n < 0:
        raise InvalidInputError("n must be nonnegative")
    if args.n > args.max_n:
        raise CapacityError(f"n={args.n} exceeds --max-n {args.max_n}")
    _emit(f"{stirling_unsigned(args.n, args.k)}\n", args.output)
    return EXIT_OK


def cmd_bound(args, argv) -> int:
    b = emc_bound(args.n, args.k, args.s)
    if args.json:
        _emit(dumps(make_report(argv, [bound_record(b)])), args.output)
    else:
        lines = [str(b.value)]
        lines += [f"term {i}: {t}" for i, t in enumerate(b.terms, 1)]
        lines.append(f"threshold_met={'true' if b.threshold_met else 'false'}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _load_family(path: str, ground: SnkEnumeration):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    if text.lstrip().startswith("{"):
        return family_from_json(text, ground)
    return parse_family_lines(text, ground)


def cmd_nu(args, argv) -> int:
    ground = SnkEnumeration(args.n, args.k, cap=args.enum_cap)
    fam = _load_family(args.family, ground)
    size, witness = nu_p(fam, cap=args.cap)
    if args.json:
        rec = {"n": args.n, "k": args.k, "family_size": len(fam), "nu": size,
               "witness": [str(p) for p in witness.perms()]}
        _emit(dumps(make_report(argv, [rec])), args.output)
    else:
        _emit("".join([f"{size}\n"] + [f"{p}\n" for p in witness.perms()]), args.output)
    return EXIT_OK


def cmd_family(args, argv) -> int:
    ground = SnkEnumeration(args.n, args.k, cap=args.enum_cap)
    if args.kind == "extremal":
        if not args.T:
            raise InvalidInputError("extremal family needs --T")
        fam = extremal_family(ground, _int_list(args.T))
    else:
        if not args.cycle:
            raise InvalidInputError("anchored family needs --cycle")
        fam = anchored_family(ground, parse_cycle(args.cycle))
    _emit(fam.to_json() + "\n" if args.format == "json" else fam.to_lines(), args.output)
    return EXIT_OK


def cmd_exact(args, argv) -> int:
    res = emc_exact(args.n, args.k, args.s, _limits(args))
    _emit(dumps(make_report(argv, [emc_record(res, include_witness=not args.no_witness)])), args.output)
    return EXIT_OK if res.solved else EXIT_CAPACITY


def cmd_sweep(args, argv) -> int:
    ks = None if args.k is None else _int_list(args.k)
    inst = grid(_int_list(args.n), ks, _int_list(args.s))
    results = sweep(inst, _limits(args), workers=args.workers or max_workers())
    recs = [emc_record(r, include_witness=args.witness) for r in results]
    if args.csv:
        _emit(results_csv(recs), args.output)
    else:
        _emit(dumps(make_report(argv, recs)), args.output)
    return EXIT_OK if all(r.solved for r in results) else EXIT_CAPACITY


def cmd_verify(args, argv) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    limits = {}
    if args.max_n is not None:
        for name in names:
            limits[name] = args.max_n if len(names) == 1 else min(args.max_n, SUITE_DEFAULT_MAX_N[name])
    records = run_suites(names, limits)
    ok = all(r["pass"] for r in records)
    _emit(dumps(make_report(argv, records)), args.output)
    failed = sum(1 for r in records if not r["pass"])
    print(f"verify: {len(records)} records, {failed} failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _add_caps(p):
    d = Limits()
    p.add_argument("--ground-cap", type=int, default=d.ground_cap, help="max |S_(n,k)| to enumerate")
    p.add_argument("--hyperedge-cap", type=int, default=d.hyperedge_cap, help="max forbidden matchings")
    p.add_argument("--max-nodes", type=int, default=d.max_nodes, help="branch-and-bound node budget")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclematch", description="Cycle-disjoint matchings in permutations with k cycles.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("-o", "--output", help="write to file instead of stdout")
        return p

    p = add("stirling", cmd_stirling, "unsigned Stirling numbers of the first kind")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--table", type=int, metavar="N", help="print the triangle up to row N as CSV")
    p.add_argument("--max-n", type=int, default=10000, help="refuse single queries beyond this n")

    p = add("bound", cmd_bound, "closed-form alternating-sum bound")
    for a in ("n", "k", "s"):
        p.add_argument(a, type=int)
    p.add_argument("--json", action="store_true")

    p = add("nu", cmd_nu, "matching number of a family file")
    p.add_argument("family", help="line-format or JSON family file, '-' for stdin")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_NU_CAP)
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)

    p = add("family", cmd_family, "dump an extremal or anchored family")
    p.add_argument("kind", choices=("extremal", "anchored"))
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--T", help="fixed points for the extremal family, e.g. 1,2")
    p.add_argument("--cycle", help="anchor cycle, e.g. '(1 2)'")
    p.add_argument("--format", choices=("lines", "json"), default="lines")
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)

    p = add("exact", cmd_exact, "exact EMC_p(n,k,s) by exhaustive search")
    for a in ("n", "k", "s"):
        p.add_argument(a, type=int)
    _add_caps(p)
    p.add_argument("--no-witness", action="store_true")

    p = add("sweep", cmd_sweep, "exact search over a parameter grid")
    p.add_argument("--n", required=True, help="e.g. 3:6")
    p.add_argument("--k", help="default: every 1 <= k <= n")
    p.add_argument("--s", default="1")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--witness", action="store_true", help="include witnesses in JSON")
    p.add_argument("--workers", type=int, help="default: CYCLEMATCH_MAX_THREADS or CPU count")
    _add_caps(p)

    p = add("verify", cmd_verify, "run invariant sweeps")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=int)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
