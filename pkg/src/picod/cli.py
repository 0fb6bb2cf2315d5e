"""Command-line front end: construct, verify, oracle, sweep.

Exit status: 0 ok, 1 usage or parse error, 2 infeasible, 3 unsupported,
4 verification failed, 5 search bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import BUILDERS
from .core import BoundExceeded, IndexCode, Infeasible, InvalidParameters, ProblemInstance, Unsupported
from .decoder import DecodingSemantics
from .oracle import oracle_exactly_one_feasible, oracle_max_total, oracle_min_length
from .sweep import rows_to_csv, sweep_rows
from .verifier import (
    collect_findings,
    verify_c_constraint,
    verify_coverage,
    verify_exactly_one,
    verify_max_tally,
)

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_UNSUPPORTED, EXIT_FAILED, EXIT_BOUND = 0, 1, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _semantics(value: str) -> DecodingSemantics:
    try:
        return DecodingSemantics.parse(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown semantics {value!r}") from None


def _int_range(value: str) -> list[int]:
    lo, _, hi = value.partition("..")
    return list(range(int(lo), int(hi or lo) + 1))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="picod", description="Pliable index codes for consecutive side information.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a code and print it as JSON")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--case", choices=sorted(BUILDERS), default="exactly-one")
    c.add_argument("--i", type=int, default=0, help="anchor index (default 0)")
    c.add_argument("--c", type=int, default=None)
    c.add_argument("--j", type=int, default=None, help="second uncoded message for max, p > 3k")
    c.add_argument("--printed-w2", action="store_true", help="max: use the published second-symbol offsets")

    v = sub.add_parser("verify", help="check a claim on a code file")
    v.add_argument("code_file", help="IndexCode JSON file, or - for stdin")
    v.add_argument("--claim", choices=["exactly_one", "coverage", "c_constraint", "max_tally"],
                   default="exactly_one")
    v.add_argument("--semantics", type=_semantics, default=DecodingSemantics.FIXED_POINT)
    v.add_argument("--c", type=int, default=None)

    o = sub.add_parser("oracle", help="exhaustive search certificate")
    o.add_argument("kind", choices=["min-length", "exactly-one", "max-total"])
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--semantics", type=_semantics, default=DecodingSemantics.FIXED_POINT)
    o.add_argument("--L-max", dest="l_max", type=int, default=2)
    o.add_argument("--L", dest="length", type=int, default=2, help="code length for max-total")

    s = sub.add_parser("sweep", help="write a CSV table over a (p, k) grid")
    s.add_argument("--p", type=_int_range, required=True, help="p or lo..hi")
    s.add_argument("--k", type=_int_range, default=None, help="k or lo..hi (default: all)")
    s.add_argument("--case", dest="cases", default="exactly-one",
                   help="comma-separated construction names; empty for none")
    s.add_argument("--semantics", default="fixed_point", help="comma-separated semantics")
    s.add_argument("--i", type=int, default=0)
    s.add_argument("--c", dest="c_policy", default="k", help="k, all, or comma-separated values")
    s.add_argument("--out", default="-", help="CSV path (default stdout)")
    s.add_argument("--findings", default=None, help="also write a JSON findings report here")
    return ap


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def cmd_construct(args) -> int:
    inst = ProblemInstance(args.p, args.k, args.c)
    kwargs = {}
    if args.case == "max":
        kwargs = {"j": args.j, "printed_w2": args.printed_w2}
    elif args.j is not None or args.printed_w2:
        raise InvalidParameters("--j and --printed-w2 only apply to --case max")
    code = BUILDERS[args.case](inst, args.i, **kwargs)
    _emit(code.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.code_file == "-" else Path(args.code_file).read_text()
    try:
        code = IndexCode.from_json(text)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InvalidParameters(f"cannot parse {args.code_file}: {exc}") from None
    if args.claim == "exactly_one":
        out = verify_exactly_one(code, args.semantics)
    elif args.claim == "coverage":
        out = verify_coverage(code, args.semantics)
    elif args.claim == "max_tally":
        out = verify_max_tally(code, args.semantics)
    else:
        c = args.c if args.c is not None else code.instance.c
        if c is None:
            raise InvalidParameters("c_constraint needs --c or a c field in the code file")
        out = verify_c_constraint(code, c, args.semantics)
    _emit(out.to_json())
    return EXIT_OK if out.holds else EXIT_FAILED


def cmd_oracle(args) -> int:
    inst = ProblemInstance(args.p, args.k)
    if args.kind == "min-length":
        cert = oracle_min_length(inst, args.semantics, args.l_max)
    elif args.kind == "exactly-one":
        cert = oracle_exactly_one_feasible(inst, args.semantics)
    else:
        cert = oracle_max_total(inst, args.length, args.semantics)
    _emit(cert.to_json())
    return EXIT_OK


def cmd_sweep(args) -> int:
    cases = [c for c in args.cases.split(",") if c]
    unknown = [c for c in cases if c not in BUILDERS]
    if unknown:
        raise InvalidParameters(f"unknown case(s) {unknown}; choose from {sorted(BUILDERS)}")
    sems = [DecodingSemantics.parse(s) for s in args.semantics.split(",") if s]
    rows = sweep_rows(args.p, cases, sems, args.k, args.i, args.c_policy)
    text = rows_to_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    if args.findings:
        found = collect_findings(max(args.p), sems[0] if sems else DecodingSemantics.FIXED_POINT)
        Path(args.findings).write_text(json.dumps([f.to_dict() for f in found], indent=1) + "\n")
    return EXIT_OK


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "oracle": cmd_oracle, "sweep": cmd_sweep}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (InvalidParameters, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
