"""Command-line front end: parse, typecheck, reduce, translate and check.

Exit codes: 0 success or every check holds, 1 a property was falsified,
2 parse, type or usage error, 3 a search bound was exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import lm, lmm
from .harness.report import FALSIFIED, INCONCLUSIVE
from .harness.suites import SIM_STRATEGIES, STRATEGY_SUITES, SUITES, run_suite
from .simple_types import Untypable, check_sequent, infer, parse_sequent
from .steps import ORDERS, STRATEGIES_LM, STRATEGIES_LMM
from .syntax import SORTS, ParseError, parse, show
from .translate import circ, dag

EXIT_OK, EXIT_FALSIFIED, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3
CHECK_NAMES = SUITES + ("all",)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _subject(args, calc=None):
    text = _read(args.source).strip()
    calc = calc or args.calc
    if args.sort is not None:
        return parse(text, calc, args.sort)
    # without --sort, take the first sort the input parses as
    first_error = None
    for sort in SORTS:
        try:
            return parse(text, calc, sort)
        except ParseError as exc:
            first_error = first_error or exc
    raise first_error


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def cmd_parse(args) -> int:
    print(show(_subject(args)))
    return EXIT_OK


def cmd_typecheck(args) -> int:
    subject = _subject(args)
    principal = infer(subject)
    print(principal.render(show(subject)))
    if args.expect is not None:
        claimed = parse_sequent(args.expect, principal.form)
        ok = check_sequent(subject, claimed)
        print(f"expected sequent: {'derivable' if ok else 'not derivable'}")
        return EXIT_OK if ok else EXIT_FALSIFIED
    return EXIT_OK


def cmd_reduce(args) -> int:
    subject = _subject(args)
    if args.calc == "lm":
        if args.beta_prime:
            raise _Usage("--beta-prime applies to lmm only")
        trace = lm.reduce(subject, args.strategy, args.max_steps, args.order)
    else:
        trace = lmm.reduce(subject, args.strategy, args.max_steps, args.order, beta_prime=args.beta_prime)
    if args.trace:
        for k, (redex, node) in enumerate(trace.steps, 1):
            print(f"step {k}: rule={redex.rule} linear={_fmt_bool(redex.linear)}  {show(node)}")
    status = "normal form" if trace.normal_form else "step bound reached"
    print(f"result: {show(trace.end)}  ({len(trace)} steps, {status})")
    return EXIT_OK


def cmd_translate(args) -> int:
    source_calc = "lm" if args.dir == "lm2lmm" else "lmm"
    if args.calc_given and args.calc != source_calc:
        raise _Usage(f"--dir {args.dir} reads {source_calc}, not {args.calc}")
    subject = _subject(args, source_calc)
    print(show(dag(subject) if source_calc == "lm" else circ(subject)))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.strategy is not None and args.name not in STRATEGY_SUITES + ("all",):
        raise _Usage(f"check {args.name} takes no --strategy")
    reports = run_suite(args.name, args.count, args.size, args.seed, args.strategy)
    if args.output == "json":
        for r in reports:
            print(r.to_json())
    else:
        for r in reports:
            print(r.summary())
            if r.name.startswith("nonconfluence"):
                for nf in r.notes.get("normal_forms", []):
                    print(f"  normal form: {nf}")
        counts = {s: sum(r.status == s for r in reports) for s in ("holds", FALSIFIED, INCONCLUSIVE)}
        print("total: " + ", ".join(f"{n} {s}" for s, n in counts.items()))
    statuses = {r.status for r in reports}
    if FALSIFIED in statuses:
        return EXIT_FALSIFIED
    if INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


class _Usage(ValueError):
    pass


def _default_seed() -> int:
    raw = os.environ.get("MUMU_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _Usage(f"MUMU_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--calc", choices=("lm", "lmm"), default=None, help="calculus (default lm)")
    common.add_argument("--sort", choices=SORTS, default=None, help="syntactic sort (default: detected)")

    p = argparse.ArgumentParser(prog="mumu", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_source(sp):
        sp.add_argument("source", nargs="?", default="-", help="input file, or - for stdin")
        return sp

    sp = with_source(sub.add_parser("parse", parents=[common], help="parse and pretty-print"))
    sp.set_defaults(func=cmd_parse)

    sp = with_source(sub.add_parser("typecheck", parents=[common], help="print the principal sequent"))
    sp.add_argument("--expect", metavar="SEQUENT", help="also check that SEQUENT is derivable")
    sp.set_defaults(func=cmd_typecheck)

    sp = with_source(sub.add_parser("reduce", parents=[common], help="reduce under a strategy"))
    sp.add_argument("--strategy", default="free", choices=sorted(set(STRATEGIES_LM) | set(STRATEGIES_LMM)))
    sp.add_argument("--max-steps", type=int, default=100)
    sp.add_argument("--order", choices=ORDERS, default=ORDERS[0])
    sp.add_argument("--trace", action="store_true", help="print every step")
    sp.add_argument("--beta-prime", action="store_true", help="enable the shortcut beta rule (lmm)")
    sp.set_defaults(func=cmd_reduce)

    sp = with_source(sub.add_parser("translate", parents=[common], help="translate between the calculi"))
    sp.add_argument("--dir", choices=("lm2lmm", "lmm2lm"), required=True)
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("check", parents=[common], help="run a batch of seeded checks")
    sp.add_argument("name", choices=CHECK_NAMES)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--size", type=int, default=12)
    sp.add_argument("--seed", type=int, default=None, help="default: $MUMU_SEED or 0")
    sp.add_argument("--strategy", choices=SIM_STRATEGIES, default=None)
    sp.add_argument("--output", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_check)
    return p


def _validate(args) -> None:
    args.calc_given = args.calc is not None
    if args.calc is None:
        args.calc = "lm"
    if args.command == "reduce":
        allowed = STRATEGIES_LM if args.calc == "lm" else STRATEGIES_LMM
        if args.strategy not in allowed:
            raise _Usage(f"strategy {args.strategy} is not available for {args.calc}")
        if args.max_steps < 0:
            raise _Usage("--max-steps must be >= 0")
    if args.command == "check":
        if args.count < 1 or args.size < 1:
            raise _Usage("--count and --size must be positive")
        if args.seed is None:
            args.seed = _default_seed()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except _Usage as exc:
        print(f"mumu: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ParseError as exc:
        print(f"mumu: parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Untypable as exc:
        print(f"mumu: type error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        # fragment violations, malformed sequents, unreadable files
        print(f"mumu: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
