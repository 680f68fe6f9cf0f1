"""Command-line front end.

    cdlab analyze FILE [--oracle] [--fast] [--cache-dir DIR] [--max-order N] [--timing] [--out PATH]
    cdlab verify --suite NAME [--max-order N]
    cdlab dot FILE [--fast] [--max-order N]
    cdlab make NAME [key=value ...] [--out PATH]

Exit codes: 0 pass, 2 invariant violation, 3 parse error (including bad
command lines and unknown suites), 4 cap exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys

from .constructions import CONSTRUCTION_NAMES, spec
from .errors import CapExceeded, ParseError, UnknownSuite
from .groupfile import dumps, from_spec, load
from .groups import ELEMENT_CAP
from .report import AnalysisOptions, ResultCache, analyze_cached, compute_lattice, export_dot
from .suites import SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_CAP = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as a violation
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    gf = load(args.file)
    opts = AnalysisOptions(oracle=args.oracle, fast=args.fast, max_order=args.max_order, timing=args.timing)
    cache_dir = args.cache_dir or os.environ.get("CDLAB_CACHE_DIR")
    cache = ResultCache(cache_dir) if cache_dir else None
    text, passed, hit = analyze_cached(gf, opts, cache)
    _write(text, args.out)
    if hit:
        print("cache hit", file=sys.stderr)
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_verify(args) -> int:
    res = run_suite(args.suite, args.max_order)
    for label, ok, detail in res.cases:
        if args.verbose or not ok:
            line = f"{'PASS' if ok else 'FAIL'} {label}"
            print(f"{line}  ({detail})" if detail else line)
    print(res.summary())
    return EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_dot(args) -> int:
    gf = load(args.file)
    L, _, _ = compute_lattice(gf, AnalysisOptions(fast=args.fast, max_order=args.max_order))
    _write(export_dot(L, gf.label), args.out)
    return EXIT_OK


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def cmd_make(args) -> int:
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {item!r}")
        params[key] = _parse_value(value)
    try:
        s = spec(args.name, **params)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad parameters for {args.name}: {exc}") from exc
    _write(dumps(from_spec(s)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cdlab", description="Chermak-Delgado lattice analysis")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="compute CD(G) for a group file and print a JSON report")
    a.add_argument("file")
    a.add_argument("--oracle", action="store_true", help="cross-check against all-subgroups enumeration")
    a.add_argument("--fast", action="store_true", help="use the bilinear path for class-2 input")
    a.add_argument("--cache-dir", default=None, help="result cache directory (default: $CDLAB_CACHE_DIR)")
    a.add_argument("--max-order", type=int, default=ELEMENT_CAP)
    a.add_argument("--timing", action="store_true", help="include timings in the report")
    a.add_argument("--out", default=None)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a named verification suite over the standard corpus")
    # validated by run_suite so an unknown name maps to UnknownSuite
    v.add_argument("--suite", required=True, metavar="{" + ",".join(SUITES) + "}")
    v.add_argument("--max-order", type=int, default=32, help="largest catalog group in the corpus")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dot", help="Hasse diagram of CD(G) in DOT")
    d.add_argument("file")
    d.add_argument("--fast", action="store_true")
    d.add_argument("--max-order", type=int, default=ELEMENT_CAP)
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_dot)

    m = sub.add_parser("make", help="write a construction group file")
    m.add_argument("name", choices=CONSTRUCTION_NAMES)
    m.add_argument("params", nargs="*", help="key=value")
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_make)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownSuite) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
