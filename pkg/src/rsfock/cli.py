"""Command-line shell over :mod:`rsfock.runner`.

Subcommands: ``generate`` (write a random admissible spec), ``lfun`` (print
L, epsilon, L~ and its central derivatives), ``verify`` (run check suites)
and ``report`` (reformat or summarize a saved report).
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .errors import InvalidConfig, InvalidParameters
from .lfun import central_derivative, lfunction, normalized_pair_lfunction
from .runner import CHECKS, DEFAULT_SUITE, RunConfig, dump_spec, read_report, run_suite, write_records

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _name_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="spec file (JSON); overrides --q/--n/--g/--seed")
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", choices=("exact", "float"), default=None,
                   help="scalar backend (default: the spec file's, else float)")
    p.add_argument("--precision", type=int, default=53, help="float backend precision in bits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsfock", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded random admissible spec")
    _add_source(p)
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("lfun", help="print L, epsilon, L~ and central derivatives")
    _add_source(p)
    p.add_argument("--r", type=_int_list, default=[0, 1, 2, 3, 4])

    p = sub.add_parser("verify", help="run verification suites")
    _add_source(p)
    p.add_argument("--r", type=_int_list, default=[0, 2])
    p.add_argument("--tol", type=float, default=None, help="relative tolerance (float backend)")
    p.add_argument("--suite", type=_name_list, default=list(DEFAULT_SUITE),
                   help=f"comma-separated checks from: {', '.join(CHECKS)}")
    p.add_argument("--out", help="report path")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("report", help="reformat or summarize a saved report")
    p.add_argument("path", help="JSON or CSV report")
    p.add_argument("--out", help="write the converted report here")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def _config(args: argparse.Namespace, **extra) -> RunConfig:
    backend = args.backend
    if backend is None:
        backend = None if args.spec else "float"
    return RunConfig(spec_path=args.spec, q=args.q, n=args.n, g=args.g, seed=args.seed,
                     backend=backend, precision=args.precision, **extra)


def _cmd_generate(args) -> int:
    cfg = _config(args)
    cfg.validate()
    text = dump_spec(cfg.load(), args.out)
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_lfun(args) -> int:
    cfg = _config(args, r_values=args.r)
    cfg.validate()
    spec = cfg.load()
    bk = spec.backend
    sys_ = spec.local_system()
    with bk.context():
        print(f"L(sigma, s)  = {lfunction(sys_.h1(), spec.q).pretty()}   (u = q^(1/2-s))")
        print(f"epsilon      = {spec.epsilon}")
        print(f"L~(s)        = {normalized_pair_lfunction(sys_).pretty()}")
        for r in args.r:
            print(f"L~^({r})(1/2) = {central_derivative(sys_, r)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    extra = dict(r_values=args.r, suite=args.suite, out=args.out, fmt=args.format)
    if args.tol is not None:
        extra["tol"] = args.tol
    status, reports = run_suite(_config(args, **extra))
    for rep in reports:
        print(rep.line())
    return status


def _cmd_report(args) -> int:
    records = read_report(args.path)
    if args.out:
        write_records(records, args.out, args.format)
    for rec in records:
        r = "-" if rec["r"] is None else rec["r"]
        print(f"{'PASS' if rec['pass'] else 'FAIL'} {rec['identity']} r={r} "
              f"abs_err={rec['abs_err']!r} rel_err={rec['rel_err']!r}")
    return EXIT_OK if all(rec["pass"] for rec in records) else EXIT_FAIL


COMMANDS = {"generate": _cmd_generate, "lfun": _cmd_lfun, "verify": _cmd_verify, "report": _cmd_report}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InvalidConfig, InvalidParameters, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
