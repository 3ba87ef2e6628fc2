"""Command-line front end.

Every report starts with ``key=value`` lines and puts tables after them.
Exit status: 0 success, 1 invalid spec, 2 unreadable input, 3 enumeration
cap exceeded, 4 closed-form/oracle dual mismatch.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .dualpair import DualMismatchError, dual_spec, format_dual
from .gf2poly import PolyParseError
from .linoracle import DEFAULT_CAP, EnumerationCapError, weight_distribution
from .search import MAX_N, best_code_search, factor_xn_minus_1, write_records
from .triplecode import (
    InvalidSpecError,
    SpecFileError,
    cardinality,
    encode,
    generator_matrix,
    is_separable,
    projections,
    read_spec,
    validate,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4


def _out(line: str = "") -> None:
    print(line)


def _err(line: str) -> None:
    print(line, file=sys.stderr)


def _load(path: str):
    try:
        return read_spec(path)
    except OSError as exc:
        raise SpecFileError(0, f"cannot read {path}: {exc.strerror}") from None


def cmd_validate(args) -> int:
    report = validate(_load(args.spec))
    _out(f"valid={'yes' if report.ok else 'no'} violations={len(report.violations)}")
    for v in report.violations:
        _out(f"{v.condition}: {v.message} [{v.source}]")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_analyze(args) -> int:
    spec = _load(args.spec)
    wd = weight_distribution(generator_matrix(spec), args.max_dim)
    pr, ps, pt = projections(spec)
    _out(f"r={spec.r} s={spec.s} t={spec.t}")
    _out(f"n={spec.n} k={wd.k} d={wd.d if wd.d is not None else 'none'}")
    _out(f"separable={'yes' if is_separable(spec) else 'no'}")
    _out(f"proj_r={pr} proj_s={ps} proj_t={pt}")
    _out("weight count")
    _out(wd.table())
    return EXIT_OK


def cmd_matrix(args) -> int:
    spec = _load(args.spec)
    m = generator_matrix(spec)
    _out(f"rows={len(m.rows)} n={m.n} blocks={spec.r},{spec.s},{spec.t}")
    for word in m.codewords():
        _out(word.to_str(args.bitstring))
    return EXIT_OK


def cmd_dual(args) -> int:
    spec = _load(args.spec)
    result = dual_spec(spec, cross_check=args.cross_check, oracle_only=args.oracle_only)
    _out(format_dual(result, args.bitstring))
    if args.cross_check:
        _out("cross_check=ok")
    return EXIT_OK


def cmd_encode(args) -> int:
    spec = _load(args.spec)
    k = cardinality(spec)
    msg = args.message.strip()
    if len(msg) != k or set(msg) - {"0", "1"}:
        _err(f"error: message must be {k} bits of 0/1, got {args.message!r}")
        return EXIT_INPUT
    word = encode(spec, msg)
    _out(f"n={spec.n} k={k} weight={word.weight()}")
    _out(word.to_str(True))
    return EXIT_OK


def cmd_search(args) -> int:
    result = best_code_search(
        args.r, args.s, args.t,
        budget=args.budget,
        mode=args.mode,
        seed=args.seed,
        separable_only=args.separable_only,
        cap=args.max_dim,
    )
    _out(f"records={len(result.records)} visited={result.visited} "
         f"truncated={'yes' if result.truncated else 'no'} skipped_over_cap={result.skipped_over_cap}")
    for rec in result.records:
        _out(rec.to_line())
    if args.out:
        write_records(args.out, result)
    return EXIT_OK


def cmd_factor(args) -> int:
    factors = factor_xn_minus_1(args.n)
    _out(f"n={args.n} factors={len(factors)}")
    for f in factors:
        _out(str(f))
    return EXIT_OK


def _length(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_N:
        raise argparse.ArgumentTypeError(f"must be between 1 and {MAX_N}")
    return n


def _cap(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tricyclic", description="Z2-triple cyclic code toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a spec file")
    v.add_argument("spec")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="n, k, d and weight distribution")
    a.add_argument("spec")
    a.add_argument("--max-dim", type=_cap, default=DEFAULT_CAP, help="enumeration cap on k (default %(default)s)")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("matrix", help="generator matrix, one spanning row per line")
    m.add_argument("spec")
    m.add_argument("--bitstring", action="store_true", help="print rows as bits instead of polynomials")
    m.set_defaults(func=cmd_matrix)

    d = sub.add_parser("dual", help="generators of the dual code")
    d.add_argument("spec")
    d.add_argument("--oracle-only", action="store_true", help="skip the closed form")
    d.add_argument("--cross-check", action="store_true", help="compare with the null-space oracle")
    d.add_argument("--bitstring", action="store_true")
    d.set_defaults(func=cmd_dual)

    e = sub.add_parser("encode", help="encode a k-bit message")
    e.add_argument("spec")
    e.add_argument("message")
    e.set_defaults(func=cmd_encode)

    s = sub.add_parser("search", help="best minimum distance per dimension")
    s.add_argument("--r", type=_length, required=True)
    s.add_argument("--s", type=_length, required=True)
    s.add_argument("--t", type=_length, required=True)
    s.add_argument("--budget", type=_cap, default=None)
    s.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--separable-only", action="store_true")
    s.add_argument("--max-dim", type=_cap, default=DEFAULT_CAP)
    s.add_argument("--out", help="append records to this file")
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("factor", help="irreducible factors of x^n-1")
    f.add_argument("--n", type=_length, required=True)
    f.set_defaults(func=cmd_factor)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "search" and args.mode == "random" and args.budget is None:
        parser.error("--mode random needs --budget")
    try:
        return args.func(args)
    except (SpecFileError, PolyParseError) as exc:
        _err(f"error: {exc}")
        return EXIT_INPUT
    except InvalidSpecError as exc:
        _err("error: invalid spec")
        for v in exc.report.violations:
            _err(f"{v.condition}: {v.message}")
        return EXIT_INVALID
    except EnumerationCapError as exc:
        _err(f"error: {exc}")
        return EXIT_CAP
    except DualMismatchError as exc:
        _err(f"error: {exc}")
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
