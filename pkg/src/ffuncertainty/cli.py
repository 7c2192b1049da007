"""Command-line entry point.

Exit codes: 0 success, 2 usage or configuration error, 3 a proven statement
failed (implementation bug), 4 search budget exhausted where a proof was
required.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .errors import CapExceeded, HardAssertionFailure
from .field_core import FieldSpec, field_for, find_generator
from .fourier import forward, forward_rader, inverse, make_context, vector_from_json, vector_to_json
from .minors import degenerate_minor_search, minor_report, vandermonde_det, vandermonde_sign
from .progressions import DEFAULT_BUDGET, APSpec, exact_r, gowers_bound
from .uncertainty import DEFAULT_CAP, extremal_scan

EXIT_OK, EXIT_USAGE, EXIT_HARD_FAILURE, EXIT_BUDGET = 0, 2, 3, 4
THREADS_ENV = "FFUNCERTAINTY_THREADS"


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_field_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("field")
    g.add_argument("--p", type=int, required=True, help="prime length of the group Z/p")
    g.add_argument("--char", type=int, help="field characteristic (default: least prime q = 1 mod p)")
    g.add_argument("--deg", type=int, default=1, help="extension degree k, q = char^k")
    g.add_argument("--modulus", type=_int_list, help="modulus coefficients c0,...,ck (constant first)")
    g.add_argument("--modulus-seed", type=int, default=0, help="seed for the irreducible-polynomial search")
    g.add_argument("--omega", help="override the root of unity (JSON element: int or coefficient list)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit timestamp and timing fields")


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffuncertainty", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("root", help="principal p-th root of unity, generator and p^-1")
    _add_field_args(p)
    _add_output_args(p)

    p = sub.add_parser("transform", help="transform a signal or spectrum file")
    p.add_argument("input", help="JSON signal file, or - for stdin")
    p.add_argument("--direction", choices=["forward", "inverse"], default="forward")
    p.add_argument("--strategy", choices=["naive", "rader"], default="naive")
    p.add_argument("--check", action="store_true", help="run both forward strategies and compare")
    p.add_argument("--omega", help="override the root of unity (JSON element)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="scan functions with |supp f| = m and check every bound")
    _add_field_args(p)
    p.add_argument("--m", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget for r_m(p)")
    p.add_argument("--r", type=int, dest="r_assumed", help="use this r_m(p) instead of computing it")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum exhaustive instances")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--counterexamples", help="JSON-lines file for strong-bound counterexamples")
    p.add_argument("--require-proof", action="store_true", help="exit 4 unless r_m(p) is proven exact")
    _add_output_args(p)

    p = sub.add_parser("rfree", help="exact r_m(p) with an AP-free witness")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--method", choices=["branch_and_bound", "exhaustive"], default="branch_and_bound")
    p.add_argument("--require-proof", action="store_true", help="exit 4 if the budget runs out")
    _add_output_args(p)

    p = sub.add_parser("minor", help="rank and determinant of one minor")
    _add_field_args(p)
    p.add_argument("--rows", type=_int_list, required=True)
    p.add_argument("--cols", type=_int_list, required=True)
    _add_output_args(p)

    p = sub.add_parser("minor-search", help="search degenerate minors (JSON lines)")
    _add_field_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, help="number of sampled minors when not enumerating")
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)

    p = sub.add_parser("bounds", help="evaluate the Gowers bound on r_m(p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--exponent", type=float, help="override the exponent 2^(-2^(m+9))")
    p.add_argument("--log-base", choices=["e", "2"], default="e")
    _add_output_args(p)
    return parser


def _field(args) -> FieldSpec:
    return field_for(args.p, args.char, args.deg, args.modulus, args.modulus_seed)


def _context(args, field: FieldSpec | None = None):
    field = field or _field(args)
    omega = None
    if getattr(args, "omega", None) is not None:
        omega = field.element_from_json(json.loads(args.omega))
    return make_context(args.p, field, omega)


def _config(args) -> dict:
    skip = {"output", "no_timestamp", "counterexamples"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _envelope(args, result, started: float, extra: dict | None = None) -> dict:
    env = {"tool": "ffuncertainty", "version": __version__, "command": args.command, "config": _config(args)}
    if not args.no_timestamp:
        env["timestamp"] = datetime.now(timezone.utc).isoformat()
        env["elapsed_seconds"] = round(time.perf_counter() - started, 6)
    if extra:
        env.update(extra)
    env["result"] = result
    return env


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------

def cmd_root(args, started) -> int:
    ctx = _context(args)
    field = ctx.field
    result = ctx.to_json()
    result["generator"] = field.element_to_json(find_generator(field))
    result["omega_str"] = field.format(ctx.omega)
    _emit(args, _dump(_envelope(args, result, started)))
    return EXIT_OK


def cmd_transform(args, started) -> int:
    try:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise _Exit(EXIT_USAGE, f"cannot parse {args.input}: {exc}") from None
    p, field, values = vector_from_json(doc)
    omega = None if args.omega is None else field.element_from_json(json.loads(args.omega))
    ctx = make_context(p, field, omega)
    if args.direction == "inverse":
        out = vector_to_json(ctx, inverse(ctx, values), "signal")
    else:
        spec = forward(ctx, values, args.strategy)
        out = vector_to_json(ctx, spec, "spectrum")
        if args.check:
            other = forward_rader(ctx, values) if args.strategy == "naive" else forward(ctx, values)
            if other != spec:
                raise HardAssertionFailure("naive and rader strategies disagree")
            out["check"] = "strategies agree"
    out["strategy"] = args.strategy if args.direction == "forward" else "naive"
    _emit(args, json.dumps(out, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(args, started) -> int:
    ctx = _context(args)
    if args.r_assumed is not None:
        r = args.r_assumed
    else:
        r = exact_r(ctx.p, args.m, args.budget)
        if args.require_proof and not r.proven_optimal:
            raise _Exit(EXIT_BUDGET, f"r_{args.m}({ctx.p}) not proven within {args.budget} nodes")
    mode = "exhaustive" if args.exhaustive else "random"
    scan = extremal_scan(ctx, args.m, mode, samples=args.samples or 0, seed=args.seed,
                         cap=args.cap, r=r, workers=args.threads)
    if args.counterexamples:
        with open(args.counterexamples, "w") as fh:
            for cex in scan.counterexamples:
                fh.write(_dump({"kind": "strong_counterexample", "p": ctx.p,
                                "field": ctx.field.to_json(), **cex}))
    extra = {"counterexample_stream": args.counterexamples}
    _emit(args, _dump(_envelope(args, {"context": ctx.to_json(), "scan": scan.to_json()}, started, extra)))
    if scan.hard_failures:
        print(f"error: {scan.hard_failures} hard assertion failures", file=sys.stderr)
        return EXIT_HARD_FAILURE
    return EXIT_OK


def cmd_rfree(args, started) -> int:
    res = exact_r(args.p, args.m, args.budget, method=args.method)
    _emit(args, _dump(_envelope(args, res.to_json(), started)))
    if args.require_proof and not res.proven_optimal:
        return EXIT_BUDGET
    return EXIT_OK


def _as_progression(rows: list[int], p: int) -> APSpec | None:
    if not rows:
        return None
    b = (rows[1] - rows[0]) % p if len(rows) > 1 else 1
    if b == 0 or any((rows[i + 1] - rows[i]) % p != b for i in range(len(rows) - 1)):
        return None
    return APSpec(rows[0], b, len(rows))


def cmd_minor(args, started) -> int:
    ctx = _context(args)
    rep = minor_report(ctx, args.rows, args.cols)
    result = {"context": ctx.to_json(), "minor": rep.to_json(ctx.field)}
    ap = _as_progression(args.rows, ctx.p)
    if ap is not None:
        closed = vandermonde_det(ctx, ap, args.cols)
        sign = vandermonde_sign(ap.m)
        expected = rep.det if sign == 1 else ctx.field.neg(rep.det)
        if closed != expected or rep.is_degenerate:
            raise HardAssertionFailure(f"progression-row minor disagrees with its closed form: {result}")
        result["progression_rows"] = ap.to_json()
        result["vandermonde_det"] = ctx.field.element_to_json(closed)
        result["vandermonde_sign"] = sign
    _emit(args, _dump(_envelope(args, result, started)))
    return EXIT_OK


def cmd_minor_search(args, started) -> int:
    ctx = _context(args)
    reports = degenerate_minor_search(ctx, args.m, args.budget, args.seed)
    header = _envelope(args, {"context": ctx.to_json(), "found": len(reports)}, started, {"kind": "header"})
    lines = [_dump(header)] + [_dump(r.to_json(ctx.field)) for r in reports]
    _emit(args, "".join(lines))
    return EXIT_OK


def cmd_bounds(args, started) -> int:
    rep = gowers_bound(args.p, args.m, args.exponent, args.log_base)
    _emit(args, _dump(_envelope(args, rep.to_json(), started)))
    return EXIT_OK


COMMANDS = {
    "root": cmd_root,
    "transform": cmd_transform,
    "verify": cmd_verify,
    "rfree": cmd_rfree,
    "minor": cmd_minor,
    "minor-search": cmd_minor_search,
    "bounds": cmd_bounds,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return COMMANDS[args.command](args, started)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except HardAssertionFailure as exc:
        print(f"hard assertion failure: {exc}", file=sys.stderr)
        return EXIT_HARD_FAILURE
    except (ValueError, CapExceeded, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
