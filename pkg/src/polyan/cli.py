"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (diagnostic on stderr) or a
failed ``verify``, 2 on usage errors including malformed expressions.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence, TextIO

from polyan import dbar, measures, special
from polyan.errors import DomainError, ExpressionSyntaxError
from polyan.parse import parse_expression
from polyan.report import report_all
from polyan.serialize import (
    NORM_HEADER,
    bundle_from_dict,
    csv_table,
    dumps,
    dumps_compact,
    markdown_table,
    norm_rows,
)


class UsageError(Exception):
    pass


def _complex_arg(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from exc
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    return complex(*parts)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _constant_arg(text: str) -> float:
    if text in measures.BOUND_CONSTANTS:
        return measures.BOUND_CONSTANTS[text]
    try:
        return float(text)
    except ValueError as exc:
        names = ", ".join(measures.BOUND_CONSTANTS)
        raise argparse.ArgumentTypeError(f"expected a number or one of {names}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyan", description="Polyanalytic d-bar toolkit")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, fmt_default="json", fmt_choices=("json", "csv", "markdown")):
        sp.add_argument("--format", choices=fmt_choices, default=fmt_default)
        return sp

    def with_input(sp, required=True):
        g = sp.add_mutually_exclusive_group(required=required)
        g.add_argument("--input", metavar="PATH", help="expression file (JSON or infix); '-' for stdin")
        g.add_argument("--expr", metavar="TEXT", help="inline infix expression")
        return sp

    def with_w(sp):
        sp.add_argument("--w", type=_complex_arg, default=0j, metavar="RE,IM")
        return sp

    def with_tol(sp, help_text="quadrature tolerance (default: POLYAN_QUAD_TOL or 1e-10)"):
        sp.add_argument("--tol", type=_positive_float, default=None, help=help_text)
        return sp

    sp = common(with_input(sub.add_parser("solve", help="particular solution of dbar u = f")), "json", ("json",))
    sp.add_argument("--order", type=_nonneg, default=None)

    sp = common(with_input(sub.add_parser("verify", help="check dbar u = f")), "json", ("json",))
    sp.add_argument("--datum", metavar="PATH_OR_EXPR", help="datum f when --input is not a solution bundle")
    with_tol(sp, "residual tolerance relative to the datum (default 1e-10)")

    common(with_input(sub.add_parser("decompose", help="analytic components")), "json", ("json",))

    sp = common(sub.add_parser("kernel", help="polyanalytic Fock kernel F_n"), "json", ("json", "csv"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--table", action="store_true")

    sp = common(sub.add_parser("hermite", help="complex Hermite polynomial H_{m,n}"), "json", ("json", "csv"))
    sp.add_argument("--m", type=_nonneg, required=True)
    sp.add_argument("--n", type=_nonneg, required=True)
    sp.add_argument("--rodrigues", action="store_true")
    sp.add_argument("--table", action="store_true")

    sp = common(sub.add_parser("laguerre", help="generalized Laguerre polynomial"), "json", ("json", "csv"))
    sp.add_argument("--m", type=_nonneg, required=True)
    sp.add_argument("--alpha", type=_nonneg, required=True)
    sp.add_argument("--table", action="store_true")

    sp = common(with_w(with_tol(with_input(sub.add_parser("norm", help="weighted L2 norm")))), "csv")
    sp.add_argument("--order", type=_nonneg, default=0, help="denominator order n in (1+|z|^2)^(2n)")
    sp.add_argument("--weight", choices=("gaussian", "power"), default="gaussian")
    sp.add_argument("--rho", type=float, default=None)

    sp = common(sub.add_parser("moments", help="moment table eta_n"), "csv")
    sp.add_argument("--eta", type=_nonneg, required=True)

    sp = common(with_w(with_tol(with_input(sub.add_parser("estimate", help="L2 estimate check")))), "json")
    sp.add_argument("--order", type=_nonneg, default=None)
    sp.add_argument("--which", choices=("particular_bound", "remainder_bound"), default="particular_bound")
    sp.add_argument("--solution", metavar="PATH_OR_EXPR", default=None)
    sp.add_argument("--constant", type=_constant_arg, default=None,
                    help="bound constant: a number or a named one (hspace=3, analytic_solution=8, ...)")

    sp = common(with_w(with_tol(with_input(sub.add_parser("report", help="full report")))), "json")
    sp.add_argument("--order", type=_nonneg, default=None)

    return p


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_text(args) -> str:
    return args.expr if args.expr is not None else _read_source(args.input)


def _load_expr(args):
    return parse_expression(_load_text(args))


def _path_or_expr(value: str):
    try:
        with open(value, encoding="utf-8") as fh:
            return parse_expression(fh.read())
    except OSError:
        return parse_expression(value)


def _emit_table(header, rows, fmt: str) -> str:
    if fmt == "markdown":
        return markdown_table(header, rows)
    if fmt == "json":
        return dumps([dict(zip(header, r)) for r in rows])
    return csv_table(header, rows)


def _order(f, requested):
    order = dbar.finite_order(f)
    return max(order, 1) if requested is None else requested


def _cmd_solve(args, out):
    f = _load_expr(args)
    out.write(dumps(dbar.particular_solution(f, args.order)))
    return 0


def _cmd_verify(args, out, err):
    text = _load_text(args)
    u = f = None
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ExpressionSyntaxError(f"invalid JSON: {exc}") from exc
        if isinstance(data, dict) and "particular" in data:
            bundle = bundle_from_dict(data)
            u, f = bundle.particular, bundle.datum
    if u is None:
        u = parse_expression(text)
    if args.datum is not None:
        f = _path_or_expr(args.datum)
    if f is None:
        raise UsageError("verify needs --datum unless --input is a solution bundle")
    tol = dbar.DEFAULT_TOL if args.tol is None else args.tol
    ok, residual = dbar.verify_solution(u, f, tol)
    out.write(dumps({"verified": ok, "max_residual": residual, "tol": tol}))
    if not ok:
        err.write(f"verification failed: max residual {residual:.6g}\n")
        return 1
    return 0


def _cmd_decompose(args, out):
    out.write(dumps(dbar.analytic_components(_load_expr(args))))
    return 0


def _cmd_kernel(args, out):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.table or args.format == "csv":
        rows = [[n, dumps_compact(k)] for n, k in special.kernel_table(args.n)]
        out.write(csv_table(("index", "polynomial"), rows))
    else:
        out.write(dumps(special.fock_kernel(args.n)))
    return 0


def _cmd_hermite(args, out):
    if args.table or args.format == "csv":
        rows = [[f"{m},{n}", dumps_compact(h)] for (m, n), h in
                special.hermite_table(args.m, args.n, args.rodrigues)]
        out.write(csv_table(("index", "polynomial"), rows))
    else:
        build = special.hermite_rodrigues if args.rodrigues else special.hermite
        out.write(dumps(build(args.m, args.n)))
    return 0


def _cmd_laguerre(args, out):
    if args.table or args.format == "csv":
        rows = [[m, dumps_compact(p)] for m, p in special.laguerre_table(args.m, args.alpha)]
        out.write(csv_table(("index", "polynomial"), rows))
    else:
        out.write(dumps(special.laguerre(args.m, args.alpha)))
    return 0


def _cmd_norm(args, out):
    f = _load_expr(args)
    try:
        weight = measures.WeightSpec(args.weight, args.rho, args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    r = measures.hormander_norm(f, weight, args.w, args.tol)
    name = f"norm[{args.weight},n={args.order}]"
    if args.format == "json":
        out.write(dumps({"name": name, **{"value": r.value, "abs_error_bound": r.abs_error_bound,
                                          "method": r.method}}))
    else:
        out.write(_emit_table(NORM_HEADER, norm_rows([(name, r)]), args.format))
    return 0


def _cmd_moments(args, out):
    rows = []
    for n in range(args.eta + 1):
        r = measures.eta(n)
        fact = float(math.factorial(n))
        rows.append([n, r.value, fact, r.value <= fact, r.abs_error_bound])
    out.write(_emit_table(("n", "eta", "factorial", "eta_le_factorial", "abs_error_bound"), rows, args.format))
    return 0


def _cmd_estimate(args, out):
    f = _load_expr(args)
    n = _order(f, args.order)
    solution = _path_or_expr(args.solution) if args.solution else None
    r = measures.estimate_check(f, n, args.w, args.which, solution=solution,
                                bound_constant=args.constant, tol=args.tol)
    if args.format == "json":
        out.write(dumps(r))
    else:
        header = ("which", "lhs", "lhs_error", "rhs", "rhs_error", "ratio", "bound_constant", "passed")
        rows = [[r.which, r.lhs.value, r.lhs.abs_error_bound, r.rhs.value, r.rhs.abs_error_bound,
                 r.ratio, r.bound_constant, r.passed]]
        out.write(_emit_table(header, rows, args.format))
    return 0


def _cmd_report(args, out):
    f = _load_expr(args)
    out.write(report_all(f, args.order, args.w, args.tol).render(args.format))
    return 0


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "solve": _cmd_solve,
        "decompose": _cmd_decompose,
        "kernel": _cmd_kernel,
        "hermite": _cmd_hermite,
        "laguerre": _cmd_laguerre,
        "norm": _cmd_norm,
        "moments": _cmd_moments,
        "estimate": _cmd_estimate,
        "report": _cmd_report,
    }
    try:
        if args.subcommand == "verify":
            return _cmd_verify(args, out, err)
        return handlers[args.subcommand](args, out)
    except (UsageError, ExpressionSyntaxError) as exc:
        err.write(f"polyan {args.subcommand}: {exc}\n")
        return 2
    except (DomainError, ValueError) as exc:
        err.write(f"polyan {args.subcommand}: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
