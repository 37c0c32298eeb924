"""Aggregated report for one datum: solution, decomposition, norms, estimates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal

from polyan.algebra import ExpPoly
from polyan.dbar import analytic_components, finite_order, particular_solution, verify_solution
from polyan.measures import analytic_solution_ratio, estimate_check, sobolev_norms
from polyan.serialize import (
    NORM_HEADER,
    csv_table,
    dumps,
    dumps_compact,
    estimate_to_dict,
    fmt_float,
    markdown_table,
    norm_rows,
    to_jsonable,
)

EXISTENCE_NOTE = (
    "Out of scope: the bound int |u|^2/(1+|z|^2)^2 e^{-p} <= M(f)/2 holds for a "
    "minimal-norm solution whose existence is nonconstructive; it is not reproduced. "
    "The existence_ratio row reports the ratio for the constructed particular "
    "solution u = zb*f only (analytic data)."
)
NORMALIZATION_NOTE = (
    "All integrals carry the factor 1/pi, so Gaussian moments are a! and the complex "
    "Hermite polynomials have squared norm m! n!."
)


@dataclass
class Table:
    header: tuple[str, ...]
    rows: list[list[Any]]


@dataclass
class Report:
    sections: list[tuple[str, Any]] = field(default_factory=list)
    format: Literal["json", "csv", "markdown"] = "json"

    def add(self, title: str, content: Any) -> None:
        self.sections.append((title, content))

    def to_dict(self) -> dict:
        out = {}
        for title, content in self.sections:
            if isinstance(content, Table):
                out[title] = [dict(zip(content.header, row)) for row in content.rows]
            else:
                out[title] = to_jsonable(content)
        return out

    def render(self, fmt: str | None = None) -> str:
        fmt = fmt or self.format
        if fmt == "json":
            return dumps(self.to_dict())
        if fmt == "markdown":
            return self._markdown()
        if fmt == "csv":
            return self._csv()
        raise ValueError(f"unknown report format {fmt!r}")

    def _markdown(self) -> str:
        parts = []
        for title, content in self.sections:
            parts.append(f"## {title}\n")
            if isinstance(content, Table):
                parts.append(markdown_table(content.header, content.rows))
            elif isinstance(content, ExpPoly):
                parts.append(f"`{content}`\n\n```json\n{dumps_compact(content)}\n```\n")
            elif isinstance(content, str):
                parts.append(content + "\n")
            elif isinstance(content, float):
                parts.append(fmt_float(content) + "\n")
            else:
                parts.append(f"```json\n{dumps(content).rstrip()}\n```\n")
        return "\n".join(parts)

    def _csv(self) -> str:
        rows = []
        for title, content in self.sections:
            if isinstance(content, Table):
                for row in content.rows:
                    rows.append([title, *[dumps_compact(v) if isinstance(v, ExpPoly) else v for v in row]])
            elif isinstance(content, (ExpPoly, list, tuple, dict)):
                rows.append([title, dumps_compact(content)])
            else:
                rows.append([title, content])
        width = max(len(r) for r in rows)
        rows = [r + [""] * (width - len(r)) for r in rows]
        return csv_table(["section"] + [f"col{k}" for k in range(1, width)], rows)


def _estimate_rows(reports) -> Table:
    rows = []
    for r in reports:
        d = estimate_to_dict(r)
        rows.append([d["which"], r.lhs.value, r.rhs.value, r.ratio, r.bound_constant, r.passed,
                     r.lhs.method])
    return Table(("which", "lhs", "rhs", "ratio", "bound_constant", "passed", "lhs_method"), rows)


def report_all(f: ExpPoly, n: int | None = None, w_value: complex = 0j, tol: float | None = None) -> Report:
    order = finite_order(f)
    n = max(order, 1) if n is None else n
    if n < order:
        raise ValueError(f"datum has order {order} > n = {n}")
    bundle = particular_solution(f, n)
    decomposition = analytic_components(f)
    report = Report()
    report.add("datum", f)
    report.add("detected_order", order)
    report.add("n", n)
    report.add("w", complex(w_value))
    report.add("particular_solution", bundle.particular)
    report.add("decomposition", [c for c in decomposition.components])
    norms = sobolev_norms(f, n, w_value)
    report.add("sobolev_norms", Table(NORM_HEADER, norm_rows((f"M_{k}", r) for k, r in enumerate(norms))))
    estimates = [
        estimate_check(f, n, w_value, "particular_bound", tol=tol),
        estimate_check(f, n, w_value, "remainder_bound", tol=tol),
    ]
    if order <= 1:
        estimates.append(analytic_solution_ratio(f, w_value, tol=tol))
    report.add("estimates", _estimate_rows(estimates))
    ok, residual = verify_solution(bundle.particular, f)
    report.add("verification", Table(("check", "passed", "max_residual"), [["dbar(u) = f", ok, residual]]))
    report.add("notes", "\n".join([NORMALIZATION_NOTE, EXISTENCE_NOTE]))
    return report
