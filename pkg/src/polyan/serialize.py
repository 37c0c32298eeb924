"""JSON/CSV encodings of the library's values.

Floats are written with 17 significant digits and terms in canonical
exponent order, so equal inputs always produce byte-identical text.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence

from polyan.algebra import ExpPoly
from polyan.dbar import PolyDecomposition, SolutionBundle
from polyan.errors import ExpressionSyntaxError
from polyan.measures import EstimateReport, NormResult
from polyan.special import UniPoly


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x + 0.0, ".17g")


def _is_flat(v: Any) -> bool:
    return not isinstance(v, (dict, list, tuple)) or (
        isinstance(v, dict) and not any(isinstance(x, (dict, list, tuple)) for x in v.values())
    )


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if level > 0 and _is_flat(obj):
            # one term per line keeps expression files readable
            return "{" + ", ".join(f"{json.dumps(str(k))}: {_emit(v, 0, 0)}" for k, v in obj.items()) + "}"
        items = [
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_emit(v, indent, level + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_emit(v, 0, 0) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    return _emit(to_jsonable(obj), indent, 0) + "\n"


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, ExpPoly):
        return expr_to_dict(obj)
    if isinstance(obj, SolutionBundle):
        return {
            "particular": expr_to_dict(obj.particular),
            "correction": expr_to_dict(obj.correction),
            "order": obj.order,
            "datum": expr_to_dict(obj.datum),
        }
    if isinstance(obj, PolyDecomposition):
        return {"order": obj.order, "components": [expr_to_dict(c) for c in obj.components]}
    if isinstance(obj, UniPoly):
        return unipoly_to_dict(obj)
    if isinstance(obj, NormResult):
        return norm_to_dict(obj)
    if isinstance(obj, EstimateReport):
        return estimate_to_dict(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    return obj


# -- expressions ------------------------------------------------------------


def expr_to_dict(f: ExpPoly) -> dict:
    return {
        "m1": f.m1,
        "m2": f.m2,
        "m3": f.m3,
        "terms": [
            {"a": a, "b": b, "c": c, "d": d, "re": k.real, "im": k.imag}
            for (a, b, c, d), k in f.terms.items()
        ],
    }


def _int_field(d: dict, key: str, default: int | None = None) -> int:
    if key not in d:
        if default is None:
            raise ExpressionSyntaxError(f"missing field {key!r}")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v:
        raise ExpressionSyntaxError(f"field {key!r} must be an integer, got {v!r}")
    return int(v)


def expr_from_dict(d: Any) -> ExpPoly:
    if not isinstance(d, dict) or "terms" not in d:
        raise ExpressionSyntaxError("expression JSON needs a 'terms' list")
    terms = []
    for t in d["terms"]:
        if not isinstance(t, dict):
            raise ExpressionSyntaxError(f"term must be an object, got {t!r}")
        e = tuple(_int_field(t, k, 0) for k in "abcd")
        if min(e) < 0:
            raise ExpressionSyntaxError(f"negative exponent in {t!r}")
        try:
            coef = complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
        except (TypeError, ValueError) as exc:
            raise ExpressionSyntaxError(f"bad coefficient in {t!r}") from exc
        terms.append((e, coef))
    m1, m2, m3 = (_int_field(d, k, 0) for k in ("m1", "m2", "m3"))
    if m1 < 0 or m2 < 0:
        raise ExpressionSyntaxError("m1 and m2 must be nonnegative")
    try:
        return ExpPoly(terms, m1, m2, m3)
    except ValueError as exc:
        raise ExpressionSyntaxError(str(exc)) from exc


def bundle_from_dict(d: dict) -> SolutionBundle:
    try:
        return SolutionBundle(
            particular=expr_from_dict(d["particular"]),
            correction=expr_from_dict(d["correction"]),
            order=int(d["order"]),
            datum=expr_from_dict(d["datum"]),
        )
    except KeyError as exc:
        raise ExpressionSyntaxError(f"solution bundle is missing {exc}") from exc


def unipoly_to_dict(p: UniPoly) -> dict:
    return {
        "variable": "x",
        "coefficients": [{"re": c.real, "im": c.imag} for c in p.coefficients],
    }


def norm_to_dict(r: NormResult) -> dict:
    out = {"value": r.value, "abs_error_bound": r.abs_error_bound, "method": r.method}
    if r.truncation_radius is not None:
        out["truncation_radius"] = r.truncation_radius
    return out


def estimate_to_dict(r: EstimateReport) -> dict:
    return {
        "which": r.which,
        "lhs": norm_to_dict(r.lhs),
        "rhs": norm_to_dict(r.rhs),
        "ratio": r.ratio,
        "bound_constant": r.bound_constant,
        "passed": r.passed,
    }


# -- tables -------------------------------------------------------------------


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def csv_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def markdown_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join(_cell(v).replace("|", "\\|") for v in row) + " |")
    return "\n".join(lines) + "\n"


def norm_rows(named: Iterable[tuple[str, NormResult]]) -> list[list[Any]]:
    return [[name, r.value, r.abs_error_bound, r.method] for name, r in named]


NORM_HEADER = ("name", "value", "abs_error_bound", "method")


def dumps_compact(obj: Any) -> str:
    """Single-line form used inside CSV cells."""
    # json.dumps escapes newlines inside strings, so stripping is safe
    return _emit(to_jsonable(obj), 0, 0).replace("\n", "")
