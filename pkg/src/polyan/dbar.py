"""Constructive solutions of ∂̄u = f for polyanalytic data f.

For f with ∂̄^n f = 0 the function

    u = -Σ_{k=1}^{n} (-1)^k / k! · z̄^k · ∂̄^{k-1} f

solves ∂̄u = f, and every other solution differs from it by an entire
function u_0 = u + Ψ_f with Ψ_f = -u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from polyan.algebra import (
    ExpPoly,
    Wirtinger,
    add,
    config,
    mul,
    polyanalytic_order,
    wirtinger,
)
from polyan.errors import (
    InfiniteOrder,
    InternalMismatch,
    NotASolution,
    NotHolomorphic,
    OrderTooSmall,
)

DBAR = Wirtinger.DBAR_Z
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class PolyDecomposition:
    """Analytic components f_0..f_{n-1} with f = Σ z̄^k f_k."""

    components: tuple[ExpPoly, ...]
    order: int


@dataclass(frozen=True)
class SolutionBundle:
    particular: ExpPoly
    correction: ExpPoly
    order: int
    datum: ExpPoly


def finite_order(f: ExpPoly) -> int:
    n = polyanalytic_order(f)
    if n == math.inf:
        raise InfiniteOrder(
            f"datum carries factor (m1, m2, m3) = {f.factor}; "
            "only e^(z w̄) is analytic in z"
        )
    return int(n)


def divided_dbar(f: ExpPoly, k: int) -> ExpPoly:
    """∂̄^k f / k! for finite-order f.

    With m2 = m3 = 0 the operator only lowers the z̄-degree, so each term
    picks up the integer C(b, k). Forming that binomial exactly avoids the
    factorial ratios b!/(b-k)! and 1/k!, which either lose digits or fall
    under the zero threshold for large k.
    """
    finite_order(f)
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = {(a, b - k, c, d): math.comb(b, k) * coef for (a, b, c, d), coef in f.terms.items() if b >= k}
    return ExpPoly(out, *f.factor)


def _zbar_times(k: int, f: ExpPoly, coef: float) -> ExpPoly:
    return mul(ExpPoly.monomial(0, k, 0, 0), f).scale(coef)


def particular_solution(f: ExpPoly, n: int | None = None) -> SolutionBundle:
    order = finite_order(f)
    if n is None:
        n = order
    elif n < order:
        raise OrderTooSmall(f"datum has polyanalytic order {order}, got n={n}")
    u = ExpPoly.zero(*f.factor)
    for k in range(1, n + 1):
        # (-1)^{k+1}/k! · ∂̄^{k-1} f = (-1)^{k+1}/k · (∂̄^{k-1} f / (k-1)!)
        u = add(u, _zbar_times(k, divided_dbar(f, k - 1), (-1) ** (k + 1) / k))
    return SolutionBundle(particular=u, correction=-u, order=n, datum=f)


def group_by_zbar(f: ExpPoly) -> list[ExpPoly]:
    """Direct grouping of terms by z̄-degree."""
    n = max(1, finite_order(f))
    groups: list[dict] = [{} for _ in range(n)]
    for (a, b, c, d), k in f.terms.items():
        groups[b][(a, 0, c, d)] = k
    return [ExpPoly(g, *f.factor) for g in groups]


def analytic_components(f: ExpPoly) -> PolyDecomposition:
    """Poly-decomposition via the finite formula

        f_k = (1/k!) Σ_{s=0}^{n-1-k} (-1)^s/s! · z̄^s · ∂̄^{k+s} f,

    cross-checked against direct grouping by z̄-degree. The zero function
    decomposes as a single zero component.
    """
    n = max(1, finite_order(f))
    direct = group_by_zbar(f)
    scale = max(1.0, f.max_abs())
    components = []
    for k in range(n):
        fk = ExpPoly.zero(*f.factor)
        for s in range(n - k):
            # ∂̄^{k+s} f/(k! s!) = C(k+s, k) · ∂̄^{k+s} f/(k+s)!
            coef = (-1) ** s * math.comb(k + s, k)
            fk = add(fk, _zbar_times(s, divided_dbar(f, k + s), coef))
        # z̄-terms cancel up to rounding
        residue = max((abs(c) for e, c in fk.terms.items() if e[1] > 0), default=0.0)
        if residue > DEFAULT_TOL * scale or not fk.isclose(direct[k], DEFAULT_TOL):
            raise InternalMismatch(
                f"component {k}: formula and direct grouping disagree "
                f"(difference {fk.max_difference(direct[k]):.3g})"
            )
        fk = ExpPoly({e: c for e, c in fk.terms.items() if e[1] == 0}, *fk.factor)
        components.append(fk)
    return PolyDecomposition(tuple(components), n)


def recompose(d: PolyDecomposition | list[ExpPoly] | tuple[ExpPoly, ...]) -> ExpPoly:
    components = d.components if isinstance(d, PolyDecomposition) else tuple(d)
    total = ExpPoly.zero()
    for k, fk in enumerate(components):
        total = add(total, mul(ExpPoly.monomial(0, k, 0, 0), fk))
    return total


def verify_solution(u: ExpPoly, f: ExpPoly, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check ∂̄u = f coefficient-wise.

    Passes iff the largest residual coefficient is at most ``tol`` times the
    largest coefficient of f (or ``tol`` itself for f = 0). The raw residual
    is returned either way.
    """
    residual = wirtinger(u, DBAR).max_difference(f)
    scale = f.max_abs() or 1.0
    return residual <= tol * scale, residual


def holomorphic_remainder(u: ExpPoly, f: ExpPoly, tol: float = DEFAULT_TOL) -> ExpPoly:
    """Recover u_0 = u + Ψ_f from a solution u of ∂̄u = f."""
    ok, residual = verify_solution(u, f, tol)
    if not ok:
        raise NotASolution(f"∂̄u differs from the datum by {residual:.3g}")
    bundle = particular_solution(f)
    u0 = add(u, bundle.correction)
    scale = max(1.0, u.max_abs())
    leftover = wirtinger(u0, DBAR).max_abs()
    if leftover > tol * scale:
        raise NotHolomorphic(f"remainder has ∂̄u_0 of size {leftover:.3g}")
    return u0.chop(config.zero_threshold * scale)
