"""Weighted L² functionals against e^{-p(z)} on the whole plane.

Every integral is normalised by 1/π. With that convention the Gaussian
moments are (1/π)∫ z^a z̄^b e^{-|z|²} dλ = a! δ_ab and the complex Hermite
polynomials satisfy ⟨H_{m,n}, H_{m',n'}⟩ = m! n! δ.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Literal

import numpy as np

from polyan.algebra import ExpPoly, Wirtinger, conjugate, mul, specialize, wirtinger
from polyan.dbar import finite_order, holomorphic_remainder, particular_solution
from polyan.errors import DivergentIntegral
from polyan.quadrature import EPS, GrowthBound, adaptive_gk, disc_integral, upper_gamma

DEFAULT_QUAD_TOL = 1e-10
RADIAL_REL_TOL = 1e-12

# Named constants from the inequalities that can be selected as bound_constant.
BOUND_CONSTANTS = {
    "existence": 0.5,  # nonconstructive minimal solution; never verified here
    "hspace": 3.0,
    "analytic_solution": 8.0,
    "bianalytic_remainder": 5.0,
}


def default_quad_tol() -> float:
    raw = os.environ.get("POLYAN_QUAD_TOL")
    return float(raw) if raw else DEFAULT_QUAD_TOL


@dataclass(frozen=True)
class WeightSpec:
    kind: Literal["gaussian", "power"] = "gaussian"
    rho: float | None = None
    denominator_order: int = 0

    def __post_init__(self):
        if self.kind not in ("gaussian", "power"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "power" and (self.rho is None or self.rho <= 1):
            raise ValueError("power weight needs rho > 1")
        if self.denominator_order < 0:
            raise ValueError("denominator_order must be >= 0")

    @property
    def exponent(self) -> float:
        """ρ in p(z) = |z|^ρ (2 for the Gaussian)."""
        return 2.0 if self.kind == "gaussian" else float(self.rho)


GAUSSIAN = WeightSpec()


@dataclass(frozen=True)
class NormResult:
    value: float
    abs_error_bound: float
    method: Literal["exact_moments", "radial_moments", "quad2d"]
    truncation_radius: float | None = None


@dataclass(frozen=True)
class EstimateReport:
    lhs: NormResult
    rhs: NormResult
    ratio: float
    bound_constant: float
    passed: bool
    which: str = "particular_bound"


# -- exact Gaussian moments ---------------------------------------------


def gaussian_moment_general(a: int, b: int, alpha: complex, beta: complex) -> complex:
    """(1/π)∫ z^a z̄^b e^{αz + βz̄ - |z|²} dλ = e^{αβ} Σ_j C(a,j) C(b,j) j! β^{a-j} α^{b-j}.

    α and β are independent; the integral is entire in both.
    """
    s = 0j
    for j in range(min(a, b) + 1):
        s += comb(a, j) * comb(b, j) * factorial(j) * beta ** (a - j) * alpha ** (b - j)
    if alpha == 0 and beta == 0:
        return s
    return s * np.exp(alpha * beta)


def gaussian_moment(a: int, b: int, v: complex = 0j) -> complex:
    """(1/π)∫ z^a z̄^b e^{z v̄ + z̄ v - |z|²} dλ."""
    v = complex(v)
    return complex(gaussian_moment_general(a, b, v.conjugate(), v))


def weighted_pair_integral(f: ExpPoly, g: ExpPoly, w_value: complex = 0j) -> complex:
    """(1/π)∫ f · conj(g) · e^{-|z|²} dλ with w fixed to ``w_value``, exactly."""
    prod = mul(f, conjugate(g))
    if prod.m3 != 0:
        raise DivergentIntegral(
            f"e^(z z̄) multiplicity {prod.m3} in f·conj(g): not a Gaussian moment integral"
        )
    sp = specialize(prod, w_value)
    terms = [c * gaussian_moment_general(a, b, sp.alpha, sp.beta) for (a, b), c in sp.coeffs.items()]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _pair_error(values: list[complex]) -> float:
    # floating accumulation of a moment sum
    return 8 * EPS * (len(values) + 1) * sum(abs(v) for v in values)


# -- radial moments -----------------------------------------------------


@lru_cache(maxsize=4096)
def radial_moment(a: int, n: int) -> NormResult:
    """μ(a, n) = ∫_0^∞ t^a (1+t)^{-2n} e^{-t} dt by adaptive Gauss–Kronrod.

    The integral is truncated at T with the tail bounded by
    (1+T)^{-2n} Γ(a+1, T); the total error target is 1e-12 relative
    (absolute for values below 1).
    """
    if a < 0 or n < 0:
        raise ValueError("radial_moment needs a, n >= 0")
    target = RADIAL_REL_TOL * max(1.0, math.exp(math.lgamma(a + 1) - 2 * n * math.log1p(a)))
    cut = max(2.0 * a + 40.0, 40.0)
    while (1 + cut) ** (-2 * n) * upper_gamma(a + 1, cut) > 0.01 * target:
        cut *= 1.25
    tail = (1 + cut) ** (-2 * n) * upper_gamma(a + 1, cut)

    def integrand(t):
        return t**a * (1.0 + t) ** (-2 * n) * np.exp(-t)

    breaks = tuple(x for x in (0.5 * a, a, 1.5 * a, 2.0 * a + 10) if 0 < x < cut)
    res = adaptive_gk(integrand, 0.0, cut, abs_tol=0.5 * target, rel_tol=0.5 * RADIAL_REL_TOL,
                      breakpoints=breaks)
    return NormResult(res.value, res.error + tail, "radial_moments")


def eta(n: int) -> NormResult:
    """η_n = ‖z^n‖²_𝓗 = μ(n, 1)."""
    return radial_moment(n, 1)


# -- norms ----------------------------------------------------------------


def growth_bound(f: ExpPoly, w_value: complex) -> GrowthBound:
    """Pointwise bound |f(z)| <= C |z|^D e^{β|z|} valid for |z| >= 1."""
    sp = specialize(f, w_value)
    return GrowthBound(
        coef=sp.coefficient_sum(),
        degree=sp.total_degree,
        rate=abs(sp.alpha) + abs(sp.beta),
    )


def quad2d(
    evaluator: Callable[[np.ndarray], np.ndarray],
    weight: WeightSpec,
    radius: float,
    tol: float | None = None,
    growth: GrowthBound | None = None,
) -> NormResult:
    """(1/π)∫_{|z|<=R} |eval(z)|² (1+|z|²)^{-2n} e^{-p(z)} dλ by adaptive polar quadrature.

    ``tol`` is relative to the value (floor 1). When ``growth`` is given the
    reported error also covers the part of the plane outside the disc.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    tol = default_quad_tol() if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    rho, n = weight.exponent, weight.denominator_order
    tail = 0.0 if growth is None else growth.tail(radius, rho, n)
    res = disc_integral(evaluator, radius, rho, n, rel_tol=0.5 * tol, abs_tol=0.5 * tol)
    return NormResult(max(res.value, 0.0), res.error + tail, "quad2d", radius)


def _exact_polynomial_norm(coeffs, denominator_order: int) -> NormResult:
    """Angular orthogonality: only pairs with equal a - b survive, and each
    contributes c c̄' μ(a + b', n)."""
    groups: dict[int, list] = defaultdict(list)
    for (a, b), c in coeffs.items():
        groups[a - b].append((a, b, c))
    contributions: list[float] = []
    err = 0.0
    for members in groups.values():
        for a, b, c in members:
            for a2, b2, c2 in members:
                k = a + b2
                prod = c * c2.conjugate()
                if denominator_order == 0:
                    mu, mu_err = float(factorial(k)), 0.0
                else:
                    r = radial_moment(k, denominator_order)
                    mu, mu_err = r.value, r.abs_error_bound
                contributions.append((prod * mu).real)
                err += abs(prod) * mu_err
    value = math.fsum(contributions)
    err += _pair_error(contributions)
    method = "exact_moments" if denominator_order == 0 else "radial_moments"
    return NormResult(max(value, 0.0), err, method)


def inner_product_h(f: ExpPoly, g: ExpPoly, denominator_order: int = 1, w_value: complex = 0j) -> complex:
    """(1/π)∫ f conj(g) (1+|z|²)^{-2n} e^{-|z|²} dλ for polynomial f, g (after w is fixed).

    Angular integration kills every pair of monomials with different a - b,
    so the pairing of z^n and z^m is exactly zero for n != m.
    """
    sf, sg = specialize(f, w_value), specialize(g, w_value)
    if not (sf.is_polynomial and sg.is_polynomial):
        raise DivergentIntegral("inner_product_h handles polynomial arguments only")
    acc = 0j
    for (a, b), c in sf.coeffs.items():
        for (a2, b2), c2 in sg.coeffs.items():
            if a - b != a2 - b2:
                continue
            acc += c * c2.conjugate() * radial_moment(a + b2, denominator_order).value
    return acc


def hormander_norm(
    f: ExpPoly,
    weight: WeightSpec = GAUSSIAN,
    w_value: complex = 0j,
    tol: float | None = None,
) -> NormResult:
    """(1/π)∫ |f|² (1+|z|²)^{-2n} e^{-p(z)} dλ over ℂ.

    Polynomials (after fixing w) under the Gaussian weight use exact angular
    orthogonality plus radial moments. Anything else goes through ``quad2d``
    on a disc whose radius certifies the tail below half the tolerance.
    """
    if f.m3 != 0:
        raise DivergentIntegral("e^(z z̄) content is not integrable against these weights")
    sp = specialize(f, w_value)
    if not sp.coeffs:
        return NormResult(0.0, 0.0, "exact_moments")
    if weight.kind == "gaussian" and sp.is_polynomial:
        return _exact_polynomial_norm(sp.coeffs, weight.denominator_order)
    tol = default_quad_tol() if tol is None else tol
    growth = growth_bound(f, w_value)
    rho, n = weight.exponent, weight.denominator_order
    # tail target relative to a crude size estimate of the integral
    probe = quad2d(sp, weight, growth.radius_for(1e-3, rho, n), tol=1e-6)
    scale = max(1.0, probe.value)
    radius = growth.radius_for(0.25 * tol * scale, rho, n)
    return quad2d(sp, weight, radius, tol=tol, growth=growth)


def sobolev_norms(f: ExpPoly, n: int, w_value: complex = 0j) -> list[NormResult]:
    """M_k(f) = (1/π)∫ |∂̄^k f|² e^{-|z|²} dλ for k = 0..n-1, exactly."""
    finite_order(f)
    out = []
    g = f
    for _ in range(n):
        val = weighted_pair_integral(g, g, w_value).real
        bound = _pair_error([val]) + 1e-14 * abs(val)
        out.append(NormResult(max(val, 0.0), bound, "exact_moments"))
        g = wirtinger(g, Wirtinger.DBAR_Z)
    return out


def _sum_results(parts: list[NormResult]) -> NormResult:
    if not parts:
        return NormResult(0.0, 0.0, "exact_moments")
    return NormResult(
        math.fsum(p.value for p in parts),
        math.fsum(p.abs_error_bound for p in parts),
        parts[0].method,
    )


def _report(lhs: NormResult, rhs: NormResult, constant: float | None, which: str) -> EstimateReport:
    if rhs.value > 0:
        ratio = lhs.value / rhs.value
    else:
        ratio = 0.0 if lhs.value == 0 else math.inf
    if constant is None:
        # no fixed constant: report the empirical one
        constant = ratio
    slack = lhs.abs_error_bound + constant * rhs.abs_error_bound
    passed = lhs.value <= constant * rhs.value + slack
    return EstimateReport(lhs, rhs, ratio, constant, bool(passed), which)


def estimate_check(
    f: ExpPoly,
    n: int,
    w_value: complex = 0j,
    which: Literal["particular_bound", "remainder_bound"] = "particular_bound",
    solution: ExpPoly | None = None,
    bound_constant: float | None = None,
    tol: float | None = None,
) -> EstimateReport:
    """Check a weighted L² inequality for the ∂̄-problem with datum f.

    particular_bound
        ∫|u|²/(1+|z|²)^{2n} e^{-|z|²} <= n Σ_{k<n} M_k(f) for the constructed
        particular solution u. ``bound_constant`` defaults to n.
    remainder_bound
        The same left side for the entire remainder u_0 = u + Ψ_f of the
        given ``solution`` (default: the particular one). Without a
        ``bound_constant`` the empirical ratio is reported.
    """
    order = finite_order(f)
    if n < order:
        raise ValueError(f"datum has order {order} > n = {n}")
    weight = WeightSpec("gaussian", denominator_order=n)
    rhs = _sum_results(sobolev_norms(f, n, w_value))
    u = particular_solution(f, n).particular
    if which == "particular_bound":
        lhs = hormander_norm(u, weight, w_value, tol)
        constant = float(n) if bound_constant is None else bound_constant
    elif which == "remainder_bound":
        u0 = holomorphic_remainder(solution if solution is not None else u, f)
        lhs = hormander_norm(u0, weight, w_value, tol)
        constant = bound_constant
    else:
        raise ValueError(f"unknown estimate {which!r}")
    return _report(lhs, rhs, constant, which)


def analytic_solution_ratio(f: ExpPoly, w_value: complex = 0j, tol: float | None = None) -> EstimateReport:
    """∫|z̄ f|²/(1+|z|²)² e^{-|z|²} against M(f) for analytic f.

    This is the particular solution, not the minimal-norm one, so the report
    carries the empirical ratio; the 1/2 constant belongs to the minimal
    solution and is not checked.
    """
    if finite_order(f) > 1:
        raise ValueError("analytic_solution_ratio needs an analytic datum")
    u = particular_solution(f, 1).particular
    lhs = hormander_norm(u, WeightSpec("gaussian", denominator_order=1), w_value, tol)
    rhs = sobolev_norms(f, 1, w_value)[0]
    return _report(lhs, rhs, None, "existence_ratio")
