"""Complex Hermite polynomials, generalized Laguerre polynomials and the
polyanalytic Fock kernels, with closed-form particular solutions of ∂̄u = f.

Integer coefficient pieces (binomials, factorials) are accumulated as exact
Python integers or :class:`fractions.Fraction` and converted to floating
point only when a coefficient is stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from polyan.algebra import (
    E_ZWB,
    W,
    WB,
    Z,
    ZB,
    ExpPoly,
    Wirtinger,
    add,
    mul,
    wirtinger_power,
)
from polyan.dbar import divided_dbar
from polyan.errors import IndexOutOfRange

DBAR = Wirtinger.DBAR_Z


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, ``coefficients[k]`` multiplies x^k."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = [complex(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def substitute(self, x: ExpPoly) -> ExpPoly:
        """Compose with an ExpPoly argument.

        Powers are scaled after they are formed, so small coefficients such
        as 1/k! are not lost to the zero threshold before multiplication.
        """
        acc = ExpPoly.zero()
        power = ExpPoly.constant(1.0)
        for k, c in enumerate(self.coefficients):
            if k:
                power = mul(power, x)
            if c != 0:
                acc = add(acc, power.scale(c))
        return acc


def _q(x: Fraction | int) -> float:
    return float(x)


def hermite(m: int, n: int) -> ExpPoly:
    """H_{m,n} = Σ_k (-1)^k k! C(m,k) C(n,k) z^{m-k} z̄^{n-k}."""
    if m < 0 or n < 0:
        raise IndexOutOfRange("Hermite indices must be nonnegative")
    return ExpPoly(
        {
            (m - k, n - k, 0, 0): (-1) ** k * factorial(k) * comb(m, k) * comb(n, k)
            for k in range(min(m, n) + 1)
        }
    )


def hermite_rodrigues(m: int, n: int) -> ExpPoly:
    """H_{m,n} = (-1)^{m+n} e^{|z|²} ∂̄^m ∂^n e^{-|z|²}, symbolically."""
    if m < 0 or n < 0:
        raise IndexOutOfRange("Hermite indices must be nonnegative")
    g = ExpPoly.constant(1.0, m3=-1)
    g = wirtinger_power(g, Wirtinger.D_Z, n)
    g = wirtinger_power(g, DBAR, m)
    g = mul(ExpPoly.constant((-1) ** (m + n), m3=1), g)
    return g


def laguerre(m: int, alpha: int) -> UniPoly:
    """L^α_m(x) = Σ_{k=0}^{m} (-x)^k / k! · C(m+α, m-k)."""
    if m < 0 or alpha < 0:
        raise IndexOutOfRange("Laguerre indices must be nonnegative")
    return UniPoly(
        tuple(_q(Fraction((-1) ** k * comb(m + alpha, m - k), factorial(k))) for k in range(m + 1))
    )


def _dist2() -> ExpPoly:
    """|z - w|² = (z - w)(z̄ - w̄)."""
    return mul(Z - W, ZB - WB)


def fock_kernel(n: int) -> ExpPoly:
    """F_n(z,w) = e^{z w̄} Σ_{k<n} (-1)^k / k! · C(n, k+1) · |z-w|^{2k}."""
    if n < 1:
        raise IndexOutOfRange("kernel order must be at least 1")
    r2 = _dist2()
    poly = ExpPoly.zero()
    for k in range(n):
        coef = _q(Fraction((-1) ** k * comb(n, k + 1), factorial(k)))
        poly = add(poly, (r2**k).scale(coef))
    return mul(E_ZWB, poly)


def fock_kernel_laguerre(n: int) -> ExpPoly:
    """F_n as e^{z w̄} · L^1_{n-1}(|z-w|²)."""
    if n < 1:
        raise IndexOutOfRange("kernel order must be at least 1")
    return mul(E_ZWB, laguerre(n - 1, 1).substitute(_dist2()))


def fock_kernel_dbar(n: int, s: int) -> ExpPoly:
    """Closed form of ∂̄^s F_n for 0 <= s <= n-1:

    (-1)^s (z-w)^s e^{z w̄} Σ_{u=0}^{n-s-1} (-1)^u / u! · C(n, u+s+1) |z-w|^{2u}.
    """
    if n < 1 or not 0 <= s <= n - 1:
        raise IndexOutOfRange(f"need 0 <= s <= n-1, got n={n}, s={s}")
    r2 = _dist2()
    poly = ExpPoly.zero()
    for u in range(n - s):
        coef = _q(Fraction((-1) ** u * comb(n, u + s + 1), factorial(u)))
        poly = add(poly, (r2**u).scale(coef))
    lead = ((Z - W) ** s).scale((-1) ** s)
    return mul(E_ZWB, mul(lead, poly))


def mixed_derivative(n: int) -> ExpPoly:
    """∂_w^{n-1} ∂̄_z^{n-1} F_n computed symbolically from the kernel itself.

    The exact value is (n-1)! · F_1, since ∂_w^{n-1} (z-w)^{n-1} = (-1)^{n-1} (n-1)!.
    """
    g = wirtinger_power(fock_kernel(n), DBAR, n - 1)
    return wirtinger_power(g, Wirtinger.D_W, n - 1)


def mixed_derivative_identity_check(n: int) -> bool:
    """Whether ∂_w^{n-1} of the closed form ∂̄^{n-1} F_n equals F_1.

    True only for n <= 2; for larger n the result is (n-1)! · F_1.
    """
    if n < 1:
        raise IndexOutOfRange("kernel order must be at least 1")
    g = wirtinger_power(fock_kernel_dbar(n, n - 1), Wirtinger.D_W, n - 1)
    return g.isclose(fock_kernel(1))


def hermite_particular_solution(p: int, q: int) -> ExpPoly:
    """u = -1/(q+1) Σ_{k=1}^{q+1} (-1)^k C(q+1,k) z̄^k H_{p,q+1-k}; ∂̄u = H_{p,q}."""
    if p < 0 or q < 0:
        raise IndexOutOfRange("Hermite indices must be nonnegative")
    u = ExpPoly.zero()
    for k in range(1, q + 2):
        coef = _q(Fraction(-((-1) ** k) * comb(q + 1, k), q + 1))
        u = add(u, mul(ExpPoly.monomial(0, k, 0, 0), hermite(p, q + 1 - k)).scale(coef))
    return u


def dcal(ell: int, f: ExpPoly) -> ExpPoly:
    """Apply 𝒟_ℓ = Σ_{k=1}^{ℓ} (-1)^k / k! · z̄^k ∂̄^k."""
    if ell < 1:
        raise IndexOutOfRange("dcal needs ell >= 1")
    out = ExpPoly.zero(*f.factor)
    for k in range(1, ell + 1):
        deriv = divided_dbar(f, k)
        if deriv.is_zero():
            break
        out = add(out, mul(ExpPoly.monomial(0, k, 0, 0, (-1) ** k), deriv))
    return out


def _laguerre_tail(n: int, start: int) -> ExpPoly:
    """Σ_{s=start}^{n} z̄^s / s! · (z-w)^{s-1} · L^s_{n-s}(|z-w|²), without e^{z w̄}."""
    r2 = _dist2()
    total = ExpPoly.zero()
    for s in range(start, n + 1):
        term = mul((Z - W) ** (s - 1), laguerre(n - s, s).substitute(r2))
        total = add(total, mul(ExpPoly.monomial(0, s, 0, 0), term).scale(1.0 / factorial(s)))
    return total


def fock_particular_solution(n: int) -> ExpPoly:
    """u_n = e^{z w̄} Σ_{s=1}^{n} z̄^s / s! · (z-w)^{s-1} L^s_{n-s}(|z-w|²)."""
    if n < 1:
        raise IndexOutOfRange("kernel order must be at least 1")
    return mul(E_ZWB, _laguerre_tail(n, 1))


def fock_particular_solution_split(n: int) -> ExpPoly:
    """The same solution written as z̄ F_n + F_1 · (terms s = 2..n)."""
    if n < 1:
        raise IndexOutOfRange("kernel order must be at least 1")
    head = mul(ZB, fock_kernel(n))
    if n == 1:
        return head
    return add(head, mul(fock_kernel(1), _laguerre_tail(n, 2)))


def hermite_table(m_max: int, n_max: int, rodrigues: bool = False) -> list[tuple[tuple[int, int], ExpPoly]]:
    build = hermite_rodrigues if rodrigues else hermite
    return [((m, n), build(m, n)) for m in range(m_max + 1) for n in range(n_max + 1)]


def kernel_table(n_max: int) -> list[tuple[int, ExpPoly]]:
    return [(n, fock_kernel(n)) for n in range(1, n_max + 1)]


def laguerre_table(m_max: int, alpha: int) -> list[tuple[int, UniPoly]]:
    return [(m, laguerre(m, alpha)) for m in range(m_max + 1)]

