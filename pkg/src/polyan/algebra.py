"""Sparse exponential-polynomials in z, z̄, w, w̄.

An :class:`ExpPoly` is a finite sum

    Σ κ · z^a z̄^b w^c w̄^d

multiplied by a single exponential factor exp(m1·z w̄ + m2·z̄ w + m3·z z̄).
The four variables are treated as independent symbols, which is exactly what
the Wirtinger operators need. The class is closed under addition (same
factor), multiplication, conjugation and all four Wirtinger derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from numbers import Number
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import numpy as np

from polyan.errors import MismatchedExponentialFactor, Overflow

Exponent = tuple[int, int, int, int]
Scalar = Union[int, float, complex]

INFINITE = math.inf


@dataclass
class AlgebraConfig:
    zero_threshold: float = 1e-12
    # largest |Re| of the exponential argument evaluate() accepts
    exponent_cap: float = 700.0


config = AlgebraConfig()


class Wirtinger(str, Enum):
    D_Z = "d_z"
    DBAR_Z = "dbar_z"
    D_W = "d_w"
    DBAR_W = "dbar_w"


def _check_exponent(e) -> Exponent:
    if len(e) != 4:
        raise ValueError(f"exponent must have four entries, got {e!r}")
    out = []
    for k in e:
        if isinstance(k, bool) or int(k) != k or k < 0:
            raise ValueError(f"exponents must be nonnegative integers, got {e!r}")
        out.append(int(k))
    return tuple(out)


class ExpPoly:
    """Immutable sparse exponential-polynomial.

    ``terms`` maps exponent quadruples ``(a, b, c, d)`` (degrees in z, z̄, w,
    w̄) to complex coefficients. Duplicate keys in an iterable input are
    summed. Coefficients below ``config.zero_threshold`` are dropped.
    """

    __slots__ = ("_terms", "_m")

    def __init__(
        self,
        terms: Mapping[Exponent, Scalar] | Iterable[tuple[Exponent, Scalar]] | None = None,
        m1: int = 0,
        m2: int = 0,
        m3: int = 0,
    ):
        if int(m1) != m1 or int(m2) != m2 or int(m3) != m3:
            raise ValueError("exponential multiplicities must be integers")
        if m1 < 0 or m2 < 0:
            raise ValueError("m1 and m2 must be nonnegative")
        acc: dict[Exponent, complex] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                e = _check_exponent(e)
                c = complex(c)
                if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                    raise ValueError(f"non-finite coefficient {c!r} at {e}")
                acc[e] = acc.get(e, 0j) + c
        thr = config.zero_threshold
        clean = {e: acc[e] for e in sorted(acc) if abs(acc[e]) >= thr and acc[e] != 0}
        object.__setattr__(self, "_terms", MappingProxyType(clean))
        object.__setattr__(self, "_m", (int(m1), int(m2), int(m3)))

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def monomial(cls, a=0, b=0, c=0, d=0, coef: Scalar = 1.0, m1=0, m2=0, m3=0) -> "ExpPoly":
        return cls({(a, b, c, d): coef}, m1, m2, m3)

    @classmethod
    def constant(cls, coef: Scalar, m1=0, m2=0, m3=0) -> "ExpPoly":
        return cls({(0, 0, 0, 0): coef}, m1, m2, m3)

    @classmethod
    def zero(cls, m1=0, m2=0, m3=0) -> "ExpPoly":
        return cls(None, m1, m2, m3)

    # -- accessors ------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, complex]:
        return self._terms

    @property
    def m1(self) -> int:
        return self._m[0]

    @property
    def m2(self) -> int:
        return self._m[1]

    @property
    def m3(self) -> int:
        return self._m[2]

    @property
    def factor(self) -> tuple[int, int, int]:
        return self._m

    def is_zero(self) -> bool:
        return not self._terms

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def degree(self, var: int) -> int:
        """Largest exponent of variable ``var`` (0=z, 1=z̄, 2=w, 3=w̄); -1 for zero."""
        return max((e[var] for e in self._terms), default=-1)

    def with_factor(self, m1: int, m2: int, m3: int) -> "ExpPoly":
        return ExpPoly(self._terms, m1, m2, m3)

    def chop(self, tol: float) -> "ExpPoly":
        """Drop every term with ``|coef| <= tol``."""
        return ExpPoly({e: c for e, c in self._terms.items() if abs(c) > tol}, *self._m)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Number):
            other = ExpPoly.constant(other, *self._m)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly({e: -c for e, c in self._terms.items()}, *self._m)

    def __sub__(self, other):
        if isinstance(other, Number):
            other = ExpPoly.constant(other, *self._m)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self.scale(1.0 / other)
        return NotImplemented

    def __pow__(self, k: int) -> "ExpPoly":
        if int(k) != k or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = ExpPoly.constant(1.0)
        base = self
        k = int(k)
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def scale(self, s: Scalar) -> "ExpPoly":
        s = complex(s)
        return ExpPoly({e: s * c for e, c in self._terms.items()}, *self._m)

    def conjugate(self) -> "ExpPoly":
        return conjugate(self)

    def d(self, which: Wirtinger | str, k: int = 1) -> "ExpPoly":
        return wirtinger_power(self, which, k)

    def __call__(self, z, w=0.0):
        return evaluate(self, z, w)

    # -- comparison -----------------------------------------------------

    def isclose(self, other: "ExpPoly", tol: float | None = None) -> bool:
        """Equality up to ``tol`` relative to the larger coefficient scale (floor 1)."""
        if tol is None:
            tol = config.zero_threshold
        if self.is_zero() and other.is_zero():
            return True
        if self._m != other._m:
            return False
        scale = max(1.0, self.max_abs(), other.max_abs())
        keys = set(self._terms) | set(other._terms)
        return all(
            abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= tol * scale for k in keys
        )

    def max_difference(self, other: "ExpPoly") -> float:
        """Largest coefficient-wise difference; inf when the factors differ."""
        if self.is_zero() and other.is_zero():
            return 0.0
        if self.is_zero():
            return other.max_abs()
        if other.is_zero():
            return self.max_abs()
        if self._m != other._m:
            return math.inf
        keys = set(self._terms) | set(other._terms)
        return max(abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) for k in keys)

    def __eq__(self, other):
        if isinstance(other, Number):
            other = ExpPoly.constant(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None  # tolerant equality cannot be hashed consistently

    # -- display --------------------------------------------------------

    def __repr__(self) -> str:
        return f"ExpPoly({dict(self._terms)!r}, m1={self.m1}, m2={self.m2}, m3={self.m3})"

    def __str__(self) -> str:
        if self.is_zero():
            body = "0"
        else:
            parts = []
            for (a, b, c, d), coef in self._terms.items():
                mono = "*".join(
                    f"{name}^{k}" if k > 1 else name
                    for name, k in zip(("z", "zb", "w", "wb"), (a, b, c, d))
                    if k
                )
                cs = _format_coef(coef)
                if not mono:
                    parts.append(cs)
                elif cs == "1":
                    parts.append(mono)
                elif cs == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}")
            body = " + ".join(parts).replace("+ -", "- ")
        exps = [
            f"{m}*{s}" if m != 1 else s
            for m, s in zip(self._m, ("z*wb", "zb*w", "z*zb"))
            if m
        ]
        if exps:
            return f"({body})*exp({' + '.join(exps)})"
        return body


def _format_coef(c: complex) -> str:
    if c.imag == 0:
        x = c.real
        return str(int(x)) if x == int(x) and abs(x) < 1e15 else repr(x)
    if c.real == 0:
        return f"{c.imag!r}i"
    return f"({c.real!r}{c.imag:+r}i)".replace("+r", "")


# Generators ---------------------------------------------------------------

ONE = ExpPoly.constant(1.0)
Z = ExpPoly.monomial(1, 0, 0, 0)
ZB = ExpPoly.monomial(0, 1, 0, 0)
W = ExpPoly.monomial(0, 0, 1, 0)
WB = ExpPoly.monomial(0, 0, 0, 1)
E_ZWB = ExpPoly.constant(1.0, m1=1)
E_ZBW = ExpPoly.constant(1.0, m2=1)
E_ZZB = ExpPoly.constant(1.0, m3=1)


# Operations ---------------------------------------------------------------


def add(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Coefficient-wise sum. A zero operand adopts the other's factor."""
    if g.is_zero():
        return f
    if f.is_zero():
        return g
    if f.factor != g.factor:
        raise MismatchedExponentialFactor(
            f"cannot add terms with factors {f.factor} and {g.factor}"
        )
    acc = dict(f.terms)
    for e, c in g.terms.items():
        acc[e] = acc.get(e, 0j) + c
    return ExpPoly(acc, *f.factor)


def mul(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    acc: dict[Exponent, complex] = {}
    for (a1, b1, c1, d1), x in f.terms.items():
        for (a2, b2, c2, d2), y in g.terms.items():
            e = (a1 + a2, b1 + b2, c1 + c2, d1 + d2)
            acc[e] = acc.get(e, 0j) + x * y
    return ExpPoly(acc, f.m1 + g.m1, f.m2 + g.m2, f.m3 + g.m3)


def conjugate(f: ExpPoly) -> ExpPoly:
    return ExpPoly(
        {(b, a, d, c): k.conjugate() for (a, b, c, d), k in f.terms.items()},
        f.m2,
        f.m1,
        f.m3,
    )


def wirtinger(f: ExpPoly, which: Wirtinger | str) -> ExpPoly:
    """One Wirtinger derivative, exact Leibniz rule over the exponential factor.

    d_z    lowers a; the factor contributes m1·w̄ and m3·z̄.
    dbar_z lowers b; the factor contributes m2·w  and m3·z.
    d_w    lowers c; the factor contributes m2·z̄.
    dbar_w lowers d; the factor contributes m1·z.
    """
    which = Wirtinger(which)
    m1, m2, m3 = f.factor
    acc: dict[Exponent, complex] = {}

    def put(e, c):
        acc[e] = acc.get(e, 0j) + c

    for (a, b, c, d), k in f.terms.items():
        if which is Wirtinger.D_Z:
            if a:
                put((a - 1, b, c, d), a * k)
            if m1:
                put((a, b, c, d + 1), m1 * k)
            if m3:
                put((a, b + 1, c, d), m3 * k)
        elif which is Wirtinger.DBAR_Z:
            if b:
                put((a, b - 1, c, d), b * k)
            if m2:
                put((a, b, c + 1, d), m2 * k)
            if m3:
                put((a + 1, b, c, d), m3 * k)
        elif which is Wirtinger.D_W:
            if c:
                put((a, b, c - 1, d), c * k)
            if m2:
                put((a, b + 1, c, d), m2 * k)
        else:
            if d:
                put((a, b, c, d - 1), d * k)
            if m1:
                put((a + 1, b, c, d), m1 * k)
    return ExpPoly(acc, m1, m2, m3)


def wirtinger_power(f: ExpPoly, which: Wirtinger | str, k: int) -> ExpPoly:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    for _ in range(k):
        if f.is_zero():
            break
        f = wirtinger(f, which)
    return f


def polyanalytic_order(f: ExpPoly) -> int | float:
    """Smallest n with ∂̄^n f = 0, or ``INFINITE`` if no power annihilates f."""
    if f.is_zero():
        return 0
    if f.m2 > 0 or f.m3 != 0:
        return INFINITE
    return f.degree(1) + 1


def evaluate(f: ExpPoly, z, w=0.0):
    """Numeric value at ``z`` (scalar or array) and parameter ``w``.

    z̄ and w̄ are the complex conjugates of the inputs. Raises
    :class:`Overflow` when the real part of the exponential argument exceeds
    ``config.exponent_cap`` anywhere.
    """
    scalar = np.isscalar(z) and np.isscalar(w)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    zb, wb = np.conj(z), np.conj(w)
    arg = f.m1 * z * wb + f.m2 * zb * w + f.m3 * z * zb
    if np.any(np.abs(np.real(arg)) > config.exponent_cap):
        raise Overflow(f"exponential argument exceeds cap {config.exponent_cap}")
    total = np.zeros(np.broadcast(z, w).shape, dtype=complex)
    cache: dict = {}

    def power(base_id, base, k):
        key = (base_id, k)
        if key not in cache:
            cache[key] = base**k
        return cache[key]

    for (a, b, c, d), k in f.terms.items():
        total = total + k * power(0, z, a) * power(1, zb, b) * power(2, w, c) * power(3, wb, d)
    if f.factor != (0, 0, 0):
        total = total * np.exp(arg)
    return complex(total) if scalar else total


@dataclass(frozen=True)
class Specialized:
    """An ExpPoly with w fixed to a number.

    Represents Σ c_{ab} z^a z̄^b · exp(alpha·z + beta·z̄ + m3·z z̄).
    """

    coeffs: Mapping[tuple[int, int], complex]
    alpha: complex
    beta: complex
    m3: int

    @property
    def is_polynomial(self) -> bool:
        return self.alpha == 0 and self.beta == 0 and self.m3 == 0

    @property
    def total_degree(self) -> int:
        return max((a + b for a, b in self.coeffs), default=0)

    def coefficient_sum(self) -> float:
        return sum(abs(c) for c in self.coeffs.values())

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        total = np.zeros(z.shape, dtype=complex)
        zp: dict[int, np.ndarray] = {}
        zbp: dict[int, np.ndarray] = {}
        for (a, b), c in self.coeffs.items():
            if a not in zp:
                zp[a] = z**a
            if b not in zbp:
                zbp[b] = zb**b
            total = total + c * zp[a] * zbp[b]
        if not self.is_polynomial:
            total = total * np.exp(self.alpha * z + self.beta * zb + self.m3 * z * zb)
        return total


def specialize(f: ExpPoly, w_value: Scalar) -> Specialized:
    """Substitute the number ``w_value`` for w (and its conjugate for w̄)."""
    w = complex(w_value)
    wb = w.conjugate()
    acc: dict[tuple[int, int], complex] = {}
    for (a, b, c, d), k in f.terms.items():
        acc[(a, b)] = acc.get((a, b), 0j) + k * w**c * wb**d
    thr = config.zero_threshold
    coeffs = {e: acc[e] for e in sorted(acc) if abs(acc[e]) >= thr}
    return Specialized(MappingProxyType(coeffs), f.m1 * wb, f.m2 * w, f.m3)

