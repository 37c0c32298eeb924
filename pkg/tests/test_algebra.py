import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exppolys
from polyan.algebra import (
    E_ZBW,
    E_ZWB,
    E_ZZB,
    INFINITE,
    ONE,
    W,
    WB,
    Z,
    ZB,
    ExpPoly,
    Wirtinger,
    add,
    conjugate,
    evaluate,
    mul,
    polyanalytic_order,
    specialize,
    wirtinger,
    wirtinger_power,
)
from polyan.errors import MismatchedExponentialFactor, Overflow

DZ, DBZ, DW, DBW = Wirtinger.D_Z, Wirtinger.DBAR_Z, Wirtinger.D_W, Wirtinger.DBAR_W


def test_monomial_derivatives():
    f = ExpPoly.monomial(3, 2, 1, 0, 2.0)
    assert wirtinger(f, DZ) == ExpPoly.monomial(2, 2, 1, 0, 6.0)
    assert wirtinger(f, DBZ) == ExpPoly.monomial(3, 1, 1, 0, 4.0)
    assert wirtinger(f, DW) == ExpPoly.monomial(3, 2, 0, 0, 2.0)
    assert wirtinger(f, DBW).is_zero()


def test_exponential_factor_rules():
    # d/dz e^{z wb} = wb e^{z wb}
    assert wirtinger(E_ZWB, DZ) == mul(WB, E_ZWB)
    assert wirtinger(E_ZWB, DBZ).is_zero()
    assert wirtinger(E_ZWB, DBW) == mul(Z, E_ZWB)
    assert wirtinger(E_ZBW, DBZ) == mul(W, E_ZBW)
    assert wirtinger(E_ZBW, DW) == mul(ZB, E_ZBW)
    assert wirtinger(E_ZZB, DZ) == mul(ZB, E_ZZB)
    assert wirtinger(E_ZZB, DBZ) == mul(Z, E_ZZB)


def test_factor_arithmetic():
    g = mul(E_ZWB, E_ZWB)
    assert g.factor == (2, 0, 0)
    inv = ExpPoly.constant(1.0, 0, 0, -1)
    assert mul(E_ZZB, inv) == ONE


def test_mismatched_add_raises():
    with pytest.raises(MismatchedExponentialFactor):
        add(Z, E_ZWB)


def test_zero_adopts_factor():
    assert add(ExpPoly.zero(), E_ZWB).factor == (1, 0, 0)
    assert add(E_ZWB, ExpPoly.zero(0, 0, 1)).factor == (1, 0, 0)


def test_zero_threshold_scrubs_residue():
    f = add(ExpPoly.monomial(1, 0, 0, 0, 1.0), ExpPoly.monomial(1, 0, 0, 0, -1.0 + 1e-14))
    assert f.is_zero()


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        ExpPoly({(1, 0, 0, 0): math.nan})
    with pytest.raises(ValueError):
        ExpPoly({(-1, 0, 0, 0): 1.0})
    with pytest.raises(ValueError):
        ExpPoly({(0, 0, 0, 0): 1.0}, m1=-1)


def test_immutable():
    with pytest.raises(AttributeError):
        Z._terms = {}


def test_polyanalytic_order():
    assert polyanalytic_order(ExpPoly.zero()) == 0
    assert polyanalytic_order(Z) == 1
    assert polyanalytic_order(mul(ZB**3, E_ZWB)) == 4
    assert polyanalytic_order(E_ZBW) == INFINITE
    assert polyanalytic_order(E_ZZB) == INFINITE


def test_wirtinger_power():
    f = ZB**5
    assert wirtinger_power(f, DBZ, 3) == ExpPoly.monomial(0, 2, 0, 0, 60.0)
    assert wirtinger_power(f, DBZ, 6).is_zero()
    assert wirtinger_power(f, DBZ, 0) == f


def test_evaluate_known_values():
    z, w = 0.3 - 0.2j, 0.1 + 0.5j
    f = mul(ZB**2 + Z, E_ZWB)
    expected = (np.conj(z) ** 2 + z) * np.exp(z * np.conj(w))
    assert abs(evaluate(f, z, w) - expected) < 1e-14
    assert evaluate(ExpPoly.zero(), z, w) == 0


def test_evaluate_overflow():
    with pytest.raises(Overflow):
        evaluate(E_ZZB, 30.0)


def test_canonical_order_and_str():
    f = ExpPoly([((0, 1, 0, 0), 2.0), ((2, 0, 0, 0), 1.0), ((0, 0, 0, 0), -1.0)])
    assert list(f.terms) == [(0, 0, 0, 0), (0, 1, 0, 0), (2, 0, 0, 0)]
    assert str(f) == "-1 + 2*zb + z^2"


def test_specialize():
    f = mul(Z * WB + W, E_ZWB)
    sp = specialize(f, 2j)
    assert sp.alpha == -2j and sp.beta == 0
    assert abs(sp(0.5) - evaluate(f, 0.5, 2j)) < 1e-14


# -- properties ------------------------------------------------------------

poly = exppolys(max_a=4, max_b=4)
plain = exppolys(max_a=4, max_b=4, factors=((0, 0, 0),))
any_factor = exppolys(factors=((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, -1), (0, 0, 1)))


@given(any_factor)
def test_mixed_commutation(f):
    lhs = wirtinger(wirtinger(f, DZ), DBZ)
    rhs = wirtinger(wirtinger(f, DBZ), DZ)
    assert lhs.isclose(rhs, 1e-12)


@given(any_factor)
def test_conjugation_intertwines(f):
    assert conjugate(wirtinger(f, DBZ)).isclose(wirtinger(conjugate(f), DZ), 1e-12)
    assert conjugate(wirtinger(f, DBW)).isclose(wirtinger(conjugate(f), DW), 1e-12)


@given(any_factor)
def test_conjugate_involution(f):
    assert conjugate(conjugate(f)).isclose(f, 0)


@given(poly, poly)
def test_leibniz(f, g):
    for which in (DZ, DBZ, DW, DBW):
        lhs = wirtinger(mul(f, g), which)
        rhs = add(mul(wirtinger(f, which), g), mul(f, wirtinger(g, which)))
        assert lhs.isclose(rhs, 1e-12)


@given(poly, plain, plain)
def test_ring_axioms(f, g, h):
    assert mul(f, add(g, h)).isclose(add(mul(f, g), mul(f, h)), 1e-12)
    assert mul(mul(f, g), h).isclose(mul(f, mul(g, h)), 1e-12)
    assert mul(f, g).isclose(mul(g, f), 1e-12)


points = st.tuples(
    st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
)


@settings(max_examples=50)
@given(plain, plain, points)
def test_evaluate_respects_operations(f, g, pt):
    z, w = pt
    fz, gz = evaluate(f, z, w), evaluate(g, z, w)
    scale = 1 + abs(fz) + abs(gz)
    assert abs(evaluate(f + g, z, w) - (fz + gz)) <= 1e-12 * scale
    assert abs(evaluate(f * g, z, w) - fz * gz) <= 1e-12 * scale**2
    assert abs(evaluate(conjugate(f), z, w) - np.conj(fz)) <= 1e-12 * scale


@settings(max_examples=50)
@given(any_factor, points)
def test_finite_difference_wirtinger(f, pt):
    z, w = pt
    h = 1e-5
    fx = (evaluate(f, z + h, w) - evaluate(f, z - h, w)) / (2 * h)
    fy = (evaluate(f, z + 1j * h, w) - evaluate(f, z - 1j * h, w)) / (2 * h)
    dz_num = 0.5 * (fx - 1j * fy)
    dbz_num = 0.5 * (fx + 1j * fy)
    scale = max(1.0, abs(dz_num), abs(dbz_num), f.max_abs())
    assert abs(evaluate(wirtinger(f, DZ), z, w) - dz_num) <= 1e-6 * scale
    assert abs(evaluate(wirtinger(f, DBZ), z, w) - dbz_num) <= 1e-6 * scale
