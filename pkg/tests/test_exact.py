from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfloer.errors import NotReal
from knotfloer.exact import CyclotomicNumber, cyclotomic_poly, euler_phi, root_of_unity, sign_real

Z = CyclotomicNumber.zeta


def test_cube_roots_sum_to_minus_one():
    assert Z(3) + Z(3, 2) == -1
    assert sign_real(Z(3) + Z(3, 2)) == -1


def test_i_squared():
    assert Z(4) * Z(4) == -1


def test_zero_difference():
    assert (Z(6) - Z(6)).is_zero()
    assert sign_real(CyclotomicNumber(7)) == 0


def test_golden_sign():
    assert sign_real(Z(5) + Z(5, 4)) == 1


def test_root_of_unity_examples():
    assert root_of_unity(Fraction(1, 4)) == -1
    assert root_of_unity(0) == 1
    w = root_of_unity(Fraction(1, 12))
    assert w == Z(6)
    assert w**6 == 1 and w**3 != 1 and w**2 != 1


def test_sign_of_non_real_raises():
    with pytest.raises(NotReal):
        sign_real(Z(8))


def test_cyclotomic_poly_degree():
    for n in range(1, 60):
        assert len(cyclotomic_poly(n)) - 1 == euler_phi(n)


def test_mixed_order_lifts():
    assert Z(2) * Z(3) == Z(6, 5)
    assert Z(4).lift(12) == Z(12, 3)


def test_division_and_inverse():
    x = Z(7) + 3
    assert x * x.inverse() == 1
    assert (Z(9) / x) * x == Z(9)
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber(5).inverse()


def test_equal_values_hash_equal():
    assert hash(Z(4) ** 2) == hash(CyclotomicNumber(1, [-1])) == hash(Fraction(-1))


orders = st.integers(1, 40)
small = st.lists(st.integers(-6, 6), min_size=0, max_size=12)


@st.composite
def cyclos(draw, order=None):
    n = order or draw(orders)
    return CyclotomicNumber(n, draw(small))


@st.composite
def real_cyclos(draw):
    x = draw(cyclos())
    return x + x.conj()


@given(orders.flatmap(lambda n: st.tuples(cyclos(n), cyclos(n), cyclos(n))), cyclos())
def test_ring_axioms(same_order, w):
    x, y, z = same_order
    assert (x + w) - w == x
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(cyclos(), cyclos())
def test_conj_is_involutive_homomorphism(x, y):
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()


@given(cyclos())
def test_reduction_idempotent(x):
    assert CyclotomicNumber(x.order, x.coeffs) == x
    assert len(x.coeffs) <= euler_phi(x.order)


@given(cyclos())
def test_nonzero_inverse(x):
    if not x.is_zero():
        assert x * x.inverse() == 1


@given(real_cyclos(), real_cyclos())
def test_sign_multiplicative(x, y):
    assert sign_real(x * y) == sign_real(x) * sign_real(y)


@settings(max_examples=60)
@given(real_cyclos())
def test_sign_matches_high_precision(x):
    with mpmath.workprec(400):
        val = mpmath.fsum(
            mpmath.mpf(c.numerator) / c.denominator * mpmath.cos(2 * mpmath.pi * k / x.order)
            for k, c in enumerate(x.coeffs)
        )
    expected = 0 if x.is_zero() else (1 if val > 0 else -1)
    assert sign_real(x) == expected


@given(st.integers(1, 200), st.integers(0, 10**6))
def test_root_of_unity_order(den, k):
    alpha = Fraction(k % (den + 1), 2 * den)
    w = root_of_unity(alpha)
    n = (2 * alpha).denominator
    assert w**n == 1
    assert all(w**d != 1 for d in range(1, n))
