from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotfloer.cobordism import (
    CobordismData,
    Reducible,
    compose,
    crossing_blowup,
    crossing_change_reducible,
    cylinder,
    d_alpha,
    disk_cap,
    eta_of,
    index_formula,
    k_value,
    minimal_reducibles,
    negative_definite_check,
    negative_twist,
    raw_index,
)
from knotfloer.coeffs import NovikovElement, eta_alpha
from knotfloer.errors import NonIntegralIndex

from strategies import alphas

F = Fraction


def test_crossing_change_examples():
    assert crossing_change_reducible(F(1, 4), 0) == (F(1, 4), 0, -1)
    assert crossing_change_reducible(F(1, 6), -1) == (F(4, 9), 4, -1)
    assert crossing_change_reducible(F(1, 6), 1)[2] == 15
    assert crossing_change_reducible(F(1, 6), 0, sig_in=-2, sig_out=0)[2] == -3


def test_minimal_set():
    mins, kappa0, nu0 = minimal_reducibles(crossing_blowup(F(1, 6)))
    assert sorted(int(-r.nu / 4) for r in mins) == [-1, 0]
    assert (kappa0, nu0) == (F(1, 9), 0)
    mins, kappa0, nu0 = minimal_reducibles(cylinder(F(1, 5)))
    assert mins == [Reducible(0, 0, 0)] and kappa0 == nu0 == 0


def test_quarter_uses_min_nu():
    mins, kappa0, nu0 = minimal_reducibles(crossing_blowup(F(1, 4)))
    assert kappa0 == F(1, 4) and nu0 == 0


def test_eta_examples():
    assert eta_of(crossing_blowup(F(1, 6))) == eta_alpha("crossing_blowup", F(1, 6))
    assert eta_of(crossing_blowup(F(1, 3))) == NovikovElement(F(1, 3), {(F(-1, 3), -4): 1, (0, 0): -1})
    assert eta_of(negative_twist(F(1, 5))) == NovikovElement.one(F(1, 5))
    assert eta_of(crossing_blowup(F(1, 4))) == NovikovElement(F(1, 4), {(0, 0): 1, (0, 4): -1})


def test_negative_definite():
    assert negative_definite_check(crossing_blowup(F(1, 6)))
    assert not negative_definite_check(crossing_blowup(F(1, 6), sig_in=-2, sig_out=0))
    assert negative_definite_check(cylinder(F(1, 6)))
    assert not negative_definite_check(cylinder(F(1, 6)), b1_w=1)


def test_d_examples():
    assert d_alpha(cylinder(F(1, 6))) == -1
    a = F(1, 5)
    for k in (1, 2, 3):
        w = disk_cap(a)
        for step in range(k):
            w = compose(w, crossing_blowup(a, range(-2, 3), 0, -2 * (step + 1)))
        w.sig_out = -2
        assert d_alpha(w) == 0


def test_k_constant_on_minimal_set():
    c = crossing_blowup(F(2, 7))
    mins, _, _ = minimal_reducibles(c)
    assert len({k_value(c, r) for r in mins}) == 1


def test_disk_cap_index_is_not_integral():
    with pytest.raises(NonIntegralIndex):
        index_formula(disk_cap(F(1, 6)), 0, 0)


def test_json_round_trip():
    c = compose(disk_cap(F(1, 6)), crossing_blowup(F(1, 6), range(-1, 2)))
    assert CobordismData.from_json(c.to_json()) == c


@given(alphas, st.integers(-6, 6), st.integers(-6, 6), st.integers(-4, 0), st.integers(-4, 0))
def test_index_law(a, m, m2, s_in, s_out):
    _, _, i1 = crossing_change_reducible(a, m, 2 * s_in, 2 * s_out)
    _, _, i2 = crossing_change_reducible(a, m2, 2 * s_in, 2 * s_out)
    assert i1 == 8 * m * (m + 1) + 2 * s_in - 2 * s_out - 1
    assert i1 - i2 == 8 * (m * (m + 1) - m2 * (m2 + 1))


@given(alphas)
def test_eta_matches_two_branch_formula(a):
    assert eta_of(crossing_blowup(a)) == eta_alpha("crossing_blowup", a)


@given(alphas, st.integers(1, 3))
def test_composition_adds(a, k):
    parts = [crossing_blowup(a, range(-1, 1)) for _ in range(k)]
    w = parts[0]
    for p in parts[1:]:
        w = compose(w, p)
    assert w.sigma_w == -k and w.s_dot_s == -4 * k
    base = parts[0].reducibles[0]
    stacked = Reducible(k * base.kappa, k * base.nu, k * base.c1_sq)
    assert stacked in w.reducibles
    # the constant -1 appears once in the glued index, so k - 1 comes back
    assert raw_index(w, stacked.kappa, stacked.nu) == k * raw_index(parts[0], base.kappa, base.nu) + (k - 1)
