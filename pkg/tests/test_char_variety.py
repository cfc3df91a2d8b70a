import io
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfloer.char_variety import (
    SU2Element,
    count_reps,
    enumerate_arcs,
    flip_check,
    h1_dimension,
    isolate_roots,
    meridian_trace,
    meridian_word,
    nondegeneracy_check,
    write_roots_csv,
)
from knotfloer.knots import admissible, tl_signature, torus_knot_seifert

from strategies import alphas, coprime_pairs

F = Fraction


def test_arcs():
    assert enumerate_arcs(2, 3) == [(1, 1)]
    assert enumerate_arcs(2, 5) == [(1, 1), (1, 3)]
    assert enumerate_arcs(3, 5) == [(1, 1), (1, 3), (2, 2), (2, 4)]


def test_meridian_word():
    assert meridian_word(2, 3) == (1, -1)
    assert meridian_word(3, 5) == (2, -3)
    assert meridian_word(2, 5) == (1, -2)


def test_trace_at_reducible_limit():
    assert meridian_trace(2, 3, 1, 1, 0) == pytest.approx(math.sqrt(3))
    m, n = meridian_word(3, 5)
    assert meridian_trace(3, 5, 2, 2, 0) == pytest.approx(2 * math.cos(math.pi * (m * 2 / 3 + n * 2 / 5)))


def test_count_examples():
    assert count_reps(2, 3, F(1, 4)) == 1
    assert count_reps(2, 3, F(1, 24)) == 0
    assert count_reps(3, 5, F(1, 4)) == 4
    assert count_reps(2, 5, F(1, 24)) == 0


def test_flip_examples():
    assert count_reps(2, 3, F(1, 6)) == count_reps(2, 3, F(1, 3)) == 1
    assert flip_check(2, 5, F(1, 24))
    assert flip_check(3, 7, F(1, 4))


def test_cohomology_at_roots():
    for p, q in ((2, 3), (3, 5)):
        for r in isolate_roots(p, q, F(1, 4)):
            tau = (r.lo + r.hi) / 2
            detail = h1_dimension(p, q, r.arc.a, r.arc.b, tau, detail=True)
            assert detail == {"rank_L": 2, "coboundaries": 3, "h1": 1}
            assert nondegeneracy_check(p, q, r.arc.a, r.arc.b, tau)


def test_reducible_limit_rejected():
    with pytest.raises(ValueError):
        h1_dimension(2, 3, 1, 1, 0)
    with pytest.raises(ValueError):
        nondegeneracy_check(2, 3, 1, 1, 0)


def test_roots_csv():
    buf = io.StringIO()
    write_roots_csv(isolate_roots(3, 5, F(1, 4)), buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0].startswith("p,q,a,b")
    assert len(lines) == 5


def test_quaternion_basics():
    g = SU2Element.exp(mpmath.mpf("0.7"), (0, 1, 0))
    h = SU2Element.exp(mpmath.mpf("1.1"), (1, 0, 0))
    assert float((g * h).norm_sq()) == pytest.approx(1)
    assert float((g * g.conj()).w) == pytest.approx(1)
    assert float((g**3).trace) == pytest.approx(2 * math.cos(2.1))


@settings(max_examples=30)
@given(coprime_pairs)
def test_arc_count(pq):
    p, q = pq
    assert len(enumerate_arcs(p, q)) == (p - 1) * (q - 1) // 2


@settings(max_examples=30)
@given(coprime_pairs, st.floats(0.05, 3.0))
def test_word_invariance(pq, tau):
    p, q = pq
    m, n = meridian_word(p, q)
    for a, b in enumerate_arcs(p, q):
        assert meridian_trace(p, q, a, b, tau) == pytest.approx(
            meridian_trace(p, q, a, b, tau, word=(m + p, n - q)), abs=1e-9
        )


@settings(max_examples=25)
@given(coprime_pairs, alphas)
def test_counting_identity(pq, a):
    p, q = pq
    V = torus_knot_seifert(p, q)
    if a.denominator > 48 or not admissible(V, a):
        return
    assert count_reps(p, q, a) == -tl_signature(V, a) // 2
    assert flip_check(p, q, a)
