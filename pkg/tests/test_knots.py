import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfloer.errors import InvalidTorusParams, JumpPoint, NotAdmissible
from knotfloer.knots import (
    UNKNOT,
    AlgebraicJump,
    LaurentPoly,
    SeifertMatrix,
    _tl_signature_cached,
    admissible,
    alexander,
    litherland_t2,
    litherland_torus,
    signature_jumps,
    tl_signature,
    torus_alexander_closed_form,
    torus_knot_seifert,
)

from strategies import alphas, coprime_pairs, random_seifert

F = Fraction


def test_trefoil_alexander():
    assert str(alexander(torus_knot_seifert(2, 3))) == "t - 1 + t^-1"
    assert alexander(torus_knot_seifert(2, 3)) == torus_alexander_closed_form(2, 3)


def test_unknot():
    assert alexander(UNKNOT) == LaurentPoly({0: 1})
    assert admissible(UNKNOT, F(1, 7))
    assert signature_jumps(UNKNOT) == []
    assert tl_signature(UNKNOT, F(1, 5)) == 0


def test_torus_sizes():
    assert torus_knot_seifert(3, 4).size == 6
    assert torus_knot_seifert(2, 5).size == 4


def test_t25_full_signature():
    M = torus_knot_seifert(2, 5).matrix
    assert tl_signature(torus_knot_seifert(2, 5), F(1, 4)) == -4
    assert len(M) == 4


def test_3_5_alexander_closed_form():
    assert alexander(torus_knot_seifert(3, 5)) == torus_alexander_closed_form(3, 5)


def test_admissible_examples():
    t = torus_knot_seifert(2, 3)
    assert not admissible(t, F(1, 12))
    assert admissible(t, F(1, 4))


def test_signature_examples():
    t = torus_knot_seifert(2, 3)
    assert tl_signature(t, F(1, 4)) == -2
    assert tl_signature(t, F(1, 24)) == 0
    assert tl_signature(torus_knot_seifert(2, 5), F(1, 5)) == -4
    assert tl_signature(t, 0) == 0 and tl_signature(t, F(1, 2)) == 0


def test_not_admissible_carries_jumps():
    with pytest.raises(NotAdmissible) as info:
        tl_signature(torus_knot_seifert(2, 3), F(1, 12))
    assert info.value.jumps == [F(1, 12), F(5, 12)]


def test_litherland_examples():
    assert litherland_t2(1, F(1, 6)) == -2
    assert litherland_t2(1, F(1, 24)) == 0
    assert litherland_t2(2, F(1, 5)) == -4
    with pytest.raises(JumpPoint):
        litherland_t2(1, F(1, 12))


def test_jump_examples():
    assert signature_jumps(torus_knot_seifert(2, 3)) == [F(1, 12), F(5, 12)]
    assert signature_jumps(torus_knot_seifert(2, 5)) == [F(1, 20), F(3, 20), F(7, 20), F(9, 20)]


def test_non_cyclotomic_jump_is_isolated():
    # figure-eight knot: Delta = -t + 3 - 1/t has real roots only, so no jumps;
    # 5_2 has Delta = 2t - 3 + 2/t with roots on the unit circle off roots of unity
    fig8 = SeifertMatrix([[1, 1], [0, -1]])
    assert signature_jumps(fig8) == []
    five2 = SeifertMatrix([[-1, 1], [0, -2]])
    jumps = signature_jumps(five2)
    assert len(jumps) == 2 and all(isinstance(j, AlgebraicJump) for j in jumps)
    lo, hi = jumps[0]
    assert F(1, 50) < lo < hi < F(1, 10)
    assert tl_signature(five2, F(1, 50)) != tl_signature(five2, F(1, 10))


def test_invalid_inputs():
    with pytest.raises(InvalidTorusParams):
        torus_knot_seifert(2, 4)
    with pytest.raises(ValueError):
        SeifertMatrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        SeifertMatrix([[1, 0]])


def test_seifert_json_round_trip(tmp_path):
    V = torus_knot_seifert(2, 5)
    path = tmp_path / "t25.json"
    V.save(path)
    assert SeifertMatrix.load(path) == V
    assert json.loads(path.read_text())["matrix"] == [list(r) for r in V.matrix]


def test_exact_and_interval_paths_agree():
    rng = random.Random(3)
    for g in (1, 2, 3):
        V = random_seifert(rng, g)
        for a in (F(1, 7), F(2, 9), F(3, 11), F(1, 3)):
            if admissible(V, a):
                assert _tl_signature_cached(V.matrix, a, "exact") == tl_signature(V, a)


@settings(max_examples=40)
@given(coprime_pairs, alphas)
def test_signature_properties(pq, a):
    p, q = pq
    V = torus_knot_seifert(p, q)
    if not admissible(V, a):
        return
    s = tl_signature(V, a)
    assert s % 2 == 0
    assert abs(s) <= V.size
    assert s <= 0
    assert s == tl_signature(V, F(1, 2) - a)
    assert s == litherland_torus(p, q, a)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_signature_congruence_invariant(seed, genus):
    rng = random.Random(seed)
    V = random_seifert(rng, genus)
    a = F(rng.randint(1, 20), 43)
    if admissible(V, a):
        assert tl_signature(V, a) == tl_signature(V.transpose(), a)
    assert alexander(V).is_symmetric()
    assert abs(alexander(V).at_one()) == 1


def _two_simple_fractions(lo, hi):
    out, d = [], 2
    while len(out) < 2:
        out += [F(n, d) for n in range(1, d) if lo < F(n, d) < hi and F(n, d) not in out]
        d += 1
    return out[:2]


@settings(max_examples=8)
@given(st.sampled_from([(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (2, 9)]))
def test_signature_constant_between_jumps(pq):
    V = torus_knot_seifert(*pq)
    cuts = [F(0)] + signature_jumps(V) + [F(1, 2)]
    for lo, hi in zip(cuts, cuts[1:]):
        a1, a2 = _two_simple_fractions(lo, hi)
        assert tl_signature(V, a1) == tl_signature(V, a2)
