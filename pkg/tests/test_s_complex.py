from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfloer.errors import BoundaryOnCut, FieldMismatch
from knotfloer.linalg import FF, QQ, EchelonBasis, rank
from knotfloer.s_complex import (
    Generator,
    SComplex,
    SMorphism,
    block_b,
    block_b_dagger,
    euler_char,
    filtered_truncate,
    froyshov,
    homology_ranks,
    morphism_space,
    morphism_validate,
    tensor,
    tensor_power,
    tensor_word,
    torus_model,
    unit_complex,
    validate,
    violations,
)


def test_model_blocks_valid():
    assert validate(unit_complex())
    assert validate(block_b())
    assert validate(block_b_dagger())


def test_misplaced_delta2_fails_grading():
    bad = SComplex([Generator("b", 1)], delta1={0: 1}, delta2={0: 1})
    found = violations(bad)
    assert "delta2 lands in degree 2" in found
    assert "d delta2 = 0" not in found


def test_unit_is_tensor_identity():
    t = tensor(block_b(), unit_complex())
    assert t.degrees() == [1]
    assert t.delta1 == {0: 1} and not t.d and not t.v and not t.delta2


def test_b_tensor_b():
    t = tensor(block_b(), block_b())
    assert t.rank == 4
    assert t.degrees() == [2, 3, 1, 1]
    assert [t.delta1.get(i, 0) for i in range(4)] == [0, 0, 1, 1]
    assert validate(t)


def test_homology_and_euler():
    assert homology_ranks(block_b()) == {1: 1}
    assert homology_ranks(tensor_power(block_b(), 2)) == {1: 1, 3: 1}
    assert homology_ranks(tensor_power(block_b(), 3)) == {1: 2, 3: 1}
    assert euler_char(block_b()) == -1
    assert euler_char(unit_complex()) == 0


def test_froyshov_examples():
    assert froyshov(block_b()) == 1
    assert froyshov(tensor_power(block_b(), 2)) == 2
    assert froyshov(block_b_dagger()) == -1
    assert froyshov(unit_complex()) == 0


def test_torus_models():
    assert torus_model(2, 3, Fraction(1, 4)).rank == 1
    m = torus_model(3, 5, Fraction(1, 4))
    assert homology_ranks(m) == {1: 2, 3: 2}
    assert torus_model(2, 3, Fraction(1, 24)).rank == 0


def test_identity_morphism():
    b = block_b()
    assert morphism_validate(SMorphism(m={(0, 0): 1}, eta=1), b, b)
    assert not morphism_validate(SMorphism(m={(0, 0): 1}, eta=0), b, b)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        morphism_validate(SMorphism(), block_b(), block_b(field=FF))


def test_froyshov_monotone_under_morphisms():
    for a in range(3):
        for b in range(3):
            src, dst = tensor_power(block_b(), a), tensor_power(block_b(), b)
            basis = morphism_space(src, dst)
            assert all(morphism_validate(f, src, dst) for f in basis if f.eta)
            if any(f.eta for f in basis):
                assert froyshov(src) <= froyshov(dst)


def test_filtered_truncation():
    c = tensor_power(block_b(), 2)
    assert filtered_truncate(c).rank == c.rank
    assert filtered_truncate(c, Fraction(-1), Fraction(1)).rank == c.rank
    assert filtered_truncate(c, Fraction(1), Fraction(2)).rank == 0
    with pytest.raises(BoundaryOnCut):
        filtered_truncate(c, Fraction(0), Fraction(1))


def test_function_field_coefficients():
    c = tensor_power(block_b(field=FF), 2)
    assert c.field is FF and validate(c)
    assert homology_ranks(c) == {1: 1, 3: 1}
    assert froyshov(c) == 2


def test_json_round_trip():
    c = tensor_word("BD")
    back = SComplex.from_json(c.to_json())
    assert back.to_json() == c.to_json()
    assert froyshov(back) == froyshov(c)


def test_echelon_rank():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: Fraction(1, 3)}]
    assert rank(rows) == 2
    basis = EchelonBasis(QQ)
    assert basis.add({2: 5}) and not basis.add({2: -1})


words = st.text(alphabet="BDU", max_size=3)
bd_words = st.text(alphabet="BD", min_size=1, max_size=4)


@settings(max_examples=30)
@given(words)
def test_tensor_words_valid(w):
    c = tensor_word(w)
    assert validate(c)
    assert euler_char(c) == sum(homology_ranks(c).get(k, 0) * (-1) ** k for k in range(4))


@settings(max_examples=15)
@given(bd_words, bd_words)
def test_froyshov_additive(w1, w2):
    assert froyshov(tensor(tensor_word(w1), tensor_word(w2))) == froyshov(tensor_word(w1)) + froyshov(tensor_word(w2))


@settings(max_examples=20)
@given(st.integers(0, 4))
def test_powers(l):
    c = tensor_power(block_b(), l)
    assert froyshov(c) == l
    assert euler_char(c) == -l
