import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfloer.branched import (
    BrieskornTriple,
    brieskorn_count,
    coprime_triples,
    equivariant_signature_sum,
    p2_terms,
    verify_p2,
)


def test_signature_sums():
    assert equivariant_signature_sum(2, 3, 5) == -8
    assert equivariant_signature_sum(2, 3, 7) == -8
    assert equivariant_signature_sum(5, 7, 1) == 0


def test_counts():
    assert brieskorn_count(2, 3, 5) == 2
    assert brieskorn_count(2, 3, 7) == 2
    assert brieskorn_count(2, 3, 11) == 4


def test_p2_examples():
    assert p2_terms(2, 3, 5) == [1, 1, 1, 1]
    assert p2_terms(2, 3, 7) == [0, 1, 1, 1, 1, 0]
    assert verify_p2(3, 5, 2)
    assert brieskorn_count(3, 5, 2) == 2


def test_rejects_non_coprime():
    with pytest.raises(ValueError):
        BrieskornTriple(2, 4, 5)
    with pytest.raises(ValueError):
        brieskorn_count(3, 5, 6)


def test_triple_enumeration():
    triples = list(coprime_triples(60))
    assert (2, 3, 5) in triples and (2, 3, 7) in triples
    assert all(p * q * r <= 60 for p, q, r in triples)


small_triples = st.sampled_from(list(coprime_triples(120)))


@settings(max_examples=20)
@given(small_triples)
def test_count_symmetric_under_permutation(t):
    counts = {brieskorn_count(*perm) for perm in itertools.permutations(t)}
    assert len(counts) == 1


@settings(max_examples=20)
@given(small_triples)
def test_p2_identity(t):
    assert verify_p2(*t)
    assert brieskorn_count(*t) >= 0
