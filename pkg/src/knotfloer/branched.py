"""Flat SU(2) connection counts on Brieskorn spheres via torus-knot signatures.

Sigma(p,q,r) is the r-fold cyclic branched cover of S^3 along T(p,q). Its
irreducible flat SU(2) connections are counted twice by the irreducible
representations of the knot group at alpha = l/2r, l = 1..r-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

from .char_variety import count_reps
from .errors import NonIntegralCount
from .knots import tl_signature, torus_knot_seifert

__all__ = [
    "BrieskornTriple",
    "equivariant_signature_sum",
    "brieskorn_count",
    "verify_p2",
    "p2_terms",
    "coprime_triples",
]


@dataclass(frozen=True)
class BrieskornTriple:
    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        if min(p, q, r) < 1:
            raise ValueError("Brieskorn exponents must be positive")
        if gcd(p, q) != 1 or gcd(q, r) != 1 or gcd(p, r) != 1:
            raise ValueError(f"({p}, {q}, {r}) is not pairwise coprime")


def _torus(p: int, q: int):
    p, q = min(p, q), max(p, q)
    return p, q, torus_knot_seifert(p, q)


def equivariant_signature_sum(p: int, q: int, r: int) -> int:
    """Sum over l = 1..r-1 of sigma_{l/2r}(T(p,q))."""
    BrieskornTriple(p, q, r)
    if min(p, q) == 1 or r == 1:
        return 0
    _, _, V = _torus(p, q)
    return sum(tl_signature(V, Fraction(l, 2 * r)) for l in range(1, r))


def brieskorn_count(p: int, q: int, r: int) -> int:
    """Number of irreducible flat SU(2) connections on Sigma(p,q,r)."""
    total = equivariant_signature_sum(p, q, r)
    if total % 4:
        raise NonIntegralCount(f"signature sum {total} for ({p},{q},{r}) is not divisible by 4")
    return -total // 4


def p2_terms(p: int, q: int, r: int) -> list[int]:
    """Per-l representation counts of the knot group at alpha = l/2r."""
    BrieskornTriple(p, q, r)
    if min(p, q) == 1 or r == 1:
        return []
    p, q = min(p, q), max(p, q)
    return [count_reps(p, q, Fraction(l, 2 * r)) for l in range(1, r)]


def verify_p2(p: int, q: int, r: int) -> bool:
    """Check 2 |R*(Sigma(p,q,r))| against the representation counts of T(p,q)."""
    return 2 * brieskorn_count(p, q, r) == sum(p2_terms(p, q, r))


def coprime_triples(max_product: int) -> Iterator[tuple[int, int, int]]:
    """(p, q, r) with 2 <= p < q coprime, r >= 2 coprime to both, pqr <= max_product."""
    for p in range(2, max_product):
        for q in range(p + 1, max_product // (2 * p) + 1):
            if gcd(p, q) != 1:
                continue
            for r in range(2, max_product // (p * q) + 1):
                if gcd(r, p) == 1 and gcd(r, q) == 1:
                    yield p, q, r
