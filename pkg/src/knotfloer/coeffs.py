"""Coefficient algebra: finite sums of lambda^r T^j and their unit inverses.

Exponents r of lambda live in (1/D) Z with D the denominator of 2 alpha, so
xi = lambda^{2 alpha} T^2 is a monomial. Inverses of units are geometric
series in decreasing powers of lambda; they are cut off at a recorded
lambda-exponent, and anything at or below that exponent is unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import AlphaMismatch, NotAUnit, Truncated

__all__ = [
    "NovikovElement",
    "BiGrading",
    "invert_unit",
    "eta_alpha",
    "apply_operator",
    "to_function_field",
    "function_field",
    "lambda_denominator",
]

ETA_KINDS = ("positive_twist", "negative_twist", "crossing_blowup")


def lambda_denominator(alpha) -> int:
    """D with lambda-exponents in (1/D) Z."""
    return (2 * Fraction(alpha)).denominator


class NovikovElement:
    """Finite sum of c * lambda^r * T^j at a fixed holonomy parameter."""

    __slots__ = ("alpha", "terms", "cutoff")

    def __init__(self, alpha, terms=None, cutoff=None):
        self.alpha = Fraction(alpha)
        D = lambda_denominator(self.alpha)
        self.cutoff = None if cutoff is None else Fraction(cutoff)
        clean: dict[tuple[Fraction, int], Fraction] = {}
        for (r, j), c in (terms or {}).items():
            r, c = Fraction(r), Fraction(c)
            if (r * D).denominator != 1:
                raise ValueError(f"lambda exponent {r} is not a multiple of 1/{D}")
            if c and (self.cutoff is None or r > self.cutoff):
                key = (r, int(j))
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    # constructors ----------------------------------------------------------

    @classmethod
    def monomial(cls, alpha, r=0, j=0, c=1) -> "NovikovElement":
        return cls(alpha, {(Fraction(r), j): c})

    @classmethod
    def one(cls, alpha) -> "NovikovElement":
        return cls.monomial(alpha)

    @classmethod
    def zero(cls, alpha) -> "NovikovElement":
        return cls(alpha)

    @classmethod
    def xi(cls, alpha) -> "NovikovElement":
        alpha = Fraction(alpha)
        return cls.monomial(alpha, 2 * alpha, 2)

    # queries ---------------------------------------------------------------

    @property
    def is_truncated(self) -> bool:
        return self.cutoff is not None

    def is_zero(self) -> bool:
        return not self.terms

    def top_exponent(self) -> Fraction | None:
        return max(r for r, _ in self.terms) if self.terms else None

    def leading_terms(self) -> dict:
        top = self.top_exponent()
        return {k: c for k, c in self.terms.items() if k[0] == top}

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "NovikovElement":
        if isinstance(other, NovikovElement):
            if other.alpha != self.alpha:
                raise AlphaMismatch(f"alpha {self.alpha} vs {other.alpha}")
            return other
        if isinstance(other, (int, Fraction)):
            return NovikovElement.monomial(self.alpha, 0, 0, other)
        raise TypeError(f"cannot combine NovikovElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return NovikovElement(self.alpha, terms, _max_cutoff(self.cutoff, other.cutoff))

    __radd__ = __add__

    def __neg__(self):
        return NovikovElement(self.alpha, {k: -c for k, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for (r1, j1), c1 in self.terms.items():
            for (r2, j2), c2 in other.terms.items():
                k = (r1 + r2, j1 + j2)
                terms[k] = terms.get(k, Fraction(0)) + c1 * c2
        cut = None
        if self.cutoff is not None:
            top = other.top_exponent()
            cut = _max_cutoff(cut, self.cutoff + top if top is not None else None)
        if other.cutoff is not None:
            top = self.top_exponent()
            cut = _max_cutoff(cut, other.cutoff + top if top is not None else None)
        return NovikovElement(self.alpha, terms, cut)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use invert_unit for negative powers")
        out = NovikovElement.one(self.alpha)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NovikovElement.monomial(self.alpha, 0, 0, other)
        if not isinstance(other, NovikovElement):
            return NotImplemented
        return self.alpha == other.alpha and self.terms == other.terms and self.cutoff == other.cutoff

    def __hash__(self):
        return hash((self.alpha, frozenset(self.terms.items()), self.cutoff))

    def __repr__(self):
        return f"NovikovElement(alpha={self.alpha}, {self})"

    def __str__(self):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for (r, j) in sorted(self.terms, key=lambda k: (-k[0], -k[1])):
                c = self.terms[(r, j)]
                parts.append(f"{_fmt(c)}*l^{{{_fmt(r)}}}*T^{{{j}}}")
            body = " + ".join(parts)
        if self.cutoff is not None:
            body += f" + O(l^{{{_fmt(self.cutoff)}}})"
        return body

    def to_json(self) -> dict:
        return {
            "alpha": _fmt(self.alpha),
            "terms": [[_fmt(r), j, _fmt(c)] for (r, j), c in sorted(self.terms.items())],
            "cutoff": None if self.cutoff is None else _fmt(self.cutoff),
        }

    @classmethod
    def from_json(cls, data: dict) -> "NovikovElement":
        terms = {(Fraction(r), int(j)): Fraction(c) for r, j, c in data["terms"]}
        cut = data.get("cutoff")
        return cls(Fraction(data["alpha"]), terms, None if cut is None else Fraction(cut))


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _max_cutoff(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def invert_unit(x: NovikovElement, depth: int = 8) -> NovikovElement:
    """Inverse of x = u (1 - y) as u^{-1} (1 + y + ... + y^depth).

    u must be a single leading monomial with coefficient +-1 and every
    lambda-exponent of y must be negative. The result records its cutoff.
    """
    if x.is_truncated:
        raise Truncated("cannot invert an element that is already truncated")
    lead = x.leading_terms()
    if len(lead) != 1:
        raise NotAUnit(f"{x} has no unique leading monomial")
    ((r0, j0), c0), = lead.items()
    if c0 not in (1, -1):
        raise NotAUnit(f"leading coefficient {c0} is not +-1")
    u_inv = NovikovElement.monomial(x.alpha, -r0, -j0, c0)
    y = NovikovElement.one(x.alpha) - u_inv * x
    if y.is_zero():
        return u_inv
    top = y.top_exponent()
    if top >= 0:
        raise NotAUnit(f"{x} is not a unit times 1 - (decaying terms)")
    cutoff = (depth + 1) * top
    total = NovikovElement.one(x.alpha)
    power = NovikovElement.one(x.alpha)
    for _ in range(depth):
        power = NovikovElement(x.alpha, (power * y).terms, cutoff)
        total = total + power
    total = NovikovElement(x.alpha, total.terms, cutoff)
    return u_inv * total


def eta_alpha(kind: str, alpha) -> NovikovElement:
    """Signed reducible count for the model cobordisms."""
    alpha = Fraction(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError("alpha must lie in (0, 1/2)")
    if kind not in ETA_KINDS:
        raise ValueError(f"unknown cobordism kind {kind!r}")
    if kind == "negative_twist":
        return NovikovElement.one(alpha)
    e = 4 * alpha - 1
    if alpha <= Fraction(1, 4):
        return NovikovElement(alpha, {(0, 0): 1, (e, 4): -1})
    return NovikovElement(alpha, {(-e, -4): 1, (0, 0): -1})


@dataclass(frozen=True)
class BiGrading:
    """Integer (or mod 4) grading together with a real filtration grading."""

    deg_z: int
    deg_r: Fraction = Fraction(0)
    mod4: bool = False

    def __post_init__(self):
        object.__setattr__(self, "deg_r", Fraction(self.deg_r))
        if self.mod4:
            object.__setattr__(self, "deg_z", self.deg_z % 4)


_OPS = {
    "Z": (0, 1, 0),
    "Z^-1": (0, -1, 0),
    "U": (4, 0, 1),
    "U^-1": (-4, 0, -1),
}


def apply_operator(op: str, g: BiGrading, alpha, times: int = 1) -> BiGrading:
    """Shift a bigrading by Z = lambda^{1-4a} T^{-4} or U, possibly repeatedly."""
    op = op.replace("inv", "^-1").replace("⁻¹", "^-1")
    if op not in _OPS:
        raise ValueError(f"unknown operator {op!r}")
    alpha = Fraction(alpha)
    dz, z_count, u_count = _OPS[op]
    dr = z_count * (1 - 4 * alpha) + u_count * 2 * alpha
    return BiGrading(g.deg_z + dz * times, g.deg_r + dr * times, g.mod4)


@lru_cache(maxsize=1)
def function_field():
    """The field Q(s, T) used for exact linear algebra."""
    import sympy

    s, T = sympy.symbols("s T")
    return sympy.QQ.frac_field(s, T)


def to_function_field(x: NovikovElement):
    """Embed a finite sum into Q(s, T) via lambda = s^D."""
    if x.is_truncated:
        raise Truncated(f"{x} carries a series truncation")
    K = function_field()
    s, T = K.gens
    D = lambda_denominator(x.alpha)
    out = K.zero
    for (r, j), c in x.terms.items():
        out += K.convert(c) * s ** int(r * D) * T**j
    return out


def sum_elements(alpha, items: Iterable[NovikovElement]) -> NovikovElement:
    total = NovikovElement.zero(alpha)
    for it in items:
        total = total + it
    return total
