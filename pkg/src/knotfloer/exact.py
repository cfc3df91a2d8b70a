"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as integer coefficient vectors of a polynomial in
zeta_N of degree < phi(N), together with a positive common denominator.
Reduction is modulo the N-th cyclotomic polynomial, so the representation
of an element at a fixed order is canonical.

Signs of real elements are decided exactly: an exact zero test first, then
outward-rounded interval evaluation at doubling precision.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import gcd

from mpmath import iv

from .errors import NotReal

__all__ = [
    "CyclotomicNumber",
    "cyclotomic_poly",
    "euler_phi",
    "iv_precision",
    "root_of_unity",
    "sign_real",
]

START_PREC = 64
MAX_PREC = 1 << 16

_iv_lock = threading.RLock()


@contextmanager
def iv_precision(prec: int):
    """Run a block with mpmath's interval context at ``prec`` bits.

    The interval context is process-global, so callers are serialized.
    """
    with _iv_lock:
        old = iv.prec
        iv.prec = prec
        try:
            yield iv
        finally:
            iv.prec = old


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division is exact over Z
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce(coeffs: list[int], order: int) -> list[int]:
    phi = cyclotomic_poly(order)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        top = c[i]
        if top:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    c[base + j] -= top * phi[j]
    c = c[:deg]
    if len(c) < deg:
        c.extend([0] * (deg - len(c)))
    return c


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class CyclotomicNumber:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs=()):
        order = int(order)
        if order < 1:
            raise ValueError("order must be positive")
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = _lcm(den, f.denominator)
        ints = [f.numerator * (den // f.denominator) for f in fracs]
        self._set(order, _reduce(ints, order), den)

    def _set(self, order, num, den):
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            den, g = 1, 1
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.order = order
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _raw(cls, order, num, den=1):
        obj = cls.__new__(cls)
        obj._set(order, num, den)
        return obj

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CyclotomicNumber":
        k %= order
        c = [0] * (k + 1)
        c[k] = 1
        return cls._raw(order, _reduce(c, order))

    @classmethod
    def from_rational(cls, q, order: int = 1) -> "CyclotomicNumber":
        return cls(order, [q])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*z{self.order}^{k}")
        return " + ".join(terms) if terms else "0"

    # -- order handling -------------------------------------------------

    def lift(self, order: int) -> "CyclotomicNumber":
        """Re-express in Q(zeta_order); self.order must divide order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        c = [0] * (step * (len(self._num) - 1) + 1) if self._num else [0]
        for k, v in enumerate(self._num):
            c[k * step] = v
        return CyclotomicNumber._raw(order, _reduce(c, order), self._den)

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return self, other
            n = _lcm(self.order, other.order)
            return self.lift(n), other.lift(n)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicNumber(self.order, [other])
        return None

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        den = _lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        num = [x * fa + y * fb for x, y in zip(a._num, b._num)]
        return CyclotomicNumber._raw(a.order, num, den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, [-c for c in self._num], self._den)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicNumber._raw(self.order, [c * other for c in self._num], self._den)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        an, bn = a._num, b._num
        prod = [0] * (len(an) + len(bn) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(a.order, _reduce(prod, a.order), a._den * b._den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber._raw(self.order, [1] + [0] * (self.degree - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "CyclotomicNumber":
        n = self.order
        c = [0] * n
        for k, v in enumerate(self._num):
            c[(-k) % n] += v
        return CyclotomicNumber._raw(n, _reduce(c, n), self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_real(self) -> bool:
        return self == self.conj()

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x]: s * a + t * Phi = 1
        a = [Fraction(c) for c in self._num]
        s = _poly_inverse_mod([c for c in a], [Fraction(c) for c in cyclotomic_poly(self.order)])
        return CyclotomicNumber(self.order, [c * self._den for c in s])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * CyclotomicNumber(self.order, [Fraction(1) / Fraction(other)])
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return CyclotomicNumber(self.order, [other]) * self.inverse()

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        # equal values may live at different orders, so only the rational
        # part is hashed consistently; irrational values share one bucket
        if self.is_rational():
            return hash(Fraction(self._num[0] if self._num else 0, self._den))
        return hash("irrational-cyclotomic")

    # -- numerics ---------------------------------------------------------

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z**k for k, c in enumerate(self._num)) / self._den

    def real_interval(self, prec: int):
        """Outward-rounded interval enclosing the real part, at ``prec`` bits."""
        with iv_precision(prec):
            cosines = _cos_table(self.order, prec)
            acc = iv.mpf(0)
            for k, c in enumerate(self._num):
                if c:
                    acc += iv.mpf(c) * cosines[k]
            return acc / iv.mpf(self._den)


@lru_cache(maxsize=512)
def _cos_table(order: int, prec: int):
    # caller runs inside iv_precision(prec)
    two_pi = 2 * iv.pi
    return tuple(iv.cos(two_pi * k / order) for k in range(euler_phi(order)))


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m):
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def root_of_unity(alpha) -> CyclotomicNumber:
    """Return exp(4 pi i alpha) exactly, as zeta_N^k with 2*alpha = k/N."""
    two_alpha = 2 * Fraction(alpha)
    n = two_alpha.denominator
    return CyclotomicNumber.zeta(n, two_alpha.numerator % n)


def sign_real(x: CyclotomicNumber) -> int:
    """Exact sign of a real cyclotomic number."""
    if not x.is_real():
        raise NotReal(f"{x} is not real")
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x._num[0] > 0 else -1
    prec = START_PREC
    while prec <= MAX_PREC:
        box = x.real_interval(prec)
        if box.a > 0:
            return 1
        if box.b < 0:
            return -1
        prec *= 2
    raise ArithmeticError(f"sign of a degree-{x.degree} element of Q(zeta_{x.order}) undecided at {MAX_PREC} bits")
