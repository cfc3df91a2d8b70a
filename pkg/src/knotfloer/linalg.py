"""Exact sparse linear algebra over Q or Q(s, T).

Vectors are dicts index -> nonzero entry. Over Q the echelon basis keeps
integer rows and eliminates by cross-multiplication (fraction free), then
divides each row by its content. Over the function field it uses ordinary
field division, which is exact there.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = ["Field", "QQ", "FunctionFieldQST", "FF", "EchelonBasis", "rank"]


class Field:
    name = "field"

    def convert(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def to_text(self, x) -> str:
        return str(x)

    def from_text(self, s: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "QQ"

    def convert(self, x):
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def to_text(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def from_text(self, s: str):
        return Fraction(s)


class FunctionFieldQST(Field):
    """Q(s, T), the target of the coefficient embedding."""

    name = "Q(s,T)"

    @property
    def K(self):
        from .coeffs import function_field

        return function_field()

    def convert(self, x):
        K = self.K
        if isinstance(x, str):
            return self.from_text(x)
        if isinstance(x, Fraction):
            return K.convert(x)
        if isinstance(x, int):
            return K.convert(x)
        if K.of_type(x):
            return x
        return K.from_sympy(x)

    def is_zero(self, x) -> bool:
        return not x

    def to_text(self, x) -> str:
        return str(self.K.to_sympy(x))

    def from_text(self, s: str):
        import sympy

        return self.K.from_sympy(sympy.sympify(s))


QQ = RationalField()
FF = FunctionFieldQST()


def _int_row(vec: dict) -> dict:
    den = 1
    for c in vec.values():
        den = lcm(den, Fraction(c).denominator)
    return {k: int(Fraction(c) * den) for k, c in vec.items() if c}


def _primitive(row: dict) -> dict:
    g = 0
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {k: c // g for k, c in row.items()}
    return row


class EchelonBasis:
    """Incrementally maintained row-echelon basis; ``add`` reports independence."""

    def __init__(self, field: Field = QQ):
        self.field = field
        self.rows: dict = {}  # pivot index -> row

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        if self.field is QQ:
            return self._reduce_int(_int_row(vec))
        return self._reduce_field({k: c for k, c in vec.items() if not self.field.is_zero(c)})

    def add(self, vec: dict) -> bool:
        red = self.reduce(vec)
        if not red:
            return False
        self.rows[min(red, key=_order_key)] = red
        return True

    def _reduce_int(self, row: dict) -> dict:
        while row:
            piv = min(row, key=_order_key)
            basis = self.rows.get(piv)
            if basis is None:
                return _primitive(row)
            a, b = basis[piv], row[piv]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: c * fa for k, c in row.items()}
            for k, c in basis.items():
                val = new.get(k, 0) - fb * c
                if val:
                    new[k] = val
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return row

    def _reduce_field(self, row: dict) -> dict:
        is_zero = self.field.is_zero
        while row:
            piv = min(row, key=_order_key)
            basis = self.rows.get(piv)
            if basis is None:
                inv = 1 / row[piv]
                return {k: c * inv for k, c in row.items()}
            f = row[piv]
            new = dict(row)
            for k, c in basis.items():
                val = new.get(k, 0) - f * c
                if is_zero(val):
                    new.pop(k, None)
                else:
                    new[k] = val
            row = new
        return row


def _order_key(k):
    return k if isinstance(k, tuple) else (k,)


def rank(rows, field: Field = QQ) -> int:
    basis = EchelonBasis(field)
    for r in rows:
        basis.add(r)
    return len(basis)
