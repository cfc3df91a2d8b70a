"""Seifert matrices, Alexander polynomials and Tristram-Levine signatures."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import NamedTuple, Sequence

from mpmath import iv

from .errors import InvalidTorusParams, JumpPoint, NotAdmissible
from .exact import CyclotomicNumber, cyclotomic_poly, euler_phi, iv_precision, root_of_unity, sign_real

__all__ = [
    "SeifertMatrix",
    "LaurentPoly",
    "AlgebraicJump",
    "torus_knot_seifert",
    "torus_alexander_closed_form",
    "alexander",
    "admissible",
    "tl_signature",
    "litherland_t2",
    "litherland_torus",
    "signature_jumps",
    "int_det",
]


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SeifertMatrix:
    """Square integer matrix V with det(V - V^T) = +-1."""

    matrix: tuple
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Seifert matrix must be square")
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if abs(int_det(skew)) != 1:
            raise ValueError("det(V - V^T) must be +-1 for a knot Seifert matrix")
        object.__setattr__(self, "matrix", rows)

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def genus(self) -> int:
        return self.size // 2

    def transpose(self) -> "SeifertMatrix":
        n = self.size
        return SeifertMatrix(tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n)))

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "matrix": [list(r) for r in self.matrix]})

    @classmethod
    def from_json(cls, text: str) -> "SeifertMatrix":
        data = json.loads(text)
        if not isinstance(data, dict) or "matrix" not in data:
            raise ValueError("Seifert JSON needs a 'matrix' field")
        return cls(data["matrix"], data.get("name"))

    @classmethod
    def load(cls, path) -> "SeifertMatrix":
        return cls.from_json(Path(path).read_text())

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())


UNKNOT = SeifertMatrix(())


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Finitely supported map exponent -> rational coefficient in t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for e, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self.coeffs = clean

    @classmethod
    def from_list(cls, values: Sequence, low: int = 0) -> "LaurentPoly":
        return cls({low + i: c for i, c in enumerate(values)})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == LaurentPoly({0: other}).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    @property
    def low(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    @property
    def high(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get(-e) == c for e, c in self.coeffs.items())

    def at_one(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def evaluate(self, x):
        """Evaluate at a number; cyclotomic points are handled exactly."""
        if isinstance(x, CyclotomicNumber):
            acc = CyclotomicNumber(x.order)
            for e, c in self.coeffs.items():
                acc = acc + (x**e) * c
            return acc
        return sum(c * x**e for e, c in self.coeffs.items())

    def to_list(self) -> list:
        """Dense coefficient list from the lowest exponent upward."""
        return [self.coeffs.get(e, Fraction(0)) for e in range(self.low, self.high + 1)]

    def __repr__(self):
        return f"LaurentPoly({ {e: str(c) for e, c in sorted(self.coeffs.items())} })"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


def _normalize_alexander(dense: list[Fraction]) -> LaurentPoly:
    lo = 0
    while lo < len(dense) and dense[lo] == 0:
        lo += 1
    hi = len(dense) - 1
    while hi >= 0 and dense[hi] == 0:
        hi -= 1
    if lo > hi:
        return LaurentPoly()
    core = dense[lo : hi + 1]
    span = hi - lo
    if span % 2:
        raise ValueError("Alexander polynomial has odd span")
    sgn = 1 if sum(core) >= 0 else -1
    return LaurentPoly({i - span // 2: sgn * c for i, c in enumerate(core)})


def _interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients (low first) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            # multiply basis by (t - xs[j])
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                nxt[k] -= b * xs[j]
                nxt[k + 1] += b
            basis = nxt
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i], denom)
        for k, b in enumerate(basis):
            coeffs[k] += b * scale
    return coeffs


def alexander(V: SeifertMatrix) -> LaurentPoly:
    """Symmetrized Alexander polynomial det(V - t V^T), normalized to p(1) = 1."""
    return _alexander_cached(V.matrix)


@lru_cache(maxsize=1024)
def _alexander_cached(M: tuple) -> LaurentPoly:
    n = len(M)
    if n == 0:
        return LaurentPoly({0: 1})
    xs = list(range(n + 1))
    ys = [int_det([[M[i][j] - t * M[j][i] for j in range(n)] for i in range(n)]) for t in xs]
    return _normalize_alexander(_interpolate(xs, ys))


def _poly_from_divisions(num: list[int], dens: list[list[int]]) -> list[int]:
    out = list(num)
    for den in dens:
        q = [0] * (len(out) - len(den) + 1)
        rem = list(out)
        for i in range(len(rem) - 1, len(den) - 2, -1):
            c = rem[i]
            if c:
                q[i - len(den) + 1] = c // den[-1]
                for j, d in enumerate(den):
                    rem[i - len(den) + 1 + j] -= q[i - len(den) + 1] * d
        assert not any(rem)
        out = q
    return out


def torus_alexander_closed_form(p: int, q: int) -> LaurentPoly:
    """Normalized (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))."""

    def binom(k):
        return [-1] + [0] * (k - 1) + [1]

    top = binom(p * q)
    num = [0] * (len(top) + 1)
    for i, c in enumerate(top):
        num[i] -= c
        num[i + 1] += c
    dense = _poly_from_divisions(num, [binom(p), binom(q)])
    return _normalize_alexander([Fraction(c) for c in dense])


# ---------------------------------------------------------------------------
# torus knots


def _check_torus(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)) or p < 2 or q <= p or gcd(p, q) != 1:
        raise InvalidTorusParams(f"need coprime 2 <= p < q, got ({p}, {q})")


def torus_knot_seifert(p: int, q: int) -> SeifertMatrix:
    """Seifert matrix of T(p,q) from the closure of the positive braid (s1...s_{p-1})^q.

    Each generator contributes one loop per pair of consecutive occurrences.
    A loop links its own push-off -1 times; consecutive loops on the same
    generator and interleaved loops on adjacent generators pick up +-1.
    """
    _check_torus(p, q)
    word = list(range(1, p)) * q
    positions: dict[int, list[int]] = {}
    for idx, g in enumerate(word):
        positions.setdefault(g, []).append(idx)
    loops = []
    for g in range(1, p):
        occ = positions[g]
        loops.extend((g, occ[k], occ[k + 1]) for k in range(len(occ) - 1))
    n = len(loops)
    V = [[0] * n for _ in range(n)]
    for i, (g, s1, s2) in enumerate(loops):
        V[i][i] = -1
        for j, (h, t1, t2) in enumerate(loops):
            if g == h and t1 == s2:
                V[i][j] = 1
            elif h == g + 1:
                if s1 < t1 < s2 < t2:
                    V[i][j] += 1
                elif t1 < s1 < t2 < s2:
                    V[j][i] -= 1
    return SeifertMatrix(V, name=f"T({p},{q})")


# ---------------------------------------------------------------------------
# admissibility and signatures


def admissible(V: SeifertMatrix, alpha) -> bool:
    """True iff the Alexander polynomial does not vanish at exp(4 pi i alpha)."""
    omega = root_of_unity(Fraction(alpha))
    return not _evaluate_at_root(alexander(V), omega.order, 1 if omega.order > 1 else 0).is_zero()


def _evaluate_at_root(poly: LaurentPoly, order: int, k: int) -> CyclotomicNumber:
    # root_of_unity returns zeta_order^1 whenever order > 1
    coeffs = [Fraction(0)] * order
    for e, c in poly.coeffs.items():
        coeffs[(e * k) % order] += c
    return CyclotomicNumber(order, coeffs)


def _hermitian_signature(H: list[list[CyclotomicNumber]]) -> int:
    """Exact signature by Hermitian elimination over Q(zeta)."""
    n = len(H)
    H = [row[:] for row in H]
    active = list(range(n))
    sig = 0
    while active:
        piv = next((i for i in active if not H[i][i].is_zero()), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and not H[i][j].is_zero()),
                None,
            )
            if pair is None:
                raise ArithmeticError("singular Hermitian form")
            i, j = pair
            c = H[i][j]
            cb = c.conj()
            # row_i += c row_j, col_i += conj(c) col_j
            for k in active:
                H[i][k] = H[i][k] + c * H[j][k]
            for k in active:
                H[k][i] = H[k][i] + cb * H[k][j]
            piv = i
        d = H[piv][piv]
        sig += sign_real(d)
        dinv = d.inverse()
        active.remove(piv)
        for i in active:
            f = H[i][piv]
            if f.is_zero():
                continue
            f = f * dinv
            for j in active:
                g = H[piv][j]
                if not g.is_zero():
                    H[i][j] = H[i][j] - f * g
    return sig


def _is_exact_zero(x) -> bool:
    return x.a == 0 and x.b == 0


def _interval_signature(matrix: tuple, alpha: Fraction, prec: int) -> int | None:
    """Signature from an interval LDL* factorization, or None if inconclusive.

    Pivots are chosen by largest midpoint on the diagonal; a diagonal that
    may vanish is lifted by an exact congruence first. When every pivot
    interval excludes zero, Sylvester's law of inertia makes the count of
    signs exact.
    """
    n = len(matrix)
    with iv_precision(prec):
        theta = 4 * iv.pi * iv.mpf(alpha.numerator) / alpha.denominator
        c, s = 1 - iv.cos(theta), -iv.sin(theta)
        re = [[c * (matrix[i][j] + matrix[j][i]) for j in range(n)] for i in range(n)]
        im = [[s * (matrix[i][j] - matrix[j][i]) for j in range(n)] for i in range(n)]
        active = list(range(n))
        sig = 0
        while active:
            piv = max(active, key=lambda i: abs(re[i][i].mid))
            d = re[piv][piv]
            if d.a <= 0 <= d.b:
                # congruence row_i += c row_j, col_i += conj(c) col_j with a fixed
                # dyadic c near H_ij lifts the diagonal to about 2 |H_ij|^2
                pairs = [(i, j) for i in active for j in active if i != j]
                if not pairs:
                    return None
                i, j = max(pairs, key=lambda ij: abs(re[ij[0]][ij[1]].mid) + abs(im[ij[0]][ij[1]].mid))
                cr, ci = iv.mpf(re[i][j].mid), iv.mpf(im[i][j].mid)
                for k in active:
                    xr, xi = re[j][k], im[j][k]
                    re[i][k], im[i][k] = re[i][k] + cr * xr - ci * xi, im[i][k] + cr * xi + ci * xr
                for k in active:
                    xr, xi = re[k][j], im[k][j]
                    re[k][i], im[k][i] = re[k][i] + cr * xr + ci * xi, im[k][i] + cr * xi - ci * xr
                piv, d = i, re[i][i]
                if d.a <= 0 <= d.b:
                    return None
            sig += 1 if d.a > 0 else -1
            active.remove(piv)
            for i in active:
                if _is_exact_zero(re[i][piv]) and _is_exact_zero(im[i][piv]):
                    continue
                fr, fi = re[i][piv] / d, im[i][piv] / d
                for j in active:
                    gr, gi = re[piv][j], im[piv][j]
                    re[i][j] = re[i][j] - (fr * gr - fi * gi)
                    im[i][j] = im[i][j] - (fr * gi + fi * gr)
        return sig


@lru_cache(maxsize=4096)
def _tl_signature_cached(matrix: tuple, alpha: Fraction, method: str = "auto") -> int:
    if method == "auto":
        for prec in (128, 512):
            sig = _interval_signature(matrix, alpha, prec)
            if sig is not None:
                return sig
    n = len(matrix)
    omega = root_of_unity(alpha)
    a = 1 - omega
    b = a.conj()
    H = [[a * matrix[i][j] + b * matrix[j][i] for j in range(n)] for i in range(n)]
    return _hermitian_signature(H)


def tl_signature(V: SeifertMatrix, alpha) -> int:
    """Exact Tristram-Levine signature sigma_alpha at omega = exp(4 pi i alpha)."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= Fraction(1, 2):
        raise ValueError("alpha must lie in [0, 1/2]")
    if alpha in (0, Fraction(1, 2)):
        return 0
    if not admissible(V, alpha):
        jumps = signature_jumps(V)
        raise NotAdmissible(
            f"Alexander polynomial vanishes at alpha={alpha}", jumps=jumps
        )
    return _tl_signature_cached(V.matrix, alpha)


def _lattice_count(k: int, alpha: Fraction) -> int:
    thresh = (k + Fraction(1, 2)) * (1 + 4 * alpha)
    top = 2 * k + 1
    if thresh.denominator == 1 and 0 < thresh < top:
        raise JumpPoint(f"alpha={alpha} is a signature jump of T(2,{top})")
    n1 = sum(1 for m in range(1, top) if thresh < m)
    n2 = sum(1 for m in range(1, top) if m < thresh)
    return n1 - n2


def litherland_t2(k: int, alpha) -> int:
    """Lattice-point count for sigma_alpha(T(2, 2k+1)).

    The count is stated for alpha <= 1/4; larger alpha is reflected
    through alpha -> 1/2 - alpha.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    alpha = Fraction(alpha)
    if not 0 <= alpha <= Fraction(1, 2):
        raise ValueError("alpha must lie in [0, 1/2]")
    if alpha > Fraction(1, 4):
        alpha = Fraction(1, 2) - alpha
    return _lattice_count(k, alpha)


def litherland_torus(p: int, q: int, alpha) -> int:
    """Signature of T(p,q) at exp(4 pi i alpha) from the lattice points i/p + j/q."""
    theta = 2 * Fraction(alpha)
    s = 0
    for i in range(1, p):
        for j in range(1, q):
            x = Fraction(i, p) + Fraction(j, q)
            if x in (theta, theta + 1):
                raise JumpPoint(f"alpha={alpha} is a signature jump of T({p},{q})")
            s += -1 if theta < x < theta + 1 else 1
    return s


# ---------------------------------------------------------------------------
# jumps


class AlgebraicJump(NamedTuple):
    """Isolating interval (lo, hi) for an irrational jump location."""

    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> float:
        return float(self.lo + self.hi) / 2


def _divide_exact(num: list[Fraction], den: tuple[int, ...]):
    rem = list(num)
    q = [Fraction(0)] * (len(rem) - len(den) + 1)
    for i in range(len(rem) - 1, len(den) - 2, -1):
        c = rem[i] / den[-1]
        q[i - len(den) + 1] = c
        for j, d in enumerate(den):
            rem[i - len(den) + 1 + j] -= c * d
    if any(rem):
        return None
    return q


def signature_jumps(V: SeifertMatrix) -> list:
    """Locations alpha in (0, 1/2) where the Alexander polynomial vanishes at exp(4 pi i alpha).

    Roots of unity are reported exactly as Fractions. Other unit-circle
    roots are reported as AlgebraicJump isolating intervals.
    """
    delta = alexander(V)
    dense = delta.to_list()
    if len(dense) <= 1:
        return []
    jumps: list = []
    deg = len(dense) - 1
    # phi(n) >= sqrt(n / 2), so larger orders cannot divide
    for n in range(1, 2 * deg * deg + 3):
        if euler_phi(n) > deg:
            continue
        phi = cyclotomic_poly(n)
        if len(phi) - 1 <= len(dense) - 1:
            quotient = _divide_exact(dense, phi)
            if quotient is not None:
                while quotient is not None:
                    dense = quotient
                    quotient = _divide_exact(dense, phi) if len(dense) >= len(phi) else None
                for k in range(1, n):
                    if gcd(k, n) == 1:
                        jumps.append(Fraction(k, 2 * n))
    if len(dense) > 1:
        jumps.extend(_non_cyclotomic_jumps(dense))
    return sorted(set(jumps), key=lambda j: j if isinstance(j, Fraction) else j.mid)


def _non_cyclotomic_jumps(dense: list[Fraction]) -> list:
    import sympy

    t, x = sympy.symbols("t x")
    poly = sympy.Poly(list(reversed(dense)), t, domain="QQ")
    # palindromic P(t) = t^m g(t + 1/t)
    m = poly.degree() // 2
    g = sympy.Poly(0, x, domain="QQ")
    rest = poly
    for power in range(m, -1, -1):
        lead = rest.coeff_monomial(t ** (m + power)) if rest.degree() >= 0 else 0
        if lead:
            g += sympy.Poly(lead * x**power, x, domain="QQ")
            chebyshev = sympy.Poly(sympy.expand(t**m * (t + 1 / t) ** power), t, domain="QQ")
            rest = rest - chebyshev * lead
    out = []
    for (lo, hi), _mult in g.intervals(eps=Fraction(1, 10**15)):
        lo, hi = Fraction(lo), Fraction(hi)
        if hi <= -2 or lo >= 2:
            continue
        # x = 2 cos(4 pi alpha); arccos is decreasing
        a_lo = Fraction(math.acos(min(float(hi) / 2, 1.0)) / (4 * math.pi))
        a_hi = Fraction(math.acos(max(float(lo) / 2, -1.0)) / (4 * math.pi))
        # pad for the float arccos
        a_lo -= Fraction(1, 10**12)
        a_hi += Fraction(1, 10**12)
        out.append(AlgebraicJump(a_lo, a_hi))
        out.append(AlgebraicJump(Fraction(1, 2) - a_hi, Fraction(1, 2) - a_lo))
    return out
