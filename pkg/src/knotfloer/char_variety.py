"""Irreducible SU(2) representations of torus-knot groups.

The group of T(p,q) is <x, y | x^p = y^q>. Up to conjugacy an irreducible
representation sends x to exp(pi a/p * i) and y to exp(pi b/q * u) with
u = i cos(tau) + j sin(tau), 0 < tau < pi. Each admissible pair (a, b)
gives one open arc in tau.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple

import mpmath
from mpmath import iv

from .errors import DegenerateRoot, InvalidTorusParams, UncertifiedRank
from .exact import iv_precision

__all__ = [
    "SU2Element",
    "RepArc",
    "RootRecord",
    "enumerate_arcs",
    "meridian_word",
    "meridian_trace",
    "meridian_trace_interval",
    "isolate_roots",
    "count_reps",
    "flip_check",
    "h1_dimension",
    "nondegeneracy_check",
    "write_roots_csv",
]

ENDPOINT_TOL = mpmath.mpf(2) ** -30
PRECISIONS = (64, 128, 256)
MAX_DEPTH = 80
SPLIT = mpmath.mpf(33) / 64


@dataclass(frozen=True)
class SU2Element:
    """Unit quaternion w + x i + y j + z k; components may be mpmath intervals."""

    w: object
    x: object
    y: object
    z: object

    def __mul__(self, o: "SU2Element") -> "SU2Element":
        return SU2Element(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )

    def conj(self) -> "SU2Element":
        return SU2Element(self.w, -self.x, -self.y, -self.z)

    def __pow__(self, n: int) -> "SU2Element":
        if n < 0:
            return self.conj() ** (-n)
        out = SU2Element(1, 0, 0, 0)
        for _ in range(n):
            out = out * self
        return out

    @property
    def trace(self):
        return 2 * self.w

    def norm_sq(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def adjoint(self) -> list[list]:
        """Rotation matrix of v -> g v g^{-1} on the imaginary quaternions."""
        w, x, y, z = self.w, self.x, self.y, self.z
        return [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]

    @classmethod
    def exp(cls, angle, axis) -> "SU2Element":
        c, s = _cos(angle), _sin(angle)
        return cls(c, s * axis[0], s * axis[1], s * axis[2])


def _cos(x):
    return iv.cos(x) if isinstance(x, iv.mpf) else mpmath.cos(x)


def _sin(x):
    return iv.sin(x) if isinstance(x, iv.mpf) else mpmath.sin(x)


class RepArc(NamedTuple):
    p: int
    q: int
    a: int
    b: int


class RootRecord(NamedTuple):
    """Certified simple root of the trace equation on one arc."""

    arc: RepArc
    lo: mpmath.mpf
    hi: mpmath.mpf
    trace: str


def _check(p: int, q: int) -> None:
    if p < 2 or q <= p or gcd(p, q) != 1:
        raise InvalidTorusParams(f"need coprime 2 <= p < q, got ({p}, {q})")


def enumerate_arcs(p: int, q: int) -> list[tuple[int, int]]:
    """Pairs (a, b) with 1 <= a < p, 1 <= b < q and a = b mod 2."""
    _check(p, q)
    return [(a, b) for a in range(1, p) for b in range(1, q) if (a - b) % 2 == 0]


def meridian_word(p: int, q: int) -> tuple[int, int]:
    """(m, n) with m q + n p = 1 and 0 <= m < p, so the meridian is x^m y^n."""
    if gcd(p, q) != 1:
        raise InvalidTorusParams(f"p and q must be coprime, got ({p}, {q})")
    m = pow(q, -1, p) if p > 1 else 0
    n = (1 - m * q) // p
    return m, n


def _generators(p, q, a, b, tau, ctx):
    """rho(x) and rho(y) as quaternions in the given number context."""
    pi = ctx.pi
    X = SU2Element.exp(pi * a / p, (1, 0, 0))
    ct, st = ctx.cos(tau), ctx.sin(tau)
    Y = SU2Element.exp(pi * b / q, (ct, st, 0))
    return X, Y


def _meridian_pieces(p, q, a, b, tau, ctx, word=None):
    m, n = word or meridian_word(p, q)
    pi = ctx.pi
    A = pi * a * m / p
    B = pi * b * n / q
    ct, st = ctx.cos(tau), ctx.sin(tau)
    Xm = SU2Element(ctx.cos(A), ctx.sin(A), 0 * A, 0 * A)
    sB = ctx.sin(B)
    Yn = SU2Element(ctx.cos(B), sB * ct, sB * st, 0 * B)
    # derivative of Yn in tau
    dYn = SU2Element(0 * B, -sB * st, sB * ct, 0 * B)
    return Xm, Yn, dYn


def meridian_trace(p: int, q: int, a: int, b: int, tau, word=None) -> float:
    """tr rho(x^m y^n) at a point of the arc, as a float."""
    with mpmath.workdps(30):
        Xm, Yn, _ = _meridian_pieces(p, q, a, b, mpmath.mpf(tau), mpmath, word)
        return float((Xm * Yn).trace)


def meridian_trace_interval(p: int, q: int, a: int, b: int, tau, prec: int = 64, word=None):
    """Interval enclosure of the trace over an interval (or point) of tau."""
    with iv_precision(prec):
        tau = iv.mpf(tau)
        Xm, Yn, _ = _meridian_pieces(p, q, a, b, tau, iv, word)
        return (Xm * Yn).trace


def _contains_zero(box) -> bool:
    return box.a <= 0 <= box.b


def _isolate_on_arc(p, q, a, b, alpha: Fraction, prec: int) -> list[RootRecord]:
    arc = RepArc(p, q, a, b)
    with iv_precision(prec):
        target = 2 * iv.cos(2 * iv.pi * iv.mpf(alpha.numerator) / alpha.denominator)
        word = meridian_word(p, q)

        def F(t):
            Xm, Yn, _ = _meridian_pieces(p, q, a, b, t, iv, word)
            return (Xm * Yn).trace - target

        def dF(t):
            Xm, _, dYn = _meridian_pieces(p, q, a, b, t, iv, word)
            return (Xm * dYn).trace

        pi_hi = iv.pi.b
        stack = [(mpmath.mpf(0), mpmath.mpf(pi_hi), 0)]
        roots = []
        while stack:
            lo, hi, depth = stack.pop()
            box = iv.mpf([lo, hi])
            if not _contains_zero(F(box)):
                continue
            if lo < ENDPOINT_TOL and hi - lo < ENDPOINT_TOL or hi > pi_hi - ENDPOINT_TOL and hi - lo < ENDPOINT_TOL:
                raise DegenerateRoot(f"root of arc {arc} within 2^-30 of a reducible endpoint")
            if not _contains_zero(dF(box)):
                f_lo, f_hi = F(iv.mpf(lo)), F(iv.mpf(hi))
                if _contains_zero(f_lo) or _contains_zero(f_hi):
                    if depth >= MAX_DEPTH:
                        raise DegenerateRoot(f"cannot separate root from grid point on arc {arc}")
                else:
                    if (f_lo.b < 0) != (f_hi.b < 0):
                        lo, hi = _refine(F, lo, hi, f_lo.b < 0)
                        tr = F(iv.mpf([lo, hi])) + target
                        roots.append(RootRecord(arc, lo, hi, str(tr)))
                    continue
            if depth >= MAX_DEPTH:
                raise DegenerateRoot(f"root on arc {arc} not certified simple")
            # off-centre split keeps grid points away from symmetric roots such as pi/2
            mid = lo + (hi - lo) * SPLIT
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    roots.sort(key=lambda r: r.lo)
    return roots


def _refine(F, lo, hi, rising: bool, width=mpmath.mpf(2) ** -40):
    # F is monotone on [lo, hi] with a sign change; shrink by bisection
    while hi - lo > width:
        mid = (lo + hi) / 2
        f_mid = F(iv.mpf(mid))
        if _contains_zero(f_mid):
            break
        if (f_mid.b < 0) == rising:
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_roots(p: int, q: int, alpha) -> list[RootRecord]:
    """Certified isolating intervals for all irreducible representations at alpha."""
    _check(p, q)
    alpha = Fraction(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError("alpha must lie in (0, 1/2)")
    return list(_isolate_cached(p, q, alpha))


@lru_cache(maxsize=2048)
def _isolate_cached(p: int, q: int, alpha: Fraction) -> tuple:
    out = []
    for a, b in enumerate_arcs(p, q):
        last_err = None
        for prec in PRECISIONS:
            try:
                out.extend(_isolate_on_arc(p, q, a, b, alpha, prec))
                break
            except DegenerateRoot as err:
                last_err = err
        else:
            raise last_err
    return tuple(out)


def count_reps(p: int, q: int, alpha) -> int:
    """Number of irreducible SU(2) representations with meridian trace 2 cos(2 pi alpha)."""
    return len(isolate_roots(p, q, alpha))


def flip_check(p: int, q: int, alpha) -> bool:
    alpha = Fraction(alpha)
    return count_reps(p, q, alpha) == count_reps(p, q, Fraction(1, 2) - alpha)


def write_roots_csv(roots: Iterable[RootRecord], stream) -> None:
    w = csv.writer(stream)
    w.writerow(["p", "q", "a", "b", "tau_lo", "tau_hi", "trace"])
    for r in roots:
        w.writerow([r.arc.p, r.arc.q, r.arc.a, r.arc.b, mpmath.nstr(r.lo, 17), mpmath.nstr(r.hi, 17), r.trace])


# ---------------------------------------------------------------------------
# group cohomology with adjoint coefficients


def _mat(rows):
    return mpmath.matrix(rows)


def _power_sum(A, k):
    S = mpmath.zeros(3, 3)
    P = mpmath.eye(3)
    for _ in range(k):
        S += P
        P = A * P
    return S


def _numeric_rank(M, tol_hi=mpmath.mpf(10) ** -12, tol_lo=mpmath.mpf(10) ** -25) -> int:
    sv = mpmath.svd_r(M, compute_uv=False)
    rank = 0
    for s in sv:
        if s > tol_hi:
            rank += 1
        elif s > tol_lo:
            raise UncertifiedRank(f"singular value {mpmath.nstr(s, 5)} inside the uncertainty band")
    return rank


def _adjoints(p, q, a, b, tau):
    X, Y = _generators(p, q, a, b, mpmath.mpf(tau), mpmath)
    return _mat(X.adjoint()), _mat(Y.adjoint()), X, Y


def _L_matrix(p, q, Ax, Ay):
    Sx, Sy = _power_sum(Ax, p), _power_sum(Ay, q)
    L = mpmath.zeros(3, 6)
    for i in range(3):
        for j in range(3):
            L[i, j] = Sx[i, j]
            L[i, j + 3] = -Sy[i, j]
    return L


def _coboundary_matrix(Ax, Ay):
    B = mpmath.zeros(6, 3)
    I = mpmath.eye(3)
    for i in range(3):
        for j in range(3):
            B[i, j] = I[i, j] - Ax[i, j]
            B[i + 3, j] = I[i, j] - Ay[i, j]
    return B


def h1_dimension(p: int, q: int, a: int, b: int, tau, detail: bool = False):
    """dim H^1 of the knot group with adjoint coefficients at an irreducible point.

    Cocycles are pairs (xi_x, xi_y) killed by L; coboundaries are
    ((I - A_x) v, (I - A_y) v).
    """
    if not 0 < float(tau) < math.pi:
        raise ValueError("tau must lie in (0, pi) for an irreducible representation")
    with mpmath.workdps(50):
        Ax, Ay, _, _ = _adjoints(p, q, a, b, tau)
        rank_L = _numeric_rank(_L_matrix(p, q, Ax, Ay))
        dim_B = _numeric_rank(_coboundary_matrix(Ax, Ay))
    dim = (6 - rank_L) - dim_B
    if detail:
        return {"rank_L": rank_L, "coboundaries": dim_B, "h1": dim}
    return dim


def _null_space(M, tol=mpmath.mpf(10) ** -20):
    evals, evecs = mpmath.eigsy(M.T * M)
    n = M.cols
    return [[evecs[j, k] for j in range(n)] for k in range(n) if abs(evals[k]) < tol]


def _cocycle_on_meridian(p, q, xi_x, xi_y, Ax, Ay, word):
    m, n = word
    gx = _power_sum(Ax, m) * mpmath.matrix(xi_x)
    if n >= 0:
        gy = _power_sum(Ay, n) * mpmath.matrix(xi_y)
    else:
        Ayinv = Ay.T
        gy = -(_power_sum(Ayinv, -n) * (Ayinv * mpmath.matrix(xi_y)))
    Axm = mpmath.eye(3)
    for _ in range(m):
        Axm = Ax * Axm
    return gx + Axm * gy


def nondegeneracy_check(p: int, q: int, a: int, b: int, tau_root, margin=mpmath.mpf(10) ** -10) -> bool:
    """True iff the generating class of H^1 restricts nontrivially to the meridian."""
    if not 0 < float(tau_root) < math.pi:
        raise ValueError("tau must lie in (0, pi) for an irreducible representation")
    results = []
    for dps in (40, 80):
        with mpmath.workdps(dps):
            Ax, Ay, X, Y = _adjoints(p, q, a, b, tau_root)
            L = _L_matrix(p, q, Ax, Ay)
            Bmat = _coboundary_matrix(Ax, Ay)
            kernel = _null_space(L)
            # component of the cocycle space orthogonal to coboundaries
            Q, _ = mpmath.qr(Bmat)
            best = None
            for v in kernel:
                vec = mpmath.matrix(v)
                for c in range(3):
                    col = Q[:, c]
                    vec -= (col.T * vec)[0] * col
                nrm = mpmath.norm(vec)
                if best is None or nrm > best[0]:
                    best = (nrm, vec / nrm if nrm else vec)
            if best is None or best[0] < margin:
                raise UncertifiedRank("no cocycle transverse to the coboundaries")
            gamma = best[1]
            word = meridian_word(p, q)
            g_mu = _cocycle_on_meridian(p, q, list(gamma[:3]), list(gamma[3:]), Ax, Ay, word)
            mu = (X ** word[0]) * (Y ** word[1])
            axis = mpmath.matrix([mu.x, mu.y, mu.z])
            an = mpmath.norm(axis)
            if an < margin:
                raise UncertifiedRank("meridian image is central")
            proj = abs((axis.T * g_mu)[0]) / an
            results.append(proj)
    lo, hi = min(results), max(results)
    if lo > margin:
        return True
    if hi < margin * mpmath.mpf(10) ** -5:
        return False
    raise UncertifiedRank("meridian restriction undecided at both precisions")
