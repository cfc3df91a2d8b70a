"""Index bookkeeping for cobordisms of pairs (W, S) and their reducibles.

Cobordisms are plain records of topological numbers. Model constructors
cover the product cylinder, the blow-up used for a crossing change, the
(D^4, D^2) cap, and stacking.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .coeffs import NovikovElement
from .errors import NonIntegral, NonIntegralIndex

__all__ = [
    "Reducible",
    "CobordismData",
    "raw_index",
    "index_formula",
    "crossing_change_reducible",
    "minimal_reducibles",
    "eta_of",
    "negative_definite_check",
    "k_value",
    "d_alpha",
    "cylinder",
    "crossing_blowup",
    "negative_twist",
    "disk_cap",
    "compose",
]

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class Reducible:
    kappa: Fraction
    nu: Fraction
    c1_sq: int

    def __post_init__(self):
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        object.__setattr__(self, "nu", Fraction(self.nu))


@dataclass
class CobordismData:
    sigma_w: int
    chi_w: int
    chi_s: int
    s_dot_s: int
    genus_s: int
    sig_in: int
    sig_out: int
    alpha: Fraction
    reducibles: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.alpha = Fraction(self.alpha)
        self.reducibles = [r if isinstance(r, Reducible) else Reducible(*r) for r in self.reducibles]

    def to_json(self) -> str:
        data = asdict(self)
        data["alpha"] = str(self.alpha)
        data["reducibles"] = [[str(r.kappa), str(r.nu), r.c1_sq] for r in self.reducibles]
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "CobordismData":
        data = json.loads(text)
        data["reducibles"] = [Reducible(Fraction(k), Fraction(n), int(c)) for k, n, c in data.get("reducibles", [])]
        return cls(**data)


def raw_index(c: CobordismData, kappa, nu) -> Fraction:
    """The index expression as a rational number, before the integrality check."""
    a = c.alpha
    return (
        8 * Fraction(kappa)
        + 2 * (4 * a - 1) * Fraction(nu)
        - Fraction(3, 2) * (c.sigma_w + c.chi_w)
        + c.chi_s
        + 8 * a * a * c.s_dot_s
        + c.sig_in
        - c.sig_out
        - 1
    )


def index_formula(c: CobordismData, kappa, nu) -> int:
    val = raw_index(c, kappa, nu)
    if val.denominator != 1:
        raise NonIntegralIndex(f"index {val} is not an integer")
    return int(val)


# ---------------------------------------------------------------------------
# model cobordisms


def crossing_blowup(alpha, ms: Iterable[int] = range(-3, 4), sig_in: int = 0, sig_out: int = 0) -> CobordismData:
    """Cylinder blown up once, carrying the crossing-change surface.

    The reducible A_m has kappa = (m + 2 alpha)^2, nu = -4m and c1^2 = -m^2.
    """
    alpha = Fraction(alpha)
    reds = [Reducible((m + 2 * alpha) ** 2, -4 * m, -m * m) for m in ms]
    return CobordismData(-1, 1, 0, -4, 0, sig_in, sig_out, alpha, reds, name="crossing_blowup")


def negative_twist(alpha, ms: Iterable[int] = range(-3, 4), sig_in: int = 0, sig_out: int = 0) -> CobordismData:
    """Blow-up whose surface meets the exceptional sphere algebraically zero times.

    The reducible A_m has kappa = m^2, nu = 0 and c1^2 = -m^2, so m = 0 is
    the unique minimal reducible.
    """
    alpha = Fraction(alpha)
    reds = [Reducible(m * m, 0, -m * m) for m in ms]
    return CobordismData(-1, 1, 0, 0, 0, sig_in, sig_out, alpha, reds, name="negative_twist")


def crossing_change_reducible(alpha, m: int, sig_in: int = 0, sig_out: int = 0) -> tuple[Fraction, Fraction, int]:
    """(kappa, nu, index) of the reducible A_m on the crossing-change blow-up."""
    c = crossing_blowup(alpha, [m], sig_in, sig_out)
    r = c.reducibles[0]
    return r.kappa, r.nu, index_formula(c, r.kappa, r.nu)


def cylinder(alpha, sig: int = 0) -> CobordismData:
    """Product cylinder; its only minimal reducible is flat."""
    return CobordismData(0, 0, 0, 0, 0, sig, sig, Fraction(alpha), [Reducible(0, 0, 0)], name="cylinder")


def disk_cap(alpha) -> CobordismData:
    """(D^4, D^2) as a cobordism from the empty set to the unknot."""
    return CobordismData(0, 1, 1, 0, 0, 0, 0, Fraction(alpha), [Reducible(0, 0, 0)], name="disk_cap")


def compose(first: CobordismData, second: CobordismData) -> CobordismData:
    """Stack two cobordisms along a homology sphere; numbers add, reducibles pair up."""
    if first.alpha != second.alpha:
        raise ValueError("cannot compose cobordisms at different alpha")
    reds = [
        Reducible(r1.kappa + r2.kappa, r1.nu + r2.nu, r1.c1_sq + r2.c1_sq)
        for r1, r2 in itertools.product(first.reducibles, second.reducibles)
    ]
    return CobordismData(
        first.sigma_w + second.sigma_w,
        first.chi_w + second.chi_w,
        first.chi_s + second.chi_s,
        first.s_dot_s + second.s_dot_s,
        first.genus_s + second.genus_s,
        first.sig_in,
        second.sig_out,
        first.alpha,
        reds,
        name=f"{first.name}+{second.name}",
    )


# ---------------------------------------------------------------------------
# minimal reducibles and eta


def minimal_reducibles(c: CobordismData) -> tuple[list[Reducible], Fraction, Fraction]:
    """Reducibles of least index, with kappa0 and nu0."""
    if not c.reducibles:
        raise ValueError("no reducibles supplied")
    indices = [raw_index(c, r.kappa, r.nu) for r in c.reducibles]
    low = min(indices)
    mins = [r for r, i in zip(c.reducibles, indices) if i == low]
    kappa0 = min(r.kappa for r in mins)
    if c.alpha == QUARTER:
        nu0 = min(r.nu for r in mins)
    else:
        nu0 = next(r.nu for r in mins if r.kappa == kappa0)
    return mins, kappa0, nu0


def eta_of(c: CobordismData) -> NovikovElement:
    mins, kappa0, nu0 = minimal_reducibles(c)
    terms: dict = {}
    for r in mins:
        if (r.nu - nu0).denominator != 1:
            raise NonIntegral(f"T-exponent {r.nu - nu0} is not an integer")
        key = (kappa0 - r.kappa, int(r.nu - nu0))
        terms[key] = terms.get(key, 0) + (-1) ** (r.c1_sq % 2)
    return NovikovElement(c.alpha, terms)


def negative_definite_check(c: CobordismData, b1_w: int = 0, bplus_w: int = 0) -> bool:
    if b1_w or bplus_w:
        return False
    mins, _, _ = minimal_reducibles(c)
    if raw_index(c, mins[0].kappa, mins[0].nu) != -1:
        return False
    return not eta_of(c).is_zero()


def k_value(c: CobordismData, r: Reducible) -> Fraction:
    return r.kappa + (c.alpha - QUARTER) * r.nu + c.alpha**2 * c.s_dot_s


def d_alpha(c: CobordismData) -> int:
    """4 K(A_min) - g(S) - sigma/2 - 1, using the signature of the outgoing end."""
    mins, _, _ = minimal_reducibles(c)
    ks = {k_value(c, r) for r in mins}
    if len(ks) != 1:
        raise ValueError(f"K differs across minimal reducibles: {sorted(ks)}")
    (K,) = ks
    val = 4 * K - c.genus_s - Fraction(c.sig_out, 2) - 1
    if val.denominator != 1:
        raise NonIntegral(f"d = {val} is not an integer")
    return int(val)


def with_signatures(c: CobordismData, sig_in: int, sig_out: int) -> CobordismData:
    return replace(c, sig_in=sig_in, sig_out=sig_out)
