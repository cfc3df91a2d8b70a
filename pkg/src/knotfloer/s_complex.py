"""S-complexes: data (C, d, v, delta1, delta2) and their invariants.

The full complex is C~ = C + C[1] + R with differential

    d~ = [[d, 0, 0], [v, -d, delta2], [delta1, 0, 0]]

and chi the identity from the first copy of C to the second. Maps are
stored sparsely: ``d[(i, j)]`` is the coefficient of generator i in d(e_j),
``delta1[j]`` is delta1(e_j) and ``delta2[i]`` is the i-th coefficient of
delta2(1). Degrees are integers compared mod 4.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BoundaryOnCut, FieldMismatch, InconsistentH
from .linalg import FF, QQ, EchelonBasis, Field

__all__ = [
    "Generator",
    "SComplex",
    "SMorphism",
    "violations",
    "validate",
    "tensor",
    "tensor_power",
    "tensor_word",
    "homology_ranks",
    "euler_char",
    "froyshov",
    "torus_model",
    "morphism_violations",
    "morphism_validate",
    "morphism_space",
    "filtered_truncate",
    "unit_complex",
    "block_b",
    "block_b_dagger",
]


@dataclass(frozen=True)
class Generator:
    label: str
    deg: int
    deg_r: Fraction | None = None


def _fields_by_name():
    return {QQ.name: QQ, FF.name: FF}


class SComplex:
    def __init__(
        self,
        generators: Sequence[Generator],
        d: dict | None = None,
        v: dict | None = None,
        delta1: dict | None = None,
        delta2: dict | None = None,
        field: Field = QQ,
    ):
        self.generators = list(generators)
        self.field = field
        conv, zero = field.convert, field.is_zero
        n = len(self.generators)

        def clean2(m):
            out = {}
            for (i, j), c in (m or {}).items():
                if not (0 <= i < n and 0 <= j < n):
                    raise ValueError(f"matrix index ({i}, {j}) out of range")
                c = conv(c)
                if not zero(c):
                    out[(i, j)] = c
            return out

        def clean1(m):
            out = {}
            for i, c in (m or {}).items():
                if not 0 <= i < n:
                    raise ValueError(f"vector index {i} out of range")
                c = conv(c)
                if not zero(c):
                    out[i] = c
            return out

        self.d = clean2(d)
        self.v = clean2(v)
        self.delta1 = clean1(delta1)
        self.delta2 = clean1(delta2)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def degrees(self) -> list[int]:
        return [g.deg for g in self.generators]

    def __repr__(self):
        return f"SComplex(rank={self.rank}, degrees={self.degrees()}, field={self.field.name})"

    # serialization ---------------------------------------------------------

    def to_json(self) -> str:
        n, txt = self.rank, self.field.to_text
        zero = txt(self.field.convert(0))

        def dense2(m):
            return [[txt(m[(i, j)]) if (i, j) in m else zero for j in range(n)] for i in range(n)]

        def dense1(m):
            return [txt(m[i]) if i in m else zero for i in range(n)]

        return json.dumps(
            {
                "field": self.field.name,
                "generators": [
                    {"label": g.label, "deg": g.deg, "deg_r": None if g.deg_r is None else str(g.deg_r)}
                    for g in self.generators
                ],
                "d": dense2(self.d),
                "v": dense2(self.v),
                "delta1": dense1(self.delta1),
                "delta2": dense1(self.delta2),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SComplex":
        data = json.loads(text)
        fld = _fields_by_name()[data.get("field", "QQ")]
        gens = [
            Generator(g["label"], int(g["deg"]), None if g.get("deg_r") is None else Fraction(g["deg_r"]))
            for g in data["generators"]
        ]

        def sparse2(rows):
            return {
                (i, j): fld.from_text(str(x))
                for i, row in enumerate(rows)
                for j, x in enumerate(row)
                if str(x) not in ("0", "")
            }

        def sparse1(vals):
            return {i: fld.from_text(str(x)) for i, x in enumerate(vals) if str(x) not in ("0", "")}

        return cls(
            gens,
            sparse2(data.get("d", [])),
            sparse2(data.get("v", [])),
            sparse1(data.get("delta1", [])),
            sparse1(data.get("delta2", [])),
            fld,
        )


# ---------------------------------------------------------------------------
# sparse helpers


def _matmul(a: dict, b: dict) -> dict:
    by_row: dict = {}
    for (k, j), c in b.items():
        by_row.setdefault(k, []).append((j, c))
    out: dict = {}
    for (i, k), c in a.items():
        for j, c2 in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + c * c2
    return out


def _row_times(row: dict, m: dict) -> dict:
    out: dict = {}
    for (i, j), c in m.items():
        if i in row:
            out[j] = out.get(j, 0) + row[i] * c
    return out


def _times_col(m: dict, col: dict) -> dict:
    out: dict = {}
    for (i, j), c in m.items():
        if j in col:
            out[i] = out.get(i, 0) + c * col[j]
    return out


def _nonzero(m: dict, field: Field) -> dict:
    return {k: c for k, c in m.items() if not field.is_zero(c)}


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) - c
    return out


# ---------------------------------------------------------------------------
# axioms


def violations(c: SComplex) -> list[str]:
    """Names of the S-complex relations that fail, empty when c is valid."""
    f = c.field
    out = []
    if _nonzero(_matmul(c.d, c.d), f):
        out.append("d^2 = 0")
    if _nonzero(_row_times(c.delta1, c.d), f):
        out.append("delta1 d = 0")
    if _nonzero(_times_col(c.d, c.delta2), f):
        out.append("d delta2 = 0")
    d2d1 = {(i, j): a * b for i, a in c.delta2.items() for j, b in c.delta1.items()}
    rel = _sub(_sub(_matmul(c.d, c.v), _matmul(c.v, c.d)), d2d1)
    if _nonzero(rel, f):
        out.append("d v - v d - delta2 delta1 = 0")
    deg = c.degrees()
    if any((deg[i] - deg[j] + 1) % 4 for i, j in c.d):
        out.append("deg d = -1")
    if any((deg[i] - deg[j] + 2) % 4 for i, j in c.v):
        out.append("deg v = -2")
    if any((deg[j] - 1) % 4 for j in c.delta1):
        out.append("delta1 supported in degree 1")
    if any((deg[i] - 2) % 4 for i in c.delta2):
        out.append("delta2 lands in degree 2")
    return out


def validate(c: SComplex) -> bool:
    return not violations(c)


# ---------------------------------------------------------------------------
# model complexes


def unit_complex(field: Field = QQ) -> SComplex:
    """The S-complex with C = 0, only the R summand."""
    return SComplex([], field=field)


def block_b(deg_r=Fraction(0), field: Field = QQ) -> SComplex:
    """One generator in degree 1 with delta1 = 1."""
    return SComplex([Generator("b", 1, deg_r)], delta1={0: 1}, field=field)


def block_b_dagger(deg_r=Fraction(0), field: Field = QQ) -> SComplex:
    """One generator in degree 2 with delta2(1) equal to it."""
    return SComplex([Generator("b+", 2, deg_r)], delta2={0: 1}, field=field)


# ---------------------------------------------------------------------------
# tensor product


def _add_r(a, b):
    if a is None or b is None:
        return None
    return a + b


def tensor(c1: SComplex, c2: SComplex) -> SComplex:
    """Product S-complex from d~ (x) 1 + eps (x) d~' on the standard splitting.

    New generators are a(x)b, a(x)b^, a(x)1 and 1(x)b where b^ is b in the
    second copy of C'. The second copy of the product is spanned by their
    chi-images.
    """
    if c1.field is not c2.field:
        raise FieldMismatch(f"{c1.field.name} vs {c2.field.name}")
    fld = c1.field
    A, B = c1.generators, c2.generators
    nA, nB = len(A), len(B)

    # indices of the top basis
    top: dict = {}
    gens: list[Generator] = []

    def new(key, gen):
        top[key] = len(gens)
        gens.append(gen)

    for a in range(nA):
        for b in range(nB):
            ga, gb = A[a], B[b]
            new(("ab", a, b), Generator(f"{ga.label}*{gb.label}", ga.deg + gb.deg, _add_r(ga.deg_r, gb.deg_r)))
    for a in range(nA):
        for b in range(nB):
            ga, gb = A[a], B[b]
            new(("ab^", a, b), Generator(f"{ga.label}*{gb.label}^", ga.deg + gb.deg + 1, _add_r(ga.deg_r, gb.deg_r)))
    for a in range(nA):
        new(("a1", a), Generator(f"{A[a].label}*1", A[a].deg, A[a].deg_r))
    for b in range(nB):
        new(("1b", b), Generator(f"1*{B[b].label}", B[b].deg, B[b].deg_r))

    # d~ on the factors, as maps from a basis symbol to {symbol: coeff}
    # symbols: ("t", i) top copy, ("b", i) bottom copy, ("r",) the R summand
    def dtilde(c: SComplex):
        cols: dict = {}
        for (i, j), x in c.d.items():
            cols.setdefault(("t", j), {})[("t", i)] = x
            cols.setdefault(("b", j), {})[("b", i)] = -x
        for (i, j), x in c.v.items():
            cols.setdefault(("t", j), {})[("b", i)] = x
        for j, x in c.delta1.items():
            cols.setdefault(("t", j), {})[("r",)] = x
        for i, x in c.delta2.items():
            cols.setdefault(("r",), {})[("b", i)] = x
        return cols

    d1, d2 = dtilde(c1), dtilde(c2)

    def tdeg(c: SComplex, sym) -> int:
        if sym[0] == "r":
            return 0
        return c.generators[sym[1]].deg + (1 if sym[0] == "b" else 0)

    def apply(x, y) -> dict:
        """d~(x) (x) y + (-1)^|x| x (x) d~'(y)."""
        out: dict = {}
        for x2, cx in d1.get(x, {}).items():
            out[(x2, y)] = out.get((x2, y), 0) + cx
        sign = -1 if tdeg(c1, x) % 2 else 1
        for y2, cy in d2.get(y, {}).items():
            out[(x, y2)] = out.get((x, y2), 0) + sign * cy
        return out

    # express a raw tensor element in (top, bottom, R) coordinates
    def coords(raw: dict) -> tuple[dict, dict, object]:
        t: dict = {}
        bt: dict = {}
        r = 0

        def acc(dct, k, c):
            dct[k] = dct.get(k, 0) + c

        for (x, y), c in raw.items():
            kx, ky = x[0], y[0]
            if kx == "t" and ky == "t":
                acc(t, top[("ab", x[1], y[1])], c)
            elif kx == "t" and ky == "b":
                acc(t, top[("ab^", x[1], y[1])], c)
            elif kx == "t" and ky == "r":
                acc(t, top[("a1", x[1])], c)
            elif kx == "r" and ky == "t":
                acc(t, top[("1b", y[1])], c)
            elif kx == "b" and ky == "t":
                # a^ (x) b = chi(a (x) b) - (-1)^|a| a (x) b^
                a, b = x[1], y[1]
                acc(bt, top[("ab", a, b)], c)
                sgn = -1 if A[a].deg % 2 else 1
                acc(t, top[("ab^", a, b)], -sgn * c)
            elif kx == "b" and ky == "b":
                acc(bt, top[("ab^", x[1], y[1])], c)
            elif kx == "b" and ky == "r":
                acc(bt, top[("a1", x[1])], c)
            elif kx == "r" and ky == "b":
                acc(bt, top[("1b", y[1])], c)
            else:
                r = r + c
        return _nonzero(t, fld), _nonzero(bt, fld), r

    def raw_top(key) -> list:
        kind = key[0]
        if kind == "ab":
            return [(("t", key[1]), ("t", key[2]))]
        if kind == "ab^":
            return [(("t", key[1]), ("b", key[2]))]
        if kind == "a1":
            return [(("t", key[1]), ("r",))]
        return [(("r",), ("t", key[1]))]

    d, v, delta1, delta2 = {}, {}, {}, {}
    for key, j in top.items():
        (x, y), = raw_top(key)
        t, bt, r = coords(apply(x, y))
        for i, c in t.items():
            d[(i, j)] = c
        for i, c in bt.items():
            v[(i, j)] = c
        if not fld.is_zero(r):
            delta1[j] = r
    t, bt, r = coords(apply(("r",), ("r",)))
    assert not t and fld.is_zero(r), "d~ of the R summand left the second copy"
    delta2 = bt
    out = SComplex(gens, d, v, delta1, delta2, fld)
    _check_bottom_block(out, top, apply, coords, A)
    return out


def _check_bottom_block(out: SComplex, top, apply, coords, A) -> None:
    # d~ on chi(top) must be -chi(d top): anticommutation with chi
    for key, j in top.items():
        kind = key[0]
        if kind == "ab":
            a, b = key[1], key[2]
            sgn = -1 if A[a].deg % 2 else 1
            raw: dict = {}
            for k, c in apply(("b", a), ("t", b)).items():
                raw[k] = raw.get(k, 0) + c
            for k, c in apply(("t", a), ("b", b)).items():
                raw[k] = raw.get(k, 0) + sgn * c
        elif kind == "ab^":
            raw = apply(("b", key[1]), ("b", key[2]))
        elif kind == "a1":
            raw = apply(("b", key[1]), ("r",))
        else:
            raw = apply(("r",), ("b", key[1]))
        t, bt, r = coords(raw)
        expect = {i: -c for (i, jj), c in out.d.items() if jj == j}
        assert not t and out.field.is_zero(r), "chi-image column leaves the second copy"
        assert not _nonzero(_sub(bt, expect), out.field), "bottom block is not -d"


def tensor_power(c: SComplex, l: int) -> SComplex:
    out = unit_complex(c.field)
    for _ in range(l):
        out = tensor(out, c)
    return out


def tensor_word(word: str, field: Field = QQ) -> SComplex:
    """Left-nested product of letters B (block), D (its dual) and U (unit)."""
    blocks = {"B": block_b, "D": block_b_dagger, "U": unit_complex}
    out = unit_complex(field)
    for ch in word:
        if ch not in blocks:
            raise ValueError(f"unknown letter {ch!r} in tensor word")
        out = tensor(out, blocks[ch](field=field) if ch != "U" else unit_complex(field))
    return out


# ---------------------------------------------------------------------------
# homology and invariants


def _rank_of_rows(rows: Iterable[dict], field: Field) -> int:
    basis = EchelonBasis(field)
    for r in rows:
        if r:
            basis.add(r)
    return len(basis)


def _block_rank(c: SComplex, src_deg: int) -> int:
    """Rank of d restricted to generators of degree src_deg (mod 4)."""
    deg = c.degrees()
    rows: dict = {}
    for (i, j), x in c.d.items():
        if deg[j] % 4 == src_deg:
            rows.setdefault(i, {})[j] = x
    return _rank_of_rows(rows.values(), c.field)


def homology_ranks(c: SComplex) -> dict[int, int]:
    """Ranks of H(C, d) by degree mod 4; zero ranks are omitted."""
    counts = {k: 0 for k in range(4)}
    for g in c.generators:
        counts[g.deg % 4] += 1
    ranks = {k: _block_rank(c, k) for k in range(4)}
    out = {}
    for k in range(4):
        h = counts[k] - ranks[k] - ranks[(k + 1) % 4]
        if h:
            out[k] = h
    return out


def euler_char(c: SComplex) -> int:
    return sum((-1 if k % 2 else 1) * r for k, r in homology_ranks(c).items())


def _positive_witness_depth(rows_d: list[dict], first: dict, step, field: Field, limit: int) -> int:
    """Largest k such that each of first, first*step, ..., k-1 steps raises the rank."""
    basis = EchelonBasis(field)
    for r in rows_d:
        if r:
            basis.add(r)
    k, cur = 0, first
    while k <= limit:
        if not cur or not basis.add(cur):
            break
        k += 1
        cur = _nonzero(step(cur), field)
    return k


def froyshov(c: SComplex) -> int:
    """Froyshov invariant, with the negative side computed on the dual complex."""
    n = c.rank
    fld = c.field
    d_rows: dict = {}
    d_cols: dict = {}
    for (i, j), x in c.d.items():
        d_rows.setdefault(i, {})[j] = x
        d_cols.setdefault(j, {})[i] = x
    pos = _positive_witness_depth(
        list(d_rows.values()), dict(c.delta1), lambda r: _row_times(r, c.v), fld, n + 1
    )
    neg = _positive_witness_depth(
        list(d_cols.values()), dict(c.delta2), lambda col: _times_col(c.v, col), fld, n + 1
    )
    if pos and neg:
        raise InconsistentH(f"both h >= {pos} and h <= -{neg} have witnesses")
    return pos if pos else -neg


def torus_model(p: int, q: int, alpha) -> SComplex:
    """Model B^{(x) l} with l = -sigma_alpha(T(p,q)) / 2."""
    from .knots import tl_signature, torus_knot_seifert

    sig = tl_signature(torus_knot_seifert(p, q), Fraction(alpha))
    if sig > 0:
        raise ValueError(f"signature {sig} is positive; no model of this shape")
    return tensor_power(block_b(), -sig // 2)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class SMorphism:
    """Blocks of [[m, 0, 0], [mu, m, Delta2], [Delta1, 0, eta]] from C~ to C~'."""

    m: dict = field(default_factory=dict)
    mu: dict = field(default_factory=dict)
    Delta1: dict = field(default_factory=dict)
    Delta2: dict = field(default_factory=dict)
    eta: object = 1


def morphism_violations(f: SMorphism, src: SComplex, dst: SComplex) -> list[str]:
    if src.field is not dst.field:
        raise FieldMismatch(f"{src.field.name} vs {dst.field.name}")
    fld = src.field
    nz = lambda m: _nonzero(m, fld)  # noqa: E731
    out = []
    if fld.is_zero(fld.convert(f.eta)):
        out.append("eta != 0")
    eta = fld.convert(f.eta)
    if nz(_sub(_matmul(dst.d, f.m), _matmul(f.m, src.d))):
        out.append("d' m = m d")
    lhs = _row_times(dst.delta1, f.m)
    rhs = _row_times(f.Delta1, src.d)
    for j, x in src.delta1.items():
        rhs[j] = rhs.get(j, 0) + eta * x
    if nz(_sub(lhs, rhs)):
        out.append("delta1' m = Delta1 d + eta delta1")
    lhs = _times_col(f.m, src.delta2)
    rhs = {i: eta * x for i, x in dst.delta2.items()}
    rhs = _sub(rhs, _times_col(dst.d, f.Delta2))
    if nz(_sub(lhs, rhs)):
        out.append("m delta2 = eta delta2' - d' Delta2")
    rel = _sub(_matmul(dst.v, f.m), _matmul(f.m, src.v))
    rel = _sub(rel, _matmul(dst.d, f.mu))
    rel = _sub(rel, _matmul(f.mu, src.d))
    for i, x in dst.delta2.items():
        for j, y in f.Delta1.items():
            rel[(i, j)] = rel.get((i, j), 0) + x * y
    for i, x in f.Delta2.items():
        for j, y in src.delta1.items():
            rel[(i, j)] = rel.get((i, j), 0) - x * y
    if nz(rel):
        out.append("v' m - m v - d' mu - mu d + delta2' Delta1 - Delta2 delta1 = 0")
    return out


def morphism_validate(f: SMorphism, src: SComplex, dst: SComplex) -> bool:
    return not morphism_violations(f, src, dst)


def morphism_space(src: SComplex, dst: SComplex) -> list[SMorphism]:
    """Basis of all block tuples satisfying the chain relations (eta unconstrained).

    Rational complexes only. Entries are not required to respect degrees.
    """
    import sympy

    if src.field is not QQ or dst.field is not QQ:
        raise FieldMismatch("morphism_space needs rational complexes")
    n, k = src.rank, dst.rank
    names = []
    for blk in ("m", "mu"):
        names += [(blk, i, j) for i in range(k) for j in range(n)]
    names += [("Delta1", j) for j in range(n)]
    names += [("Delta2", i) for i in range(k)]
    names.append(("eta",))
    syms = sympy.symbols(f"x0:{len(names)}")
    index = dict(zip(names, syms))
    f = SMorphism(
        m={(i, j): index[("m", i, j)] for i in range(k) for j in range(n)},
        mu={(i, j): index[("mu", i, j)] for i in range(k) for j in range(n)},
        Delta1={j: index[("Delta1", j)] for j in range(n)},
        Delta2={i: index[("Delta2", i)] for i in range(k)},
        eta=index[("eta",)],
    )
    eqs = []
    eqs += list(_sub(_matmul(dst.d, f.m), _matmul(f.m, src.d)).values())
    rhs = _row_times(f.Delta1, src.d)
    for j, x in src.delta1.items():
        rhs[j] = rhs.get(j, 0) + f.eta * x
    eqs += list(_sub(_row_times(dst.delta1, f.m), rhs).values())
    rhs = _sub({i: f.eta * x for i, x in dst.delta2.items()}, _times_col(dst.d, f.Delta2))
    eqs += list(_sub(_times_col(f.m, src.delta2), rhs).values())
    rel = _sub(_sub(_matmul(dst.v, f.m), _matmul(f.m, src.v)), _matmul(dst.d, f.mu))
    rel = _sub(rel, _matmul(f.mu, src.d))
    for i, x in dst.delta2.items():
        for j, y in f.Delta1.items():
            rel[(i, j)] = rel.get((i, j), 0) + x * y
    for i, x in f.Delta2.items():
        for j, y in src.delta1.items():
            rel[(i, j)] = rel.get((i, j), 0) - x * y
    eqs += list(rel.values())
    eqs = [sympy.expand(e) for e in eqs if sympy.expand(e) != 0]
    if eqs:
        M, _ = sympy.linear_eq_to_matrix(eqs, syms)
        null = M.nullspace()
    else:
        null = [sympy.Matrix([1 if t == s else 0 for t in syms]) for s in syms]
    out = []
    for vec in null:
        val = {s: Fraction(str(x)) for s, x in zip(syms, vec)}
        out.append(
            SMorphism(
                m={key: val[s] for key, s in f.m.items() if val[s]},
                mu={key: val[s] for key, s in f.mu.items() if val[s]},
                Delta1={key: val[s] for key, s in f.Delta1.items() if val[s]},
                Delta2={key: val[s] for key, s in f.Delta2.items() if val[s]},
                eta=val[f.eta],
            )
        )
    return out


# ---------------------------------------------------------------------------
# filtration windows


def filtered_truncate(c: SComplex, R0=None, R1=None) -> SComplex:
    """Sub-quotient on generators with R0 < deg_r < R1; None means unbounded."""
    for g in c.generators:
        if g.deg_r is None:
            raise ValueError(f"generator {g.label} has no deg_r")
        if (R0 is not None and g.deg_r == R0) or (R1 is not None and g.deg_r == R1):
            raise BoundaryOnCut(f"window edge equals deg_r of {g.label}")
    if R0 is not None and R1 is not None and not R0 < R1:
        raise ValueError("need R0 < R1")
    keep = [
        i
        for i, g in enumerate(c.generators)
        if (R0 is None or g.deg_r > R0) and (R1 is None or g.deg_r < R1)
    ]
    pos = {old: new for new, old in enumerate(keep)}

    def sub2(m):
        return {(pos[i], pos[j]): x for (i, j), x in m.items() if i in pos and j in pos}

    def sub1(m):
        return {pos[i]: x for i, x in m.items() if i in pos}

    out = SComplex([c.generators[i] for i in keep], sub2(c.d), sub2(c.v), sub1(c.delta1), sub1(c.delta2), c.field)
    if _nonzero(_matmul(out.d, out.d), out.field):
        raise ValueError("d does not respect the filtration: d^2 != 0 on the window")
    return out
