"""Acceptance criteria 1-8, each run at its stated tolerance.

Every test prints one pass/fail line; the lines are also collected into the
terminal summary by conftest.py.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import numpy as np

from knotfloer.branched import brieskorn_count, coprime_triples, verify_p2
from knotfloer.char_variety import count_reps, flip_check
from knotfloer.cobordism import (
    compose,
    crossing_blowup,
    crossing_change_reducible,
    cylinder,
    d_alpha,
    disk_cap,
    eta_of,
    minimal_reducibles,
    with_signatures,
)
from knotfloer.coeffs import eta_alpha, to_function_field
from knotfloer.exact import sign_real
from knotfloer.knots import (
    admissible,
    alexander,
    litherland_t2,
    tl_signature,
    torus_alexander_closed_form,
    torus_knot_seifert,
)
from knotfloer.s_complex import (
    block_b,
    block_b_dagger,
    euler_char,
    froyshov,
    homology_ranks,
    tensor_power,
    tensor_word,
    unit_complex,
    validate,
)
from knotfloer.verify import alpha_grid, litherland_grid, torus_pairs

from strategies import random_alpha, random_novikov, random_real_cyclotomic, random_seifert

HALF = Fraction(1, 2)


def _counting_instances():
    out = []
    for p, q in torus_pairs(35):
        V = torus_knot_seifert(p, q)
        out += [(p, q, V, a) for a in alpha_grid(12) if admissible(V, a)]
    return out


def test_criterion_1_absolute_counting(recorder):
    bad = []
    instances = _counting_instances()
    for p, q, V, a in instances:
        if count_reps(p, q, a) != -tl_signature(V, a) // 2 or tl_signature(V, a) % 2:
            bad.append((p, q, a))
    recorder(1, not bad, f"{len(instances) - len(bad)}/{len(instances)} instances")
    assert not bad


def test_criterion_2_litherland(recorder):
    total, bad = 0, []
    for k in range(1, 11):
        grid = litherland_grid(k, 50)
        assert len(grid) == 50
        V = torus_knot_seifert(2, 2 * k + 1)
        for a in grid:
            total += 1
            if tl_signature(V, a) != litherland_t2(k, a):
                bad.append((k, a))
    recorder(2, not bad, f"{total - len(bad)}/{total} instances")
    assert not bad


def test_criterion_3_alexander_closed_form(recorder):
    pairs = torus_pairs(35)
    bad = [(p, q) for p, q in pairs if alexander(torus_knot_seifert(p, q)) != torus_alexander_closed_form(p, q)]
    recorder(3, not bad, f"{len(pairs) - len(bad)}/{len(pairs)} torus knots")
    assert not bad


def test_criterion_4_brieskorn(recorder):
    named = {(2, 3, 5): 2, (2, 3, 7): 2, (2, 3, 11): 4}
    bad = [t for t, n in named.items() if brieskorn_count(*t) != n]
    triples = list(coprime_triples(200))
    bad += [t for t in triples if not verify_p2(*t)]
    recorder(4, not bad, f"3 named counts, {len(triples)} triples with pqr <= 200")
    assert not bad


def test_criterion_5_s_complex(recorder):
    bad = []
    for name, c in (("B", block_b()), ("B^", block_b_dagger()), ("unit", unit_complex())):
        if not validate(c):
            bad.append(name)
    words = [""]
    for _ in range(4):
        words = words + [w + x for w in words if len(w) == len(words[-1]) for x in "BDU"]
    words = sorted(set(words), key=lambda w: (len(w), w))
    assert len(words) == 1 + 3 + 9 + 27 + 81
    bad += [w for w in words if not validate(tensor_word(w))]
    for l in range(7):
        c = tensor_power(block_b(), l)
        expected = {k: v for k, v in {1: (l + 1) // 2, 3: l // 2}.items() if v}
        if froyshov(c) != l or homology_ranks(c) != expected or euler_char(c) != -l:
            bad.append(f"B^{l}")
    rng = random.Random(5)
    for _ in range(50):
        w = "".join(rng.choice("BD") for _ in range(rng.randint(1, 4)))
        if froyshov(tensor_word(w)) != w.count("B") - w.count("D"):
            bad.append(w)
    recorder(5, not bad, f"{len(words)} words, l <= 6, 50 additivity words")
    assert not bad


def test_criterion_6_flip(recorder):
    bad = []
    instances = _counting_instances()
    for p, q, V, a in instances:
        if not flip_check(p, q, a) or tl_signature(V, a) != tl_signature(V, HALF - a):
            bad.append((p, q, a))
    recorder(6, not bad, f"{len(instances) - len(bad)}/{len(instances)} instances")
    assert not bad


def test_criterion_7_cobordism(recorder):
    bad = []
    alphas = [Fraction(k, 44) for k in range(1, 21)]
    assert Fraction(1, 4) in alphas
    for a in alphas:
        for m in range(-5, 6):
            for s_in, s_out in ((0, 0), (-2, 0), (0, -4), (-6, -2)):
                _, _, ind = crossing_change_reducible(a, m, s_in, s_out)
                if ind != 8 * m * (m + 1) + s_in - s_out - 1:
                    bad.append(("index", a, m, s_in, s_out))
        c = crossing_blowup(a, range(-5, 6))
        mins, _, _ = minimal_reducibles(c)
        if {int(-r.nu / 4) for r in mins} != {0, -1}:
            bad.append(("minimal", a))
        if eta_of(c) != eta_alpha("crossing_blowup", a):
            bad.append(("eta", a))
        family = [
            with_signatures(c, 0, -2),
            cylinder(a, -4),
            compose(disk_cap(a), crossing_blowup(a, range(-3, 4), 0, -2)),
            compose(compose(disk_cap(a), crossing_blowup(a, range(-2, 3))), crossing_blowup(a, range(-2, 3), 0, -4)),
        ]
        for f in family:
            try:
                d = d_alpha(f)
            except ArithmeticError:
                bad.append(("d", a, f.name))
                continue
            if not isinstance(d, int):
                bad.append(("d", a, f.name))
    recorder(7, not bad, "m in [-5, 5] at 20 alpha values, eta, minimal set, d")
    assert not bad


def _sign_512(x) -> int:
    with mpmath.workprec(512):
        n = x.order
        val = mpmath.fsum(
            mpmath.mpf(c.numerator) / c.denominator * mpmath.cos(2 * mpmath.pi * k / n)
            for k, c in enumerate(x.coeffs)
            if c
        )
        if abs(val) < mpmath.mpf(2) ** -400:
            return 0
        return 1 if val > 0 else -1


def _numpy_signature(V, alpha: Fraction) -> int:
    M = np.array(V.matrix, dtype=float)
    w = np.exp(4j * np.pi * float(alpha))
    H = (1 - w) * M + (1 - np.conj(w)) * M.T
    ev = np.linalg.eigvalsh(H)
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def test_criterion_8_properties(recorder):
    rng = random.Random(8)
    bad = []
    for _ in range(1000):
        x = random_real_cyclotomic(rng)
        if sign_real(x) != _sign_512(x):
            bad.append(("sign", x))
    n_sig = 0
    for i in range(200):
        V = random_seifert(rng, 1 + i % 4)
        seen = set()
        while len(seen) < 20:
            a = random_alpha(rng, 60)
            if a in seen or not admissible(V, a):
                continue
            seen.add(a)
            n_sig += 1
            if tl_signature(V, a) != _numpy_signature(V, a):
                bad.append(("signature", V.matrix, a))
    for _ in range(500):
        a = random_alpha(rng)
        x, y = random_novikov(rng, a), random_novikov(rng, a)
        fx, fy = to_function_field(x), to_function_field(y)
        if to_function_field(x + y) != fx + fy or to_function_field(x * y) != fx * fy:
            bad.append(("novikov", x, y))
    recorder(8, not bad, f"1000 signs, {n_sig} signatures, 500 Novikov pairs")
    assert not bad
