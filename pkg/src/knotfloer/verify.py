"""Verification suites: each one enumerates instances and checks an identity.

A report has the shape
``{suite, instances: [{params, expected, got, pass}], summary}``.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd
from typing import Callable

from .branched import brieskorn_count, coprime_triples, p2_terms
from .char_variety import count_reps
from .errors import JumpPoint
from .knots import admissible, litherland_t2, signature_jumps, tl_signature, torus_knot_seifert
from .s_complex import euler_char, froyshov, homology_ranks, tensor_power, tensor_word, validate, block_b

__all__ = ["SUITES", "run_suite", "torus_pairs", "alpha_grid", "litherland_grid", "DEFAULT_BOUNDS"]


def torus_pairs(max_pq: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(2, max_pq) for q in range(p + 1, max_pq // p + 1) if gcd(p, q) == 1]


def alpha_grid(max_r: int, min_r: int = 2) -> list[Fraction]:
    """Distinct alpha = l/2r in (0, 1/2) for min_r <= r <= max_r."""
    return sorted({Fraction(l, 2 * r) for r in range(min_r, max_r + 1) for l in range(1, r)})


def litherland_grid(k: int, count: int = 50) -> list[Fraction]:
    """The first ``count`` non-jump alpha in (0, 1/2), ordered by denominator."""
    out = []
    den = 2
    while len(out) < count:
        for num in range(1, den):
            a = Fraction(num, den)
            if a.denominator != den or not 0 < a < Fraction(1, 2):
                continue
            try:
                litherland_t2(k, a)
            except JumpPoint:
                continue
            out.append(a)
            if len(out) == count:
                break
        den += 1
    return out


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


# ---------------------------------------------------------------------------
# instance generators and checks; checks are top-level so they pickle


def _gen_absolute(b):
    out = []
    for p, q in torus_pairs(b["max_pq"]):
        V = torus_knot_seifert(p, q)
        out += [{"p": p, "q": q, "alpha": a} for a in alpha_grid(b["max_r"]) if admissible(V, a)]
    return out


def _check_absolute(x):
    sig = tl_signature(torus_knot_seifert(x["p"], x["q"]), x["alpha"])
    return -sig // 2, count_reps(x["p"], x["q"], x["alpha"])


def _check_flip(x):
    p, q, a = x["p"], x["q"], x["alpha"]
    V = torus_knot_seifert(p, q)
    flip = Fraction(1, 2) - a
    return (
        [count_reps(p, q, a), tl_signature(V, a)],
        [count_reps(p, q, flip), tl_signature(V, flip)],
    )


def _gen_p2(b):
    return [{"p": p, "q": q, "r": r} for p, q, r in coprime_triples(b["max_pqr"])]


def _check_p2(x):
    return 2 * brieskorn_count(x["p"], x["q"], x["r"]), sum(p2_terms(x["p"], x["q"], x["r"]))


def _gen_litherland(b):
    return [{"k": k, "alpha": a} for k in range(1, b["max_k"] + 1) for a in litherland_grid(k, b["per_k"])]


def _check_litherland(x):
    k = x["k"]
    return litherland_t2(k, x["alpha"]), tl_signature(torus_knot_seifert(2, 2 * k + 1), x["alpha"])


def _gen_levels(b):
    return [{"l": l} for l in range(0, b["max_l"] + 1)]


def _check_ranks(x):
    l = x["l"]
    expected = {k: v for k, v in {1: (l + 1) // 2, 3: l // 2}.items() if v}
    got = homology_ranks(tensor_power(block_b(), l))
    return {str(k): v for k, v in expected.items()}, {str(k): v for k, v in sorted(got.items())}


def _check_euler(x):
    return -x["l"], euler_char(tensor_power(block_b(), x["l"]))


def _gen_froyshov(b):
    out = [{"word": "B" * l} for l in range(0, b["max_l"] + 1)]
    rng = random.Random(b["seed"])
    for _ in range(b["words"]):
        n = rng.randint(1, b["max_len"])
        out.append({"word": "".join(rng.choice("BD") for _ in range(n))})
    return out


def _check_froyshov(x):
    w = x["word"]
    return w.count("B") - w.count("D"), froyshov(tensor_word(w))


def _gen_tensor_axioms(b):
    words = [""]
    for n in range(1, b["max_len"] + 1):
        words += ["".join(t) for t in itertools.product("BDU", repeat=n)]
    return [{"word": w} for w in words]


def _check_tensor_axioms(x):
    return True, validate(tensor_word(x["word"]))


SUITES: dict[str, tuple[Callable, Callable, tuple[str, ...]]] = {
    "absolute-counting": (_gen_absolute, _check_absolute, ("max_pq", "max_r")),
    "flip": (_gen_absolute, _check_flip, ("max_pq", "max_r")),
    "p2": (_gen_p2, _check_p2, ("max_pqr",)),
    "litherland": (_gen_litherland, _check_litherland, ("max_k", "per_k")),
    "ranks": (_gen_levels, _check_ranks, ("max_l",)),
    "euler": (_gen_levels, _check_euler, ("max_l",)),
    "froyshov": (_gen_froyshov, _check_froyshov, ("max_l", "words", "max_len", "seed")),
    "tensor-axioms": (_gen_tensor_axioms, _check_tensor_axioms, ("max_len",)),
}

DEFAULT_BOUNDS = {
    "max_pq": 35,
    "max_r": 12,
    "max_pqr": 200,
    "max_k": 10,
    "per_k": 50,
    "max_l": 6,
    "words": 50,
    "max_len": 4,
    "seed": 0,
}


def _evaluate(args):
    suite, params = args
    _, check, _ = SUITES[suite]
    try:
        expected, got = check(params)
        return {"expected": expected, "got": got, "pass": expected == got}
    except Exception as err:  # reported per instance so one failure does not hide others
        return {"expected": None, "got": f"{type(err).__name__}: {err}", "pass": False}


def run_suite(suite: str, bounds: dict | None = None, jobs: int | None = 1) -> dict:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    gen, _, keys = SUITES[suite]
    b = dict(DEFAULT_BOUNDS)
    b.update({k: v for k, v in (bounds or {}).items() if v is not None})
    params = gen(b)
    tasks = [(suite, p) for p in params]
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_evaluate(t) for t in tasks]
    instances = []
    for p, r in zip(params, results):
        instances.append(
            {
                "params": {k: _fmt(v) for k, v in p.items()},
                "expected": _jsonable(r["expected"]),
                "got": _jsonable(r["got"]),
                "pass": r["pass"],
            }
        )
    instances.sort(key=lambda inst: _sort_key(inst["params"]))
    passed = sum(1 for i in instances if i["pass"])
    return {
        "suite": suite,
        "bounds": {k: b[k] for k in keys},
        "instances": instances,
        "summary": {"total": len(instances), "passed": passed, "failed": len(instances) - passed},
    }


def _sort_key(params: dict):
    out = []
    for k in sorted(params):
        v = params[k]
        if isinstance(v, str) and "/" in v:
            v = Fraction(v)
        out.append((k, str(type(v).__name__), v))
    return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def jumps_json(V) -> list:
    out = []
    for j in signature_jumps(V):
        if isinstance(j, Fraction):
            out.append(str(j))
        else:
            out.append([str(j.lo), str(j.hi)])
    return out
