"""Command-line front end: ``knotfloer <command> [options]``.

Exit codes: 0 success, 1 usage or input error, 2 non-admissible alpha,
3 a verification suite reported failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .branched import brieskorn_count, p2_terms
from .cache import Cache, default_cache
from .char_variety import count_reps, isolate_roots, write_roots_csv
from .coeffs import ETA_KINDS, eta_alpha
from .cobordism import (
    CobordismData,
    crossing_change_reducible,
    d_alpha,
    eta_of,
    minimal_reducibles,
    negative_definite_check,
)
from .errors import KnotFloerError, NotAdmissible
from .knots import SeifertMatrix, alexander, tl_signature, torus_knot_seifert
from .s_complex import SComplex, euler_char, froyshov, homology_ranks, tensor_word, torus_model
from .verify import DEFAULT_BOUNDS, SUITES, jumps_json, run_suite

EXIT_OK, EXIT_USAGE, EXIT_NOT_ADMISSIBLE, EXIT_VERIFY_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument parsing helpers


def _ints(text: str, n: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}")
    return vals


def _alphas(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"alpha must be c/d or a comma-separated list of them, got {text!r}") from None


def _rat(x) -> str:
    return str(Fraction(x))


def _knot(args) -> tuple[str, SeifertMatrix, tuple | None]:
    if args.torus and args.seifert:
        raise UsageError("give either --torus or --seifert, not both")
    if args.torus:
        p, q = _ints(args.torus, 2, "--torus")
        return f"T({p},{q})", torus_knot_seifert(p, q), (p, q)
    if args.seifert:
        V = SeifertMatrix.load(args.seifert)
        return V.name or Path(args.seifert).stem, V, None
    raise UsageError("one of --torus or --seifert is required")


def _cache(args) -> Cache | None:
    if args.no_cache:
        return None
    if args.cache_dir:
        return Cache(args.cache_dir)
    return default_cache()


def _cached(args, kind: str, params: dict, compute):
    c = _cache(args)
    if c is None:
        return compute()
    return c.get_or_compute(kind, params, compute)


def _jobs(args) -> int:
    return args.jobs if args.jobs else (os.cpu_count() or 1)


def _map(fn, items, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# output


def _emit(args, rows: list[dict], single: bool = True) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        keys = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
    elif single and len(rows) == 1:
        print(json.dumps(rows[0], indent=2))
    else:
        print(json.dumps({"rows": rows}, indent=2))


# ---------------------------------------------------------------------------
# per-instance workers (top level so they pickle)


def _sig_worker(task):
    matrix, alpha = task
    try:
        return "ok", tl_signature(SeifertMatrix(matrix), alpha)
    except NotAdmissible as err:
        return "not_admissible", str(err)


def _count_worker(task):
    p, q, alpha = task
    return count_reps(p, q, alpha)


def _not_admissible(V: SeifertMatrix, message: str) -> int:
    payload = {"error": "NotAdmissible", "message": message, "jumps": jumps_json(V)}
    print(json.dumps(payload, indent=2), file=sys.stderr)
    return EXIT_NOT_ADMISSIBLE


# ---------------------------------------------------------------------------
# commands


def cmd_sig(args) -> int:
    name, V, _ = _knot(args)
    alphas = _alphas(args.alpha)
    c = _cache(args)
    if c is None:
        results = _map(_sig_worker, [(V.matrix, a) for a in alphas], _jobs(args))
    else:
        results = []
        for a in alphas:
            try:
                val = c.get_or_compute("signature", {"matrix": V.matrix, "alpha": a}, lambda a=a: tl_signature(V, a))
                results.append(("ok", val))
            except NotAdmissible as err:
                results.append(("not_admissible", str(err)))
    rows = []
    for a, (status, val) in zip(alphas, results):
        if status != "ok":
            return _not_admissible(V, val)
        rows.append({"knot": name, "alpha": _rat(a), "signature": val})
    _emit(args, rows)
    return EXIT_OK


def cmd_count(args) -> int:
    p, q = _ints(args.torus, 2, "--torus")
    alphas = _alphas(args.alpha)
    V = torus_knot_seifert(p, q)
    if _cache(args) is None:
        counts = _map(_count_worker, [(p, q, a) for a in alphas], _jobs(args))
    else:
        counts = [
            _cached(args, "count", {"p": p, "q": q, "alpha": a}, lambda a=a: count_reps(p, q, a)) for a in alphas
        ]
    rows = []
    for a, n in zip(alphas, counts):
        row = {"knot": f"T({p},{q})", "alpha": _rat(a), "count": n}
        if args.with_signature:
            try:
                row["signature"] = tl_signature(V, a)
            except NotAdmissible as err:
                return _not_admissible(V, str(err))
        rows.append(row)
    if args.roots_csv:
        with open(args.roots_csv, "w", newline="") as fh:
            for a in alphas:
                write_roots_csv(isolate_roots(p, q, a), fh)
    _emit(args, rows)
    return EXIT_OK


def cmd_alexander(args) -> int:
    name, V, _ = _knot(args)

    def compute():
        poly = alexander(V)
        return {"low": poly.low, "coeffs": [_rat(c) for c in poly.to_list()], "text": str(poly)}

    val = _cached(args, "alexander", {"matrix": V.matrix}, compute)
    _emit(args, [{"knot": name, "alexander": val["text"], "low": val["low"], "coeffs": val["coeffs"]}])
    return EXIT_OK


def cmd_jumps(args) -> int:
    name, V, _ = _knot(args)
    _emit(args, [{"knot": name, "jumps": jumps_json(V)}])
    return EXIT_OK


def cmd_brieskorn(args) -> int:
    p, q, r = _ints(args.triple, 3, "--triple")
    n = _cached(args, "brieskorn", {"p": p, "q": q, "r": r}, lambda: brieskorn_count(p, q, r))
    terms = p2_terms(p, q, r)
    _emit(args, [{"triple": f"{p},{q},{r}", "count": n, "p2_terms": terms, "p2_holds": sum(terms) == 2 * n}])
    return EXIT_OK


def _complex(args) -> tuple[str, SComplex]:
    chosen = [x for x in (args.word is not None, bool(args.torus), bool(args.complex)) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --word, --torus or --complex")
    if args.word is not None:
        if set(args.word) - set("BDU"):
            raise UsageError("--word uses the letters B (block), D (dual block) and U (unit)")
        return f"word:{args.word}", tensor_word(args.word)
    if args.torus:
        if args.alpha is None:
            raise UsageError("--torus needs --alpha")
        p, q = _ints(args.torus, 2, "--torus")
        (a,) = _alphas(args.alpha)
        return f"T({p},{q})@{a}", torus_model(p, q, a)
    text = Path(args.complex).read_text()
    return f"file:{Path(args.complex).name}", SComplex.from_json(text)


def _complex_key(label: str, c: SComplex) -> dict:
    return {"source": label, "complex": c.to_json()}


def cmd_froyshov(args) -> int:
    label, c = _complex(args)
    h = _cached(args, "froyshov", _complex_key(label, c), lambda: froyshov(c))
    _emit(args, [{"complex": label, "h": h}])
    return EXIT_OK


def cmd_ranks(args) -> int:
    label, c = _complex(args)

    def compute():
        return {str(k): v for k, v in sorted(homology_ranks(c).items())}

    ranks = _cached(args, "ranks", _complex_key(label, c), compute)
    _emit(args, [{"complex": label, "ranks": ranks, "euler": euler_char(c)}])
    return EXIT_OK


def cmd_eta(args) -> int:
    (a,) = _alphas(args.alpha)
    val = _cached(args, "eta", {"kind": args.kind, "alpha": a}, lambda: eta_alpha(args.kind, a).to_json())
    from .coeffs import NovikovElement

    _emit(args, [{"kind": args.kind, "alpha": _rat(a), "eta": str(NovikovElement.from_json(val)), "terms": val["terms"]}])
    return EXIT_OK


def cmd_index(args) -> int:
    if args.cobordism:
        c = CobordismData.from_json(Path(args.cobordism).read_text())
        mins, kappa0, nu0 = minimal_reducibles(c)
        row = {
            "cobordism": c.name,
            "alpha": _rat(c.alpha),
            "minimal": [[_rat(r.kappa), _rat(r.nu), r.c1_sq] for r in mins],
            "kappa0": _rat(kappa0),
            "nu0": _rat(nu0),
            "eta": str(eta_of(c)),
            "negative_definite": negative_definite_check(c),
        }
        try:
            row["d"] = d_alpha(c)
        except (ValueError, ArithmeticError) as err:
            row["d"] = None
            row["d_error"] = str(err)
        _emit(args, [row])
        return EXIT_OK
    if args.alpha is None:
        raise UsageError("index needs --alpha (crossing-change model) or --cobordism FILE")
    (a,) = _alphas(args.alpha)
    ms = _ints(args.m, len(args.m.split(",")), "--m")
    rows = []
    for m in ms:

        def compute(m=m):
            kappa, nu, ind = crossing_change_reducible(a, m, args.sig_in, args.sig_out)
            return {"kappa": _rat(kappa), "nu": _rat(nu), "index": ind}

        params = {"alpha": a, "m": m, "sig_in": args.sig_in, "sig_out": args.sig_out}
        val = _cached(args, "index", params, compute)
        rows.append({"alpha": _rat(a), "m": m, **val})
    _emit(args, rows, single=len(ms) == 1)
    return EXIT_OK


def cmd_verify(args) -> int:
    bounds = {k: getattr(args, k) for k in DEFAULT_BOUNDS}
    report = run_suite(args.suite, bounds, jobs=_jobs(args))
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["params", "expected", "got", "pass"])
        for inst in report["instances"]:
            w.writerow([json.dumps(inst["params"]), json.dumps(inst["expected"]), json.dumps(inst["got"]), inst["pass"]])
    else:
        print(json.dumps(report, indent=2))
    s = report["summary"]
    print(f"{report['suite']}: {s['passed']}/{s['total']} passed", file=sys.stderr)
    return EXIT_OK if s["failed"] == 0 else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knotfloer", description="Exact knot invariants at rational holonomy parameters.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("--cache-dir", default=None, help="cache directory (default: $KNOTFLOER_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="skip the result cache")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def knot_args(p):
        p.add_argument("--torus", help="p,q for the torus knot T(p,q)")
        p.add_argument("--seifert", help="JSON file with a Seifert matrix")

    p = sub.add_parser("sig", parents=[common], help="Tristram-Levine signature")
    knot_args(p)
    p.add_argument("--alpha", required=True, help="c/d, or a comma-separated list")
    p.set_defaults(func=cmd_sig)

    p = sub.add_parser("count", parents=[common], help="count irreducible SU(2) representations")
    p.add_argument("--torus", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--with-signature", action="store_true", help="also report the signature")
    p.add_argument("--roots-csv", help="write the isolated roots to this CSV file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("alexander", parents=[common], help="normalized Alexander polynomial")
    knot_args(p)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("jumps", parents=[common], help="alpha values where the signature can jump")
    knot_args(p)
    p.set_defaults(func=cmd_jumps)

    p = sub.add_parser("brieskorn", parents=[common], help="flat connection count on a Brieskorn sphere")
    p.add_argument("--triple", required=True, help="p,q,r pairwise coprime")
    p.set_defaults(func=cmd_brieskorn)

    for name, func, text in (("froyshov", cmd_froyshov, "Froyshov invariant"), ("ranks", cmd_ranks, "homology ranks")):
        p = sub.add_parser(name, parents=[common], help=f"{text} of an S-complex")
        p.add_argument("--word", help="tensor word over B, D, U")
        p.add_argument("--torus", help="p,q: use the model complex of T(p,q)")
        p.add_argument("--alpha")
        p.add_argument("--complex", help="S-complex JSON file")
        p.set_defaults(func=func)

    p = sub.add_parser("eta", parents=[common], help="reducible count of a model cobordism")
    p.add_argument("--kind", choices=ETA_KINDS, default="crossing_blowup")
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("index", parents=[common], help="reducible indices on a cobordism")
    p.add_argument("--alpha")
    p.add_argument("--m", default="-1,0,1", help="comma-separated m values for the crossing-change model")
    p.add_argument("--sig-in", type=int, default=0)
    p.add_argument("--sig-out", type=int, default=0)
    p.add_argument("--cobordism", help="cobordism JSON file")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    for key in DEFAULT_BOUNDS:
        p.add_argument("--" + key.replace("_", "-"), dest=key, type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotAdmissible as err:
        jumps = [str(j) if isinstance(j, Fraction) else [str(j.lo), str(j.hi)] for j in err.jumps]
        print(json.dumps({"error": "NotAdmissible", "message": str(err), "jumps": jumps}), file=sys.stderr)
        return EXIT_NOT_ADMISSIBLE
    except (UsageError, KnotFloerError, ValueError, OSError) as err:
        print(f"knotfloer: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
