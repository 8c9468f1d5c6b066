"""Batch front door: parse inputs, dispatch to the engines, emit JSON.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
All output is deterministic (sorted keys, no timestamps).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

from .laurent import LaurentPoly
from .matrixcore import (
    MatrixError, SignedMat, WeightD, full_stripes, is_aperiodic,
)
from . import basis as basis_mod
from . import coideal as coideal_mod
from . import ff_oracle as oracle_mod
from . import pairing as pairing_mod
from . import schur_d
from . import stabilize as stabilize_mod


class UsageError(Exception):
    pass


def _emit(payload, path: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_matrix(path: str) -> SignedMat:
    try:
        with open(path) as fh:
            return SignedMat.from_json(json.load(fh))
    except (OSError, ValueError, KeyError, MatrixError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}")


def _parse_weight(text: str, n: int) -> tuple[WeightD, int]:
    m = re.fullmatch(r"\s*\(([^)]*)\)\s*([+-])\s*", text)
    if not m:
        raise UsageError(f"cannot parse weight {text!r}; expected '(1,1)+'")
    entries = tuple(int(t) for t in m.group(1).split(","))
    return WeightD(n, entries), 1 if m.group(2) == "+" else -1


def _parse_side(text: str, n: int):
    word_part, _, weight_part = text.partition("@")
    word = schur_d.parse_word(word_part) if word_part.strip() else ()
    weight, sign = _parse_weight(weight_part, n)
    return word, weight, sign


def _pool(args):
    workers = args.threads if args.threads else (os.cpu_count() or 1)
    return ThreadPoolExecutor(max_workers=max(1, workers))


# -- subcommands --------------------------------------------------------------

def cmd_mult(args) -> int:
    x = schur_d.basis_elem(_load_matrix(args.matrix))
    kind = {"E": "E", "F": "F", "T0": "T0", "TR": "TR"}.get(args.kind)
    if kind is None:
        raise UsageError(f"unknown shape kind {args.kind!r}")
    if kind in ("E", "F") and args.h is None:
        raise UsageError("E/F kinds require --h")
    h = args.h or 0
    if args.side == "left":
        out = schur_d.mult_bracket(kind, h, args.R, x)
    else:
        out = schur_d.right_mult_chev(x, kind, h, args.R)
    _emit(out.to_json(), args.output)
    return 0


def cmd_word(args) -> int:
    word = schur_d.parse_word(args.word)
    out = schur_d.apply_word(word, args.n, args.d)
    _emit(out.to_json(), args.output)
    return 0


def cmd_zeta(args) -> int:
    mat = _load_matrix(args.matrix)
    if not is_aperiodic(mat):
        raise UsageError(
            f"matrix is not aperiodic: full stripes at offsets {full_stripes(mat)}")
    plan = basis_mod.monomial_sequence(mat)
    expansion = basis_mod.expand_zeta(plan)
    report = basis_mod.check_triangular(mat, expansion)
    payload = {
        "plan": plan.to_json(),
        "expansion": expansion.to_json(),
        "triangular": {"leading_ok": report.leading_ok,
                       "lower_ok": report.lower_ok,
                       "terms": report.term_count},
    }
    _emit(payload, args.output)
    return 0 if report.ok else 1


def cmd_relations(args) -> int:
    import random
    from .matrixcore import signed_mats
    elements = [schur_d.identity(args.n, args.d)]
    if args.samples:
        rng = random.Random(args.seed)
        pool = signed_mats(args.n, args.d, spread=args.n)
        for m in rng.sample(pool, min(args.samples, len(pool))):
            elements.append(schur_d.basis_elem(m))
    table = schur_d.relation_table(args.n)

    def run(item):
        name, lhs, rhs = item
        ok = all(schur_d.eval_relation_side(lhs, x)
                 == schur_d.eval_relation_side(rhs, x) for x in elements)
        return name, ok

    with _pool(args) as pool:
        results = list(pool.map(run, table))
    payload = {"n": args.n, "d": args.d, "elements": len(elements),
               "relations": [{"name": nm, "pass": ok} for nm, ok in results]}
    _emit(payload, args.output)
    return 0 if all(ok for _, ok in results) else 1


def cmd_delta(args) -> int:
    word = schur_d.parse_word(args.word)
    out = coideal_mod.delta_word(word, args.n, args.dprime, args.dsecond)
    _emit(out.to_json(), args.output)
    return 0


def cmd_jmath(args) -> int:
    word = schur_d.parse_word(args.word)
    out = coideal_mod.jmath_word(word, args.n, args.d)
    _emit(out.to_json(), args.output)
    return 0


def cmd_pair(args) -> int:
    wl, lam, s1 = _parse_side(args.left, args.n)
    wr, mu, s2 = _parse_side(args.right, args.n)
    q = pairing_mod.PairedQuery(wl, lam, s1, wr, mu, s2, args.d)
    value = pairing_mod.pair(q)
    _emit({"value": value.to_json(), "text": str(value)}, args.output)
    return 0


def cmd_stabilize(args) -> int:
    mat = _load_matrix(args.matrix)
    if not is_aperiodic(mat):
        raise UsageError(
            f"matrix is not aperiodic: full stripes at offsets {full_stripes(mat)}")
    report = stabilize_mod.stabilization_scan(mat, args.pmax)
    _emit(report.to_json(), args.output)
    return 0 if report.stabilized() else 1


def cmd_oracle(args) -> int:
    budget = args.budget or int(os.environ.get("SCHUR_BUDGET", "40000000"))
    status = 0
    payload = {}
    if args.check == "formulas":
        win = oracle_mod.Window(args.mode, args.n, args.d, args.q,
                                margin=args.margin, cap=args.cap, budget=budget)
        rep = oracle_mod.check_formulas(win, spread_req=args.spread)
        payload = {"orbits": rep["orbits"], "products": rep["products"],
                   "checked": rep["checked"],
                   "mismatches": rep["mismatches"],
                   "boundary_skips": rep["boundary_skips"]}
        status = 0 if not rep["mismatches"] else 1
    elif args.check == "dimensions":
        rep = oracle_mod.check_dimensions(args.n, args.d, margin=args.margin,
                                          budget=budget)
        payload = rep
        status = 0 if not rep["mismatches"] else 1
    elif args.check == "components":
        win = oracle_mod.Window(args.mode, args.n, args.d, args.q,
                                margin=args.margin, cap=args.cap, budget=budget)
        payload = oracle_mod.check_components(win)
        status = 0 if payload["parity_mismatches"] == 0 else 1
    elif args.check == "assoc":
        win = oracle_mod.Window(args.mode, args.n, args.d, args.q,
                                margin=args.margin, cap=args.cap, budget=budget)
        rep = oracle_mod.check_associativity(win)
        payload = rep
        status = 0 if not rep["mismatches"] else 1
    else:
        raise UsageError(f"unknown oracle check {args.check!r}")
    _emit(payload, args.output)
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="adschur",
        description="Exact Schur/Lusztig algebra computations of affine type D")
    ap.add_argument("--threads", type=int, default=0,
                    help="worker threads for suite commands (0 = auto)")
    ap.add_argument("--output", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mult", help="multiply [shape] * element")
    p.add_argument("--matrix", required=True)
    p.add_argument("--kind", required=True, choices=["E", "F", "T0", "TR"])
    p.add_argument("--h", type=int)
    p.add_argument("--R", type=int, default=1)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("word", help="evaluate a generator word on the identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("zeta", help="monomial plan, expansion, triangularity")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("relations", help="run the defining relation suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, default=0,
                   help="additional random standard basis elements")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("delta", help="comultiplication image of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dprime", type=int, required=True)
    p.add_argument("--dsecond", type=int, required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("jmath", help="type A image of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_jmath)

    p = sub.add_parser("pair", help="bilinear form of two word elements")
    p.add_argument("--left", required=True, help="e.g. 'T0 @ (1,1)+'")
    p.add_argument("--right", required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("stabilize", help="stabilization scan of a seed matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--pmax", type=int, default=6)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("oracle", help="finite-field brute-force checks")
    p.add_argument("--mode", choices=["A", "D"], default="D")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--check", default="formulas",
                   choices=["formulas", "dimensions", "components", "assoc"])
    p.add_argument("--margin", type=int, default=3)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--spread", type=int, default=None)
    p.add_argument("--budget", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MatrixError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except oracle_mod.OracleBudgetError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
