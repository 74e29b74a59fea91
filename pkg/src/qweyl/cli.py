"""Command-line front end: parse, verify, report.

Configs and reports are JSON.  Exact scalars travel as text in the
expression grammar ("q^2 - 1", "-1/3"), never as floats.  Reports are
byte-identical across runs with the same config: orderings are
canonical, the sampling seed is fixed (QWEYL_SEED overrides it), and
no timestamps are embedded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from itertools import product as iproduct
from typing import Optional

from .cyclotomic import CycField
from .expr import ParseError, evaluate, evaluate_scalar
from .fiber import (FiberPoint, OutsideAzumayaLocus, digits, full_matrix_rep,
                    in_azumaya_locus)
from .lattice import QuiverData, TorusEmbedding, quiver_to_embedding
from .linalg import SpanBasis, nullspace
from .pbw import PBWAlgebra, verify_qmm
from .quiver_examples import (build_an_quiver_algebra, verify_central_z,
                              verify_u1_relations)
from .reduction import EmptyReductionError, hamiltonian_reduce

DEFAULT_SEED = 20240901
TASK_TYPES = ("normalize", "center-check", "fiber-rep", "reduce",
              "quiver-suite", "qmm-check")


def load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict) -> None:
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    ell = cfg.get("ell")
    if not isinstance(ell, int) or ell <= 1 or ell % 2 == 0:
        raise ValueError("config needs an odd integer ell > 1")
    has_emb = "embedding" in cfg
    has_quiver = "quiver" in cfg
    if has_emb == has_quiver:
        raise ValueError("config needs exactly one of 'embedding' or 'quiver'")
    if has_emb:
        emb = cfg["embedding"]
        if not isinstance(emb, dict) or "matrix" not in emb or "form" not in emb:
            raise ValueError("'embedding' needs 'matrix' and 'form'")
    else:
        q = cfg["quiver"]
        if not isinstance(q, dict) or "vertices" not in q or "edges" not in q:
            raise ValueError("'quiver' needs 'vertices' and 'edges'")
    tasks = cfg.get("tasks")
    if not isinstance(tasks, list) or not tasks:
        raise ValueError("config needs a nonempty 'tasks' list")
    for i, task in enumerate(tasks):
        if not isinstance(task, dict) or task.get("type") not in TASK_TYPES:
            raise ValueError(
                f"task {i}: 'type' must be one of {', '.join(TASK_TYPES)}")


def build_embedding(cfg: dict) -> TorusEmbedding:
    if "embedding" in cfg:
        emb = cfg["embedding"]
        matrix = tuple(tuple(int(v) for v in row) for row in emb["matrix"])
        form = tuple(tuple(int(v) for v in row) for row in emb["form"])
        return TorusEmbedding(n=len(matrix), d=len(matrix[0]) if matrix else 0,
                              matrix=matrix, form=form)
    return quiver_to_embedding(QuiverData.from_json(cfg["quiver"]))


def build_point(field: CycField, emb: TorusEmbedding, data: dict) -> FiberPoint:
    lam_raw = data.get("lambda")
    if not isinstance(lam_raw, list) or len(lam_raw) != emb.n:
        raise ValueError(f"fiber point needs 'lambda' with {emb.n} [c, w] pairs")
    lam = tuple((evaluate_scalar(str(c), field), evaluate_scalar(str(w), field))
                for c, w in lam_raw)
    gamma_raw = data.get("gamma")
    if not isinstance(gamma_raw, list) or len(gamma_raw) != emb.n:
        raise ValueError(f"fiber point needs 'gamma' with {emb.n} entries")
    gamma = tuple(evaluate_scalar(str(g), field) for g in gamma_raw)
    b = None
    if data.get("b") is not None:
        b = tuple(None if v is None else evaluate_scalar(str(v), field)
                  for v in data["b"])
    return FiberPoint(field=field, lam=lam, gamma=gamma, b=b)


# -- task runners ----------------------------------------------------------

def _task_normalize(field, emb, algebra, task, rng):
    exprs = task.get("expressions", [])
    results = []
    ok = True
    for src in exprs:
        try:
            e = evaluate(src, algebra)
            results.append({"input": src, "normal_form": str(e),
                            "is_central": e.is_central()})
        except (ParseError, ValueError) as err:
            ok = False
            results.append({"input": src, "error": str(err)})
    return {"expressions": results, "ok": ok}


def _task_center_check(field, emb, algebra, task, rng):
    deg = int(task.get("max_degree", 6))
    n = emb.n
    keys = [(m, k)
            for m in iproduct(range(deg + 1), repeat=n)
            for k in iproduct(range(deg + 1), repeat=n)]
    unknowns = list(keys)
    rows = []
    gens = [algebra.x(i) for i in range(1, n + 1)] + \
           [algebra.d(i) for i in range(1, n + 1)]
    for gi, g in enumerate(gens):
        per_key: dict = {}
        for mk in keys:
            b = algebra.monomial(*mk)
            comm = b * g - g * b
            for out_key, c in comm.terms.items():
                per_key.setdefault((gi, out_key), {})[mk] = c
        rows.extend(per_key.values())
    sol = nullspace(rows, unknowns, field=field)
    centralizer = SpanBasis(field)
    for v in sol:
        centralizer.add(v)
    expected = SpanBasis(field)
    ell = field.ell
    for m in iproduct(range(0, deg + 1, ell), repeat=n):
        for k in iproduct(range(0, deg + 1, ell), repeat=n):
            expected.add({(m, k): field.one})
    matches = centralizer.rank == expected.rank and all(
        centralizer.contains(row) for row in expected.rows())
    basis_strs = sorted(
        str(algebra.monomial(m, k)) for (m, k) in
        (next(iter(v)) for v in expected.rows())) if matches else None
    return {"max_degree": deg, "dimension": centralizer.rank,
            "expected_dimension": expected.rank,
            "matches_ell_power_span": matches,
            "basis": basis_strs, "ok": matches}


def _task_fiber_rep(field, emb, algebra, task, rng):
    point = build_point(field, emb, task.get("point", {}))
    report: dict = {"in_azumaya_locus": in_azumaya_locus(point)}
    rep = full_matrix_rep(point, emb)
    n, ell = emb.n, field.ell
    gens = [("x", i) for i in range(1, n + 1)] + [("d", i) for i in range(1, n + 1)]

    def elem(kind, i):
        return algebra.x(i) if kind == "x" else algebra.d(i)

    # algebra map on all generator pairs plus seeded random monomial pairs
    pairs_ok = True
    for (k1, i1) in gens:
        for (k2, i2) in gens:
            a, b = elem(k1, i1), elem(k2, i2)
            if rep.of_element(a * b) != rep.of_element(a) * rep.of_element(b):
                pairs_ok = False
    for _ in range(20):
        m1 = tuple(rng.randrange(ell) for _ in range(n))
        k1 = tuple(rng.randrange(ell) for _ in range(n))
        m2 = tuple(rng.randrange(ell) for _ in range(n))
        k2 = tuple(rng.randrange(ell) for _ in range(n))
        a, b = algebra.monomial(m1, k1), algebra.monomial(m2, k2)
        if rep.of_element(a * b) != rep.of_element(a) * rep.of_element(b):
            pairs_ok = False
    report["relations_ok"] = pairs_ok

    alpha_ok = True
    size = rep.size
    for i in range(n):
        mat = rep.alpha[i]
        for idx in range(size):
            r = digits(idx, ell, n)
            if mat[(idx, idx)] != point.gamma[i] * field.qpow(-2 * r[i]):
                alpha_ok = False
        if len(mat.entries) != size:
            alpha_ok = False
    report["alpha_diagonal_ok"] = alpha_ok

    span = SpanBasis(field)
    for m in iproduct(range(ell), repeat=n):
        for k in iproduct(range(ell), repeat=n):
            mat = rep.of_element(algebra.monomial(m, k))
            span.add({rc: v for rc, v in mat.entries.items()})
    report["span_dimension"] = span.rank
    report["expected_span_dimension"] = ell ** (2 * n)
    report["ok"] = pairs_ok and alpha_ok and span.rank == ell ** (2 * n)
    return report


def _task_reduce(field, emb, algebra, task, rng):
    point = build_point(field, emb, task.get("point", {}))
    eta_raw = task.get("eta")
    if not isinstance(eta_raw, list) or len(eta_raw) != emb.d:
        raise ValueError(f"reduce task needs 'eta' with {emb.d} entries")
    eta = tuple(evaluate_scalar(str(v), field) for v in eta_raw)
    try:
        res = hamiltonian_reduce(point, emb, eta)
    except EmptyReductionError as err:
        return {"eta_admissible": False,
                "admissible": [[str(v) for v in tup] for tup in err.admissible],
                "ok": False}
    out = res.report()
    out["module_action_bijective"] = res.module_action_bijective
    out["shift"] = list(res.shift) if res.shift is not None else None
    out["ok"] = (out["is_matrix_algebra"] and res.module_action_bijective
                 and out["eta_admissible"])
    return out


def _task_quiver_suite(field, emb, algebra, task, rng):
    n = int(task.get("n", 3))
    rep = build_an_quiver_algebra(field, n)
    out: dict = {"n": n,
                 "pairing_exponents": {f"{i},{j}": v
                                       for (i, j), v in sorted(rep.pairing_exponents.items())}}
    if rep.table is None:
        out["table"] = None
        table_ok = True
    else:
        out["table"] = {" ".join(str(p) for p in key): bool(v)
                        for key, v in sorted(rep.table.items(), key=lambda kv: str(kv[0]))}
        table_ok = rep.table_verified
    u1 = verify_u1_relations(field, n)
    central = verify_central_z(field, n)
    out["u1_relations"] = u1
    out["central_z"] = central
    out["ok"] = table_ok and u1["all_ok"] and central["all_ok"]
    return out


def _task_qmm_check(field, emb, algebra, task, rng):
    n, d = emb.n, emb.d
    results = []
    ok = True
    targets = [("x", i) for i in range(1, n + 1)] + [("d", i) for i in range(1, n + 1)]
    hs = [("y", tuple(1 if j == i else 0 for j in range(n))) for i in range(n)] + \
         [("z", tuple(1 if j == i else 0 for j in range(d))) for i in range(d)]
    for kind, r in hs:
        for tkind, ti in targets:
            a = algebra.x(ti) if tkind == "x" else algebra.d(ti)
            res = verify_qmm(a, kind, r)
            if not res:
                ok = False
            results.append({"h": f"{kind}{r}", "target": f"{tkind}{ti}",
                            "ok": bool(res), "exponent": res.exponent})
    return {"checks": results, "ok": ok}


_RUNNERS = {
    "normalize": _task_normalize,
    "center-check": _task_center_check,
    "fiber-rep": _task_fiber_rep,
    "reduce": _task_reduce,
    "quiver-suite": _task_quiver_suite,
    "qmm-check": _task_qmm_check,
}


def run_suite(cfg: dict, seed: Optional[int] = None) -> dict:
    validate_config(cfg)
    if seed is None:
        seed = int(os.environ.get("QWEYL_SEED", DEFAULT_SEED))
    field = CycField(cfg["ell"])
    emb = build_embedding(cfg)
    algebra = PBWAlgebra(field, emb)
    entries = []
    for task in cfg["tasks"]:
        rng = random.Random(seed)
        entry = {"type": task["type"]}
        try:
            entry.update(_RUNNERS[task["type"]](field, emb, algebra, task, rng))
        except (ValueError, OutsideAzumayaLocus) as err:
            entry["error"] = str(err)
            entry["ok"] = False
        entries.append(entry)
    return {"ell": cfg["ell"], "n": emb.n, "d": emb.d, "seed": seed,
            "tasks": entries, "all_ok": all(e.get("ok") for e in entries)}


def _dump_report(report: dict, out_path: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qweyl",
        description="exact computations in q-Weyl algebras at roots of unity")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("normalize", help="print normal forms of expressions")
    p_norm.add_argument("--ell", type=int, default=None, help="odd order of q")
    p_norm.add_argument("-n", type=int, default=1, help="number of variables")
    p_norm.add_argument("--config", help="take ell and embedding from a config file")
    p_norm.add_argument("expressions", nargs="+")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--out", help="write the JSON report here")

    p_report = sub.add_parser("report", help="emit the full JSON report")
    p_report.add_argument("--config", required=True)
    p_report.add_argument("--out", help="write the JSON report here")

    args = parser.parse_args(argv)

    if args.command == "normalize":
        try:
            if args.config:
                cfg = load_config(args.config)
                field = CycField(cfg["ell"])
                emb = build_embedding(cfg)
            else:
                if args.ell is None:
                    print("normalize needs --ell or --config", file=sys.stderr)
                    return 2
                field = CycField(args.ell)
                n = args.n
                matrix = tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n))
                form = tuple(tuple(2 if i == j else 0 for j in range(n))
                             for i in range(n))
                emb = TorusEmbedding(n=n, d=n, matrix=matrix, form=form)
            algebra = PBWAlgebra(field, emb)
            for src in args.expressions:
                print(str(evaluate(src, algebra)))
            return 0
        except (ParseError, ValueError) as err:
            print(f"error: {err}", file=sys.stderr)
            return 2

    try:
        cfg = load_config(args.config)
    except (OSError, json.JSONDecodeError, ValueError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    report = run_suite(cfg)

    if args.command == "verify":
        for entry in report["tasks"]:
            status = "pass" if entry.get("ok") else "FAIL"
            extra = f" ({entry['error']})" if "error" in entry else ""
            print(f"{status}  {entry['type']}{extra}")
        if args.out:
            _dump_report(report, args.out)
        print("all checks passed" if report["all_ok"] else "some checks failed")
        return 0 if report["all_ok"] else 1

    _dump_report(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
