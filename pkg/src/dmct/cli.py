"""Command-line interface: ``dmct <subcommand> [options]``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__, cache
from .algebra.fq import FqConfig
from .algebra.laurent import PrecisionError
from .algebra.poly import Poly
from .classgroup import (
    admissible_primes,
    class_group_structure,
    consistency_report,
    ell_primary,
    torsion_prediction,
)
from .cochain import cochain_from_selector, eval_cochain, hecke_apply
from .divisors import (
    HeightDivisor,
    alpha_pull,
    beta_cokernel,
    beta_push,
    degree,
    delta_divisor,
    standard_divisors,
    up_action,
)
from .level import Level, cusp_count, eisenstein_constants, enumerate_cusps, make_level
from .tree import parse_edge, random_edge
from .verify import SUITES, Grid, Recorder, default_grid, run_suites, suite_eisenstein


class InputError(ValueError):
    pass


def _field(args) -> FqConfig:
    if args.q is None:
        raise InputError("--q is required")
    return FqConfig.from_q(args.q, args.modulus)


def _level(args, r=None) -> Level:
    fq = _field(args)
    if args.p is None:
        raise InputError("--p is required")
    r = args.r if r is None else r
    if r is None:
        raise InputError("--r is required")
    return make_level(fq, Poly.parse(fq, args.p), r)


def _ells(args, L: Level) -> list[int]:
    if args.ell:
        return sorted({int(x) for chunk in args.ell for x in chunk.split(",") if x})
    return admissible_primes(L, 50)


def _fr(x):
    return str(x) if isinstance(x, Fraction) else x


def _divisor_json(D: HeightDivisor):
    return json.loads(D.to_json())


# subcommands -----------------------------------------------------------------


def cmd_cusps(args, rec: Recorder):
    L = _level(args)
    cusps = enumerate_cusps(L)
    counts = [cusp_count(L, i) for i in range(L.r + 1)]
    observed = [sum(1 for c in cusps if c.i == i) for i in range(L.r + 1)]
    rec.add("cusp_count_matches_enumeration", {"level": L.serialize()}, counts, observed)
    return {"level": L.serialize(), "counts": counts, "total": len(cusps), "cusps": [c.serialize() for c in cusps]}


def _class_group_row(L: Level, ells) -> dict:
    S = class_group_structure(L)
    M, N = eisenstein_constants(L)
    row = {"level": L.serialize(), "invariant_factors": S.to_list(), "order": S.order, "M": M, "N": N}
    if L.r >= 2:
        row["ell_parts"] = {str(ell): ell_primary(S, ell).to_list() for ell in ells}
        pred = {}
        for ell in ells:
            try:
                pred[str(ell)] = torsion_prediction(L, ell).to_list()
            except ValueError as exc:
                pred[str(ell)] = str(exc)
        row["prediction"] = pred
    return row


def cmd_class_group(args, rec: Recorder):
    if args.r is not None:
        L = _level(args)
        ells = _ells(args, L)
        if L.r >= 2:
            for c in consistency_report(L)["checks"]:
                rec.add(c["name"], {"level": L.serialize(), **c["params"]}, c["expected"], c["got"])
        return _class_group_row(L, ells)
    rows = []
    for r in range(1, 6):
        L = _level(args, r)
        rows.append(_class_group_row(L, _ells(args, L)))
    return {"rows": rows}


def cmd_degeneracy(args, rec: Recorder):
    L = _level(args)
    op = args.op or "beta-cokernel"
    if op == "beta-cokernel":
        return {"level": L.serialize(), "op": op, "invariant_factors": beta_cokernel(L)}
    if op == "delta":
        return {"level": L.serialize(), "op": op, "divisors": [_divisor_json(delta_divisor(i, L)) for i in range(L.r + 1)]}
    if op == "standard":
        Cs, Cp = standard_divisors(L)
        out = {"C": [_divisor_json(C) for C in Cs]}
        if Cp is not None:
            out["Cprime"] = _divisor_json(Cp)
            rec.add("U_kills_Cprime", {"level": L.serialize()}, HeightDivisor.zero(L).to_json(), up_action(Cp).to_json())
        return {"level": L.serialize(), "op": op, **out}
    maps = {"alpha": alpha_pull, "beta": beta_push, "up": up_action}
    if op not in maps:
        raise InputError(f"unknown --op {op!r}; choose alpha, beta, up, beta-cokernel, delta, standard")
    # alpha pulls back from one level down
    src = L.with_r(L.r - 1) if op == "alpha" else L
    if op == "alpha" and L.r < 2:
        raise InputError("alpha needs --r >= 2 (target level)")
    if args.divisor:
        inputs = [HeightDivisor.from_json(src, args.divisor)]
    else:
        inputs = [HeightDivisor.basis(src, j) for j in range(src.r + 1)]
    images = []
    for D in inputs:
        img = maps[op](D)
        images.append({"input": _divisor_json(D), "image": _divisor_json(img)})
        factor = 1 if op == "beta" else L.norm
        rec.add(f"{op}_degree_law", {"level": L.serialize(), "input": str(D)}, _fr(factor * degree(D)), _fr(degree(img)))
    return {"level": L.serialize(), "op": op, "images": images}


def _cochain(args, L: Level):
    if not args.cochain:
        raise InputError("--cochain is required (delta:i=<int>, En, gC')")
    return cochain_from_selector(L, args.cochain)


def _edges(args, L: Level):
    if args.edge:
        return [parse_edge(L.fq, t) for t in args.edge]
    g = Grid([(L.fq, L.p)], L.r, args.depth, args.seed)
    rng = g.rng("cli-edges")
    return [random_edge(L.fq, rng, args.depth, -2) for _ in range(5)]


def cmd_eval(args, rec: Recorder):
    L = _level(args)
    f = _cochain(args, L)
    values = [{"edge": str(e), "value": str(eval_cochain(f, e))} for e in _edges(args, L)]
    out = {"level": L.serialize(), "cochain": args.cochain, "values": values}
    if len(values) == 1:
        out["value"] = values[0]["value"]
    return out


def cmd_hecke(args, rec: Recorder):
    L = _level(args)
    f = _cochain(args, L)
    op = args.op or "U"
    values = []
    for e in _edges(args, L):
        values.append({"edge": str(e), "value": str(eval_cochain(f, e)), "image": str(hecke_apply(f, L, op, e))})
    return {"level": L.serialize(), "cochain": args.cochain, "op": op, "values": values}


def cmd_eisenstein(args, rec: Recorder):
    L = _level(args)
    if L.r < 2:
        raise InputError("eisenstein needs --r >= 2")
    grid = Grid([(L.fq, L.p)], L.r, args.depth, args.seed)
    suite_eisenstein(grid, rec)
    M, N = eisenstein_constants(L)
    return {"level": L.serialize(), "M": M, "N": N, "checks_run": len(rec.checks)}


def cmd_verify(args, rec: Recorder):
    suites = [s for chunk in (args.suite or ["all"]) for s in chunk.split(",") if s]
    if args.q is not None or args.p is not None:
        fq = _field(args)
        if args.p is None:
            raise InputError("--p is required with --q")
        grid = Grid([(fq, Poly.parse(fq, args.p))], args.r, args.depth, args.seed)
    else:
        grid = default_grid(args.depth, args.seed)
        grid.r = args.r
    grid.tamper = args.expect_fail
    rec.checks.extend(run_suites(suites, grid))
    return {"suites": sorted(set(suites))}


COMMANDS = {
    "cusps": cmd_cusps,
    "class-group": cmd_class_group,
    "degeneracy": cmd_degeneracy,
    "eval": cmd_eval,
    "hecke": cmd_hecke,
    "eisenstein": cmd_eisenstein,
    "verify": cmd_verify,
}


# output ------------------------------------------------------------------------


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    result, checks = report["result"], report["checks"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if "rows" in result or "invariant_factors" in result and "level" in result and "order" in result:
            rows = result.get("rows", [result])
            w.writerow(["level", "invariant_factors", "order", "M", "N"])
            for row in rows:
                w.writerow([row["level"], " ".join(map(str, row["invariant_factors"])), row["order"], row["M"], row["N"]])
        else:
            w.writerow(["suite", "name", "params", "expected", "got", "pass"])
            for c in checks:
                w.writerow([c.get("suite", ""), c["name"], json.dumps(c["params"], sort_keys=True), json.dumps(c["expected"]), json.dumps(c["got"]), c["pass"]])
        return buf.getvalue().rstrip("\n")
    lines = []
    if "value" in result:
        lines.append(str(result["value"]))
    elif "invariant_factors" in result:
        lines.append(json.dumps(result["invariant_factors"]))
    elif report["command"] != "verify":
        lines.append(json.dumps(result, sort_keys=True))
    shown = checks if report["command"] == "verify" else [c for c in checks if not c["pass"]]
    for c in shown:
        lines.append(f"{'PASS' if c['pass'] else 'FAIL'} {c.get('suite', '') + ':' if c.get('suite') else ''}{c['name']} {json.dumps(c['params'], sort_keys=True)}")
    s = report["summary"]
    if checks:
        lines.append(f"{s['passed']}/{s['total']} checks passed")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dmct", description="Cuspidal divisors and Eisenstein cochains on X_0(p^r).")
    parser.add_argument("--version", action="version", version=f"dmct {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field size q = p^e")
    common.add_argument("--modulus", help="modulus for e > 1, e.g. x^2+x+1")
    common.add_argument("--p", help="prime polynomial, e.g. T^2+T+1")
    common.add_argument("--r", type=int, help="exponent r of the level p^r")
    common.add_argument("--ell", action="append", help="primes ell (comma separated or repeated)")
    common.add_argument("--depth", type=int, default=8, help="max edge level for sampled edges (>= 4)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--no-cache", action="store_true", help="bypass the report cache")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cusps", parents=[common], help="cusp counts and canonical representatives")
    sub.add_parser("class-group", parents=[common], help="structure of the cuspidal class group")
    p = sub.add_parser("degeneracy", parents=[common], help="degeneracy maps on height divisors")
    p.add_argument("--op", help="alpha, beta, up, beta-cokernel (default), delta, standard")
    p.add_argument("--divisor", help="input divisor as JSON [{height_exp, coeff}]")
    p = sub.add_parser("eval", parents=[common], help="evaluate a cochain at edges")
    p.add_argument("--cochain")
    p.add_argument("--edge", action="append", help='edge literal "k=3;y=pi^1;eps=1"')
    p = sub.add_parser("hecke", parents=[common], help="apply a Hecke operator at edges")
    p.add_argument("--cochain")
    p.add_argument("--op", help='"U" or "T:<poly>"')
    p.add_argument("--edge", action="append")
    sub.add_parser("eisenstein", parents=[common], help="checks on the Eisenstein element E_n")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", help=f"all or any of: {', '.join(SUITES)}")
    p.add_argument("--expect-fail", action="store_true", help="mutation mode: tamper expected constants")
    return parser


def _config(args) -> dict:
    keys = ("q", "modulus", "p", "r", "ell", "depth", "seed", "op", "divisor", "cochain", "edge", "suite", "expect_fail")
    return {"command": args.command, **{k: getattr(args, k, None) for k in keys}}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.depth < 4:
        parser.error("--depth must be >= 4")
    config = _config(args)
    key = cache.config_key({**config, "version": __version__})
    report = None
    status = "off"
    if not args.no_cache:
        report = cache.load(key)
        status = "hit" if report is not None else "miss"
    if report is None:
        start = time.perf_counter()
        rec = Recorder()
        try:
            result = COMMANDS[args.command](args, rec)
        except (ValueError, PrecisionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        passed = sum(c["pass"] for c in rec.checks)
        report = {
            "tool": "dmct",
            "version": __version__,
            "command": args.command,
            "config": config,
            "result": result,
            "checks": rec.checks,
            "summary": {"total": len(rec.checks), "passed": passed, "failed": len(rec.checks) - passed},
        }
        if not args.no_cache:
            cache.store(key, report)
        elapsed = time.perf_counter() - start
    else:
        elapsed = 0.0
    report = {**report, "cache": status}
    if args.timing:
        report["timing"] = {"seconds": round(elapsed, 3)}
    print(_render(report, args.format))
    return 0 if report["summary"]["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
