"""Command-line front end.

Exit codes: 0 when everything ran and every certificate passed, 1 for usage
or precondition errors, 2 when a certificate was falsified or a table check
failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Sequence

from . import tables as tables_mod
from .errors import CertificateError
from .linalg import ColumnSelection
from .poly import IntegerPoint, Poly, parse_poly
from .siegel import siegel_pade_solve
from .tame import TameProblem, certify_minor_closed_form, tame_solve
from .vandermonde import BlockSpec, PolySequence, certify_caseA_factor, certify_caseB_factor
from .wild import (
    WildProblem,
    certify_claimed_factor,
    claimed_factor,
    instances,
    minor_gcd_report,
    random_instances,
    random_point,
    rank_check,
    twin_solve,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit_csv(header: Sequence, rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _point(args, m):
    if args.a is None:
        return None
    if len(args.a) != m:
        raise UsageError(f"--a needs {m} values")
    return IntegerPoint(args.a)


def _orders(certs) -> list:
    return [
        {"j": j + 1, "claimed_min": c.claimed_min, "checked_through": c.truncation_order,
         "order": c.describe()}
        for j, c in enumerate(certs)
    ]


# -- subcommands ---------------------------------------------------------------


def run_tame(args) -> str:
    p = TameProblem(args.l0, args.l)
    sol = tame_solve(p, _point(args, p.m))
    b = sol.denominator
    if args.format == "csv":
        return _emit_csv(["h", "b_h"], [[h, str(c)] for h, c in enumerate(b)])
    if args.format == "text":
        lines = [f"tame problem l0={p.l0} l={list(p.l)} L={p.L} L0={p.L0}"]
        lines += [f"b_{h} = {c}" for h, c in enumerate(b)]
        lines += [f"remainder {o['j']}: order {o['order']} (claimed >= {o['claimed_min']})" for o in _orders(sol.orders)]
        if sol.F_m is not None:
            lines.append(f"F_m = {sol.F_m}")
        return "\n".join(lines) + "\n"
    return _emit_json({
        "schema": 1,
        "l0": p.l0,
        "l": list(p.l),
        "L": p.L,
        "L0": p.L0,
        "point": None if sol.point is None else list(sol.point.values),
        "denominator": {str(h): str(c) for h, c in enumerate(b)},
        "numerators": [{str(n): str(c) for n, c in enumerate(num)} for num in sol.numerators],
        "orders": _orders(sol.orders),
        "F_m": None if sol.F_m is None else str(sol.F_m),
        "cramer_ratio": None if sol.cramer_ratio is None else str(sol.cramer_ratio),
    })


def run_twin(args) -> str:
    p = WildProblem(args.l, convention=args.convention)
    sol = twin_solve(p)
    if args.format == "csv":
        tame = tame_solve(TameProblem(0, p.l), with_minors=False).normalized_denominator()
        rows = [[i, str(tame[i]), str(sol.normalized[i])] for i in range(p.L + 1)]
        return _emit_csv(["i", "b_i", "L!/i! tau_i"], rows)
    if args.format == "text":
        lines = [f"twin problem l={list(p.l)} L={p.L} convention={p.convention}", f"T = {sol.T}"]
        lines += [f"B0[{i}] = {c}" for i, c in enumerate(sol.normalized)]
        lines += [f"remainder {o['j']}: order {o['order']} (claimed >= {o['claimed_min']})" for o in _orders(sol.orders)]
        return "\n".join(lines) + "\n"
    return _emit_json({
        "schema": 1,
        "l": list(p.l),
        "L": p.L,
        "convention": p.convention,
        "T": str(sol.T),
        "tau": [str(t) for t in sol.tau],
        "denominator": {str(i): str(c) for i, c in enumerate(sol.normalized)},
        "orders": _orders(sol.orders),
    })


def run_gcd_minors(args) -> str:
    l = args.l
    nu = args.nu or l
    if len(nu) != len(l):
        raise UsageError("--nu and --l must have the same length")
    p = WildProblem(l, nu, _point(args, len(l)), args.convention)
    rep = minor_gcd_report(p)
    if args.format == "csv":
        rows = [[k, " ".join(map(str, sel.indices)), str(v), str(q)]
                for k, (sel, v, q) in enumerate(zip(rep.selections, rep.minors, rep.quotients))]
        return _emit_csv(["index", "columns", "minor", "quotient"], rows)
    if args.format == "text":
        lines = [f"gcd = {rep.to_dict()['gcd_factored']}", f"claimed factor = {rep.claimed_factor}"]
        lines += [f"q[{k}] = {q}" for k, q in enumerate(rep.quotients)]
        return "\n".join(lines) + "\n"
    out = rep.to_dict()
    out.update({"l": list(p.l), "nu": list(p.nu)})
    return _emit_json(out)


def run_siegel(args) -> str:
    if args.a is None:
        raise UsageError("siegel needs --a")
    l = args.l
    nu = args.nu or l
    p = WildProblem(l, nu, _point(args, len(l)), "binomial")
    sol = siegel_pade_solve(p, args.budget)
    rep = sol.report.to_dict()
    rep["orders"] = _orders(sol.orders)
    if args.format == "text":
        lines = [f"{k} = {v}" for k, v in rep.items() if k != "orders"]
        lines += [f"remainder {o['j']}: order {o['order']} (claimed >= {o['claimed_min']})" for o in rep["orders"]]
        return "\n".join(lines) + "\n"
    if args.format == "csv":
        return _emit_csv(["h", "c_h"], [[h, c] for h, c in enumerate(sol.report.solution)])
    return _emit_json(rep)


def run_certify(args) -> str:
    rng = random.Random(args.seed)
    what = args.what
    results = {}
    if what in ("common-factor", "all"):
        n = 0
        for l in instances(3, 3, 7):
            twin_solve(WildProblem(l))
            n += 1
        results["common-factor"] = {"instances": n}
    if what in ("claimed-factor", "all"):
        cases = random_instances(rng, args.trials)
        checked = sum(certify_claimed_factor(WildProblem(l, nu), seed=args.seed).checked for l, nu in cases)
        results["claimed-factor"] = {"instances": len(cases), "minors_checked": checked}
    if what in ("specialization", "all"):
        cases = random_instances(rng, args.trials)
        for l, nu in cases:
            minor_gcd_report(WildProblem(l, nu, random_point(rng, len(l))))
        results["specialization"] = {"instances": len(cases)}
    if what in ("rank", "all"):
        cases = random_instances(rng, args.trials)
        bad = [list(l) for l, nu in cases if rank_check(WildProblem(l, nu)).rank != sum(nu)]
        if bad:
            raise CertificateError(f"rank below M for {bad}")
        results["rank"] = {"instances": len(cases)}
    if what in ("minor-closed-form", "all"):
        n = 0
        for m in (1, 2):
            for l0 in range(1, 6):
                for l in instances(m, 5):
                    if len(l) == m and l0 + sum(l) <= 6:
                        certify_minor_closed_form(TameProblem(l0, l))
                        n += 1
        results["minor-closed-form"] = {"instances": n}
    if what in ("vandermonde", "all"):
        for _ in range(args.trials):
            sizes = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
            n = sum(sizes)
            seq = PolySequence(tuple(
                Poly({(k,): rng.randint(-5, 5) for k in range(rng.randint(0, n) + 1)}, 1) for _ in range(n)))
            certify_caseA_factor(seq, BlockSpec(sizes))
            certify_caseB_factor(seq, BlockSpec(sizes))
        results["vandermonde"] = {"instances": args.trials}
    results = {"schema": 1, "seed": args.seed, "passed": True, "certificates": results}
    if args.format == "text":
        return "".join(f"{k}: passed {v}\n" for k, v in results["certificates"].items())
    return _emit_json(results)


def _table_dicts(which: int) -> list:
    rows = tables_mod.table(which)
    if which == 1:
        return [{"i": i, "b_i": str(b), "twin": str(t)} for i, b, t in rows]
    out = []
    for r in rows:
        out.append({
            "row": r["row"], "l": r["l"], "L": r["L"], "convention": r["convention"],
            "gcd": str(r["gcd"]), "gcd_factored": r["gcd_factored"],
            "quotients": [str(q) for q in r["quotients"]],
            "quotients_status": r["quotients_status"],
        })
    return out


def _check_table(which: int, rows: list, path: str) -> list:
    """Compare regenerated rows with a golden file; return mismatch messages."""
    with open(path) as fh:
        golden = json.load(fh)
    problems = []
    if which == 1:
        for r, g in zip(rows, golden["rows"]):
            for key in ("b_i", "twin"):
                if parse_poly(r[key], 2) != parse_poly(g[key], 2):
                    problems.append(f"table 1 row {r['i']} column {key}")
        return problems
    m = {2: 2, 3: 3}[which]
    for r, g in zip(rows, golden["rows"]):
        if parse_poly(r["gcd"], m) != parse_poly(g["gcd"], m):
            problems.append(f"table {which} row {r['row']} gcd")
        for k, q in enumerate(g.get("quotients") or []):
            if parse_poly(r["quotients"][k], m) != parse_poly(q, m):
                problems.append(f"table {which} row {r['row']} quotient {k}")
    return problems


def run_tables(args) -> tuple:
    rows = _table_dicts(args.which)
    problems = _check_table(args.which, rows, args.check) if args.check else []
    if args.format == "csv":
        if args.which == 1:
            text = _emit_csv(["i", "b_i", "L!/i! tau_i"], [[r["i"], r["b_i"], r["twin"]] for r in rows])
        else:
            text = _emit_csv(["row", "l", "convention", "gcd", "quotients", "status"],
                             [[r["row"], ",".join(map(str, r["l"])), r["convention"], r["gcd_factored"],
                               "; ".join(r["quotients"]), r["quotients_status"]] for r in rows])
    elif args.format == "text":
        lines = []
        for r in rows:
            if args.which == 1:
                lines.append(f"{r['i']}\t{r['b_i']}\t{r['twin']}")
            else:
                mark = " [derived]" if r["quotients_status"] == "derived" else ""
                lines.append(f"l={r['l']} ({r['convention']}): gcd {r['gcd_factored']}{mark}")
                lines += [f"    {q}" for q in r["quotients"]]
        text = "\n".join(lines) + "\n"
    else:
        text = _emit_json({"schema": 1, "table": args.which, "rows": rows, "mismatches": problems})
    return text, problems


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hermite-pade", description="Exact Hermite-Pade approximations to exponentials.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="json")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("tame", help="classical system: explicit denominator and certificates")
    sp.add_argument("--l0", type=int, default=1)
    sp.add_argument("--l", type=_int_list, required=True)
    sp.add_argument("--a", type=_int_list)
    common(sp)

    sp = sub.add_parser("twin", help="twin system with nu = l: Cramer solution")
    sp.add_argument("--l", type=_int_list, required=True)
    sp.add_argument("--convention", default="binomial")
    common(sp)

    sp = sub.add_parser("gcd-minors", help="gcd of all maximal minors of V")
    sp.add_argument("--l", type=_int_list, required=True)
    sp.add_argument("--nu", type=_int_list)
    sp.add_argument("--a", type=_int_list)
    sp.add_argument("--convention", default="binomial")
    common(sp)

    sp = sub.add_parser("siegel", help="small solution at an integer point and its bounds")
    sp.add_argument("--a", type=_int_list, required=True)
    sp.add_argument("--l", type=_int_list, required=True)
    sp.add_argument("--nu", type=_int_list)
    sp.add_argument("--budget", type=int)
    common(sp)

    sp = sub.add_parser("certify", help="run randomized and exhaustive certificates")
    sp.add_argument("--what", default="all",
                    choices=("all", "specialization", "common-factor", "claimed-factor", "rank", "minor-closed-form", "vandermonde"))
    sp.add_argument("--trials", type=int, default=10)
    common(sp)

    sp = sub.add_parser("tables", help="regenerate the example tables")
    sp.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--check", help="golden JSON file to compare against")
    common(sp)
    return parser


def parse_and_run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if getattr(args, "convention", None) is not None:
            from .wild import canonical_convention
            args.convention = canonical_convention(args.convention)
        handler = {
            "tame": run_tame, "twin": run_twin, "gcd-minors": run_gcd_minors,
            "siegel": run_siegel, "certify": run_certify,
        }.get(args.command)
        if handler is not None:
            out.write(handler(args))
            return 0
        text, problems = run_tables(args)
        out.write(text)
        for msg in problems:
            err.write(f"mismatch: {msg}\n")
        return 2 if problems else 0
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except CertificateError as exc:
        err.write(f"certificate falsified: {exc}\n")
        return 2
    except (ValueError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(parse_and_run())


if __name__ == "__main__":
    main()
