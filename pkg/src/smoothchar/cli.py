"""Command-line front end.

    smoothchar pairs --word ABAAAB
    smoothchar verify --all --small
    smoothchar scan --q-min 1000 --q-max 100000 --seed 7 --out scan.csv

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import pinned
from .bounds_lab import FamilyConfig, eval_word, fit_exponent, rows_to_csv, rows_to_dicts, scan_family
from .characters import DirichletCharacter, enumerate_primitive, sample_primitive
from .complete_sums import k_sum, w_table
from .errors import Infeasible, SmoothCharError
from .factor_planner import (assemble_factorization, plan_targets_ba3b, plan_targets_theorem1,
                             regroup_for_small_q0)
from .lfunc import LRow, l_half_afe, l_half_hurwitz, l_rows_to_csv, scan_l_family
from .residue_core import factor_squarefree
from .vdc_processes import Interval, char_sum
from .verify import CHECKS, run_checks

SCHEMA = 1


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, out: str | None):
    _emit(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n", out)


def _character(args) -> DirichletCharacter:
    if args.char:
        chi = DirichletCharacter.from_name(args.char)
        if args.q is not None and chi.q != args.q:
            raise UsageError(f"character {args.char} does not have modulus {args.q}")
        return chi
    if args.q is None:
        raise UsageError("give --q or --char")
    chars = enumerate_primitive(args.q) if args.q < 10**5 else sample_primitive(
        args.q, args.index + 1, np.random.default_rng(0))
    if args.index >= len(chars):
        raise UsageError(f"q = {args.q} has only {len(chars)} primitive characters")
    return chars[args.index]


def _complex(z: complex) -> list[float]:
    return [z.real, z.imag]


# ------------------------------------------------------------------ commands

def cmd_factor(args) -> int:
    mod = factor_squarefree(args.q)
    _emit_json({"q": mod.q, "primes": list(mod.primes), "delta": mod.delta, "omega": mod.omega}, args.out)
    return 0


def cmd_charsum(args) -> int:
    chi = _character(args)
    value = char_sum(chi, Interval(args.start, args.length))
    _emit_json({"char": chi.name, "start": args.start, "length": args.length,
                "value": _complex(value), "abs": abs(value)}, args.out)
    return 0


def cmd_wsum(args) -> int:
    chi = _character(args)
    table = w_table(chi, args.h)
    if args.x is not None:
        v = table[args.x]
        _emit_json({"char": chi.name, "h": args.h, "x": args.x, "value": _complex(v), "abs": abs(v)},
                   args.out)
        return 0
    lines = ["x,re_W,im_W,abs_W"]
    lines += [f"{x},{v.real:.15g},{v.imag:.15g},{abs(v):.15g}" for x, v in enumerate(table.values)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_ksum(args) -> int:
    chi = _character(args)
    v = k_sum(chi, args.h, tuple(args.shifts), args.y)
    bound = chi.q ** ((2 ** len(args.shifts) + 1) / 2)
    _emit_json({"char": chi.name, "h": args.h, "shifts": args.shifts, "y": args.y,
                "value": _complex(v), "abs": abs(v), "ratio": abs(v) / bound}, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.all:
        names = list(CHECKS)
    elif args.lemma:
        names = args.lemma
    else:
        raise UsageError("give --lemma NAME or --all")
    results = run_checks(names, q=args.q, trials=args.trials, seed=args.seed, small=args.small)
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"{flag} {r.name:<11} checked={r.checked} worst={r.worst:.6g} bound={r.bound:.6g} {r.detail}",
              file=sys.stderr)
    if args.out:
        _emit_json({"results": [r.to_dict() for r in results]}, args.out)
    return 0 if all(r.passed for r in results) else 1


def cmd_plan(args) -> int:
    mod = factor_squarefree(args.q)
    if args.targets:
        targets = args.targets
        windows = None if args.window_factor else [(t, t) for t in targets]
    elif args.ba3b is not None:
        targets, windows = plan_targets_ba3b(args.q, args.ba3b), None
    elif args.theorem1 is not None:
        targets, windows = plan_targets_theorem1(args.q, args.theorem1), None
    else:
        raise UsageError("give --targets, --ba3b N or --theorem1 N")
    try:
        plan = assemble_factorization(mod, targets, windows=windows, window_factor=args.window_factor,
                                      style=args.style)
    except Infeasible as exc:
        payload = {"feasible": False, "error": str(exc)}
        if exc.best is not None:
            payload["best"] = exc.best.to_dict()
        _emit_json(payload, args.out)
        return 1
    if args.regroup is not None:
        plan = regroup_for_small_q0(plan, args.regroup)
    _emit_json({"feasible": plan.feasible, "notes": list(plan.notes), **plan.to_dict()}, args.out)
    return 0


def cmd_pairs(args) -> int:
    print(eval_word(args.word))
    return 0


def cmd_scan(args) -> int:
    cfg = FamilyConfig(qs=args.qs, q_min=args.q_min, q_max=args.q_max, delta_max=args.delta_max,
                       count=args.count, n_rule=args.n_rule, char_cap=args.char_cap, seed=args.seed)
    rows = scan_family(cfg)
    if args.format == "json":
        slope = fit_exponent(rows) if len({r.q for r in rows}) >= 3 else None
        _emit_json({"rows": rows_to_dicts(rows), "slope": slope, "pinned": pinned.as_dict()}, args.out)
    else:
        _emit(rows_to_csv(rows), args.out)
    return 0


def cmd_lfunc(args) -> int:
    if args.q is not None:
        rows = []
        chars = enumerate_primitive(args.q)
        if args.char_cap and len(chars) > args.char_cap:
            chars = sample_primitive(args.q, args.char_cap, np.random.default_rng([args.seed, args.q]))
        for chi in chars:
            rows.append(LRow(args.q, chi.name, l_half_afe(chi), "afe"))
            if args.hurwitz:
                rows.append(LRow(args.q, chi.name, l_half_hurwitz(chi), "hurwitz"))
        _emit(l_rows_to_csv(rows), args.out)
        return 0
    report = scan_l_family(q_min=args.q_min, q_max=args.q_max, delta_max=args.delta_max, count=args.count,
                           char_cap=args.char_cap or 64, seed=args.seed)
    if args.format == "json":
        _emit_json({**report.to_dict(), "pinned": pinned.as_dict()}, args.out)
    else:
        lines = ["q,max_abs_L,char_id"] + [f"{q},{v:.15g},{c}" for q, v, c in report.rows]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# ------------------------------------------------------------------ parser

def _char_args(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, help="modulus (first primitive character unless --char/--index)")
    p.add_argument("--char", help='character name such as "15:3^1,5^2"')
    p.add_argument("--index", type=int, default=0, help="index into the primitive characters of q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smoothchar", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor a squarefree modulus")
    p.add_argument("q", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("charsum", help="sum of chi over [start, start + length)")
    _char_args(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_charsum)

    p = sub.add_parser("wsum", help="complete sum W_{chi,h}(x); all x as CSV without --x")
    _char_args(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--x", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_wsum)

    p = sub.add_parser("ksum", help="complete sum K over shift tuples")
    _char_args(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--shifts", type=_ints, required=True, help="comma-separated h_1..h_k")
    p.add_argument("--y", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ksum)

    p = sub.add_parser("verify", help="run pinned verification checks")
    p.add_argument("--lemma", action="append", choices=sorted(CHECKS))
    p.add_argument("--all", action="store_true")
    p.add_argument("--small", action="store_true", help="desk-scale parameters")
    p.add_argument("--q", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plan", help="assign the primes of q to target factor sizes")
    p.add_argument("--q", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--targets", type=_floats)
    g.add_argument("--ba3b", type=float, metavar="N")
    g.add_argument("--theorem1", type=float, metavar="N")
    p.add_argument("--window-factor", type=float)
    p.add_argument("--style", choices=("leading", "symmetric"), default="leading")
    p.add_argument("--regroup", type=float, metavar="N", help="merge leading slots until they exceed q/N")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("pairs", help="evaluate an A/B word on (0, 1)")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_pairs)

    for name, func, help_ in (("scan", cmd_scan, "max |S| over a smooth family"),
                              ("lfunc", cmd_lfunc, "central values L(1/2, chi)")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--q-min", type=int, default=1000 if name == "scan" else 100)
        p.add_argument("--q-max", type=int, default=10**6 if name == "scan" else 10**4)
        p.add_argument("--delta-max", type=float, default=0.4 if name == "scan" else 0.5)
        p.add_argument("--count", type=int, default=24 if name == "scan" else 20)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out")
        p.set_defaults(func=func)
    scan = sub.choices["scan"]
    scan.add_argument("--qs", type=_ints, help="explicit comma-separated moduli")
    scan.add_argument("--n-rule", default="sqrt", help="sqrt, q, q^e or an integer")
    scan.add_argument("--char-cap", type=int, default=4096)
    lf = sub.choices["lfunc"]
    lf.add_argument("--q", type=int, help="single modulus: one row per character")
    lf.add_argument("--hurwitz", action="store_true", help="add Hurwitz-route rows")
    lf.add_argument("--char-cap", type=int, default=0)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, SmoothCharError, ValueError) as exc:
        print(f"smoothchar {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
