"""Command-line front end.

Subcommands: check, relativize, interp, eval, cps, extract.  Exit codes:
0 success, 1 bad input, 2 fuel exhausted, 3 internal invariant breach.
"""

import argparse
import json
import os
import re
import sys

from .cps import cps_envs, cps_term, lam_term_str, lam_type_str, typecheck_lam
from .errors import FuelExhausted, InternalError, MupcfError, UserError
from .extract import FAIL, TIMEOUT, run_extraction
from .format import (
    formula_sexp, parse_file, proof_sexp, term_sexp, type_sexp,
)
from .interp import interp_envs, interp_proof
from .lambdamu import eval_nat, typecheck
from .logic import THEORIES, check_proof
from .relativize import rel_proof

_CATEGORY = {
    UserError: ("user-error", 1),
    FuelExhausted: ("fuel-exhausted", 2),
    InternalError: ("internal-error", 3),
}


def _default_fuel():
    raw = os.environ.get("MUPCF_FUEL", "10000")
    try:
        return int(raw)
    except ValueError:
        raise UserError(f"MUPCF_FUEL must be an integer, got {raw!r}") \
            from None


def _parse_inputs(text):
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not m:
        raise UserError(f"--inputs must look like a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UserError(f"--inputs range is empty: {text}")
    return range(lo, hi + 1)


def _pick(table, kind, name):
    if name is not None:
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise UserError(f"no {kind} named {name} (known: {known})")
        return name
    if len(table) == 1:
        return next(iter(table))
    if not table:
        raise UserError(f"the file declares no {kind}")
    raise UserError(
        f"several {kind}s declared ({', '.join(sorted(table))}); "
        f"pick one with --name"
    )


def _emit(args, payload, text_lines):
    if args.format == "structured":
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _cmd_check(ws, args):
    names = [args.name] if args.name else list(ws.proofs)
    if args.name:
        _pick(ws.proofs, "proof", args.name)
    if not names:
        raise UserError("the file declares no proof")
    results = []
    for n in names:
        goal, pf = ws.proofs[n]
        check_proof(pf, ws.theory, goal)
        results.append({"name": n, "status": "ok"})
    _emit(args, {"command": "check", "results": results},
          [f"{r['name']}: ok" for r in results])
    return 0


def _cmd_relativize(ws, args):
    name = _pick(ws.proofs, "proof", args.name)
    goal, pf = ws.proofs[name]
    rpf, rtheory, rgoal = rel_proof(pf, ws.theory, goal)
    payload = {
        "command": "relativize",
        "name": name,
        "theory": rtheory.name,
        "goal": formula_sexp(rgoal.concl),
        "proof": proof_sexp(rpf),
    }
    _emit(args, payload, [
        f"theory: {payload['theory']}",
        f"goal: {payload['goal']}",
        f"proof: {payload['proof']}",
    ])
    return 0


def _cmd_interp(ws, args):
    name = _pick(ws.proofs, "proof", args.name)
    goal, pf = ws.proofs[name]
    t = interp_proof(pf, ws.theory, goal)
    env, lenv = interp_envs(goal)
    ty = typecheck(t, env, lenv)
    payload = {
        "command": "interp",
        "name": name,
        "term": term_sexp(t),
        "type": type_sexp(ty),
    }
    _emit(args, payload,
          [f"term: {payload['term']}", f"type: {payload['type']}"])
    return 0


def _cmd_eval(ws, args):
    name = _pick(ws.terms, "term", args.name)
    t = ws.terms[name]
    typecheck(t)
    value, steps = eval_nat(t, args.fuel)
    payload = {"command": "eval", "name": name, "value": value,
               "steps": steps}
    _emit(args, payload, [f"value: {value}", f"steps: {steps}"])
    return 0


def _cmd_cps(ws, args):
    name = _pick({**ws.proofs, **ws.terms}, "declaration", args.name)
    if name in ws.proofs:
        goal, pf = ws.proofs[name]
        t = interp_proof(pf, ws.theory, goal)
        env, lenv = interp_envs(goal)
    else:
        t, env, lenv = ws.terms[name], {}, {}
    g = cps_term(t, env, lenv)
    ty = typecheck_lam(g, cps_envs(env, lenv))
    payload = {
        "command": "cps",
        "name": name,
        "term": lam_term_str(g),
        "type": lam_type_str(ty),
    }
    _emit(args, payload,
          [f"term: {payload['term']}", f"type: {payload['type']}"])
    return 0


def _cmd_extract(ws, args):
    name = _pick(ws.proofs, "proof", args.name)
    goal, pf = ws.proofs[name]
    report = run_extraction(pf, ws.theory, goal, args.inputs, args.fuel)
    rows = report.rows()
    payload = {
        "command": "extract",
        "name": name,
        "program": term_sexp(report.program),
        "rows": rows,
    }
    lines = [f"program: {payload['program']}"]
    lines += [
        f"input={r['input']} witness={r['witness']} "
        f"verdict={r['verdict']} steps={r['steps']}"
        for r in rows
    ]
    _emit(args, payload, lines)
    verdicts = {r["verdict"] for r in rows}
    if FAIL in verdicts:
        return 1
    if TIMEOUT in verdicts:
        return 2
    return 0


_COMMANDS = {
    "check": _cmd_check,
    "relativize": _cmd_relativize,
    "interp": _cmd_interp,
    "eval": _cmd_eval,
    "cps": _cmd_cps,
    "extract": _cmd_extract,
}


def _build_parser():
    p = argparse.ArgumentParser(
        prog="mupcf",
        description="Check sequent proofs of classical arithmetic, "
                    "relativize them, compile them to control terms, and "
                    "extract witness programs.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for cmd, help_ in [
        ("check", "check every proof in a file"),
        ("relativize", "translate a proof into the relativized theory"),
        ("interp", "compile a proof to a control term"),
        ("eval", "run a program down to a numeral"),
        ("cps", "translate a proof or program into the target calculus"),
        ("extract", "extract and run a witness program"),
    ]:
        s = sub.add_parser(cmd, help=help_)
        s.add_argument("file", help="declaration file")
        s.add_argument("--name", help="declaration to operate on "
                                      "(default: the only one)")
        s.add_argument("--theory", choices=["paw", "caw"],
                       help="override the file's theory declaration")
        s.add_argument("--format", choices=["text", "structured"],
                       default="text", help="output mode")
        if cmd in ("eval", "extract"):
            s.add_argument("--fuel", type=int, default=None,
                           help="step budget (default: MUPCF_FUEL or 10000)")
        if cmd == "extract":
            s.add_argument("--inputs", default="0..10",
                           help="inclusive input range a..b (default 0..10)")
    return p


def _report_error(args, category, message):
    if getattr(args, "format", "text") == "structured":
        print(json.dumps({"error": {"category": category,
                                    "message": message}}))
    else:
        print(f"error[{category}]: {message}", file=sys.stderr)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if getattr(args, "fuel", None) is None and hasattr(args, "fuel"):
            args.fuel = _default_fuel()
        if hasattr(args, "inputs"):
            args.inputs = _parse_inputs(args.inputs)
        ws = parse_file(args.file)
        if args.theory:
            ws.theory_name = args.theory
        return _COMMANDS[args.command](ws, args)
    except MupcfError as ex:
        for klass, (category, code) in _CATEGORY.items():
            if isinstance(ex, klass):
                _report_error(args, category, str(ex))
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
