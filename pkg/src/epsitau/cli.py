"""Command-line front end.

Subcommands: translate, eliminate, check, verify, rank, degree, classify,
reconstruct, schemas.  Exit codes: 0 success/valid, 1 invalid or failure
report, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import eliminate as elim
from . import semantics
from .critical import degree, is_predicative, is_weak, rank, recognize_critical
from .judgments import Judgment, load_judgment, parse_logic
from .parser import ParseError, parse_formula, parse_term
from .semantics import BudgetExceededError, DEFAULT_BUDGET
from .syntax import to_text
from .translate import et_translate, herbrand_form, shadow

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_translate(args) -> int:
    phi = parse_formula(args.formula)
    if args.shadow:
        out = shadow(phi)
        label = "shadow"
    elif args.herbrandize:
        out = herbrand_form(phi)
        label = "herbrand_form"
    else:
        out = et_translate(phi)
        label = "translation"
    _emit(args, {label: to_text(out)}, [to_text(out)])
    return EXIT_OK


def cmd_check(args) -> int:
    logic = parse_logic(args.logic)
    phi = parse_formula(args.formula)
    # quantifier-free inputs are atom-abstracted; propositional ones pass
    # through with their own atom names
    [phi2], legend = semantics.abstract_atoms([phi])
    legend_rev = {name: to_text(atom) for atom, name in legend.items()}
    if logic.kind in ("classical", "lcm", "lc"):
        m = 2 if logic.kind == "classical" else (logic.m or semantics.lc_chain_size(phi2))
        ok, counter = semantics.valid_in_LCm(phi2, m, budget=args.budget)
        payload = {"logic": str(logic), "valid": ok}
        lines = [f"{'valid' if ok else 'invalid'} in {logic}"]
        if counter is not None:
            readable = {legend_rev.get(k, k): v for k, v in counter.items()}
            payload["countervaluation"] = readable
            payload["chain_size"] = m
            lines.append(f"countervaluation on the {m}-chain: {readable}")
        _emit(args, payload, lines)
        return EXIT_OK if ok else EXIT_INVALID
    ok, trace = semantics.prove_H_trace([], phi2)
    _emit(
        args,
        {"logic": str(logic), "valid": ok, "trace": trace},
        [f"{'valid' if ok else 'invalid'} in {logic}"] + trace,
    )
    return EXIT_OK if ok else EXIT_INVALID


def cmd_verify(args) -> int:
    j = load_judgment(Path(args.judgment).read_text())
    ok = semantics.verify_judgment(j, budget=args.budget)
    _emit(args, {"logic": str(j.logic), "holds": ok}, [f"judgment {'holds' if ok else 'fails'} in {j.logic}"])
    return EXIT_OK if ok else EXIT_INVALID


def _trace_lines(trace: elim.EliminationTrace) -> list[str]:
    lines = []
    for i, st in enumerate(trace.steps, start=1):
        lines.append(f"step {i}: eliminate {to_text(st.target)}")
        lines.append(f"  set: {', '.join(to_text(t) for t in st.elimination_set)}")
        for f in st.eliminated:
            lines.append(f"  removed: {to_text(f)}")
        for f in st.axiom_instances_used:
            lines.append(f"  instance: {to_text(f)}")
        lines.append(f"  goal: {to_text(st.after.goal)}")
    for t, name in trace.grounding:
        lines.append(f"ground {to_text(t)} as {name}")
    lines.append(f"result: {to_text(trace.result)}")
    return lines


def cmd_eliminate(args) -> int:
    j = load_judgment(Path(args.judgment).read_text())
    verify = args.verify in ("steps", "full")
    if args.driver == "hb":
        trace = elim.run_elimination(j, verify=verify, budget=args.budget)
    elif args.driver == "weak-lin":
        out = elim.run_weak_lin(j)
        if isinstance(out, elim.FailureReport):
            payload = {
                "failure": {
                    "step": out.step_index,
                    "target": to_text(out.target),
                    "formula": to_text(out.formula),
                    "reason": out.reason,
                }
            }
            _emit(args, payload, [str(out)])
            return EXIT_INVALID
        trace = out
        if verify:
            for st in trace.steps:
                if not semantics.verify_judgment(st.after, budget=args.budget):
                    print(f"verification failed after step: {to_text(st.target)}", file=sys.stderr)
                    return EXIT_INVALID
    else:  # jankov: one complete step on the selected maximal term
        readings = elim.judgment_readings(j)
        if not readings:
            trace = elim.EliminationTrace((), j.goal, ())
        else:
            from .critical import select_max

            e = select_max(list(readings))
            step = elim.eliminate_negated_jankov(j, e)
            trace = elim.EliminationTrace((step,), step.after.goal, ())
        if verify:
            for st in trace.steps:
                if not semantics.verify_judgment(st.after, budget=args.budget):
                    print(f"verification failed after step: {to_text(st.target)}", file=sys.stderr)
                    return EXIT_INVALID
    if args.verify == "full" and args.driver in ("hb", "weak-lin"):
        final = Judgment(j.logic, (), (), trace.result)
        if not semantics.verify_judgment(final, budget=args.budget):
            print("final result failed the backend check", file=sys.stderr)
            return EXIT_INVALID
    if args.format == "json":
        print(elim.trace_to_json(trace, j.logic))
    else:
        for line in _trace_lines(trace):
            print(line)
    return EXIT_OK


def cmd_rank(args) -> int:
    t = parse_term(args.term)
    value = rank(t)
    _emit(args, {"rank": value}, [str(value)])
    return EXIT_OK


def cmd_degree(args) -> int:
    t = parse_term(args.term)
    value = degree(t)
    _emit(args, {"degree": value}, [str(value)])
    return EXIT_OK


def cmd_classify(args) -> int:
    phi = parse_formula(args.formula)
    ambient: list = []
    if args.proof:
        j = load_judgment(Path(args.proof).read_text())
        ambient = elim.judgment_critical_terms(j)
    readings = recognize_critical(phi)
    payload = []
    lines = []
    for r in readings:
        entry = {
            "kind": r.kind,
            "critical_term": to_text(r.critical_term),
            "witness": to_text(r.witness),
            "predicative": is_predicative(r),
        }
        line = (
            f"[{r.kind}] term {to_text(r.critical_term)}  witness {to_text(r.witness)}  "
            f"{'predicative' if entry['predicative'] else 'impredicative'}"
        )
        if args.proof:
            entry["weak"] = is_weak(r, ambient)
            line += f"  {'weak' if entry['weak'] else 'not weak'}"
        payload.append(entry)
        lines.append(line)
    if not readings:
        lines = ["not a critical formula"]
    _emit(args, {"readings": payload}, lines)
    return EXIT_OK if readings else EXIT_INVALID


def cmd_reconstruct(args) -> int:
    disjunction = parse_formula(args.disjunction)
    skeleton = parse_formula(args.skeleton)
    holes = args.vars.split(",")
    judgment, trace = elim.reconstruct_from_herbrand(disjunction, skeleton, holes)
    payload = {
        "criticals": [to_text(c) for c in judgment.criticals],
        "goal": to_text(judgment.goal),
        "replayed": to_text(trace.result),
    }
    lines = [f"critical: {to_text(c)}" for c in judgment.criticals]
    lines.append(f"goal: {to_text(judgment.goal)}")
    lines.append(f"replayed: {to_text(trace.result)}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_schemas(args) -> int:
    if args.check_relations:
        report = semantics.schema_relations_check()
        ok = all(report.values())
        _emit(
            args,
            {"relations": report},
            [f"{'pass' if v else 'FAIL'}  {k}" for k, v in report.items()],
        )
        return EXIT_OK if ok else EXIT_INVALID
    phi = semantics.schema(args.kind, n=args.n)
    _emit(args, {"schema": to_text(phi)}, [to_text(phi)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="epsitau",
        description="epsilon/tau calculi over intermediate propositional logics",
    )
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max valuations per check")
    ap.add_argument("--seed", type=int, default=0, help="seed echoed into reproducible runs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="epsilon/tau translation of a formula")
    p.add_argument("formula")
    p.add_argument("--shadow", action="store_true", help="print the propositional shadow")
    p.add_argument("--herbrandize", action="store_true", help="print the Herbrand form (prenex input)")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("check", help="validity of a propositional/quantifier-free formula")
    p.add_argument("formula")
    p.add_argument("--logic", default="classical")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("verify", help="verify a judgment file")
    p.add_argument("judgment")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("eliminate", help="run critical formula elimination on a judgment file")
    p.add_argument("judgment")
    p.add_argument("--driver", choices=("hb", "weak-lin", "jankov"), default="hb")
    p.add_argument("--verify", choices=("none", "steps", "full"), default="none")
    p.set_defaults(fn=cmd_eliminate)

    p = sub.add_parser("rank", help="rank of an epsilon/tau term")
    p.add_argument("term")
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("degree", help="degree of an epsilon/tau term")
    p.add_argument("term")
    p.set_defaults(fn=cmd_degree)

    p = sub.add_parser("classify", help="critical readings of a formula")
    p.add_argument("formula")
    p.add_argument("--proof", help="judgment file supplying the ambient critical terms")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("reconstruct", help="rebuild a judgment from a Herbrand disjunction")
    p.add_argument("disjunction")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--vars", required=True, help="comma-separated skeleton variables")
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("schemas", help="print schema instances or check their relations")
    p.add_argument("kind", nargs="?", default="Lin")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--check-relations", action="store_true")
    p.set_defaults(fn=cmd_schemas)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as ex:
        print(f"budget exceeded: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
