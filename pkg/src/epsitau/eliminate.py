"""Critical-formula elimination: single steps, drivers, and reconstructions.

Each elimination replaces one epsilon/tau term by a set of terms, disjoining
the goal over the set and substituting through the remaining premises, at
the cost of recording instances of the logic's characteristic schema.  The
driver iterates over terms of maximal degree among those of maximal rank,
which makes the (rank, degree, count) measure decrease and the process stop.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .critical import (
    CriticalFormula,
    degree,
    is_predicative,
    make_critical,
    rank,
    recognize_critical,
    select_max,
)
from .judgments import LC, Judgment, Logic, make_judgment
from .syntax import (
    App,
    Atom,
    Eps,
    Formula,
    Implies,
    Not,
    Or,
    Signature,
    Term,
    Var,
    and_join,
    contains_etau,
    dedup,
    eps,
    etau_subterms,
    free_vars,
    instantiate,
    match_holes,
    or_join,
    or_spine,
    sort_key,
    subst_term,
    subst_var,
    to_text,
)

__all__ = [
    "EliminationError",
    "EliminationStep",
    "EliminationTrace",
    "FailureReport",
    "bm_extract",
    "bm_stage",
    "combine_disjunction",
    "eliminate_complete_Gm",
    "eliminate_complete_classical",
    "eliminate_impredicative_Bm",
    "eliminate_negated_jankov",
    "eliminate_predicative_lin",
    "eliminate_single_classical",
    "judgment_critical_terms",
    "judgment_measure",
    "reconstruct_from_herbrand",
    "run_elimination",
    "run_weak_lin",
    "strengthen_premise",
    "theorem_form_convert",
    "trace_to_json",
]


class EliminationError(RuntimeError):
    pass


@dataclass(frozen=True, slots=True)
class EliminationStep:
    target: Term
    eliminated: tuple[Formula, ...]
    elimination_set: tuple[Term, ...]
    axiom_instances_used: tuple[Formula, ...]
    before: Judgment
    after: Judgment
    raw_disjunct_count: int


@dataclass(frozen=True, slots=True)
class EliminationTrace:
    steps: tuple[EliminationStep, ...]
    result: Formula
    grounding: tuple[tuple[Term, str], ...]

    @property
    def final(self) -> Judgment | None:
        return self.steps[-1].after if self.steps else None


@dataclass(frozen=True, slots=True)
class FailureReport:
    step_index: int
    target: Term
    formula: Formula
    reason: str
    steps: tuple[EliminationStep, ...] = field(default=())

    def __str__(self) -> str:
        return (
            f"step {self.step_index}: cannot eliminate {to_text(self.target)}: "
            f"{self.reason}: {to_text(self.formula)}"
        )


# ---------------------------------------------------------------------------
# Reading bookkeeping


def judgment_readings(j: Judgment) -> dict[Term, list[tuple[Formula, CriticalFormula]]]:
    """Critical terms of the judgment, with the formulas and readings per term.

    Premises without any reading are substitution residues; they stay in the
    criticals bucket but never drive an elimination.
    """
    out: dict[Term, list[tuple[Formula, CriticalFormula]]] = {}
    for f in j.criticals:
        for r in recognize_critical(f):
            out.setdefault(r.critical_term, []).append((f, r))
    return out


def judgment_critical_terms(j: Judgment) -> list[Term]:
    return list(judgment_readings(j))


def judgment_measure(terms: Sequence[Term]) -> tuple[int, int, int]:
    """(max rank, max degree among max-rank terms, count of those) for the driver."""
    if not terms:
        return (0, 0, 0)
    mr = max(rank(t) for t in terms)
    top_rank = [t for t in terms if rank(t) == mr]
    md = max(degree(t) for t in top_rank)
    cnt = sum(1 for t in top_rank if degree(t) == md)
    return (mr, md, cnt)


def _expand(goal: Formula, e: Term, terms: Sequence[Term]) -> tuple[Formula, int]:
    parts: list[Formula] = []
    for t in terms:
        parts.extend(or_spine(subst_term(goal, e, t)))
    return or_join(dedup(parts)), len(parts)


def _subst_set(formulas: Sequence[Formula], e: Term, terms: Sequence[Term]) -> list[Formula]:
    return [subst_term(f, e, t) for t in terms for f in formulas]


def _at(e: Term, t: Term) -> Formula:
    """The matrix of e instantiated at t."""
    return instantiate(e.body, t)


def _witnesses(pairs: list[tuple[Formula, CriticalFormula]]) -> list[Term]:
    return list(dedup([r.witness for _, r in pairs]))


def _split_criticals(
    j: Judgment, e: Term
) -> tuple[list[tuple[Formula, CriticalFormula]], list[Formula]]:
    """(readings at e, remaining premises) in premise order."""
    readings = judgment_readings(j).get(e, [])
    lam = {f for f, _ in readings}
    rest = [f for f in j.criticals if f not in lam]
    return readings, rest


def _step(
    j: Judgment,
    e: Term,
    eliminated: Sequence[Formula],
    elim_set: Sequence[Term],
    new_criticals: Sequence[Formula],
    new_instances: Sequence[Formula],
) -> EliminationStep:
    goal, raw = _expand(j.goal, e, elim_set)
    instances = dedup(
        _subst_set(j.instances, e, elim_set) + list(new_instances)
    )
    after = Judgment(j.logic, dedup(new_criticals), instances, goal)
    return EliminationStep(
        target=e,
        eliminated=tuple(eliminated),
        elimination_set=tuple(elim_set),
        axiom_instances_used=tuple(new_instances),
        before=j,
        after=after,
        raw_disjunct_count=raw,
    )


# ---------------------------------------------------------------------------
# Structural lemmas as operations


def combine_disjunction(j1: Judgment, a: Formula, j2: Judgment, b: Formula) -> Judgment:
    """From (Gamma, A |- C) and (Gamma', B |- D) build (Gamma, Gamma', A|B |- C|D)."""
    if j1.logic != j2.logic:
        raise ValueError(f"logic mismatch: {j1.logic} vs {j2.logic}")
    if a not in j1.criticals:
        raise ValueError(f"premise not present: {to_text(a)}")
    if b not in j2.criticals:
        raise ValueError(f"premise not present: {to_text(b)}")
    rest1 = [f for f in j1.criticals if f != a]
    rest2 = [f for f in j2.criticals if f != b]
    merged = or_join(dedup([a, b]))
    goal = or_join(dedup(or_spine(j1.goal) + or_spine(j2.goal)))
    return Judgment(
        j1.logic,
        dedup(rest1 + rest2 + [merged]),
        dedup(list(j1.instances) + list(j2.instances)),
        goal,
    )


def strengthen_premise(
    j: Judgment,
    a: Formula,
    b: Formula,
    justification: str = "",
    verify: bool = False,
    budget: int | None = None,
) -> Judgment:
    """Replace premise A by B, justified by B |- A in the judgment's logic."""
    if a not in j.criticals:
        raise ValueError(f"premise not present: {to_text(a)}")
    if verify:
        from . import semantics

        sub = Judgment(j.logic, (b,), (), a)
        kwargs = {} if budget is None else {"budget": budget}
        if not semantics.verify_judgment(sub, **kwargs):
            raise EliminationError(
                f"justification {justification!r} failed: {to_text(b)} |- {to_text(a)}"
            )
    criticals = tuple(b if f == a else f for f in j.criticals)
    return Judgment(j.logic, dedup(criticals), j.instances, j.goal)


# ---------------------------------------------------------------------------
# Elimination set constructions


def eliminate_single_classical(j: Judgment, c: CriticalFormula) -> EliminationStep:
    """Remove one critical formula using an excluded-middle instance.

    The elimination set is {e, s}; the other critical formulas of e are kept
    unsubstituted, the rest doubled across the set.
    """
    if j.logic.kind != "classical":
        raise ValueError("single elimination via excluded middle needs classical logic")
    if c.rendered not in j.criticals:
        raise ValueError(f"not a premise: {to_text(c.rendered)}")
    e = c.critical_term
    readings, rest = _split_criticals(j, e)
    retained = [f for f, _ in readings if f != c.rendered]
    s = c.witness
    elim_set = dedup([e, s])
    a_s = _at(e, s)
    instance = Or(a_s, Not(a_s)) if c.kind == "eps" else Or(Not(a_s), a_s)
    new_criticals = _subst_set(rest, e, elim_set) + retained
    return _step(j, e, [c.rendered], elim_set, new_criticals, [instance])


def eliminate_complete_classical(j: Judgment, e: Term) -> EliminationStep:
    """Remove all critical formulas of e at once; at most k+1 goal disjuncts."""
    if j.logic.kind != "classical":
        raise ValueError("complete classical elimination needs classical logic")
    readings, rest = _split_criticals(j, e)
    if not readings:
        raise ValueError(f"term is not critical in the judgment: {to_text(e)}")
    ws = _witnesses(readings)
    elim_set = dedup([e] + ws)
    pos = [_at(e, s) for s in ws]
    if isinstance(e, Eps):
        instance = or_join(pos + [and_join([Not(p) for p in pos])])
    else:
        instance = or_join([and_join(pos)] + [Not(p) for p in pos])
    new_criticals = _subst_set(rest, e, elim_set)
    return _step(j, e, [f for f, _ in readings], elim_set, new_criticals, [instance])


def eliminate_negated_jankov(j: Judgment, e: Term) -> EliminationStep:
    """Complete elimination for a negated goal, from weak excluded middle."""
    if j.logic.kind not in ("kc", "lc", "lcm", "classical"):
        raise ValueError(f"logic {j.logic} does not prove weak excluded middle")
    if not isinstance(j.goal, Not):
        raise ValueError("the goal must be a negation")
    readings, rest = _split_criticals(j, e)
    if not readings:
        raise ValueError(f"term is not critical in the judgment: {to_text(e)}")
    ws = _witnesses(readings)
    elim_set = dedup([e] + ws)
    pos = [_at(e, s) for s in ws]
    if isinstance(e, Eps):
        instance = Or(and_join([Not(p) for p in pos]), or_join([Not(Not(p)) for p in pos]))
    else:
        instance = Or(and_join([Not(Not(p)) for p in pos]), or_join([Not(p) for p in pos]))
    new_criticals = _subst_set(rest, e, elim_set)
    return _step(j, e, [f for f, _ in readings], elim_set, new_criticals, [instance])


def eliminate_predicative_lin(j: Judgment, e: Term) -> EliminationStep:
    """Eliminate a term with only predicative critical formulas, using linearity.

    The elimination set is exactly the witness list; the recorded instance is
    the valid disjunction over j of the conjunctions of A(u_i) -> A(u_j).
    """
    if not j.logic.proves_lin:
        raise ValueError(f"logic {j.logic} does not prove linearity")
    readings, rest = _split_criticals(j, e)
    if not readings:
        raise ValueError(f"term is not critical in the judgment: {to_text(e)}")
    bad = [f for f, r in readings if not is_predicative(r)]
    if bad:
        raise ValueError(f"impredicative critical formula for {to_text(e)}: {to_text(bad[0])}")
    ws = _witnesses(readings)
    pos = [_at(e, u) for u in ws]
    if isinstance(e, Eps):
        instance = or_join([and_join([Implies(pi, pj) for pi in pos]) for pj in pos])
    else:
        instance = or_join([and_join([Implies(pj, pi) for pi in pos]) for pj in pos])
    new_criticals = _subst_set(rest, e, ws)
    return _step(j, e, [f for f, _ in readings], ws, new_criticals, [instance])


def _apply_word(word: Sequence[Term], e: Term, base: Term) -> Term:
    out = base
    for ctx in reversed(word):
        out = subst_term(ctx, e, out)
    return out


def _chain(e: Term, path: Sequence[Term], kind: str) -> Formula:
    atoms = [_at(e, t) for t in path]
    if kind == "tau":
        atoms = list(reversed(atoms))
    return or_join([Implies(a, b) for a, b in zip(atoms, atoms[1:])])


def eliminate_impredicative_Bm(j: Judgment, e: Term, m: int) -> EliminationStep:
    """Eliminate the impredicative critical formulas of e using the m-link chains.

    The witnesses' contexts are iterated into words of length < m; the goal
    is disjoined over every word applied to e, the predicative premises stay,
    and the recorded instances are the length-m word chains plus the
    linearity chains that absorb the substituted predicative premises.
    """
    if m < 2:
        raise ValueError("chain elimination needs m >= 2")
    if j.logic.bm_level is None or j.logic.bm_level > m:
        raise ValueError(f"logic {j.logic} does not prove the {m}-link chain schema")
    readings, rest = _split_criticals(j, e)
    impred = [(f, r) for f, r in readings if not is_predicative(r)]
    pred = [(f, r) for f, r in readings if is_predicative(r)]
    if not impred:
        raise ValueError(f"no impredicative critical formulas for {to_text(e)}")
    contexts = sorted(_witnesses(impred), key=sort_key)
    kind = "eps" if isinstance(e, Eps) else "tau"

    elim_set: list[Term] = []
    for length in range(m):
        for word in itertools.product(contexts, repeat=length):
            elim_set.append(_apply_word(word, e, e))
    elim_set = list(dedup(elim_set))

    instances: list[Formula] = []
    for word in itertools.product(contexts, repeat=m):
        path = [_apply_word(word[i:], e, e) for i in range(m + 1)]
        instances.append(_chain(e, path, kind))
    pred_ws = _witnesses(pred)
    for length in range(1, m):
        for word in itertools.product(contexts, repeat=length):
            suffix = [_apply_word(word[i:], e, e) for i in range(length + 1)]
            for u in pred_ws:
                instances.append(_chain(e, [u] + suffix, kind))

    new_criticals = _subst_set(rest, e, elim_set) + [f for f, _ in pred]
    return _step(
        j, e, [f for f, _ in impred], elim_set, new_criticals, dedup(instances)
    )


def bm_stage(j: Judgment, e: Term, i: int) -> tuple[Formula, list[Formula]]:
    """The goal and chain premises after stage i of the chain expansion.

    Stage i has the goal disjoined over all words of length < i and the
    length-i word chains as pending premises; useful for inspecting the
    construction mid-flight.
    """
    readings, _ = _split_criticals(j, e)
    impred = [(f, r) for f, r in readings if not is_predicative(r)]
    contexts = sorted(_witnesses(impred), key=sort_key)
    kind = "eps" if isinstance(e, Eps) else "tau"
    terms: list[Term] = []
    for length in range(i):
        for word in itertools.product(contexts, repeat=length):
            terms.append(_apply_word(word, e, e))
    goal, _ = _expand(j.goal, e, list(dedup(terms)))
    chains = []
    for word in itertools.product(contexts, repeat=i):
        path = [_apply_word(word[k:], e, e) for k in range(i + 1)]
        chains.append(_chain(e, path, kind))
    return goal, chains


def eliminate_complete_Gm(j: Judgment, e: Term, m: int) -> list[EliminationStep]:
    """Complete elimination of e in an m-valued logic.

    The impredicative premises are expanded through the word chains first;
    the predicative ones are then removed by the linearity construction over
    the expanded goal.  Either phase is skipped when it has nothing to do.
    """
    readings, _ = _split_criticals(j, e)
    if not readings:
        raise ValueError(f"term is not critical in the judgment: {to_text(e)}")
    has_impred = any(not is_predicative(r) for _, r in readings)
    has_pred = any(is_predicative(r) for _, r in readings)
    steps: list[EliminationStep] = []
    if has_impred:
        steps.append(eliminate_impredicative_Bm(j, e, m))
        j = steps[-1].after
    if has_pred:
        steps.append(eliminate_predicative_lin(j, e))
    return steps


# ---------------------------------------------------------------------------
# Drivers


def _ground_residuals(goal: Formula, sig: Signature) -> tuple[Formula, list[tuple[Term, str]]]:
    grounding: list[tuple[Term, str]] = []
    while True:
        residuals = etau_subterms(goal)
        if not residuals:
            return goal, grounding
        t = residuals[0]
        name = sig.fresh("c", arity=0)
        goal = subst_term(goal, t, App(name, ()))
        grounding.append((t, name))


def _finish(j: Judgment, steps: list[EliminationStep]) -> EliminationTrace:
    sig = Signature.collect(j.goal, *j.criticals, *j.instances)
    goal, grounding = _ground_residuals(j.goal, sig)
    result = or_join(dedup(or_spine(goal)))
    if contains_etau(result):
        raise EliminationError("grounding left an epsilon/tau term behind")
    return EliminationTrace(tuple(steps), result, tuple(grounding))


def run_elimination(
    j: Judgment,
    verify: bool = False,
    budget: int | None = None,
    on_step: Callable[[EliminationStep], None] | None = None,
) -> EliminationTrace:
    """The full elimination loop for classical and m-valued Godel logics.

    Repeatedly selects a critical term of maximal degree among those of
    maximal rank, applies the logic's complete elimination, and checks that
    the (rank, degree, count) measure strictly decreases.  Residual terms in
    the final goal are replaced by fresh constants, one per alpha-class.
    """
    if j.logic.kind not in ("classical", "lcm"):
        raise ValueError(
            f"the full driver handles classical and m-valued logics, not {j.logic}"
        )
    if verify:
        _check_judgment(j, budget, "input judgment")
    steps: list[EliminationStep] = []
    while True:
        terms = judgment_critical_terms(j)
        if not terms:
            break
        before_measure = judgment_measure(terms)
        e = select_max(terms)
        if j.logic.kind == "classical":
            new_steps = [eliminate_complete_classical(j, e)]
        else:
            new_steps = eliminate_complete_Gm(j, e, j.logic.m)
        for st in new_steps:
            if verify:
                _check_judgment(st.after, budget, f"after eliminating {to_text(e)}")
            if on_step is not None:
                on_step(st)
        steps.extend(new_steps)
        j = new_steps[-1].after
        after_measure = judgment_measure(judgment_critical_terms(j))
        if not after_measure < before_measure:
            raise EliminationError(
                f"termination measure did not decrease: {before_measure} -> {after_measure}"
            )
    return _finish(j, steps)


def run_weak_lin(
    j: Judgment, first: Term | None = None
) -> EliminationTrace | FailureReport:
    """The predicative-only driver for the infinite-valued Godel logic.

    Applies the linearity elimination step by step; if the selected term has
    an impredicative critical formula the run stops with a report naming it.
    """
    if j.logic.kind != "lc":
        raise ValueError(f"the predicative driver is for logic lc, not {j.logic}")
    steps: list[EliminationStep] = []
    while True:
        readings = judgment_readings(j)
        if not readings:
            break
        terms = list(readings)
        if first is not None and not steps and first in readings:
            e = first
        else:
            e = select_max(terms)
        offending = [f for f, r in readings[e] if not is_predicative(r)]
        if offending:
            return FailureReport(
                step_index=len(steps),
                target=e,
                formula=offending[0],
                reason="impredicative critical formula",
                steps=tuple(steps),
            )
        steps.append(eliminate_predicative_lin(j, e))
        j = steps[-1].after
    return _finish(j, steps)


def _check_judgment(j: Judgment, budget: int | None, where: str) -> None:
    from . import semantics

    kwargs = {} if budget is None else {"budget": budget}
    if not semantics.verify_judgment(j, **kwargs):
        raise EliminationError(f"verification failed: {where}")


# ---------------------------------------------------------------------------
# Reconstruction from a Herbrand disjunction


def reconstruct_from_herbrand(
    disjunction: Formula, skeleton: Formula, holes: Sequence[str]
) -> tuple[Judgment, EliminationTrace]:
    """Build a judgment whose predicative elimination replays the disjunction.

    The epsilon terms are nested innermost-out over the skeleton's variables;
    each disjunct contributes one predicative critical formula per variable.
    Replaying the judgment through the predicative driver reproduces the
    input disjuncts up to deduplication.
    """
    n = len(holes)
    if n == 0:
        raise ValueError("the skeleton needs at least one variable")
    disjuncts = or_spine(disjunction)
    tuples: list[tuple[Term, ...]] = []
    for d in disjuncts:
        binding = match_holes(skeleton, d, set(holes))
        if binding is None or set(binding) != set(holes):
            raise ValueError(f"disjunct does not match the skeleton: {to_text(d)}")
        terms = tuple(binding[h] for h in holes)
        if any(contains_etau(t) for t in terms):
            raise ValueError(f"disjunct terms must be epsilon/tau free: {to_text(d)}")
        tuples.append(terms)

    if len(set(holes)) != n:
        raise ValueError("skeleton variables must be distinct")
    taken = set(free_vars(disjunction)) | set(free_vars(skeleton))
    fresh_holes = []
    for h in holes:
        name = h
        while name in taken:
            name += "'"
        taken.add(name)
        fresh_holes.append(name)
    # Rename the holes apart first so that hole names occurring free inside
    # the disjunct terms can never be captured by a later substitution.
    renamed = skeleton
    for h, fh in zip(holes, fresh_holes):
        renamed = subst_var(renamed, h, Var(fh))

    def fill(prefix: list[Term]) -> Formula:
        out = renamed
        values = list(prefix)
        while len(values) < n:
            values.append(witness_term(values))
        for fh, v in zip(fresh_holes, values):
            out = subst_var(out, fh, v)
        return out

    def witness_term(prefix: list[Term]) -> Term:
        h = fresh_holes[len(prefix)]
        return eps(h, fill(prefix + [Var(h)]))

    goal = fill([])
    criticals: list[Formula] = []
    readings: list[CriticalFormula] = []
    for terms in tuples:
        for level in range(n - 1, -1, -1):
            prefix = list(terms[:level])
            matrix = fill(prefix + [Var(fresh_holes[level])])
            c = make_critical(matrix, fresh_holes[level], "eps", terms[level])
            readings.append(c)
            criticals.append(c.rendered)

    judgment = make_judgment(LC, criticals, goal)
    outcome = run_weak_lin(judgment)
    if isinstance(outcome, FailureReport):
        raise EliminationError(f"reconstruction replay failed: {outcome}")
    return judgment, outcome


# ---------------------------------------------------------------------------
# Chain-length extraction from a Herbrand disjunction


def bm_extract(herbrand: Formula, f: str, p: str) -> int:
    """Least chain length covering a disjunction of instances of P(f(z)) -> P(z).

    Disjuncts are grouped by the innermost term not headed by f; within each
    group the tower is padded to be contiguous, shared atoms are contracted
    across groups, and the longest tower determines the chain length.
    """
    best = 0
    for d in or_spine(herbrand):
        match d:
            case Implies(Atom(p1, (t1,)), Atom(p2, (t2,))) if p1 == p and p2 == p:
                if t1 != App(f, (t2,)):
                    raise ValueError(f"disjunct is not an instance of the matrix: {to_text(d)}")
                height = 0
                base = t2
                while isinstance(base, App) and base.head == f and len(base.args) == 1:
                    height += 1
                    base = base.args[0]
                best = max(best, height + 1)
            case _:
                raise ValueError(f"disjunct is not an instance of the matrix: {to_text(d)}")
    if best == 0:
        raise ValueError("empty disjunction")
    return best


# ---------------------------------------------------------------------------
# Equivalent formulations of the elimination theorem


def theorem_form_convert(
    direction: str, j: Judgment, assumption: Formula | None = None
) -> tuple[Judgment, EliminationTrace | None]:
    """Move between the plain and the hypothesis-bearing theorem forms.

    "1to3" packages an assumption B(e') into the goal, eliminates, and splits
    the resulting disjunction of implications into conjoined hypotheses and a
    disjoined conclusion.  "2to1" substitutes the goal disjunction for a
    placeholder atom, leaving provable residue premises.
    """
    if direction == "1to3":
        if assumption is None:
            raise ValueError("direction 1to3 needs the hypothesis formula")
        packaged = Judgment(
            j.logic, j.criticals, j.instances, Implies(assumption, j.goal)
        )
        trace = run_elimination(packaged)
        lefts: list[Formula] = []
        rights: list[Formula] = []
        for d in or_spine(trace.result):
            if not isinstance(d, Implies):
                raise EliminationError(
                    f"expected a disjunction of implications, got {to_text(d)}"
                )
            lefts.append(d.left)
            rights.append(d.right)
        out = make_judgment(j.logic, dedup(lefts), or_join(dedup(rights)))
        return out, trace
    if direction == "2to1":
        if not j.criticals:
            return j, None
        if not (isinstance(j.goal, Atom) and not j.goal.args):
            raise ValueError("direction 2to1 needs a placeholder atom as goal")
        x = j.goal
        parts: list[Formula] = []
        for pformula in j.criticals:
            if not (isinstance(pformula, Implies) and pformula.right == x):
                raise ValueError(
                    f"premises must have the placeholder as consequent: {to_text(pformula)}"
                )
            if x in or_spine(pformula.left) or _mentions(pformula.left, x):
                raise ValueError("the placeholder atom must not occur in the hypotheses")
            parts.append(pformula.left)
        big = or_join(dedup(parts))
        residues = [Implies(a, big) for a in parts]
        return make_judgment(j.logic, residues, big), None
    raise ValueError(f"unknown direction {direction!r} (use '1to3' or '2to1')")


def _mentions(phi: Formula, atom: Formula) -> bool:
    if phi == atom:
        return True
    from .syntax import _children

    return any(isinstance(k, Formula) and _mentions(k, atom) for k in _children(phi))


# ---------------------------------------------------------------------------
# Trace serialization


def trace_to_json(trace: EliminationTrace, logic: Logic) -> str:
    doc = {
        "version": 1,
        "logic": str(logic),
        "steps": [
            {
                "target": to_text(st.target),
                "eliminated": [to_text(f) for f in st.eliminated],
                "elimination_set": [to_text(t) for t in st.elimination_set],
                "axiom_instances": [to_text(f) for f in st.axiom_instances_used],
                "goal_after": to_text(st.after.goal),
            }
            for st in trace.steps
        ],
        "result": to_text(trace.result),
        "grounding": {to_text(t): name for t, name in trace.grounding},
    }
    return json.dumps(doc, indent=2, sort_keys=True)
