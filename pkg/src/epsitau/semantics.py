"""Decidable backends: finite Godel chains, an intuitionistic prover, schemas.

Chain validity is decided by exhaustive valuation search (vectorized, with a
configurable evaluation budget).  Intuitionistic consequence is decided by a
terminating contraction-free sequent search.  verify_judgment ties both to
the Judgment type: a judgment holds iff (criticals and instances) -> goal in
its logic's backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .judgments import Judgment
from .syntax import (
    And,
    Atom,
    BOT,
    Bot,
    Formula,
    Implies,
    Not,
    Or,
    TOP,
    Top,
    and_join,
    canonical_text,
    is_quantifier_free,
    or_join,
    or_spine,
    to_text,
)

DEFAULT_BUDGET = 20_000_000


class BudgetExceededError(RuntimeError):
    """The valuation space is larger than the configured evaluation budget."""


@dataclass(frozen=True, slots=True)
class GodelChain:
    """Truth values 0..size-1 with designated value size-1."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 2:
            raise ValueError("a Godel chain needs at least 2 values")

    @property
    def top(self) -> int:
        return self.size - 1


Valuation = dict[str, int]


# ---------------------------------------------------------------------------
# Propositional abstraction

_PROP_KINDS = (Atom, Top, Bot, Not, And, Or, Implies)


def _atomic_subformulas(phi: Formula, seen: list[Formula]) -> None:
    match phi:
        case Atom():
            if phi not in seen:
                seen.append(phi)
        case Top() | Bot():
            pass
        case Not(sub):
            _atomic_subformulas(sub, seen)
        case And(a, b) | Or(a, b) | Implies(a, b):
            _atomic_subformulas(a, seen)
            _atomic_subformulas(b, seen)
        case _:
            raise ValueError(f"not quantifier-free: {to_text(phi)}")


def abstract_atoms(formulas: Sequence[Formula]) -> tuple[list[Formula], dict[Formula, str]]:
    """Map alpha-distinct atomic formulas to fresh propositional atoms.

    Sound for pure logics without identity, where distinct atoms are
    independent.  Returns abstracted copies and the atom-to-name mapping.
    """
    atoms: list[Formula] = []
    for f in formulas:
        _atomic_subformulas(f, atoms)
    names = {a: f"p{i + 1}" for i, a in enumerate(atoms)}

    def rewrite(phi: Formula) -> Formula:
        match phi:
            case Atom():
                return Atom(names[phi], ())
            case Top() | Bot():
                return phi
            case Not(sub):
                return Not(rewrite(sub))
            case And(a, b):
                return And(rewrite(a), rewrite(b))
            case Or(a, b):
                return Or(rewrite(a), rewrite(b))
            case Implies(a, b):
                return Implies(rewrite(a), rewrite(b))
        raise ValueError(f"not quantifier-free: {to_text(phi)}")

    return [rewrite(f) for f in formulas], names


def prop_atoms(phi: Formula) -> list[str]:
    """Names of the propositional atoms of an already-abstracted formula."""
    seen: list[Formula] = []
    _atomic_subformulas(phi, seen)
    out = []
    for a in seen:
        assert isinstance(a, Atom)
        if a.args:
            raise ValueError(f"expected a propositional atom, got {to_text(a)}")
        out.append(a.pred)
    return out


# ---------------------------------------------------------------------------
# Godel evaluation


def eval_godel(phi: Formula, valuation: Valuation, chain: GodelChain) -> int:
    """min/max semantics with residuated implication on the chain."""
    top = chain.top
    match phi:
        case Atom(name, ()):
            try:
                v = valuation[name]
            except KeyError:
                raise ValueError(f"valuation does not cover atom {name!r}") from None
            if not 0 <= v <= top:
                raise ValueError(f"value {v} for {name!r} is off the chain")
            return v
        case Top():
            return top
        case Bot():
            return 0
        case Not(sub):
            return top if eval_godel(sub, valuation, chain) == 0 else 0
        case And(a, b):
            return min(eval_godel(a, valuation, chain), eval_godel(b, valuation, chain))
        case Or(a, b):
            return max(eval_godel(a, valuation, chain), eval_godel(b, valuation, chain))
        case Implies(a, b):
            va = eval_godel(a, valuation, chain)
            vb = eval_godel(b, valuation, chain)
            return top if va <= vb else vb
        case Atom():
            raise ValueError(f"atom with arguments is not propositional: {to_text(phi)}")
    raise ValueError(f"not a propositional formula: {to_text(phi)}")


def _eval_block(phi: Formula, cols: dict[str, np.ndarray], top: int) -> np.ndarray:
    match phi:
        case Atom(name, ()):
            return cols[name]
        case Top():
            return np.full_like(next(iter(cols.values())), top)
        case Bot():
            return np.zeros_like(next(iter(cols.values())))
        case Not(sub):
            v = _eval_block(sub, cols, top)
            return np.where(v == 0, top, 0).astype(v.dtype)
        case And(a, b):
            return np.minimum(_eval_block(a, cols, top), _eval_block(b, cols, top))
        case Or(a, b):
            return np.maximum(_eval_block(a, cols, top), _eval_block(b, cols, top))
        case Implies(a, b):
            va = _eval_block(a, cols, top)
            vb = _eval_block(b, cols, top)
            return np.where(va <= vb, top, vb).astype(va.dtype)
    raise ValueError(f"not a propositional formula: {to_text(phi)}")


def _chain_check(phi: Formula, m: int, budget: int) -> tuple[bool, Valuation | None]:
    atoms = prop_atoms(phi)
    n = len(atoms)
    total = m**n
    if total > budget:
        raise BudgetExceededError(
            f"{n} atoms on a {m}-chain need {total} valuations, budget is {budget}"
        )
    chain = GodelChain(m)
    if n == 0:
        v = eval_godel(phi, {}, chain)
        return (v == chain.top, None if v == chain.top else {})
    dtype = np.int8 if m < 128 else np.int32
    chunk = 1 << 18
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cols = {a: ((ids // (m**k)) % m).astype(dtype) for k, a in enumerate(atoms)}
        vals = _eval_block(phi, cols, chain.top)
        bad = np.nonzero(vals != chain.top)[0]
        if bad.size:
            i = int(bad[0])
            return False, {a: int(cols[a][i]) for a in atoms}
    return True, None


def valid_in_LCm(
    phi: Formula, m: int, budget: int = DEFAULT_BUDGET
) -> tuple[bool, Valuation | None]:
    """Exhaustive validity check on the m-valued chain; countervaluation on failure."""
    if m < 2:
        raise ValueError("chains need at least 2 values")
    return _chain_check(phi, m, budget)


def lc_chain_size(phi: Formula) -> int:
    """n atoms realize at most n+2 order positions against bottom and top."""
    return len(prop_atoms(phi)) + 2


def valid_in_LC(phi: Formula, budget: int = DEFAULT_BUDGET) -> tuple[bool, Valuation | None]:
    return _chain_check(phi, lc_chain_size(phi), budget)


def valid_classical(phi: Formula, budget: int = DEFAULT_BUDGET) -> tuple[bool, Valuation | None]:
    return _chain_check(phi, 2, budget)


def counterexample_Bm(m: int) -> Valuation:
    """A refuting valuation for the m-link chain schema on the (m+1)-chain.

    Strictly descending values make every link fail: atom i gets m+1-i.
    """
    if m < 2:
        raise ValueError("the chain schema needs m >= 2")
    return {f"A{i}": m + 1 - i for i in range(1, m + 2)}


# ---------------------------------------------------------------------------
# Schemas


def schema(kind: str, atoms: Sequence[str] | None = None, n: int | None = None) -> Formula:
    """Build a characteristic schema instance over the given atom names.

    Kinds: EM, Lin, J, Bm, Rn, bigdisj_eps, bigdisj_tau, iterated_lin.
    For the parametric kinds, n fixes the size and atoms defaults to A1..Ak.
    """

    def default_atoms(k: int) -> list[str]:
        return [f"A{i}" for i in range(1, k + 1)]

    def need(k: int) -> list[Formula]:
        names = list(atoms) if atoms is not None else default_atoms(k)
        if len(names) != k:
            raise ValueError(f"schema {kind} needs {k} atoms, got {len(names)}")
        return [Atom(a, ()) for a in names]

    match kind:
        case "EM":
            (a,) = need(1)
            return Or(a, Not(a))
        case "Lin":
            a, b = need(2)
            return Or(Implies(a, b), Implies(b, a))
        case "J":
            (a,) = need(1)
            return Or(Not(a), Not(Not(a)))
        case "Bm" | "iterated_lin":
            if n is None or n < 1:
                raise ValueError(f"schema {kind} needs n >= 1")
            xs = need(n + 1)
            return or_join([Implies(xs[i], xs[i + 1]) for i in range(n)])
        case "Rn":
            if n is None or n < 1:
                raise ValueError("schema Rn needs n >= 1")
            xs = need(n)
            parts: list[Formula] = [xs[0]]
            parts += [Implies(xs[i], xs[i + 1]) for i in range(n - 1)]
            parts.append(Not(xs[-1]))
            return or_join(parts)
        case "bigdisj_eps":
            if n is None or n < 1:
                raise ValueError("schema bigdisj_eps needs n >= 1")
            xs = need(n)
            return or_join([and_join([Implies(xi, xj) for xi in xs]) for xj in xs])
        case "bigdisj_tau":
            if n is None or n < 1:
                raise ValueError("schema bigdisj_tau needs n >= 1")
            xs = need(n)
            return or_join([and_join([Implies(xj, xi) for xi in xs]) for xj in xs])
    raise ValueError(f"unknown schema kind {kind!r}")


# ---------------------------------------------------------------------------
# Schema instance matchers (recorded axiom instances must fit their schema)


def is_implication_chain(phi: Formula) -> bool:
    """A disjunction of implications where each consequent is the next antecedent."""
    parts = or_spine(phi)
    if not all(isinstance(p, Implies) for p in parts):
        return False
    for a, b in zip(parts, parts[1:]):
        if a.right != b.left:  # type: ignore[union-attr]
            return False
    return True


def is_lin_instance(phi: Formula) -> bool:
    match phi:
        case Or(Implies(a1, b1), Implies(b2, a2)):
            return a1 == a2 and b1 == b2
    return False


def is_em_instance(phi: Formula) -> bool:
    """k-ary excluded middle: (V Ai) | (& ~Ai), or the dual (& Ai) | (V ~Ai)."""
    parts = or_spine(phi)
    if len(parts) == 2 and isinstance(parts[0], Not) and parts[0].sub == parts[1]:
        return True  # single tau instance ~A | A
    for split in range(1, len(parts)):
        pos, neg = parts[:split], parts[split:]
        if len(neg) == 1 and _is_neg_conj_of(neg[0], pos):
            return True
        if len(pos) == 1:
            conj = _is_conj_list(pos[0])
            if all(isinstance(q, Not) for q in neg) and [q.sub for q in neg] == conj:  # type: ignore[union-attr]
                return True
    return False


def _is_conj_list(phi: Formula) -> list[Formula] | None:
    out: list[Formula] = []

    def walk(f: Formula) -> None:
        if isinstance(f, And):
            walk(f.left)
            walk(f.right)
        else:
            out.append(f)

    walk(phi)
    return out


def _is_neg_conj_of(phi: Formula, pos: list[Formula]) -> bool:
    conj = _is_conj_list(phi)
    return conj == [Not(p) for p in pos]


def is_weak_em_instance(phi: Formula) -> bool:
    """k-ary weak excluded middle: (& ~Ai) | V ~~Ai, or the dual for tau."""
    parts = or_spine(phi)
    head, rest = parts[0], parts[1:]
    conj = _is_conj_list(head)
    if conj is None or not rest:
        return False
    if all(isinstance(c, Not) for c in conj) and all(
        isinstance(r, Not) and isinstance(r.sub, Not) for r in rest
    ):
        return [c.sub for c in conj] == [r.sub.sub for r in rest]  # type: ignore[union-attr]
    if all(isinstance(c, Not) and isinstance(c.sub, Not) for c in conj) and all(
        isinstance(r, Not) for r in rest
    ):
        return [c.sub.sub for c in conj] == [r.sub for r in rest]  # type: ignore[union-attr]
    return False


def is_bigdisj_instance(phi: Formula) -> bool:
    """V_j &_i (Ai -> Aj) over one list of formulas, or the tau dual."""
    parts = or_spine(phi)
    k = len(parts)
    columns: list[list[tuple[Formula, Formula]]] = []
    for p in parts:
        conj = _is_conj_list(p)
        if len(conj) != k or not all(isinstance(c, Implies) for c in conj):
            return False
        columns.append([(c.left, c.right) for c in conj])  # type: ignore[union-attr]
    base_eps = [pair[0] for pair in columns[0]]
    if all(columns[j][i] == (base_eps[i], base_eps[j]) for j in range(k) for i in range(k)):
        return True
    base_tau = [pair[1] for pair in columns[0]]
    return all(
        columns[j][i] == (base_tau[j], base_tau[i]) for j in range(k) for i in range(k)
    )


def matches_axiom_schema(phi: Formula, family: str) -> bool:
    """Check that a recorded axiom instance fits the named schema family."""
    match family:
        case "em":
            return is_em_instance(phi)
        case "weak_em":
            return is_weak_em_instance(phi)
        case "lin":
            return is_lin_instance(phi) or is_bigdisj_instance(phi)
        case "bigdisj":
            return is_bigdisj_instance(phi)
        case "bm_chain":
            return is_implication_chain(phi)
    raise ValueError(f"unknown schema family {family!r}")


# ---------------------------------------------------------------------------
# Intuitionistic prover (contraction-free sequent search)


def _norm(phi: Formula) -> Formula:
    """Rewrite ~A to A -> bot so the prover handles one implication form."""
    match phi:
        case Not(sub):
            return Implies(_norm(sub), BOT)
        case And(a, b):
            return And(_norm(a), _norm(b))
        case Or(a, b):
            return Or(_norm(a), _norm(b))
        case Implies(a, b):
            return Implies(_norm(a), _norm(b))
        case _:
            return phi


_sequent_cache: dict[tuple[frozenset, Formula], bool] = {}


def _prove(gamma: frozenset[Formula], goal: Formula) -> bool:
    key = (gamma, goal)
    hit = _sequent_cache.get(key)
    if hit is not None:
        return hit
    result = _prove_raw(gamma, goal)
    _sequent_cache[key] = result
    return result


def _prove_raw(gamma: frozenset[Formula], goal: Formula) -> bool:
    if BOT in gamma or goal == TOP or goal in gamma:
        return True
    # Invertible left rules, one reduction then recurse.
    for f in gamma:
        match f:
            case Top():
                return _prove(gamma - {f}, goal)
            case And(a, b):
                return _prove(gamma - {f} | {a, b}, goal)
            case Or(a, b):
                rest = gamma - {f}
                return _prove(rest | {a}, goal) and _prove(rest | {b}, goal)
            case Implies(Top(), b):
                return _prove(gamma - {f} | {b}, goal)
            case Implies(Bot(), _):
                return _prove(gamma - {f}, goal)
            case Implies(And(c, d), b):
                return _prove(gamma - {f} | {Implies(c, Implies(d, b))}, goal)
            case Implies(Or(c, d), b):
                return _prove(gamma - {f} | {Implies(c, b), Implies(d, b)}, goal)
            case Implies(Atom() as p, b) if p in gamma:
                return _prove(gamma - {f} | {b}, goal)
    # Invertible right rules.
    match goal:
        case And(a, b):
            return _prove(gamma, a) and _prove(gamma, b)
        case Implies(a, b):
            return _prove(gamma | {a}, b)
    # Branch points: right disjunction and implication-antecedent implications.
    if isinstance(goal, Or):
        if _prove(gamma, goal.left) or _prove(gamma, goal.right):
            return True
    for f in gamma:
        match f:
            case Implies(Implies(c, d), b):
                rest = gamma - {f}
                if _prove(rest | {Implies(d, b)}, Implies(c, d)) and _prove(rest | {b}, goal):
                    return True
    return False


def prove_H(premises: Iterable[Formula], goal: Formula) -> bool:
    """Decide intuitionistic propositional consequence (premises |- goal)."""
    gamma = frozenset(_norm(p) for p in premises)
    return _prove(gamma, _norm(goal))


def prove_H_trace(premises: Iterable[Formula], goal: Formula) -> tuple[bool, list[str]]:
    """prove_H plus a replayable account of the top-level sequent."""
    ok = prove_H(premises, goal)
    lines = [f"premise: {to_text(p)}" for p in sorted(premises, key=canonical_text)]
    lines.append(f"goal: {to_text(goal)}")
    lines.append("provable" if ok else "not provable")
    return ok, lines


# ---------------------------------------------------------------------------
# Judgment verification


def _judgment_parts(j: Judgment) -> tuple[list[Formula], Formula]:
    formulas = list(j.criticals) + list(j.instances) + [j.goal]
    for f in formulas:
        if not is_quantifier_free(f):
            raise ValueError(f"judgments must be quantifier-free: {to_text(f)}")
    abstracted, _ = abstract_atoms(formulas)
    return abstracted[:-1], abstracted[-1]


def _verify_on_chain(premises: list[Formula], goal: Formula, m: int | None, budget: int) -> bool:
    # Premises that are themselves valid on the target chain carry no
    # information there; dropping them keeps the atom count near the goal's.
    kept = []
    for p in premises:
        size = m if m is not None else lc_chain_size(p)
        ok, _ = _chain_check(p, size, budget)
        if not ok:
            kept.append(p)
    query = goal if not kept else Implies(and_join(kept), goal)
    size = m if m is not None else lc_chain_size(query)
    ok, _ = _chain_check(query, size, budget)
    return ok


def verify_judgment(j: Judgment, budget: int = DEFAULT_BUDGET) -> bool:
    """Does the judgment hold in its logic's backend?

    Classical and m-valued logics check (criticals & instances) -> goal on
    the corresponding chain; LC uses the atom-count chain bound; KC and H
    use the intuitionistic prover with the recorded instances as premises.
    """
    premises, goal = _judgment_parts(j)
    match j.logic.kind:
        case "classical":
            return _verify_on_chain(premises, goal, 2, budget)
        case "lcm":
            return _verify_on_chain(premises, goal, j.logic.m, budget)
        case "lc":
            return _verify_on_chain(premises, goal, None, budget)
        case "kc" | "h":
            return prove_H(premises, goal)
    raise ValueError(f"unknown logic {j.logic}")


# ---------------------------------------------------------------------------
# Cross-schema relations report


def schema_relations_check(ms: Sequence[int] = (2, 3, 4, 5)) -> dict[str, bool]:
    """Entailments between the chain schema, linearity, and Hosoi's axiom.

    For each m: the alternating A/B instance of the m-link chain schema
    entails Lin over H, and the top/bottom instance entails R(m-1) over H.
    """
    report: dict[str, bool] = {}
    for m in ms:
        if m < 2:
            raise ValueError("schema relations need m >= 2")
        a, b = Atom("A", ()), Atom("B", ())
        alternating = [a if i % 2 == 1 else b for i in range(1, m + 2)]
        bm_ab = or_join(
            [Implies(alternating[i], alternating[i + 1]) for i in range(m)]
        )
        lin = schema("Lin", ["A", "B"])
        report[f"B{m} odd/even instance entails Lin"] = prove_H([bm_ab], lin)

        xs: list[Formula] = [TOP] + [Atom(f"A{i}", ()) for i in range(1, m)] + [BOT]
        bm_tb = or_join([Implies(xs[i], xs[i + 1]) for i in range(m)])
        rn = schema("Rn", n=m - 1)
        report[f"B{m} top/bottom instance entails R{m - 1}"] = prove_H([bm_tb], rn)
    return report
