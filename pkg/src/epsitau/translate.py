"""Quantifier elimination into epsilon/tau terms, and back-translations.

et_translate replaces quantifiers by epsilon/tau terms, innermost first.
shadow collapses a formula to its propositional skeleton.  herbrand_form
computes the purely existential form of a prenex formula.  The quantifier
shift schemas come in two tables: those whose translations *are* critical
formulas, and those provable from one critical formula by modus ponens with
an intuitionistic principle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .syntax import (
    And,
    App,
    Atom,
    Bot,
    Eps,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Signature,
    Tau,
    Term,
    Top,
    Var,
    contains_etau,
    eps,
    exists,
    forall,
    free_vars,
    instantiate,
    is_quantifier_free,
    subst_var,
    tau,
    to_text,
)


def et_translate(phi: Formula) -> Formula:
    """Replace each quantifier by the corresponding epsilon/tau witness term.

    The body is translated before the binder is formed, so nested quantifiers
    become nested terms.  Rejects inputs that already contain such terms.
    """
    if contains_etau(phi):
        raise ValueError(f"already contains epsilon/tau terms: {to_text(phi)}")
    return _et(phi)


def _et(phi: Formula) -> Formula:
    match phi:
        case Atom() | Top() | Bot():
            return phi
        case Not(sub):
            return Not(_et(sub))
        case And(a, b):
            return And(_et(a), _et(b))
        case Or(a, b):
            return Or(_et(a), _et(b))
        case Exists(hint, body):
            tb = _et(body)
            return instantiate(tb, Eps(hint, tb))
        case Forall(hint, body):
            tb = _et(body)
            return instantiate(tb, Tau(hint, tb))
        case Implies(a, b):
            return Implies(_et(a), _et(b))
    raise ValueError(f"not a formula: {phi!r}")


def shadow(phi: Formula) -> Formula:
    """The propositional image: atoms keep only their predicate, binders vanish."""
    match phi:
        case Atom(pred, _):
            return Atom(pred, ())
        case Top() | Bot():
            return phi
        case Not(sub):
            return Not(shadow(sub))
        case And(a, b):
            return And(shadow(a), shadow(b))
        case Or(a, b):
            return Or(shadow(a), shadow(b))
        case Implies(a, b):
            return Implies(shadow(a), shadow(b))
        case Forall(_, body) | Exists(_, body):
            return shadow(body)
    raise ValueError(f"not a formula: {phi!r}")


def herbrand_form(phi: Formula, signature: Signature | None = None) -> Formula:
    """Purely existential form of a prenex formula.

    Each universal variable becomes a fresh function symbol applied to the
    existential variables bound before it (a fresh constant when there are
    none); the existential prefix is kept in order.  Fresh names derive from
    the replaced variable's name plus a counter.
    """
    if contains_etau(phi):
        raise ValueError("input must be epsilon/tau free")
    sig = signature if signature is not None else Signature.collect(phi)
    prefix: list[tuple[str, str]] = []
    body = phi
    taken = set(free_vars(phi))
    while isinstance(body, (Forall, Exists)):
        kind = "ex" if isinstance(body, Exists) else "all"
        name = body.hint or "x"
        while name in taken:
            name += "'"
        taken.add(name)
        prefix.append((kind, name))
        body = instantiate(body.body, Var(name))
    if not is_quantifier_free(body):
        raise ValueError(f"not prenex: {to_text(phi)}")
    existentials: list[str] = []
    for kind, name in prefix:
        if kind == "ex":
            existentials.append(name)
        else:
            fresh = sig.fresh(name, arity=len(existentials))
            body = subst_var(body, name, App(fresh, tuple(Var(x) for x in existentials)))
    for name in reversed(existentials):
        body = exists(name, body)
    return body


# ---------------------------------------------------------------------------
# Quantifier shifts


class QuantifierShiftKind(Enum):
    """The shift schemas, split by how their translations are justified.

    The first nine translate directly to critical formulas; the remaining
    eight follow from one critical formula by modus ponens with an
    intuitionistically provable principle.
    """

    # translations are critical formulas
    CD = "cd"                                # all x (A|B) -> (all x A | B)
    EXISTS_OR = "exists-or"                  # (ex x A | B) -> ex x (A|B)
    FORALL_AND = "forall-and"                # all x (A&B) -> (all x A & B)
    EXISTS_AND = "exists-and"                # (ex x A & B) -> ex x (A&B)
    Q_EXISTS = "q-exists"                    # (B -> ex x A) -> ex x (B->A)
    FORALL_IMP = "forall-imp"                # all x (B->A) -> (B -> all x A)
    Q_FORALL = "q-forall"                    # (all x A -> B) -> ex x (A->B)
    FORALL_IMP_EXISTS = "forall-imp-exists"  # all x (A->B) -> (ex x A -> B)
    K = "k"                                  # all x ~~A -> ~~ all x A
    # translations follow by modus ponens from a critical formula
    OR_FORALL = "or-forall"                  # (all x A | B) -> all x (A|B)
    OR_EXISTS = "or-exists"                  # ex x (A|B) -> (ex x A | B)
    AND_FORALL = "and-forall"                # (all x A & B) -> all x (A&B)
    AND_EXISTS = "and-exists"                # ex x (A&B) -> (ex x A & B)
    IMP_EXISTS = "imp-exists"                # ex x (B->A) -> (B -> ex x A)
    IMP_FORALL = "imp-forall"                # (B -> all x A) -> all x (B->A)
    ANTE_EXISTS = "ante-exists"              # ex x (A->B) -> (all x A -> B)
    ANTE_FORALL = "ante-forall"              # (ex x A -> B) -> all x (A->B)


CRITICAL_KINDS = (
    QuantifierShiftKind.CD,
    QuantifierShiftKind.EXISTS_OR,
    QuantifierShiftKind.FORALL_AND,
    QuantifierShiftKind.EXISTS_AND,
    QuantifierShiftKind.Q_EXISTS,
    QuantifierShiftKind.FORALL_IMP,
    QuantifierShiftKind.Q_FORALL,
    QuantifierShiftKind.FORALL_IMP_EXISTS,
    QuantifierShiftKind.K,
)

MP_KINDS = (
    QuantifierShiftKind.OR_FORALL,
    QuantifierShiftKind.OR_EXISTS,
    QuantifierShiftKind.AND_FORALL,
    QuantifierShiftKind.AND_EXISTS,
    QuantifierShiftKind.IMP_EXISTS,
    QuantifierShiftKind.IMP_FORALL,
    QuantifierShiftKind.ANTE_EXISTS,
    QuantifierShiftKind.ANTE_FORALL,
)


@dataclass(frozen=True, slots=True)
class CriticalWitness:
    """Exhibits a translation as C(t1) -> C(t2) for a matrix with one hole."""

    matrix: Formula
    hole: str
    t1: Term
    t2: Term


@dataclass(frozen=True, slots=True)
class ModusPonensWitness:
    """A critical formula and a provable principle yielding the translation."""

    critical: Formula
    principle: Formula


@dataclass(frozen=True, slots=True)
class ShiftInstance:
    kind: QuantifierShiftKind
    shift: Formula
    translation: Formula
    certificate: CriticalWitness | ModusPonensWitness


def quantifier_shift_instance(
    kind: QuantifierShiftKind,
    matrix: Formula,
    hole: str,
    other: Formula | None = None,
) -> ShiftInstance:
    """Instantiate a shift schema with A(hole) := matrix and B := other.

    Returns the first-order shift formula, its translation, and the
    certificate justifying the translation from critical formulas.
    """
    K = QuantifierShiftKind
    if kind is not K.K:
        if other is None:
            raise ValueError(f"{kind.value} needs the side formula B")
        if hole in free_vars(other):
            raise ValueError(f"the bound variable {hole!r} must not be free in B")
    a = matrix
    b = other
    x = Var(hole)

    def ex_(f: Formula) -> Formula:
        return exists(hole, f)

    def all_(f: Formula) -> Formula:
        return forall(hole, f)

    match kind:
        case K.CD:
            shift = Implies(all_(Or(a, b)), Or(all_(a), b))
        case K.EXISTS_OR:
            shift = Implies(Or(ex_(a), b), ex_(Or(a, b)))
        case K.FORALL_AND:
            shift = Implies(all_(And(a, b)), And(all_(a), b))
        case K.EXISTS_AND:
            shift = Implies(And(ex_(a), b), ex_(And(a, b)))
        case K.Q_EXISTS:
            shift = Implies(Implies(b, ex_(a)), ex_(Implies(b, a)))
        case K.FORALL_IMP:
            shift = Implies(all_(Implies(b, a)), Implies(b, all_(a)))
        case K.Q_FORALL:
            shift = Implies(Implies(all_(a), b), ex_(Implies(a, b)))
        case K.FORALL_IMP_EXISTS:
            shift = Implies(all_(Implies(a, b)), Implies(ex_(a), b))
        case K.K:
            shift = Implies(all_(Not(Not(a))), Not(Not(all_(a))))
        case K.OR_FORALL:
            shift = Implies(Or(all_(a), b), all_(Or(a, b)))
        case K.OR_EXISTS:
            shift = Implies(ex_(Or(a, b)), Or(ex_(a), b))
        case K.AND_FORALL:
            shift = Implies(And(all_(a), b), all_(And(a, b)))
        case K.AND_EXISTS:
            shift = Implies(ex_(And(a, b)), And(ex_(a), b))
        case K.IMP_EXISTS:
            shift = Implies(ex_(Implies(b, a)), Implies(b, ex_(a)))
        case K.IMP_FORALL:
            shift = Implies(Implies(b, all_(a)), all_(Implies(b, a)))
        case K.ANTE_EXISTS:
            shift = Implies(ex_(Implies(a, b)), Implies(all_(a), b))
        case K.ANTE_FORALL:
            shift = Implies(Implies(ex_(a), b), all_(Implies(a, b)))
        case _:
            raise ValueError(f"unknown kind {kind}")

    translation = et_translate(shift)

    at = et_translate(a)
    bt = et_translate(b) if b is not None else None
    eps_a = eps(hole, at)
    tau_a = tau(hole, at)

    def crit(c: Formula, t1: Term, t2: Term) -> CriticalWitness:
        expected = Implies(subst_var(c, hole, t1), subst_var(c, hole, t2))
        assert expected == translation, f"table mismatch for {kind}"
        return CriticalWitness(c, hole, t1, t2)

    def mp(a1: Formula, a2: Formula, principle: Formula) -> ModusPonensWitness:
        return ModusPonensWitness(Implies(a1, a2), principle)

    cert: CriticalWitness | ModusPonensWitness
    match kind:
        case K.CD:
            c = Or(at, bt)
            cert = crit(c, tau(hole, c), tau_a)
        case K.EXISTS_OR:
            c = Or(at, bt)
            cert = crit(c, eps_a, eps(hole, c))
        case K.FORALL_AND:
            c = And(at, bt)
            cert = crit(c, tau(hole, c), tau_a)
        case K.EXISTS_AND:
            c = And(at, bt)
            cert = crit(c, eps_a, eps(hole, c))
        case K.Q_EXISTS:
            c = Implies(bt, at)
            cert = crit(c, eps_a, eps(hole, c))
        case K.FORALL_IMP:
            c = Implies(bt, at)
            cert = crit(c, tau(hole, c), tau_a)
        case K.Q_FORALL:
            c = Implies(at, bt)
            cert = crit(c, tau_a, eps(hole, c))
        case K.FORALL_IMP_EXISTS:
            c = Implies(at, bt)
            cert = crit(c, tau(hole, c), eps_a)
        case K.K:
            c = Not(Not(at))
            cert = crit(c, tau(hole, c), tau_a)
        case K.OR_FORALL | K.OR_EXISTS | K.AND_FORALL | K.AND_EXISTS | K.IMP_EXISTS | K.IMP_FORALL:
            if kind is K.OR_FORALL:
                a1, a2 = _inst(at, hole, tau_a), _inst(at, hole, tau(hole, Or(at, bt)))
            elif kind is K.OR_EXISTS:
                a1, a2 = _inst(at, hole, eps(hole, Or(at, bt))), _inst(at, hole, eps_a)
            elif kind is K.AND_FORALL:
                a1, a2 = _inst(at, hole, tau_a), _inst(at, hole, tau(hole, And(at, bt)))
            elif kind is K.AND_EXISTS:
                a1, a2 = _inst(at, hole, eps(hole, And(at, bt))), _inst(at, hole, eps_a)
            elif kind is K.IMP_EXISTS:
                a1, a2 = _inst(at, hole, eps(hole, Implies(bt, at))), _inst(at, hole, eps_a)
            else:  # IMP_FORALL
                a1, a2 = _inst(at, hole, tau_a), _inst(at, hole, tau(hole, Implies(bt, at)))
            if kind in (K.OR_FORALL, K.OR_EXISTS):
                framed = Implies(Or(a1, bt), Or(a2, bt))
            elif kind in (K.AND_FORALL, K.AND_EXISTS):
                framed = Implies(And(a1, bt), And(a2, bt))
            else:
                framed = Implies(Implies(bt, a1), Implies(bt, a2))
            principle = Implies(Implies(a1, a2), framed)
            assert framed == translation, f"table mismatch for {kind}"
            cert = mp(a1, a2, principle)
        case K.ANTE_EXISTS | K.ANTE_FORALL:
            if kind is K.ANTE_EXISTS:
                a1 = _inst(at, hole, tau_a)
                a2 = _inst(at, hole, eps(hole, Implies(at, bt)))
            else:
                a1 = _inst(at, hole, tau(hole, Implies(at, bt)))
                a2 = _inst(at, hole, eps_a)
            principle = Implies(
                Implies(a1, a2), Implies(Implies(a2, bt), Implies(a1, bt))
            )
            assert Implies(Implies(a2, bt), Implies(a1, bt)) == translation, (
                f"table mismatch for {kind}"
            )
            cert = mp(a1, a2, principle)
        case _:
            raise AssertionError

    return ShiftInstance(kind, shift, translation, cert)


def _inst(matrix: Formula, hole: str, t: Term) -> Formula:
    return subst_var(matrix, hole, t)


def standard_quantifier_axioms(matrix: Formula, hole: str, witness: Term) -> list[Formula]:
    """all x A(x) -> A(t) and A(t) -> ex x A(x), for shadow checks."""
    return [
        Implies(forall(hole, matrix), subst_var(matrix, hole, witness)),
        Implies(subst_var(matrix, hole, witness), exists(hole, matrix)),
    ]
