"""Critical formulas: recognition, classification, and the term measures.

A critical formula is a reading of an implication as A(t) -> A(e) for an
epsilon term e = eps x. A(x), or A(e) -> A(t) for a tau term.  One formula
can admit several readings; consumers pick readings per elimination target.
Rank and degree are the two measures whose lexicographic order drives the
elimination procedure's termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .syntax import (
    BINDERS,
    BINDER_TERMS,
    Bound,
    Eps,
    Formula,
    Implies,
    Obj,
    Tau,
    Term,
    Var,
    _children,
    abstract_var,
    etau_subterms,
    free_vars,
    instantiate,
    is_quantifier_free,
    locally_closed,
    match_matrix,
    occurs,
    sort_key,
    to_text,
)


@dataclass(frozen=True, slots=True)
class CriticalFormula:
    """One reading of a formula as a critical formula.

    kind is "eps" or "tau"; critical_term is the binder term whose body is
    the matrix; witness is the instantiated side's term.
    """

    kind: str
    critical_term: Term
    witness: Term

    def __post_init__(self) -> None:
        if self.kind not in ("eps", "tau"):
            raise ValueError(f"kind must be 'eps' or 'tau', not {self.kind!r}")
        expected = Eps if self.kind == "eps" else Tau
        if not isinstance(self.critical_term, expected):
            raise ValueError(f"critical term does not match kind {self.kind!r}")

    def matrix_pair(self, hole: str = "x") -> tuple[str, Formula]:
        """The matrix A(hole) and the hole name actually used."""
        while hole in free_vars(self.critical_term.body):
            hole += "'"
        return hole, instantiate(self.critical_term.body, Var(hole))

    def matrix(self, hole: str = "x") -> Formula:
        return self.matrix_pair(hole)[1]

    @property
    def at_witness(self) -> Formula:
        return instantiate(self.critical_term.body, self.witness)

    @property
    def at_term(self) -> Formula:
        return instantiate(self.critical_term.body, self.critical_term)

    @property
    def rendered(self) -> Formula:
        if self.kind == "eps":
            return Implies(self.at_witness, self.at_term)
        return Implies(self.at_term, self.at_witness)

    def __str__(self) -> str:
        return f"[{self.kind}] {to_text(self.rendered)}"


def make_critical(matrix: Formula, hole: str, kind: str, witness: Term) -> CriticalFormula:
    """Build A(t) -> A(eps x.A) or A(tau x.A) -> A(t) from a matrix with a hole."""
    if not is_quantifier_free(matrix):
        raise ValueError(f"matrix must be quantifier-free: {to_text(matrix)}")
    body = abstract_var(matrix, hole)
    term = Eps(hole, body) if kind == "eps" else Tau(hole, body)
    return CriticalFormula(kind, term, witness)


def recognize_critical(phi: Formula) -> list[CriticalFormula]:
    """All readings of phi as a critical formula, in canonical order.

    For each epsilon subterm e with body A, a reading requires the conclusion
    to be A(e) and solves the premise for the witness (dually for tau, with
    the premise fixed and the conclusion solved).  A formula whose matrix
    ignores its bound variable reads with the critical term itself as the
    canonical witness.
    """
    if not is_quantifier_free(phi):
        raise ValueError(f"expected a quantifier-free formula: {to_text(phi)}")
    if not isinstance(phi, Implies):
        return []
    left, right = phi.left, phi.right
    readings: list[CriticalFormula] = []
    for e in etau_subterms(phi):
        body = e.body
        if isinstance(e, Eps):
            fixed, solved = right, left
        else:
            fixed, solved = left, right
        if instantiate(body, e) != fixed:
            continue
        for witness in _solve_body(body, solved):
            readings.append(CriticalFormula(_kind_of(e), e, witness))
    readings.sort(key=lambda c: (c.kind, sort_key(c.critical_term), sort_key(c.witness)))
    return _dedup_readings(readings)


def _kind_of(e: Term) -> str:
    return "eps" if isinstance(e, Eps) else "tau"


def _solve_body(body: Formula, target: Formula) -> list[Term]:
    """Terms t with instantiate(body, t) == target.

    Bodies that ignore their variable admit no occurring reading, so the
    identity witness the matcher reports for them is discarded.
    """
    hole = "?hole"
    opened = instantiate(body, Var(hole))
    return [t for t in match_matrix(opened, hole, target) if t != Var(hole)]


def _dedup_readings(readings: list[CriticalFormula]) -> list[CriticalFormula]:
    out: list[CriticalFormula] = []
    for r in readings:
        if r not in out:
            out.append(r)
    return out


def is_predicative(c: CriticalFormula) -> bool:
    """True iff the critical term does not occur in the witness."""
    return not occurs(c.critical_term, c.witness)


def is_weak(c: CriticalFormula, critical_terms_of_proof: Iterable[Term]) -> bool:
    """True iff the witness contains no critical term of the ambient proof."""
    return not any(occurs(t, c.witness) for t in critical_terms_of_proof)


# ---------------------------------------------------------------------------
# Rank and degree


def _has_ref(node: Obj, level: int) -> bool:
    """Does node contain a bound index pointing `level` binders above it?"""
    match node:
        case Bound(i):
            return i == level
        case _ if isinstance(node, BINDERS):
            return _has_ref(node.body, level + 1)
        case _:
            return any(_has_ref(k, level) for k in _children(node))


def nested_subterms(e: Term) -> list[Term]:
    """Proper epsilon/tau subterm occurrences of e whose variables stay free.

    A nested occurrence is locally closed: none of its variables is captured
    by a binder of e, so it is itself a standalone term.
    """
    if not isinstance(e, BINDER_TERMS):
        return []
    out: list[Term] = []

    def walk(node: Obj) -> None:
        if isinstance(node, BINDER_TERMS) and locally_closed(node) and node not in out:
            out.append(node)
        for k in _children(node):
            walk(k)

    walk(e.body)
    return out


def subordinate_subterms(e: Term) -> list[Term]:
    """Epsilon/tau occurrences inside e that use e's own bound variable."""
    if not isinstance(e, BINDER_TERMS):
        return []
    out: list[Term] = []

    def walk(node: Obj, depth: int) -> None:
        if isinstance(node, BINDER_TERMS):
            if _has_ref(node, depth) and node not in out:
                out.append(node)
            walk(node.body, depth + 1)
            return
        for k in _children(node):
            walk(k, depth)

    walk(e.body, 0)
    return out


@lru_cache(maxsize=None)
def degree(e: Term) -> int:
    """1 plus the maximal degree of the nested epsilon/tau terms (0 for non-binders)."""
    if not isinstance(e, BINDER_TERMS):
        return 0
    nested = nested_subterms(e)
    return 1 + max((degree(u) for u in nested), default=0)


def rank(e: Term) -> int:
    """1 plus the maximal rank of the subordinate epsilon/tau terms."""
    if not isinstance(e, BINDER_TERMS):
        raise ValueError(f"rank is defined for epsilon/tau terms only: {to_text(e)}")
    return _rank_occurrence(e)


@lru_cache(maxsize=None)
def _rank_occurrence(u: Term) -> int:
    # An occurrence inside another term may mention that term's variable
    # through an escaping index; the recursion only inspects internal ones.
    subs = subordinate_subterms(u)
    return 1 + max((_rank_occurrence(v) for v in subs), default=0)


def select_max(critical_terms: Iterable[Term]) -> Term:
    """A term of maximal degree among those of maximal rank.

    Ties are broken by the canonical printed form, smallest first, so the
    choice is deterministic across runs.
    """
    terms = list(critical_terms)
    if not terms:
        raise ValueError("no critical terms to select from")
    return min(terms, key=lambda t: (-rank(t), -degree(t), sort_key(t)))
