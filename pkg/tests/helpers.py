"""Shared builders, independent oracles, and seeded generators for the tests.

The oracles here deliberately avoid the package's semantics module: the
truth-table checker works on Python bools, the Godel evaluator is a direct
dict-based recursion, and the two-element model checker interprets
first-order formulas by brute force.
"""

from __future__ import annotations

import itertools
import random

from epsitau.critical import make_critical
from epsitau.judgments import CLASSICAL, make_judgment
from epsitau.syntax import (
    And,
    App,
    Atom,
    Bot,
    Bound,
    Eps,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Tau,
    Term,
    Top,
    Var,
    abstract_var,
    instantiate,
    subterms,
)


def A(name: str, *args: Term) -> Atom:
    return Atom(name, tuple(args))


def V(name: str) -> Var:
    return Var(name)


def C(name: str) -> App:
    return App(name, ())


def F(name: str, *args: Term) -> App:
    return App(name, tuple(args))


# ---------------------------------------------------------------------------
# Oracle 1: classical truth tables over Python bools


def _bool_eval(phi: Formula, env: dict) -> bool:
    match phi:
        case Atom():
            return env[phi]
        case Top():
            return True
        case Bot():
            return False
        case Not(sub):
            return not _bool_eval(sub, env)
        case And(a, b):
            return _bool_eval(a, env) and _bool_eval(b, env)
        case Or(a, b):
            return _bool_eval(a, env) or _bool_eval(b, env)
        case Implies(a, b):
            return (not _bool_eval(a, env)) or _bool_eval(b, env)
    raise ValueError(phi)


def _collect_atoms(phi: Formula, out: list) -> None:
    match phi:
        case Atom():
            if phi not in out:
                out.append(phi)
        case Not(sub):
            _collect_atoms(sub, out)
        case And(a, b) | Or(a, b) | Implies(a, b):
            _collect_atoms(a, out)
            _collect_atoms(b, out)
        case _:
            pass


def taut_oracle(phi: Formula) -> bool:
    """Classical tautology by brute force over the formula's atoms."""
    atoms: list = []
    _collect_atoms(phi, atoms)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        if not _bool_eval(phi, dict(zip(atoms, bits))):
            return False
    return True


# ---------------------------------------------------------------------------
# Oracle 2: finite Godel chains by direct recursion


def godel_oracle(phi: Formula, size: int) -> bool:
    """Validity on the chain 0..size-1, independent of the semantics module."""
    atoms: list = []
    _collect_atoms(phi, atoms)
    top = size - 1

    def ev(f: Formula, env: dict) -> int:
        match f:
            case Atom():
                return env[f]
            case Top():
                return top
            case Bot():
                return 0
            case Not(sub):
                return top if ev(sub, env) == 0 else 0
            case And(a, b):
                return min(ev(a, env), ev(b, env))
            case Or(a, b):
                return max(ev(a, env), ev(b, env))
            case Implies(a, b):
                va, vb = ev(a, env), ev(b, env)
                return top if va <= vb else vb
        raise ValueError(f)

    for vals in itertools.product(range(size), repeat=len(atoms)):
        if ev(phi, dict(zip(atoms, vals))) != top:
            return False
    return True


# ---------------------------------------------------------------------------
# Oracle 3: two-element first-order models


def _fo_symbols(phi: Formula) -> tuple[dict, dict]:
    preds: dict = {}
    funcs: dict = {}

    def walk_t(t: Term) -> None:
        if isinstance(t, App):
            funcs[t.head] = len(t.args)
            for a in t.args:
                walk_t(a)

    def walk(f) -> None:
        match f:
            case Atom(p, args):
                preds[p] = len(args)
                for a in args:
                    walk_t(a)
            case Not(sub):
                walk(sub)
            case And(a, b) | Or(a, b) | Implies(a, b):
                walk(a)
                walk(b)
            case Forall(_, body) | Exists(_, body):
                walk(body)
            case _:
                pass

    walk(phi)
    return preds, funcs


def valid_in_two_element_models(phi: Formula) -> bool:
    """Brute-force first-order validity over the domain {0, 1}."""
    preds, funcs = _fo_symbols(phi)
    dom = (0, 1)

    def interps(arity: int, codomain):
        keys = list(itertools.product(dom, repeat=arity))
        for values in itertools.product(codomain, repeat=len(keys)):
            yield dict(zip(keys, values))

    pred_names = sorted(preds)
    func_names = sorted(funcs)

    def ev_t(t: Term, fi: dict, env: dict) -> int:
        match t:
            case Var(n):
                return env[n]
            case App(h, args):
                return fi[h][tuple(ev_t(a, fi, env) for a in args)]
        raise ValueError(t)

    def ev(f, pi: dict, fi: dict, env: dict) -> bool:
        match f:
            case Atom(p, args):
                return pi[p][tuple(ev_t(a, fi, env) for a in args)]
            case Top():
                return True
            case Bot():
                return False
            case Not(sub):
                return not ev(sub, pi, fi, env)
            case And(a, b):
                return ev(a, pi, fi, env) and ev(b, pi, fi, env)
            case Or(a, b):
                return ev(a, pi, fi, env) or ev(b, pi, fi, env)
            case Implies(a, b):
                return (not ev(a, pi, fi, env)) or ev(b, pi, fi, env)
            case Forall(hint, body) | Exists(hint, body):
                name = hint
                while name in env:
                    name += "'"
                results = (
                    ev(instantiate(body, Var(name)), pi, fi, env | {name: d}) for d in dom
                )
                if isinstance(f, Forall):
                    return all(results)
                return any(results)
        raise ValueError(f)

    for pvals in itertools.product(
        *(list(interps(preds[p], (False, True))) for p in pred_names)
    ):
        pi = dict(zip(pred_names, pvals))
        for fvals in itertools.product(
            *(list(interps(funcs[fn], dom)) for fn in func_names)
        ):
            fi = dict(zip(func_names, fvals))
            if not ev(phi, pi, fi, {}):
                return False
    return True


# ---------------------------------------------------------------------------
# Seeded random generators


def random_term(rng: random.Random, depth: int, vars_: list[str]) -> Term:
    choices = ["var", "const"]
    if depth > 0:
        choices += ["fun", "fun", "eps"]
    match rng.choice(choices):
        case "var" if vars_:
            return Var(rng.choice(vars_))
        case "fun" if depth > 0:
            n = rng.randint(1, 2)
            return App(
                rng.choice("fgh"),
                tuple(random_term(rng, depth - 1, vars_) for _ in range(n)),
            )
        case "eps" if depth > 0:
            x = rng.choice("xyz")
            body = random_formula(rng, depth - 1, vars_ + [x])
            cls = Eps if rng.random() < 0.5 else Tau
            return cls(x, abstract_var(body, x))
        case _:
            return App(rng.choice("abcd"), ())


def random_formula(rng: random.Random, depth: int, vars_: list[str]) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        n = rng.randint(0, 2)
        return Atom(
            rng.choice("PQR"), tuple(random_term(rng, max(depth - 1, 0), vars_) for _ in range(n))
        )
    match rng.choice(["not", "and", "or", "imp"]):
        case "not":
            return Not(random_formula(rng, depth - 1, vars_))
        case "and":
            return And(random_formula(rng, depth - 1, vars_), random_formula(rng, depth - 1, vars_))
        case "or":
            return Or(random_formula(rng, depth - 1, vars_), random_formula(rng, depth - 1, vars_))
        case _:
            return Implies(
                random_formula(rng, depth - 1, vars_), random_formula(rng, depth - 1, vars_)
            )


def random_matrix(rng: random.Random, depth: int, hole: str) -> Formula:
    """A formula of bounded depth guaranteed to mention the hole variable."""
    for _ in range(100):
        phi = random_formula(rng, depth, [hole])
        if Var(hole) in _all_terms(phi):
            return phi
    return Atom("P", (Var(hole),))


def _all_terms(phi) -> set:
    return set(subterms(phi))


def random_prop_formula(rng: random.Random, depth: int, atoms: list[str]) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(atoms), ())
    match rng.choice(["not", "and", "or", "imp", "top", "bot"]):
        case "not":
            return Not(random_prop_formula(rng, depth - 1, atoms))
        case "and":
            return And(
                random_prop_formula(rng, depth - 1, atoms),
                random_prop_formula(rng, depth - 1, atoms),
            )
        case "or":
            return Or(
                random_prop_formula(rng, depth - 1, atoms),
                random_prop_formula(rng, depth - 1, atoms),
            )
        case "imp":
            return Implies(
                random_prop_formula(rng, depth - 1, atoms),
                random_prop_formula(rng, depth - 1, atoms),
            )
        case "top":
            return Top()
        case _:
            return Bot()


def random_classical_judgment(rng: random.Random):
    """A small valid classical judgment: criticals entail a chosen critical.

    Uses at most 3 epsilon terms with ranks up to 2 and one or two witnesses
    each, mixing ground, cross-term, and impredicative witnesses.
    """
    n_terms = rng.randint(1, 3)
    matrices = []
    holes = []
    for i in range(n_terms):
        hole = "xyz"[i]
        pred = "PQR"[i]
        if i > 0 and rng.random() < 0.35:
            # rank-2 matrix: an inner epsilon term that uses this matrix's
            # own variable, so the outer term gets a subordinate subterm
            inner = Eps("w", Atom("N" + str(i), (Bound(0), Var(hole))))
            matrices.append(Atom(pred, (Var(hole), inner)))
        else:
            matrices.append(Atom(pred, (Var(hole),)))
        holes.append(hole)
    eps_terms = [Eps(h, abstract_var(m, h)) for m, h in zip(matrices, holes)]
    criticals = []
    for i, (m, h, e) in enumerate(zip(matrices, holes, eps_terms)):
        for _ in range(rng.randint(1, 2)):
            kind = rng.random()
            if kind < 0.4:
                witness: Term = App(rng.choice("cd"), ())
            elif kind < 0.7 and n_terms > 1:
                witness = eps_terms[(i + 1) % n_terms]
            else:
                witness = App("f", (e,))  # impredicative
            criticals.append(make_critical(m, h, "eps", witness).rendered)
    goal = rng.choice(criticals)
    return make_judgment(CLASSICAL, criticals, goal)


# ---------------------------------------------------------------------------
# Shared fixtures


def chain_witness_judgment():
    """Goal V from premises {U, U -> V}, where both premises read as critical
    formulas and one witness feeds the other term's matrix."""
    from epsitau.parser import parse_formula as pf

    u = pf("P(f(eps x. P(x))) -> P(eps x. P(x))")
    v = pf("P(f(eps z. P(f(z)) -> P(z))) -> P(eps z. P(f(z)) -> P(z))")
    return make_judgment(CLASSICAL, [u, Implies(u, v)], v)


def lc3_worked_judgment(goal=None):
    """The four-critical judgment C_s, C_t (impredicative), C_u, C_v (predicative).

    The default goal A(u) -> A(e) equals C_u, so the judgment verifies on the
    3-valued backend.
    """
    from epsitau.judgments import lcm
    from epsitau.parser import parse_formula as pf

    cs = pf("A(s(eps x. A(x))) -> A(eps x. A(x))")
    ct = pf("A(t(eps x. A(x))) -> A(eps x. A(x))")
    cu = pf("A(u) -> A(eps x. A(x))")
    cv = pf("A(v) -> A(eps x. A(x))")
    return make_judgment(lcm(3), [cs, ct, cu, cv], goal if goal is not None else cu)


def weak_lin_negative_judgment():
    """Two mutually entangled predicative criticals whose elimination in either
    order leaves an impredicative residue."""
    from epsitau.judgments import LC
    from epsitau.parser import parse_formula as pf

    c1 = pf("A(f(eps y. B(y))) -> A(eps x. A(x))")
    c2 = pf("B(g(eps x. A(x))) -> B(eps y. B(y))")
    return make_judgment(LC, [c1, c2], And(c1, c2))
