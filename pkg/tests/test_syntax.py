import random

import pytest
from hypothesis import given, settings, strategies as st

from epsitau.syntax import (
    App,
    Atom,
    SortError,
    Var,
    alpha_eq,
    canonical_text,
    dedup,
    eps,
    free_vars,
    match_matrix,
    occurs,
    or_join,
    or_spine,
    subst_term,
    subst_var,
    to_text,
)
from epsitau.parser import parse_formula as pf, parse_term as pt

from helpers import random_formula, random_matrix, random_term


def test_alpha_eq_renamed_binder():
    assert alpha_eq(pt("eps x. P(x)"), pt("eps y. P(y)"))


def test_alpha_eq_distinct_heads():
    assert not alpha_eq(pt("eps x. P(x)"), pt("eps x. Q(x)"))


def test_alpha_eq_nested_binders():
    a = pt("eps x. P(x, eps y. Q(y, x))")
    b = pt("eps z. P(z, eps y. Q(y, z))")
    assert alpha_eq(a, b)


def test_alpha_eq_sort_mismatch():
    with pytest.raises(SortError):
        alpha_eq(pt("c"), pf("P(c)"))


def test_subst_var_direct():
    assert subst_var(pf("P(x)"), "x", pt("eps y. P(y)")) == pf("P(eps y. P(y))")


def test_subst_var_capture_forced():
    # substituting f(y) under a binder for y must not capture
    phi = pf("ex y. R(x, y)")
    out = subst_var(phi, "x", pt("f(y)"))
    assert out == pf("ex z. R(f(y), z)")
    assert "y" in free_vars(out)


def test_subst_var_not_free():
    assert subst_var(pf("P(c)"), "x", pt("t")) == pf("P(c)")


def test_subst_term_two_occurrences():
    e = pt("eps z. P(z)")
    phi = pf("P(f(eps z. P(z))) -> P(eps z. P(z))")
    assert subst_term(phi, e, pt("c")) == pf("P(f(c)) -> P(c)")


def test_subst_term_capture_blocks_replacement():
    # A(y) = B(eps x. C(x, y), y); occurrences of eps x. C(x, t) under the
    # binder for y use y, not t, so A(eps y. A(y)) is unchanged
    e = pt("eps x. C(x, t)")
    a_t = pf("B(eps x. C(x, t), t)")
    assert subst_term(a_t, e, pt("s")) == pf("B(s, t)")
    a_self = pf("B(eps x. C(x, eps y. B(eps x. C(x, y), y)), eps y. B(eps x. C(x, y), y))")
    outer = pt("eps y. B(eps x. C(x, y), y)")
    # the inner eps x. C(x, y) is alpha-distinct from e, so only exact copies go
    changed = subst_term(a_self, e, pt("s"))
    assert occurs(outer, changed) or changed == a_self
    assert subst_term(pf("B(eps x. C(x, y), y)"), e, pt("s")) == pf("B(eps x. C(x, y), y)")


def test_subst_term_no_occurrence():
    u = pf("Q(d)")
    assert subst_term(u, pt("eps z. P(z)"), pt("a")) == u


def test_subst_term_does_not_descend_into_replacement():
    e = pt("eps x. P(x)")
    s = pt("f(eps x. P(x))")
    out = subst_term(pf("Q(eps x. P(x))"), e, s)
    assert out == pf("Q(f(eps x. P(x)))")


def test_occurs_under_renamed_binder():
    assert occurs(pt("eps x. P(x)"), pf("P(f(eps y. P(y)))"))


def test_occurs_negative_and_reflexive():
    assert not occurs(pt("eps x. P(x)"), pf("Q(c)"))
    e = pt("eps x. P(x)")
    assert occurs(e, e)


def test_match_matrix_single_position():
    assert match_matrix(pf("P(x)"), "x", pf("P(f(a))")) == [pt("f(a)")]


def test_match_matrix_multi_position():
    pattern = pf("P(f(x)) -> P(x)")
    target = pf("P(f(eps x. P(x))) -> P(eps x. P(x))")
    assert match_matrix(pattern, "x", target) == [pt("eps x. P(x)")]


def test_match_matrix_head_mismatch():
    assert match_matrix(pf("P(x)"), "x", pf("Q(a)")) == []


def test_match_matrix_inconsistent_positions():
    assert match_matrix(pf("R(x, x)"), "x", pf("R(a, b)")) == []


def test_match_matrix_rejects_captured_solutions():
    # the only candidate uses the bound variable, which is not a term
    pattern = pf("Q(eps y. R(x, y))")
    target = pf("Q(eps y. R(y, y))")
    assert match_matrix(pattern, "x", target) == []


def test_match_matrix_degenerate_hole():
    assert match_matrix(pf("P(c)"), "x", pf("P(c)")) == [Var("x")]
    assert match_matrix(pf("P(c)"), "x", pf("P(d)")) == []


def test_or_spine_join_roundtrip():
    f = pf("A | (B | C)")
    assert or_spine(f) == [pf("A"), pf("B"), pf("C")]
    assert or_join(or_spine(f)) == f


def test_dedup_alpha():
    xs = dedup([pt("eps x. P(x)"), pt("eps y. P(y)"), pt("c")])
    assert len(xs) == 2


def test_canonical_text_ignores_hints():
    assert canonical_text(pt("eps x. P(x)")) == canonical_text(pt("eps y. P(y)"))


def test_printer_avoids_shadowed_free_names():
    # binder hint collides with a free variable of the body
    e = eps("y", Atom("R", (Var("y"), App("f", (Var("y'"),)))))
    text = to_text(e)
    assert pt(text) == e


# ---------------------------------------------------------------------------
# Property tests


@st.composite
def terms(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_term(rng, depth=draw(st.integers(0, 4)), vars_=["v"])


@st.composite
def formulas(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_formula(rng, depth=draw(st.integers(0, 4)), vars_=["v"])


@settings(max_examples=80, deadline=None)
@given(terms(), terms())
def test_alpha_is_equivalence(a, b):
    assert alpha_eq(a, a)
    assert alpha_eq(a, b) == alpha_eq(b, a)


@settings(max_examples=80, deadline=None)
@given(formulas())
def test_subst_var_identity(phi):
    assert alpha_eq(subst_var(phi, "v", Var("v")), phi)


@settings(max_examples=80, deadline=None)
@given(formulas(), terms())
def test_subst_term_self_and_absent(phi, t):
    es = [s for s in [t] if s.__class__.__name__ in ("Eps", "Tau")]
    for e in es:
        assert alpha_eq(subst_term(phi, e, e), phi)
    absent = pt("eps q. Zq(q)")
    assert alpha_eq(subst_term(phi, absent, pt("a")), phi)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), terms())
def test_match_matrix_roundtrip(seed, t):
    rng = random.Random(seed)
    matrix = random_matrix(rng, depth=3, hole="v")
    target = subst_var(matrix, "v", t)
    assert t in match_matrix(matrix, "v", target)


@settings(max_examples=60, deadline=None)
@given(formulas())
def test_print_parse_roundtrip(phi):
    assert pf(to_text(phi)) == phi


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_subst_commutes_on_disjoint_occurrences(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, 3, [])
    e1 = pt("eps x. P(x)")
    e2 = pt("eps x. Q(x)")
    s1 = pt("a")
    s2 = pt("b")
    # side conditions: e2 does not occur in s1, e1 != e2, replacements ground
    one = subst_term(subst_term(phi, e1, s1), e2, s2)
    two = subst_term(subst_term(phi, e2, s2), e1, s1)
    assert alpha_eq(one, two)
