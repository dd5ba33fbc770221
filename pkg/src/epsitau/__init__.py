"""Epsilon/tau calculi over intermediate propositional logics."""

from .critical import (
    CriticalFormula,
    degree,
    is_predicative,
    is_weak,
    make_critical,
    nested_subterms,
    rank,
    recognize_critical,
    select_max,
    subordinate_subterms,
)
from .eliminate import (
    EliminationError,
    EliminationStep,
    EliminationTrace,
    FailureReport,
    bm_extract,
    combine_disjunction,
    eliminate_complete_Gm,
    eliminate_complete_classical,
    eliminate_impredicative_Bm,
    eliminate_negated_jankov,
    eliminate_predicative_lin,
    eliminate_single_classical,
    reconstruct_from_herbrand,
    run_elimination,
    run_weak_lin,
    strengthen_premise,
    theorem_form_convert,
    trace_to_json,
)
from .judgments import (
    CLASSICAL,
    H,
    KC,
    LC,
    Judgment,
    Logic,
    dump_judgment,
    lcm,
    load_judgment,
    make_judgment,
    parse_logic,
)
from .parser import ParseError, parse_formula, parse_term
from .semantics import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    GodelChain,
    abstract_atoms,
    counterexample_Bm,
    eval_godel,
    prove_H,
    prove_H_trace,
    schema,
    schema_relations_check,
    valid_in_LC,
    valid_in_LCm,
    verify_judgment,
)
from .syntax import (
    And,
    App,
    Atom,
    BOT,
    Bot,
    Eps,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Signature,
    Symbol,
    TOP,
    Tau,
    Term,
    Top,
    Var,
    alpha_eq,
    canonical_text,
    eps,
    exists,
    forall,
    free_vars,
    match_matrix,
    occurs,
    subst_term,
    subst_var,
    tau,
    to_text,
)
from .translate import (
    CriticalWitness,
    ModusPonensWitness,
    QuantifierShiftKind,
    ShiftInstance,
    et_translate,
    herbrand_form,
    quantifier_shift_instance,
    shadow,
)

__version__ = "0.1.0"
