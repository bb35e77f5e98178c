"""Possibilistic logic: inconsistency degrees and graded entailment.

Three engines answer the same questions and cross-check each other:

* ``semantics``: exact model enumeration over a signature plus an absurd world;
* ``resolution``: weighted resolution with an optimal-refutation search;
* ``levelcut``: weight-level cuts decided by classical satisfiability.
"""
from .clausal import cnf_clauses, ground, negate_query, to_clausal
from .errors import BudgetExceeded, ClausalFormError, ParseError, PossLogicError, SignatureError
from .kbio import format_formula, parse_formula, parse_kb, print_kb, read_kb
from .levelcut import CutBudget, explain_cut, incons_cut, val_cut
from .resolution import Budget, RefutationProof, SearchOutcome, Status, refute, val_query
from .semantics import (
    Consistency, InconsistencyReport, PossibilityDistribution, classify, entails,
    entails_by_models, incons, induced_necessity, induced_possibility, maximal_distribution,
    satisfies, val_by_models, val_of,
)
from .syntax import (
    And, Atom, Bottom, Clause, Formula, Implies, Interpretation, KnowledgeBase, Literal, Not, Or,
    PossFormula, Term, Top, const, var,
)
from .valuation import BOTTOM, TOP, Mode, N, Pi, Valuation, val_combine, val_leq

__all__ = [
    "And", "Atom", "BOTTOM", "Bottom", "Budget", "BudgetExceeded", "ClausalFormError", "Clause",
    "Consistency", "CutBudget", "Formula", "Implies", "InconsistencyReport", "Interpretation",
    "KnowledgeBase", "Literal", "Mode", "N", "Not", "Or", "ParseError", "Pi",
    "PossFormula", "PossLogicError", "PossibilityDistribution", "RefutationProof", "SearchOutcome",
    "SignatureError", "Status", "TOP", "Term", "Top", "Valuation", "classify", "cnf_clauses",
    "const", "entails", "entails_by_models", "explain_cut", "format_formula", "ground", "incons",
    "incons_cut", "induced_necessity", "induced_possibility", "maximal_distribution",
    "negate_query", "parse_formula", "parse_kb", "print_kb", "read_kb", "refute", "satisfies",
    "to_clausal", "val_by_models", "val_combine", "val_cut", "val_leq", "val_of", "val_query",
    "var",
]
