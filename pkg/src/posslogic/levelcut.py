"""Inconsistency degree by weight-level cuts and classical satisfiability.

Shares nothing with the resolution prover except the clause types: each
level is reduced to one or more classical consistency checks decided by
DPLL over the Herbrand grounding (finite, since there are no function
symbols).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

from .clausal import herbrand_universe, instances, negate_query, to_clausal
from .errors import BudgetExceeded
from .syntax import Atom, Clause, Formula, KnowledgeBase, PossFormula, Term
from .valuation import BOTTOM, TOP, Valuation


@dataclass(frozen=True)
class CutBudget:
    max_ground_clauses: int = 100_000
    max_decisions: int = 1_000_000


class _OutOfBudget(Exception):
    pass


def _dpll(clauses: List[List[int]], max_decisions: int) -> bool:
    """Satisfiability of integer-literal CNF by unit propagation and splitting."""
    decisions = 0

    def propagate(cls, assign):
        while True:
            unit = None
            remaining = []
            for c in cls:
                lits = []
                sat = False
                for lit in c:
                    v = assign.get(abs(lit))
                    if v is None:
                        lits.append(lit)
                    elif v == (lit > 0):
                        sat = True
                        break
                if sat:
                    continue
                if not lits:
                    return None
                if len(lits) == 1 and unit is None:
                    unit = lits[0]
                remaining.append(lits)
            if unit is None:
                return remaining
            assign[abs(unit)] = unit > 0
            cls = remaining

    def search(cls, assign) -> bool:
        nonlocal decisions
        cls = propagate(cls, assign)
        if cls is None:
            return False
        if not cls:
            return True
        decisions += 1
        if decisions > max_decisions:
            raise _OutOfBudget()
        counts: Dict[int, int] = {}
        for c in cls:
            for lit in c:
                counts[lit] = counts.get(lit, 0) + 1
        lit = max(sorted(counts), key=lambda l: counts[l])
        for choice in (lit, -lit):
            trial = dict(assign)
            trial[abs(choice)] = choice > 0
            if search(cls, trial):
                return True
        return False

    return search([list(c) for c in clauses], {})


def _encode(clauses: Iterable[Clause]) -> List[List[int]]:
    ids: Dict[Atom, int] = {}
    out = []
    for c in clauses:
        row = []
        for lit in c.sorted_literals():
            k = ids.setdefault(lit.atom, len(ids) + 1)
            row.append(k if lit.positive else -k)
        out.append(row)
    return out


def classical_inconsistent(clauses: Iterable[Clause], budget: CutBudget = CutBudget(),
                           constants: Iterable[Term] = ()) -> Optional[bool]:
    """True iff the clause set has no classical model; None when the budget runs out.

    Non-ground clauses are replaced by their instances over the constants
    they mention (plus ``constants``).
    """
    clauses = list(clauses)
    if not all(c.is_ground for c in clauses):
        universe = herbrand_universe(
            KnowledgeBase(PossFormula(c, TOP) for c in clauses), constants)
        grounded = []
        for c in clauses:
            grounded.extend(instances(c, universe))
            if len(grounded) > budget.max_ground_clauses:
                return None
        clauses = grounded
    try:
        return not _dpll(_encode(clauses), budget.max_decisions)
    except _OutOfBudget:
        return None


@dataclass(frozen=True)
class CutResult:
    valuation: Valuation
    pi_witness: Optional[int] = None


def _clausal_entries(kb) -> List[PossFormula]:
    entries = list(kb)
    if not all(e.is_clause for e in entries):
        entries = list(to_clausal(KnowledgeBase(entries)))
    return entries


def explain_cut(kb, budget: CutBudget = CutBudget()) -> CutResult:
    """Like :func:`incons_cut`, also naming the Pi-entry behind a ``(Pi b)`` answer."""
    entries = _clausal_entries(kb)
    universe = herbrand_universe(KnowledgeBase(entries))
    grounded: List[List[Clause]] = []
    total = 0
    for e in entries:
        inst = instances(e.body, universe)
        total += len(inst)
        if total > budget.max_ground_clauses:
            raise BudgetExceeded(f"grounding exceeds {budget.max_ground_clauses} clauses")
        grounded.append(inst)

    def inconsistent(indices: Sequence[int]) -> bool:
        clauses = [c for i in indices for c in grounded[i]]
        verdict = classical_inconsistent(clauses, budget)
        if verdict is None:
            raise BudgetExceeded("classical consistency check ran out of decisions")
        return verdict

    levels = sorted({e.weight for e in entries if e.weight != BOTTOM}, reverse=True)
    for level in levels:
        if level.is_necessity:
            members = [i for i, e in enumerate(entries)
                       if e.weight.is_necessity and e.weight.degree >= level.degree]
            if inconsistent(members):
                return CutResult(level)
            continue
        beta = level.degree
        support = [i for i, e in enumerate(entries)
                   if e.weight.is_necessity and e.weight.degree + beta > 1]
        for j, e in enumerate(entries):
            if e.weight.is_possibility and e.weight.degree >= beta:
                # all instances of one Pi-clause describe the same world
                if inconsistent(support + [j]):
                    return CutResult(level, j)
    return CutResult(BOTTOM)


def incons_cut(kb, budget: CutBudget = CutBudget()) -> Valuation:
    return explain_cut(kb, budget).valuation


def val_cut(kb, f: Formula, budget: CutBudget = CutBudget()) -> Valuation:
    entries = _clausal_entries(kb) + [PossFormula(c, TOP) for c in negate_query(f)]
    return incons_cut(entries, budget)
