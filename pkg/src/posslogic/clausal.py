"""Clausal form, negated queries and Herbrand grounding."""
from __future__ import annotations

import itertools
from typing import FrozenSet, Iterable, List, Optional, Sequence

from .errors import BudgetExceeded, ClausalFormError, SignatureError
from .syntax import (
    And, Atom, Bottom, Clause, Formula, Implies, KnowledgeBase, Literal, Not, Or,
    PossFormula, Term, Top, conj, const, is_ground,
)

FRESH_CONSTANT = const("C0")


def _nnf(f: Formula, negate: bool = False) -> Formula:
    if isinstance(f, Clause):
        return _nnf(f.as_formula(), negate)
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Top):
        return Bottom() if negate else f
    if isinstance(f, Bottom):
        return Top() if negate else f
    if isinstance(f, Not):
        return _nnf(f.arg, not negate)
    if isinstance(f, And):
        parts = tuple(_nnf(a, negate) for a in f.args)
        return Or(parts) if negate else And(parts)
    if isinstance(f, Or):
        parts = tuple(_nnf(a, negate) for a in f.args)
        return And(parts) if negate else Or(parts)
    if isinstance(f, Implies):
        return _nnf(Or((Not(f.left), f.right)), negate)
    raise TypeError(f"not a formula: {f!r}")


def _cnf(f: Formula) -> List[FrozenSet[Literal]]:
    # f is in negation normal form
    if isinstance(f, Atom):
        return [frozenset([Literal(f, True)])]
    if isinstance(f, Not):
        return [frozenset([Literal(f.arg, False)])]
    if isinstance(f, Top):
        return []
    if isinstance(f, Bottom):
        return [frozenset()]
    if isinstance(f, And):
        out = []
        for a in f.args:
            out.extend(_cnf(a))
        return out
    if isinstance(f, Or):
        out = [frozenset()]
        for a in f.args:
            out = [x | y for x in out for y in _cnf(a)]
        return out
    raise TypeError(f"not in negation normal form: {f!r}")


def cnf_clauses(f: Formula) -> List[Clause]:
    """CNF by distribution; tautologies and repeated clauses are dropped."""
    seen = set()
    out = []
    for lits in _cnf(_nnf(f)):
        c = Clause(lits)
        if c.is_tautology or c in seen:
            continue
        seen.add(c)
        out.append(c)
    return out


def to_clausal(kb: KnowledgeBase) -> KnowledgeBase:
    """Each N-formula becomes its CNF clauses, all carrying the formula's weight.

    A Pi-formula is accepted only when it is equivalent to a single clause;
    splitting a possibility-weighted conjunction changes the inconsistency
    degree, so that case raises :class:`ClausalFormError`.
    """
    out = []
    for e in kb:
        if e.is_clause:
            out.append(e)
            continue
        clauses = cnf_clauses(e.body)
        if e.weight.is_possibility and len(clauses) > 1:
            raise ClausalFormError(
                f"possibility-weighted formula {e.body} has no clausal form with the same "
                "inconsistency degree: splitting a Pi-weighted conjunction weakens it")
        out.extend(PossFormula(c, e.weight) for c in clauses)
    return KnowledgeBase(out)


def negate_query(f: Formula) -> List[Clause]:
    """Clauses of the negation of a ground query."""
    if not is_ground(f):
        raise SignatureError(f"queries must be ground: {f}")
    return cnf_clauses(Not(f))


def herbrand_universe(kb: KnowledgeBase, constants: Iterable[Term] = ()) -> List[Term]:
    universe = set(kb.constants()) | set(constants)
    if not universe:
        universe = {FRESH_CONSTANT}
    return sorted(universe, key=lambda t: t.name)


def instances(c: Clause, universe: Sequence[Term]) -> List[Clause]:
    variables = sorted(c.variables(), key=lambda t: t.name)
    if not variables:
        return [c]
    out = []
    seen = set()
    for combo in itertools.product(universe, repeat=len(variables)):
        inst = c.substitute(dict(zip(variables, combo)))
        if inst not in seen:
            seen.add(inst)
            out.append(inst)
    return out


def ground(kb: KnowledgeBase, constants: Iterable[Term] = (),
           limit: Optional[int] = None) -> KnowledgeBase:
    """Replace every clause by its instances over the Herbrand universe.

    N-clauses become one entry per instance.  A Pi-clause with variables is a
    single statement about a single world, so its instances are kept together
    as one Pi-weighted conjunction.  Ground entries are kept as they are.
    """
    universe = herbrand_universe(kb, constants)
    out = []
    total = 0
    for e in kb:
        if is_ground(e.body):
            total += 1
            out.append(e)
            continue
        inst = instances(e.body, universe)
        total += len(inst)
        if limit is not None and total > limit:
            raise BudgetExceeded(f"grounding exceeds {limit} clause instances")
        if e.weight.is_necessity or len(inst) == 1:
            out.extend(PossFormula(c, e.weight) for c in inst)
        else:
            out.append(PossFormula(conj(*(c.as_formula() for c in inst)), e.weight))
    return KnowledgeBase(out)
