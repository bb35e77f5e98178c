"""Seeded random knowledge bases, formulas and distributions for testing."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Sequence

from .syntax import (
    And, Atom, Bottom, Clause, Formula, Implies, KnowledgeBase, Literal, Not, Or,
    PossFormula, Top,
)
from .valuation import N, Pi, Valuation

GRID = tuple(Fraction(k, 10) for k in range(11))
PROP_ATOMS = tuple(Atom(name) for name in ("p", "q", "r", "s"))


def random_weight(rng: random.Random, p_necessity: float = 0.6) -> Valuation:
    if rng.random() < p_necessity:
        return N(rng.choice(GRID[1:]))
    return Pi(rng.choice(GRID))


def random_clause(rng: random.Random, atoms: Sequence[Atom], max_len: int = 3,
                  allow_empty: bool = False) -> Clause:
    lo = 0 if allow_empty else 1
    size = rng.randint(lo, min(max_len, len(atoms)))
    chosen = rng.sample(list(atoms), size)
    return Clause(frozenset(Literal(a, rng.random() < 0.5) for a in chosen))


def random_clausal_kb(rng: random.Random, n_atoms: int = 4, max_clauses: int = 8,
                      p_necessity: float = 0.6, max_len: int = 3) -> KnowledgeBase:
    atoms = PROP_ATOMS[:n_atoms]
    n = rng.randint(1, max_clauses)
    return KnowledgeBase(
        PossFormula(random_clause(rng, atoms, max_len), random_weight(rng, p_necessity))
        for _ in range(n))


def random_formula(rng: random.Random, atoms: Sequence[Atom], depth: int = 3) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.05:
            return Top()
        if r < 0.1:
            return Bottom()
        return rng.choice(list(atoms))
    kind = rng.choice(("not", "and", "or", "implies"))
    if kind == "not":
        return Not(random_formula(rng, atoms, depth - 1))
    if kind == "implies":
        return Implies(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))
    parts = tuple(random_formula(rng, atoms, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(parts) if kind == "and" else Or(parts)


def random_formula_kb(rng: random.Random, n_atoms: int = 3, max_entries: int = 5,
                      p_necessity: float = 0.6, necessity_only: bool = False) -> KnowledgeBase:
    atoms = PROP_ATOMS[:n_atoms]
    out = []
    for _ in range(rng.randint(1, max_entries)):
        w = N(rng.choice(GRID[1:])) if necessity_only else random_weight(rng, p_necessity)
        out.append(PossFormula(random_formula(rng, atoms, 2), w))
    return KnowledgeBase(out)


def random_grid_values(rng: random.Random, n_worlds: int,
                       ceiling: Optional[List[Fraction]] = None) -> List[Fraction]:
    """Grid values, optionally kept below a per-world ceiling."""
    out = []
    for k in range(n_worlds):
        cap = ceiling[k] if ceiling is not None else Fraction(1)
        allowed = [g for g in GRID if g <= cap]
        out.append(rng.choice(allowed))
    return out
