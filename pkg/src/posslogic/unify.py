"""Function-free unification, matching and variable renaming."""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Set

from .syntax import Atom, Clause, Literal, Term, Substitution, var


def _walk(t: Term, sigma: Mapping[Term, Term]) -> Term:
    while t.is_variable and t in sigma:
        t = sigma[t]
    return t


def unify(a1: Atom, a2: Atom, sigma: Optional[Substitution] = None) -> Optional[Substitution]:
    """Most general unifier of two atoms, or None.

    Without function symbols a variable can only be bound to a variable or a
    constant, so the occurs check reduces to refusing ``x -> x``.
    """
    if a1.predicate != a2.predicate or a1.arity != a2.arity:
        return None
    s: Dict[Term, Term] = dict(sigma or {})
    for t1, t2 in zip(a1.args, a2.args):
        t1 = _walk(t1, s)
        t2 = _walk(t2, s)
        if t1 == t2:
            continue
        if t1.is_variable:
            s[t1] = t2
        elif t2.is_variable:
            s[t2] = t1
        else:
            return None
    return {v: _walk(v, s) for v in s}


def match_literal(pattern: Literal, target: Literal, theta: Substitution) -> Optional[Substitution]:
    """Extend ``theta`` so that ``pattern`` instantiates to ``target``; only pattern variables bind."""
    if pattern.positive != target.positive:
        return None
    pa, ta = pattern.atom, target.atom
    if pa.predicate != ta.predicate or pa.arity != ta.arity:
        return None
    out = dict(theta)
    for p, t in zip(pa.args, ta.args):
        if p.is_variable:
            bound = out.get(p)
            if bound is None:
                out[p] = t
            elif bound != t:
                return None
        elif p != t:
            return None
    return out


def subsumes(d: Clause, c: Clause) -> bool:
    """True iff some substitution maps every literal of ``d`` into ``c``."""
    if len(d) > len(c):
        return False
    # most constrained literals first
    pattern = sorted(d.literals, key=lambda l: -sum(not t.is_variable for t in l.atom.args))
    targets = list(c.literals)

    def search(k: int, theta: Substitution) -> bool:
        if k == len(pattern):
            return True
        for t in targets:
            nxt = match_literal(pattern[k], t, theta)
            if nxt is not None and search(k + 1, nxt):
                return True
        return False

    return search(0, {})


def rename_apart(c: Clause, taken: Iterable[Term]) -> tuple[Clause, Substitution]:
    """Rename the variables of ``c`` that clash with ``taken``."""
    taken_names = {t.name for t in taken}
    clashes = sorted((v for v in c.variables() if v.name in taken_names), key=lambda t: t.name)
    if not clashes:
        return c, {}
    used = taken_names | {v.name for v in c.variables()}
    renaming = {}
    for v in clashes:
        k = 1
        while f"{v.name}{k}" in used:
            k += 1
        fresh = var(f"{v.name}{k}")
        used.add(fresh.name)
        renaming[v] = fresh
    return c.substitute(renaming), renaming


_NAMES = ("x", "y", "z", "u", "v", "w")


def canonical(c: Clause) -> Clause:
    """Rename variables to x, y, z, ... in order of first appearance."""
    variables = c.variables()
    if not variables:
        return c

    def shape(lit: Literal):
        return (lit.atom.predicate, not lit.positive,
                tuple("?" if t.is_variable else t.name for t in lit.atom.args))

    order = []
    for lit in sorted(c.literals, key=shape):
        for t in lit.atom.args:
            if t.is_variable and t not in order:
                order.append(t)
    names = [(_NAMES[k] if k < len(_NAMES) else f"x{k}") for k in range(len(order))]
    return c.substitute({old: var(new) for old, new in zip(order, names)})


def restrict(sigma: Substitution, variables: Set[Term]) -> Substitution:
    return {v: t for v, t in sigma.items() if v in variables}


def format_substitution(sigma: Mapping[Term, Term]) -> str:
    body = ", ".join(f"{v}->{t}" for v, t in sorted(sigma.items(), key=lambda kv: kv[0].name))
    return "{" + body + "}"


def apply_all(sigma: Substitution, literals: Sequence[Literal]) -> frozenset:
    return frozenset(l.substitute(sigma) for l in literals)
