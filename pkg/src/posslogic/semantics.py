"""Possibility distributions over the ordinary worlds plus the absurd world.

This module is the exact oracle the proof engines are checked against.  It
works on ground knowledge bases only; first-order input has to be grounded
first (see :func:`posslogic.clausal.ground`).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .errors import SignatureError
from .syntax import (
    Atom, Bottom, Clause, Formula, Implies, Interpretation, KnowledgeBase,
    Not, And, Or, PossFormula, Top, atoms_of, eval_formula,
)
from .valuation import BOTTOM, N, Pi, TOP, Valuation

ONE = Fraction(1)
ZERO = Fraction(0)

# Above this the oracle refuses: 2**22 worlds times the entry count is
# already several hundred MB of truth table.
MAX_ATOMS = 22


class WorldSpace:
    """All ``2**n`` assignments of a fixed, ordered tuple of ground atoms."""

    def __init__(self, atoms: Sequence[Atom]):
        atoms = tuple(atoms)
        for a in atoms:
            if not a.is_ground:
                raise SignatureError(f"the oracle needs ground atoms, got {a}")
        if len(set(atoms)) != len(atoms):
            raise ValueError("duplicate atoms")
        if len(atoms) > MAX_ATOMS:
            raise SignatureError(
                f"{len(atoms)} ground atoms exceed the oracle limit of {MAX_ATOMS}")
        self.atoms = atoms
        self.index = {a: k for k, a in enumerate(atoms)}
        self.size = 1 << len(atoms)
        self._columns: Optional[np.ndarray] = None

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def columns(self) -> np.ndarray:
        if self._columns is None:
            worlds = np.arange(self.size, dtype=np.int64)
            shifts = np.arange(self.n_atoms, dtype=np.int64)[:, None]
            self._columns = ((worlds[None, :] >> shifts) & 1).astype(bool)
        return self._columns

    def check(self, f: Formula) -> None:
        missing = [a for a in atoms_of(f) if a not in self.index]
        if missing:
            names = ", ".join(sorted(map(str, missing)))
            raise SignatureError(f"atoms outside the signature: {names}")

    def truth(self, f: Formula) -> np.ndarray:
        """Boolean vector over the ordinary worlds."""
        self.check(f)
        return self._truth(f)

    def _truth(self, f: Formula) -> np.ndarray:
        if isinstance(f, Clause):
            return self.clause_truth([f])[0]
        if isinstance(f, Atom):
            return self.columns()[self.index[f]]
        if isinstance(f, Top):
            return np.ones(self.size, dtype=bool)
        if isinstance(f, Bottom):
            return np.zeros(self.size, dtype=bool)
        if isinstance(f, Not):
            return ~self._truth(f.arg)
        if isinstance(f, And):
            out = self._truth(f.args[0]).copy()
            for a in f.args[1:]:
                out &= self._truth(a)
            return out
        if isinstance(f, Or):
            out = self._truth(f.args[0]).copy()
            for a in f.args[1:]:
                out |= self._truth(a)
            return out
        if isinstance(f, Implies):
            return ~self._truth(f.left) | self._truth(f.right)
        raise TypeError(f"not a formula: {f!r}")

    def clause_truth(self, clauses: Sequence[Clause]) -> np.ndarray:
        pos = np.zeros(len(clauses), dtype=np.int64)
        neg = np.zeros(len(clauses), dtype=np.int64)
        for j, c in enumerate(clauses):
            for lit in c.literals:
                bit = 1 << self.index[lit.atom]
                if lit.positive:
                    pos[j] |= bit
                else:
                    neg[j] |= bit
        return _kernels.clause_truth(pos, neg, self.n_atoms)

    def entry_truth(self, formulas: Sequence[Formula]) -> np.ndarray:
        out = np.zeros((len(formulas), self.size), dtype=bool)
        clause_rows = [j for j, f in enumerate(formulas) if isinstance(f, Clause)]
        if clause_rows:
            out[clause_rows] = self.clause_truth([formulas[j] for j in clause_rows])
        for j, f in enumerate(formulas):
            if not isinstance(f, Clause):
                out[j] = self._truth(f)
        return out

    def world_index(self, i: Interpretation) -> int:
        w = 0
        for a, k in self.index.items():
            try:
                value = i.assignment[a]
            except KeyError:
                raise SignatureError(f"atom {a} is not assigned") from None
            if value:
                w |= 1 << k
        return w

    def interpretation(self, w: int) -> Interpretation:
        return Interpretation({a: bool((w >> k) & 1) for k, a in enumerate(self.atoms)})

    def display_order(self) -> Iterator[int]:
        """Worlds with the first atom varying slowest and true before false."""
        n = self.n_atoms
        for row in range(self.size):
            w = 0
            for k in range(n):
                if not (row >> (n - 1 - k)) & 1:
                    w |= 1 << k
            yield w


class PossibilityDistribution:
    """Exact distribution over the ordinary worlds of a signature and the absurd world.

    Values are stored as indices into a sorted table of distinct degrees.
    """

    def __init__(self, atoms: Sequence[Atom], levels: Sequence[Fraction],
                 index: np.ndarray, absurd: Fraction, *, check: bool = True):
        self.space = atoms if isinstance(atoms, WorldSpace) else WorldSpace(atoms)
        self.levels = tuple(Fraction(v) for v in levels)
        self.index = np.asarray(index, dtype=np.int64)
        self.absurd = Fraction(absurd)
        if check:
            if self.index.shape != (self.space.size,):
                raise ValueError("one value per ordinary world is required")
            if any(not 0 <= v <= 1 for v in self.levels) or not 0 <= self.absurd <= 1:
                raise ValueError("possibility degrees must lie in [0, 1]")
            if self.max_ordinary() != ONE and self.absurd != ONE:
                raise ValueError("distribution is not normalized over the extended worlds")

    @classmethod
    def from_values(cls, atoms: Sequence[Atom], values: Sequence, absurd) -> PossibilityDistribution:
        values = [Fraction(v) for v in values]
        levels = sorted(set(values) | {ZERO})
        pos = {v: k for k, v in enumerate(levels)}
        return cls(atoms, levels, np.array([pos[v] for v in values], dtype=np.int64), Fraction(absurd))

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return self.space.atoms

    def values(self) -> List[Fraction]:
        return [self.levels[k] for k in self.index]

    def value(self, i: Union[Interpretation, int]) -> Fraction:
        if isinstance(i, Interpretation):
            if i.is_absurd:
                return self.absurd
            i = self.space.world_index(i)
        return self.levels[self.index[i]]

    def max_ordinary(self) -> Fraction:
        if self.index.size == 0:
            return ZERO
        return self.levels[int(self.index.max())]

    def rows(self) -> Iterator[Tuple[Interpretation, Fraction]]:
        """Ordinary worlds in display order, then the absurd world."""
        for w in self.space.display_order():
            yield self.space.interpretation(w), self.value(w)
        yield Interpretation(None), self.absurd

    def __eq__(self, other) -> bool:
        if not isinstance(other, PossibilityDistribution):
            return NotImplemented
        return (self.atoms == other.atoms and self.absurd == other.absurd
                and self.values() == other.values())

    def __repr__(self) -> str:
        return f"PossibilityDistribution(atoms={len(self.atoms)}, absurd={self.absurd})"


def _max_over(d: PossibilityDistribution, mask: np.ndarray) -> Optional[Fraction]:
    if not mask.any():
        return None
    return d.levels[int(d.index[mask].max())]


def induced_possibility(d: PossibilityDistribution, f: Formula) -> Fraction:
    """Largest degree among the models of ``f``; the absurd world is always a model."""
    best = _max_over(d, d.space.truth(f))
    return d.absurd if best is None else max(best, d.absurd)


def induced_necessity(d: PossibilityDistribution, f: Formula) -> Fraction:
    """``1 - `` the largest degree among ordinary worlds falsifying ``f``."""
    worst = _max_over(d, ~d.space.truth(f))
    return ONE if worst is None else ONE - worst


def satisfies(d: PossibilityDistribution, target: Union[PossFormula, KnowledgeBase, Iterable[PossFormula]]) -> bool:
    if isinstance(target, PossFormula):
        return _satisfies_one(d, target)
    return all(_satisfies_one(d, e) for e in target)


def _satisfies_one(d: PossibilityDistribution, pf: PossFormula) -> bool:
    if pf.weight.is_necessity:
        return induced_necessity(d, pf.body) >= pf.weight.degree
    return induced_possibility(d, pf.body) >= pf.weight.degree


def _require_ground(kb: KnowledgeBase) -> None:
    if not kb.is_ground:
        raise SignatureError("the semantic oracle needs a ground knowledge base; ground it first")


@dataclass
class _Maximal:
    distribution: PossibilityDistribution
    max_ordinary: Fraction
    forced: Fraction


def _maximal(kb: KnowledgeBase, extra_atoms: Iterable[Atom] = ()) -> _Maximal:
    _require_ground(kb)
    atoms = sorted(set(kb.atoms()) | set(extra_atoms), key=Atom.sort_key)
    space = WorldSpace(atoms)
    nec = [e for e in kb if e.weight.is_necessity]
    pos = [e for e in kb if e.weight.is_possibility]

    degrees = {ZERO, ONE}
    degrees.update(ONE - e.weight.degree for e in nec)
    degrees.update(e.weight.degree for e in pos)
    levels = sorted(degrees)
    rank = {v: k for k, v in enumerate(levels)}

    truth_n = space.entry_truth([e.body for e in nec])
    cost = np.array([rank[ONE - e.weight.degree] for e in nec], dtype=np.int64)
    bounds = _kernels.necessity_bounds(truth_n, cost, rank[ONE])
    m = levels[int(bounds.max())]

    forced = ZERO
    if pos:
        truth_p = space.entry_truth([e.body for e in pos])
        reach = _kernels.row_maxima(truth_p, bounds)
        for e, r in zip(pos, reach):
            if r < rank[e.weight.degree] and e.weight.degree > forced:
                forced = e.weight.degree

    absurd = ONE if m < ONE else forced
    dist = PossibilityDistribution(space, levels, bounds, absurd)
    return _Maximal(dist, m, forced)


def maximal_distribution(kb: KnowledgeBase, extra_atoms: Iterable[Atom] = ()) -> PossibilityDistribution:
    """Pointwise-largest distribution over the ordinary worlds satisfying the N-entries.

    The absurd world gets the least value under which the result satisfies
    the whole base and stays normalized.
    """
    return _maximal(kb, extra_atoms).distribution


class Consistency(str, enum.Enum):
    COMPLETELY_CONSISTENT = "completely consistent"
    POSSIBLY_INCONSISTENT = "possibly inconsistent"
    NECESSARILY_INCONSISTENT = "necessarily inconsistent"
    COMPLETELY_INCONSISTENT = "completely inconsistent"

    def __str__(self) -> str:
        return self.value


def classify(degree: Valuation) -> Consistency:
    if degree == BOTTOM:
        return Consistency.COMPLETELY_CONSISTENT
    if degree == TOP:
        return Consistency.COMPLETELY_INCONSISTENT
    if degree.is_possibility:
        return Consistency.POSSIBLY_INCONSISTENT
    return Consistency.NECESSARILY_INCONSISTENT


@dataclass(frozen=True)
class InconsistencyReport:
    degree: Valuation
    witness: PossibilityDistribution

    @property
    def klass(self) -> Consistency:
        return classify(self.degree)


def incons(kb: KnowledgeBase, extra_atoms: Iterable[Atom] = ()) -> InconsistencyReport:
    mx = _maximal(kb, extra_atoms)
    if mx.max_ordinary < ONE:
        degree = N(ONE - mx.max_ordinary)
    elif mx.forced > 0:
        degree = Pi(mx.forced)
    else:
        degree = BOTTOM
    return InconsistencyReport(degree, mx.distribution)


def _refutation_base(kb: KnowledgeBase, f: Formula) -> KnowledgeBase:
    return kb + [PossFormula(Not(f), TOP)]


def entails(kb: KnowledgeBase, pf: PossFormula) -> bool:
    """Decided by adding the negated query at ``(N 1)`` and comparing the inconsistency degree."""
    return incons(_refutation_base(kb, pf.body)).degree >= pf.weight


def val_of(kb: KnowledgeBase, f: Formula) -> Valuation:
    return incons(_refutation_base(kb, f)).degree


def cut(kb: KnowledgeBase, w: Valuation, strict: bool = False) -> KnowledgeBase:
    if strict:
        return KnowledgeBase(e for e in kb if e.weight > w)
    return KnowledgeBase(e for e in kb if e.weight >= w)


# -- model-by-model route ----------------------------------------------------
#
# Everything below enumerates interpretations one by one with Fractions and
# never touches the kernels or the negated-query reduction.  It exists to
# check the fast path.

def _worlds(atoms: Sequence[Atom]) -> List[Interpretation]:
    return [Interpretation(dict(zip(atoms, bits)))
            for bits in itertools.product((True, False), repeat=len(atoms))]


def _upper_bounds(kb: KnowledgeBase, worlds: Sequence[Interpretation]) -> List[Fraction]:
    out = []
    for w in worlds:
        b = ONE
        for e in kb:
            if e.weight.is_necessity and not eval_formula(w, e.body):
                b = min(b, ONE - e.weight.degree)
        out.append(b)
    return out


def _least_possibility(kb, worlds, ub, f) -> Fraction:
    """Smallest extended possibility of ``f`` over all distributions satisfying ``kb``."""
    models = [eval_formula(w, f) for w in worlds]
    pos = [e for e in kb if e.weight.is_possibility]
    candidates = sorted({ZERO, ONE} | {e.weight.degree for e in pos})
    for t in candidates:
        values = [min(b, t) if is_model else b for b, is_model in zip(ub, models)]
        if max(values + [t]) != ONE:
            continue
        ok = True
        for e in pos:
            reach = max([v for v, w in zip(values, worlds) if eval_formula(w, e.body)] + [t])
            if reach < e.weight.degree:
                ok = False
                break
        if ok:
            return t
    raise AssertionError("t = 1 is always feasible")


def _setup(kb: KnowledgeBase, f: Formula):
    _require_ground(kb)
    atoms = sorted(set(kb.atoms()) | set(atoms_of(f)), key=Atom.sort_key)
    worlds = _worlds(atoms)
    return worlds, _upper_bounds(kb, worlds)


def _least_necessity(worlds, ub, f) -> Fraction:
    # ub itself satisfies every N-entry, and the absurd world at 1 takes care
    # of the Pi-entries and normalization, so ub is attainable world by world.
    falsifying = [b for b, w in zip(ub, worlds) if not eval_formula(w, f)]
    return ONE - max(falsifying) if falsifying else ONE


def val_by_models(kb: KnowledgeBase, f: Formula) -> Valuation:
    """Largest weight ``w`` with ``kb |= (f w)``, from the definition of entailment."""
    worlds, ub = _setup(kb, f)
    least_nec = _least_necessity(worlds, ub, f)
    if least_nec > 0:
        return N(least_nec)
    return Pi(_least_possibility(kb, worlds, ub, f))


def entails_by_models(kb: KnowledgeBase, pf: PossFormula) -> bool:
    worlds, ub = _setup(kb, pf.body)
    if pf.weight.is_necessity:
        return _least_necessity(worlds, ub, pf.body) >= pf.weight.degree
    return _least_possibility(kb, worlds, ub, pf.body) >= pf.weight.degree
