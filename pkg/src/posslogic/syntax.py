"""Terms, atoms, clauses, ground formula trees and weighted knowledge bases.

The fragment is function-free.  Variables start with a lowercase letter,
constants with an uppercase letter or a digit; the rule is enforced here so
that printing and re-parsing never changes the kind of a term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import SignatureError
from .valuation import Valuation


@dataclass(frozen=True)
class Term:
    name: str
    is_variable: bool

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty term name")
        head = self.name[0]
        if self.is_variable and not (head.islower() or head == "_"):
            raise ValueError(f"variable {self.name!r} must start lowercase")
        if not self.is_variable and not (head.isupper() or head.isdigit()):
            raise ValueError(f"constant {self.name!r} must start uppercase or with a digit")

    def __str__(self) -> str:
        return self.name

    def sort_key(self):
        return (self.is_variable, self.name)


def var(name: str) -> Term:
    return Term(name, True)


def const(name: str) -> Term:
    return Term(name, False)


Substitution = Dict[Term, Term]


class Formula:
    """Marker base for formula-tree nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .kbio import format_formula
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    predicate: str
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    def variables(self) -> FrozenSet[Term]:
        return frozenset(t for t in self.args if t.is_variable)

    def substitute(self, sigma: Mapping[Term, Term]) -> Atom:
        if not sigma:
            return self
        return Atom(self.predicate, tuple(sigma.get(t, t) for t in self.args))

    def sort_key(self):
        return (self.predicate, tuple(t.sort_key() for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def negate(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def substitute(self, sigma: Mapping[Term, Term]) -> Literal:
        return Literal(self.atom.substitute(sigma), self.positive)

    def sort_key(self):
        return (self.atom.sort_key(), not self.positive)

    def as_formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"!{self.atom}"


@dataclass(frozen=True)
class Clause(Formula):
    """Disjunction of literals with set semantics; the empty clause is false."""

    literals: FrozenSet[Literal] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "literals", frozenset(self.literals))

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.sorted_literals())

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_ground(self) -> bool:
        return all(lit.atom.is_ground for lit in self.literals)

    @property
    def is_tautology(self) -> bool:
        return any(lit.negate() in self.literals for lit in self.literals)

    def variables(self) -> FrozenSet[Term]:
        out = set()
        for lit in self.literals:
            out.update(lit.atom.variables())
        return frozenset(out)

    def substitute(self, sigma: Mapping[Term, Term]) -> Clause:
        if not sigma:
            return self
        return Clause(frozenset(lit.substitute(sigma) for lit in self.literals))

    def sorted_literals(self) -> Tuple[Literal, ...]:
        return tuple(sorted(self.literals, key=Literal.sort_key))

    def as_formula(self) -> Formula:
        return disj(*(lit.as_formula() for lit in self.sorted_literals()))

    def __str__(self) -> str:
        if not self.literals:
            return "False"
        return " | ".join(map(str, self.sorted_literals()))


def clause(*literals: Literal) -> Clause:
    return Clause(frozenset(literals))


EMPTY_CLAUSE = Clause()


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", _flatten(And, self.args))


@dataclass(frozen=True)
class Or(Formula):
    args: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", _flatten(Or, self.args))


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


def _flatten(kind, args) -> tuple:
    out = []
    for a in args:
        if isinstance(a, kind):
            out.extend(a.args)
        else:
            out.append(a)
    if len(out) < 2:
        raise ValueError(f"{kind.__name__} needs at least two operands")
    return tuple(out)


def conj(*args: Formula) -> Formula:
    if not args:
        return Top()
    if len(args) == 1:
        return args[0]
    return And(tuple(args))


def disj(*args: Formula) -> Formula:
    if not args:
        return Bottom()
    if len(args) == 1:
        return args[0]
    return Or(tuple(args))


def as_clause(f: Formula) -> Optional[Clause]:
    """The clause ``f`` literally spells out, or None if it is not a literal disjunction."""
    if isinstance(f, Clause):
        return f
    if isinstance(f, Bottom):
        return EMPTY_CLAUSE
    parts = f.args if isinstance(f, Or) else (f,)
    lits = []
    for part in parts:
        if isinstance(part, Atom):
            lits.append(Literal(part, True))
        elif isinstance(part, Not) and isinstance(part.arg, Atom):
            lits.append(Literal(part.arg, False))
        else:
            return None
    return Clause(frozenset(lits))


def atoms_of(f: Formula) -> FrozenSet[Atom]:
    out: set = set()
    _collect_atoms(f, out)
    return frozenset(out)


def _collect_atoms(f: Formula, out: set) -> None:
    if isinstance(f, Atom):
        out.add(f)
    elif isinstance(f, Clause):
        out.update(lit.atom for lit in f.literals)
    elif isinstance(f, Not):
        _collect_atoms(f.arg, out)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _collect_atoms(a, out)
    elif isinstance(f, Implies):
        _collect_atoms(f.left, out)
        _collect_atoms(f.right, out)


def is_ground(f: Formula) -> bool:
    return all(a.is_ground for a in atoms_of(f))


class Interpretation:
    """An ordinary world (total assignment of ground atoms) or the absurd world."""

    __slots__ = ("assignment",)

    def __init__(self, assignment: Optional[Mapping[Atom, bool]] = None):
        self.assignment = None if assignment is None else dict(assignment)

    @property
    def is_absurd(self) -> bool:
        return self.assignment is None

    def __repr__(self) -> str:
        if self.is_absurd:
            return "Interpretation(absurd)"
        body = ", ".join(f"{'' if v else '!'}{a}" for a, v in sorted(
            self.assignment.items(), key=lambda kv: kv[0].sort_key()))
        return f"Interpretation([{body}])"


ABSURD = Interpretation(None)


def eval_formula(i: Interpretation, f: Formula) -> bool:
    if i.is_absurd:
        return True
    return _eval(i.assignment, f)


def _eval(assignment: Mapping[Atom, bool], f: Formula) -> bool:
    if isinstance(f, Atom):
        try:
            return assignment[f]
        except KeyError:
            raise SignatureError(f"atom {f} is not assigned by the interpretation") from None
    if isinstance(f, Clause):
        return any(_eval(assignment, lit.atom) == lit.positive for lit in f.literals)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _eval(assignment, f.arg)
    if isinstance(f, And):
        return all(_eval(assignment, a) for a in f.args)
    if isinstance(f, Or):
        return any(_eval(assignment, a) for a in f.args)
    if isinstance(f, Implies):
        return (not _eval(assignment, f.left)) or _eval(assignment, f.right)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class PossFormula:
    """A weighted formula.  Literal-disjunction bodies are stored as a Clause."""

    body: Formula
    weight: Valuation

    def __post_init__(self):
        c = as_clause(self.body)
        if c is not None:
            object.__setattr__(self, "body", c)
        elif not is_ground(self.body):
            raise SignatureError(f"variables are only allowed inside clauses: {self.body}")

    @property
    def is_clause(self) -> bool:
        return isinstance(self.body, Clause)


# A clausal entry is a PossFormula whose body is a Clause.
PossClause = PossFormula


@dataclass(frozen=True)
class KnowledgeBase:
    entries: Tuple[PossFormula, ...] = ()
    predicates: Dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        arity: Dict[str, int] = {}
        for e in self.entries:
            for a in atoms_of(e.body):
                known = arity.setdefault(a.predicate, a.arity)
                if known != a.arity:
                    raise SignatureError(
                        f"predicate {a.predicate} used with arity {known} and {a.arity}")
        object.__setattr__(self, "predicates", arity)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[PossFormula]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other: Union[KnowledgeBase, Iterable[PossFormula]]) -> KnowledgeBase:
        return KnowledgeBase(self.entries + tuple(other))

    def atoms(self) -> Tuple[Atom, ...]:
        out: set = set()
        for e in self.entries:
            out.update(atoms_of(e.body))
        return tuple(sorted(out, key=Atom.sort_key))

    def constants(self) -> FrozenSet[Term]:
        return frozenset(t for a in self.atoms() for t in a.args if not t.is_variable)

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    @property
    def is_clausal(self) -> bool:
        return all(e.is_clause for e in self.entries)

    def weights(self) -> Tuple[Valuation, ...]:
        return tuple(e.weight for e in self.entries)
