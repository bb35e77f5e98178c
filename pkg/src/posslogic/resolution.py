"""Weighted resolution and the search for an optimal refutation.

The search walks the distinct weights of the clause set from the top of the
lattice down.  At level ``(N a)`` only N-clauses of degree ``>= a`` take
part; at level ``(Pi b)`` the Pi-clauses of degree ``>= b`` join the
N-clauses whose degree ``d`` satisfies ``d + b > 1``.  Resolvents weaker
than the level are dropped, which also drops every ``Pi * Pi`` resolvent.
The first level that yields the empty clause gives the optimal valuation.
"""
from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .clausal import negate_query, to_clausal
from .syntax import Clause, Formula, KnowledgeBase, PossFormula
from .unify import canonical, rename_apart, restrict, subsumes, unify
from .valuation import BOTTOM, TOP, Valuation, val_combine


@dataclass(frozen=True)
class Budget:
    max_clauses: int = 100_000
    max_inferences: int = 100_000


@dataclass(frozen=True)
class ProofNode:
    id: int
    clause: Clause
    valuation: Valuation
    rule: str
    parents: Tuple[int, ...] = ()
    substitution: Tuple[Tuple[str, str], ...] = ()
    source: Optional[int] = None


@dataclass(frozen=True)
class RefutationProof:
    """Ancestors of an empty clause, parents before children."""

    nodes: Tuple[ProofNode, ...]

    @property
    def root(self) -> ProofNode:
        return self.nodes[-1]

    @property
    def valuation(self) -> Valuation:
        return self.root.valuation

    def leaves(self) -> List[ProofNode]:
        return [n for n in self.nodes if n.rule == "input"]

    def sources(self) -> List[int]:
        return sorted(n.source for n in self.leaves())

    def steps(self) -> List[dict]:
        number = {n.id: k for k, n in enumerate(self.nodes, start=1)}
        out = []
        for n in self.nodes:
            out.append({
                "step": number[n.id],
                "clause": str(n.clause),
                "mode": str(n.valuation.mode),
                "degree": str(n.valuation.degree),
                "rule": n.rule,
                "parents": [number[p] for p in n.parents],
                "source": None if n.source is None else n.source + 1,
                "substitution": dict(n.substitution),
            })
        return out

    def lines(self) -> List[str]:
        number = {n.id: k for k, n in enumerate(self.nodes, start=1)}
        out = []
        for n in self.nodes:
            head = f"{number[n.id]}: {n.clause} [{n.valuation}]"
            if n.rule == "input":
                out.append(f"{head} from input({n.source + 1})")
                continue
            line = f"{head} from {n.rule}({', '.join(str(number[p]) for p in n.parents)})"
            if n.substitution:
                line += " σ={" + ", ".join(f"{v}->{t}" for v, t in n.substitution) + "}"
            out.append(line)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


class Status(str, enum.Enum):
    FOUND = "refutation found"
    SATURATED = "saturated"
    EXHAUSTED = "budget exhausted"


@dataclass
class SearchOutcome:
    status: Status
    proof: Optional[RefutationProof] = None
    alternatives: List[RefutationProof] = field(default_factory=list)
    alternatives_complete: bool = True
    inferences: int = 0
    retained: int = 0

    @property
    def valuation(self) -> Optional[Valuation]:
        """Optimal refutation valuation; ``(Pi 0)`` when saturated, None when cut short."""
        if self.status is Status.FOUND:
            return self.proof.valuation
        if self.status is Status.SATURATED:
            return BOTTOM
        return None

    @property
    def best_so_far(self) -> Optional[RefutationProof]:
        if self.proof is not None:
            return self.proof
        return None


class _Exhausted(Exception):
    pass


def resolve(pc1: PossFormula, pc2: PossFormula) -> List[PossFormula]:
    """All binary resolvents of two weighted clauses, parents renamed apart first."""
    return [PossFormula(c, w) for c, w, _, _ in _resolvents(pc1.body, pc1.weight, pc2.body, pc2.weight)]


def _resolvents(c1: Clause, w1: Valuation, c2: Clause, w2: Valuation):
    c2r, _ = rename_apart(c2, c1.variables())
    weight = val_combine(w1, w2)
    scope = set(c1.variables()) | set(c2r.variables())
    lits1 = c1.sorted_literals()
    lits2 = c2r.sorted_literals()
    seen = set()
    for l1 in lits1:
        for l2 in lits2:
            if l1.positive == l2.positive:
                continue
            sigma = unify(l1.atom, l2.atom)
            if sigma is None:
                continue
            rest = [l.substitute(sigma) for l in lits1 if l != l1]
            rest += [l.substitute(sigma) for l in lits2 if l != l2]
            res = Clause(frozenset(rest))
            if res in seen:
                continue
            seen.add(res)
            yield res, weight, restrict(sigma, scope), (l1, l2)


def factor(pc: PossFormula) -> List[PossFormula]:
    return [PossFormula(c, pc.weight) for c, _ in _factors(pc.body)]


def _factors(c: Clause):
    lits = c.sorted_literals()
    seen = set()
    for l1, l2 in itertools.combinations(lits, 2):
        if l1.positive != l2.positive:
            continue
        sigma = unify(l1.atom, l2.atom)
        if not sigma:
            continue
        f = c.substitute(sigma)
        if f not in seen:
            seen.add(f)
            yield f, sigma


def candidate_levels(weights: Sequence[Valuation]) -> List[Valuation]:
    return sorted({w for w in weights if w != BOTTOM}, reverse=True)


def level_members(weights: Sequence[Valuation], level: Valuation) -> List[int]:
    if level.is_necessity:
        return [i for i, w in enumerate(weights) if w.is_necessity and w.degree >= level.degree]
    return [i for i, w in enumerate(weights)
            if (w.is_necessity and w.degree + level.degree > 1)
            or (w.is_possibility and w.degree >= level.degree)]


class _Prover:
    def __init__(self, entries: Sequence[PossFormula], budget: Budget):
        self.budget = budget
        self.nodes: List[ProofNode] = []
        self.inferences = 0
        self.retained = 0
        self.working: Dict[int, Clause] = {}
        for i, e in enumerate(entries):
            node = self._add(e.body, e.weight, "input", source=i)
            self.working[node.id] = canonical(e.body)

    def _add(self, c, w, rule, parents=(), sigma=None, source=None) -> ProofNode:
        subst = tuple(sorted((v.name, t.name) for v, t in (sigma or {}).items()))
        node = ProofNode(len(self.nodes), c, w, rule, tuple(parents), subst, source)
        self.nodes.append(node)
        return node

    def _charge(self, inferences=0, retained=0):
        self.inferences += inferences
        self.retained += retained
        if self.inferences > self.budget.max_inferences or self.retained > self.budget.max_clauses:
            raise _Exhausted()

    def saturate(self, members: Sequence[int], level: Valuation,
                 accept: Callable[[Valuation], bool]) -> Optional[int]:
        """Given-clause loop; returns the node id of an accepted empty clause."""
        seq = itertools.count()
        passive: list = []
        best: Dict[Clause, Valuation] = {}
        active: List[Tuple[int, Clause, Valuation]] = []

        def offer(node_id: int, c: Clause, w: Valuation) -> Optional[int]:
            if c.is_empty:
                return node_id if accept(w) else None
            known = best.get(c)
            if known is not None and known >= w:
                return None
            best[c] = w
            self._charge(retained=1)
            heapq.heappush(passive, (len(c), next(seq), node_id, c, w))
            return None

        for i in members:
            c = self.working[i]
            if c.is_tautology:
                continue
            hit = offer(i, c, self.nodes[i].valuation)
            if hit is not None:
                return hit

        while passive:
            _, _, gid, given, gw = heapq.heappop(passive)
            if best.get(given) != gw:
                continue
            if any(aw >= gw and subsumes(ac, given) for _, ac, aw in active):
                continue
            active = [a for a in active if not (a[2] <= gw and subsumes(given, a[1]))]
            active.append((gid, given, gw))

            for f, sigma in _factors(given):
                self._charge(inferences=1)
                f = canonical(f)
                node = self._add(f, gw, "factor", (gid,), sigma)
                hit = offer(node.id, f, gw)
                if hit is not None:
                    return hit

            for aid, ac, aw in list(active):
                w = val_combine(gw, aw)
                if w < level or w == BOTTOM:
                    continue
                for res, rw, sigma, _ in _resolvents(given, gw, ac, aw):
                    self._charge(inferences=1)
                    if res.is_tautology:
                        continue
                    res = canonical(res)
                    known = best.get(res)
                    if known is not None and known >= rw:
                        continue
                    node = self._add(res, rw, "resolve", (gid, aid), sigma)
                    hit = offer(node.id, res, rw)
                    if hit is not None:
                        return hit
        return None

    def proof(self, root: int) -> RefutationProof:
        keep = set()
        stack = [root]
        while stack:
            k = stack.pop()
            if k in keep:
                continue
            keep.add(k)
            stack.extend(self.nodes[k].parents)
        return RefutationProof(tuple(self.nodes[k] for k in sorted(keep)))


def _as_clauses(kb) -> List[PossFormula]:
    entries = list(kb)
    if not all(e.is_clause for e in entries):
        entries = list(to_clausal(KnowledgeBase(entries)))
    return entries


def refute(clauses, budget: Budget = Budget(), alternatives: bool = False) -> SearchOutcome:
    """Search for the empty clause with the largest valuation.

    With ``alternatives`` the search keeps going below the optimum and also
    collects, for every lower level, a refutation valued exactly at that
    level when one is found.
    """
    entries = _as_clauses(clauses)
    weights = [e.weight for e in entries]
    prover = _Prover(entries, budget)
    levels = candidate_levels(weights)

    outcome = None
    for k, level in enumerate(levels):
        try:
            hit = prover.saturate(level_members(weights, level), level, lambda w, l=level: w >= l)
        except _Exhausted:
            return SearchOutcome(Status.EXHAUSTED, inferences=prover.inferences,
                                 retained=prover.retained)
        if hit is not None:
            outcome = SearchOutcome(Status.FOUND, prover.proof(hit))
            lower = levels[k + 1:]
            break
    else:
        return SearchOutcome(Status.SATURATED, inferences=prover.inferences,
                             retained=prover.retained)

    if alternatives:
        for level in lower:
            try:
                hit = prover.saturate(level_members(weights, level), level, lambda w, l=level: w == l)
            except _Exhausted:
                outcome.alternatives_complete = False
                break
            if hit is not None:
                outcome.alternatives.append(prover.proof(hit))
    outcome.inferences = prover.inferences
    outcome.retained = prover.retained
    return outcome


@dataclass
class QueryResult:
    outcome: SearchOutcome
    baseline: SearchOutcome

    @property
    def valuation(self) -> Optional[Valuation]:
        return self.outcome.valuation

    @property
    def incons(self) -> Optional[Valuation]:
        return self.baseline.valuation

    @property
    def nontrivial(self) -> Optional[bool]:
        if self.valuation is None or self.incons is None:
            return None
        return self.valuation > self.incons


def query_clauses(kb, f: Formula) -> List[PossFormula]:
    return _as_clauses(kb) + [PossFormula(c, TOP) for c in negate_query(f)]


def val_query(kb, f: Formula, budget: Budget = Budget(), alternatives: bool = False) -> QueryResult:
    """Val(kb, f) by refuting kb plus the clauses of the negated query at ``(N 1)``."""
    outcome = refute(query_clauses(kb, f), budget, alternatives)
    baseline = refute(_as_clauses(kb), budget)
    return QueryResult(outcome, baseline)
