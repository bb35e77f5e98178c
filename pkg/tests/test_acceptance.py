"""Acceptance criteria, one check per criterion.

Run under pytest for a PASS/FAIL summary line per criterion, or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import io
import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from posslogic.cli import main as cli_main
from posslogic.clausal import ground, to_clausal
from posslogic.errors import ClausalFormError
from posslogic.kbio import parse_formula, parse_kb, print_kb, read_kb
from posslogic.levelcut import incons_cut, val_cut
from posslogic.random_kb import (
    GRID, PROP_ATOMS, random_clausal_kb, random_formula, random_formula_kb, random_grid_values,
    random_weight,
)
from posslogic.resolution import Status, query_clauses, refute, val_query
from posslogic.semantics import (
    Consistency, PossibilityDistribution, cut, entails, entails_by_models, incons,
    induced_necessity, induced_possibility, satisfies, val_of,
)
from posslogic.syntax import And, Bottom, KnowledgeBase, Not, Or, PossFormula, const
from posslogic.valuation import BOTTOM, N, Pi, val_combine, val_leq

DATA = Path(__file__).resolve().parents[1] / "src" / "posslogic" / "data"
F = Fraction
RESULTS: dict = {}


def load(name):
    return read_kb(DATA / f"{name}.pkb")


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main([str(a) for a in argv], out, err)
    return code, out.getvalue()


def check(cond, message):
    if not cond:
        raise AssertionError(message)


# -- 1 ------------------------------------------------------------------------

def two_atom_example():
    kb = load("two_atoms")
    q = parse_formula("q")
    values = {
        "oracle": val_of(kb, q),
        "resolution": val_query(kb, q).valuation,
        "cut": val_cut(kb, q),
    }
    for engine, v in values.items():
        check(v == Pi("0.8"), f"{engine} gave {v}")
    check(entails(kb, PossFormula(q, Pi("0.8"))), "entailment of (q, Pi 0.8) failed")
    check(not entails(kb, PossFormula(q, Pi("0.9"))), "entailment above Pi 0.8")
    return "oracle, resolution, cut: Val = Pi 0.8"


# -- 2 ------------------------------------------------------------------------

def partially_inconsistent_u():
    kb = load("u")
    report = incons(kb)
    check(report.degree == N("0.3"), f"Incons = {report.degree}")
    rows = list(report.witness.rows())
    bounds = [v for _, v in rows[:-1]]
    expected = [F(k, 10) for k in (1, 4, 7, 4, 1, 2, 2, 2)]
    check(bounds == expected, f"witness rows {bounds}")
    check(rows[-1][0].is_absurd and rows[-1][1] == 1, "absurd world not 1")
    r = parse_formula("r")
    check(val_of(kb, r) == N("0.6"), f"Val(r) = {val_of(kb, r)}")
    check(entails(kb, PossFormula(r, N("0.6"))), "(r, N 0.6) not entailed")
    check(not entails(kb, PossFormula(r, N("0.7"))), "(r, N 0.7) entailed")
    code, out = cli("incons", DATA / "u.pkb", "--engine", "oracle")
    check(code == 0 and out.startswith("Incons = N 0.3 (necessarily inconsistent)"), out)
    return "Incons = N 0.3, 8 witness rows match, Val(r) = N 0.6, (r N 0.7) not entailed"


# -- 3 ------------------------------------------------------------------------

def possibly_inconsistent_h():
    kb = load("h")
    report = incons(kb)
    check(report.degree == Pi("0.7"), f"Incons = {report.degree}")
    check(report.klass is Consistency.POSSIBLY_INCONSISTENT, str(report.klass))
    check(refute(kb).valuation == Pi("0.7") and incons_cut(kb) == Pi("0.7"), "engines disagree")
    return "Incons = Pi 0.7 (possibly inconsistent) on all engines"


# -- 4 ------------------------------------------------------------------------

def possibility_conjunction():
    kb = load("pi_conjunction")
    check(incons(kb).degree == Pi("0.4"), f"oracle gave {incons(kb).degree}")
    try:
        to_clausal(kb)
    except ClausalFormError as exc:
        message = str(exc)
    else:
        raise AssertionError("clausal form accepted a Pi-weighted conjunction")
    check("no clausal form" in message, message)
    naive = load("pi_conjunction_split")
    check(incons(naive).degree == BOTTOM, f"naive form gave {incons(naive).degree}")
    return "original Pi 0.4, clausal form rejected, naive form Pi 0"


# -- 5 ------------------------------------------------------------------------

def election():
    c, c1 = load("election"), load("election1")
    mary, peter = parse_formula("Elected(Mary)"), parse_formula("Elected(Peter)")

    check(refute(c).status is Status.SATURATED, "election base refuted")
    check(incons_cut(c) == BOTTOM, "cut engine finds inconsistency")

    res = val_query(c, mary, alternatives=True)
    check(res.valuation == N("0.5") and res.nontrivial, f"Val(Mary) = {res.valuation}")
    main_proof = res.outcome.proof
    check(main_proof.sources()[:2] == [2, 3], f"optimal proof uses {main_proof.sources()}")
    alts = res.outcome.alternatives
    check(any(p.valuation == Pi("0.8") and p.sources()[:2] == [4, 5] for p in alts),
          "no Pi 0.8 refutation through the support clauses")
    check(val_leq(Pi("0.8"), N("0.5")) and not val_leq(N("0.5"), Pi("0.8")), "order")

    check(refute(c1).valuation == N("0.5"), "Incons of updated base")
    check(refute(c1).proof.sources() == [2, 3, 6, 7], "updated base proof inputs")
    for query, expected, nontrivial in [("!Elected(Mary)", N("0.9"), True),
                                        ("Elected(Peter)", N("0.9"), True),
                                        ("Elected(Mary)", N("0.5"), False)]:
        r = val_query(c1, parse_formula(query))
        check(r.valuation == expected and r.nontrivial is nontrivial, f"{query}: {r.valuation}")
    check(val_query(c1, peter).valuation == val_cut(c1, peter), "cut disagrees")

    expected_lines = [
        (("incons", DATA / "election.pkb", "--engine", "resolution"),
         "Incons = Pi 0 (completely consistent)"),
        (("entail", DATA / "election.pkb", "-q", "Elected(Mary)"), "Val = N 0.5 (nontrivial)"),
        (("entail", DATA / "election1.pkb", "-q", "!Elected(Mary)"), "Val = N 0.9 (nontrivial)"),
        (("entail", DATA / "election1.pkb", "-q", "Elected(Peter)"), "Val = N 0.9 (nontrivial)"),
        (("entail", DATA / "election1.pkb", "-q", "Elected(Mary)"),
         "Val = N 0.5 (trivial, equals Incons)"),
    ]
    for argv, line in expected_lines:
        code, out = cli(*argv)
        check(code == 0 and out.splitlines()[0] == line, f"{argv[0]}: {out.splitlines()[:1]}")
    code, out = cli("entail", DATA / "election.pkb", "-q", "Elected(Mary)")
    check("weaker refutation [Pi 0.8]" in out, "trace lacks the Pi 0.8 refutation")
    return "Incons Pi 0, Val(Mary) N 0.5 over Pi 0.8, update N 0.5, N 0.9 / N 0.9 / trivial N 0.5"


# -- 6 ------------------------------------------------------------------------

def engine_triangulation(n=1000, seed=20240601):
    rng = random.Random(seed)
    kinds = set()
    for i in range(n):
        kb = random_clausal_kb(rng, n_atoms=4, max_clauses=8,
                               p_necessity=rng.choice((0.3, 0.6, 0.9)))
        a, b, c = incons(kb).degree, refute(kb).valuation, incons_cut(kb)
        check(a == b == c, f"KB #{i}: oracle {a}, resolution {b}, cut {c}\n{print_kb(kb)}")
        kinds.add(a.mode if a != BOTTOM else "bottom")
    check(len(kinds) == 3, f"random bases only produced {kinds}")
    return f"{n} random ground clausal bases, 0 disagreements"


# -- 7 ------------------------------------------------------------------------

def resolution_soundness(n=200, seed=7):
    rng = random.Random(seed)
    kbs = proofs = nodes = 0
    while kbs < n:
        kb = random_clausal_kb(rng, n_atoms=4, max_clauses=8)
        query = None
        if rng.random() < 0.5:
            query = PROP_ATOMS[rng.randrange(4)]
            if rng.random() < 0.5:
                query = Not(query)
        base = kb if query is None else KnowledgeBase(query_clauses(kb, query))
        out = refute(base, alternatives=True)
        if out.proof is None:
            continue
        kbs += 1
        for proof in [out.proof, *out.alternatives]:
            proofs += 1
            for node in proof.nodes:
                nodes += 1
                check(entails(base, PossFormula(node.clause, node.valuation)),
                      f"unsound step {node.clause} [{node.valuation}] from\n{print_kb(base)}")
    return f"{kbs} bases, {proofs} proofs, {nodes} proof nodes entailed"


# -- 8 ------------------------------------------------------------------------

def refutation_reduction(n=500, seed=11):
    rng = random.Random(seed)
    outcomes = set()
    for i in range(n):
        kb = random_formula_kb(rng, n_atoms=3, max_entries=5)
        f = random_formula(rng, PROP_ATOMS[:3], depth=3)
        w = random_weight(rng)
        pf = PossFormula(f, w)
        a, b = entails(kb, pf), entails_by_models(kb, pf)
        check(a == b, f"triple #{i}: reduction {a}, models {b}")
        outcomes.add(a)
    check(outcomes == {True, False}, "only one outcome sampled")
    return f"{n} (base, query, weight) triples agree"


# -- 9 ------------------------------------------------------------------------

def lattice_and_measures(n=1000, seed=5):
    grid = [N(d) for d in GRID[1:]] + [Pi(d) for d in GRID]
    for a, b in itertools.product(grid, repeat=2):
        check((a < b) + (b < a) + (a == b) == 1, f"order {a} {b}")
        check(val_combine(a, b) == val_combine(b, a), f"commutativity {a} {b}")
    for a, b, c in itertools.product(grid, repeat=3):
        check(val_combine(val_combine(a, b), c) == val_combine(a, val_combine(b, c)),
              f"associativity {a} {b} {c}")
        if a <= b:
            check(val_combine(a, c) <= val_combine(b, c), f"monotonicity {a} {b} {c}")

    rng = random.Random(seed)
    atoms = PROP_ATOMS[:3]
    for i in range(n):
        d = _random_distribution(rng, atoms)
        f = random_formula(rng, atoms, 3)
        g = random_formula(rng, atoms, 3)
        check(induced_possibility(d, f) == max(d.absurd, 1 - induced_necessity(d, Not(f))),
              f"duality #{i}")
        check(induced_necessity(d, And((f, g))) == min(induced_necessity(d, f),
                                                       induced_necessity(d, g)), f"min #{i}")
        check(induced_possibility(d, Or((f, g))) == max(induced_possibility(d, f),
                                                        induced_possibility(d, g)), f"max #{i}")
    return f"grid of {len(grid)} valuations exhaustive; {n} distribution/formula pairs"


def _random_distribution(rng, atoms):
    values = random_grid_values(rng, 1 << len(atoms))
    absurd = rng.choice(GRID)
    if max(values) < 1 and absurd < 1:
        if rng.random() < 0.5:
            absurd = F(1)
        else:
            values[rng.randrange(len(values))] = F(1)
    return PossibilityDistribution.from_values(atoms, values, absurd)


def _below(rng, witness):
    """A distribution pointwise below ``witness``, normalized by keeping one of its peaks."""
    ceiling = witness.values()
    values = [c if rng.random() < 0.5 else v
              for c, v in zip(ceiling, random_grid_values(rng, len(ceiling), ceiling))]
    absurd = witness.absurd if rng.random() < 0.5 else rng.choice(
        [g for g in GRID if g <= witness.absurd])
    if max(values, default=F(0)) < 1 and absurd < 1:
        if witness.absurd == 1:
            absurd = F(1)
        else:
            k = ceiling.index(F(1))
            values[k] = F(1)
    return PossibilityDistribution.from_values(witness.atoms, values, absurd)


# -- 10 -----------------------------------------------------------------------

def cut_properties(n=300, samples=40, seed=13):
    rng = random.Random(seed)
    satisfied = 0
    for i in range(n):
        kb = random_formula_kb(rng, n_atoms=3, max_entries=5)
        report = incons(kb)
        w = report.degree
        atoms = report.witness.atoms

        f = random_formula(rng, PROP_ATOMS[:3], 3)
        v = random_weight(rng)
        pf = PossFormula(f, v)
        check(entails(kb, pf) == entails(cut(kb, v), pf), f"cut property (i) #{i}")
        check(val_of(kb, f) >= w, f"triviality floor #{i}")

        strict = cut(kb, w, strict=True) + [PossFormula(Bottom(), w)]
        variants = (kb, cut(kb, w), strict)
        for _ in range(samples):
            if rng.random() < 0.5:
                d = _random_distribution(rng, atoms)
            else:
                d = _below(rng, report.witness)
            verdicts = [satisfies(d, k) for k in variants]
            check(len(set(verdicts)) == 1, f"equivalence (ii) #{i}: {verdicts}\n{print_kb(kb)}")
            satisfied += verdicts[0]
    check(satisfied > n, "sampling rarely hit a satisfying distribution")
    return f"{n} bases x {samples} distributions ({satisfied} satisfying), floor holds"


# -- 11 -----------------------------------------------------------------------

def first_order_gap():
    kb = load("pi_variable")
    query = parse_formula("p(A) & p(B)")
    res = val_query(kb, query)
    check(res.outcome.status is Status.SATURATED, f"resolution status {res.outcome.status}")
    check(res.valuation == BOTTOM, f"resolution found {res.valuation}")
    grounded = ground(kb, [const("A"), const("B")])
    semantic = val_of(grounded, query)
    check(semantic == Pi("0.5"), f"oracle on grounding gave {semantic}")
    check(semantic > res.valuation, "no gap")
    return "resolution saturates at Pi 0; oracle on grounding over {A, B} gives Pi 0.5"


# -- 12 -----------------------------------------------------------------------

CORPUS = ("two_atoms", "u", "h", "pi_conjunction", "election", "election1",
          "election_query", "election1_query")


def round_trip(n=500, seed=3):
    rng = random.Random(seed)
    for i in range(n):
        if i % 2:
            kb = random_formula_kb(rng, n_atoms=4, max_entries=6)
        else:
            kb = random_clausal_kb(rng, n_atoms=4, max_clauses=8)
        text = print_kb(kb)
        check(parse_kb(text) == kb, f"round trip #{i}:\n{text}")
    for name in CORPUS:
        kb = load(name)
        check(parse_kb(print_kb(kb)) == kb, f"corpus {name}")
    return f"{n} random bases and {len(CORPUS)} corpus files"


CRITERIA = {
    1: ("two-atom example: Val = Pi 0.8 on all engines", two_atom_example),
    2: ("base U: Incons N 0.3, witness table, Val(r)", partially_inconsistent_u),
    3: ("base H: Incons Pi 0.7, possibly inconsistent", possibly_inconsistent_h),
    4: ("Pi-conjunction: oracle Pi 0.4, clausal rejection, naive Pi 0", possibility_conjunction),
    5: ("election scenario end to end", election),
    6: ("engine triangulation on random bases", engine_triangulation),
    7: ("resolution soundness on proof nodes", resolution_soundness),
    8: ("entailment by refutation vs by models", refutation_reduction),
    9: ("lattice laws and measure identities", lattice_and_measures),
    10: ("cut properties and triviality floor", cut_properties),
    11: ("first-order Pi-clause incompleteness gap", first_order_gap),
    12: ("parse/print round trip and corpus", round_trip),
}


def summary_lines():
    out = []
    for number in sorted(RESULTS):
        status, title, detail = RESULTS[number]
        out.append(f"[{status}] criterion {number:2d}: {title} :: {detail}")
    return out


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion{n:02d}")
def test_criterion(number):
    title, run = CRITERIA[number]
    try:
        detail = run()
    except AssertionError as exc:
        RESULTS[number] = ("FAIL", title, str(exc).splitlines()[0] if str(exc) else "failed")
        print(f"[FAIL] criterion {number}: {title}")
        raise
    RESULTS[number] = ("PASS", title, detail)
    print(f"[PASS] criterion {number}: {title} :: {detail}")


if __name__ == "__main__":
    failed = 0
    for number in sorted(CRITERIA):
        title, run = CRITERIA[number]
        try:
            RESULTS[number] = ("PASS", title, run())
        except AssertionError as exc:
            RESULTS[number] = ("FAIL", title, str(exc).splitlines()[0] if str(exc) else "failed")
            failed += 1
        print(summary_lines()[-1])
    sys.exit(1 if failed else 0)
