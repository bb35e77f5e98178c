import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from posslogic.random_kb import PROP_ATOMS, random_grid_values
from posslogic.semantics import (
    Consistency, PossibilityDistribution, WorldSpace, classify, cut, entails,
    entails_by_models, incons, induced_necessity, induced_possibility, maximal_distribution,
    satisfies, val_by_models, val_of,
)
from posslogic.syntax import (
    ABSURD, And, Atom, Bottom, Interpretation, KnowledgeBase, Not, Or, PossFormula, Top,
)
from posslogic.valuation import BOTTOM, TOP, N, Pi, val_combine
from strategies import clausal_kbs, distributions, formula_kbs, formulas, valuations

F = Fraction
p, q, r = PROP_ATOMS[:3]


@pytest.fixture
def u_witness(corpus):
    return incons(corpus("u")).witness


def world(**values):
    return Interpretation({Atom(k): v for k, v in values.items()})


# -- worked examples ---------------------------------------------------------

def test_u_witness_table(corpus):
    report = incons(corpus("u"))
    assert report.degree == N(F(3, 10))
    assert report.klass is Consistency.NECESSARILY_INCONSISTENT
    rows = list(report.witness.rows())
    assert [v for _, v in rows[:-1]] == [F(k, 10) for k in (1, 4, 7, 4, 1, 2, 2, 2)]
    assert rows[-1][0].is_absurd and rows[-1][1] == 1
    first = rows[0][0]
    assert all(first.assignment[a] for a in (p, q, r))


def test_u_witness_pointwise(u_witness):
    assert u_witness.value(world(p=True, q=True, r=True)) == F(1, 10)
    assert u_witness.value(world(p=True, q=False, r=True)) == F(7, 10)
    assert u_witness.value(ABSURD) == 1


def test_induced_measures_on_u_witness(u_witness):
    assert induced_possibility(u_witness, Bottom()) == 1
    assert induced_necessity(u_witness, Bottom()) == F(3, 10)
    # the absurd world satisfies every formula, so it lifts this to 1
    assert induced_possibility(u_witness, And((p, Not(q), r))) == 1
    assert induced_necessity(u_witness, Top()) == 1


def test_satisfaction_on_u_witness(corpus, u_witness):
    assert satisfies(u_witness, corpus("u"))
    assert not satisfies(u_witness, PossFormula(r, N(F(7, 10))))
    assert satisfies(u_witness, PossFormula(Top(), TOP))


def test_necessity_zero_when_falsifying_world_is_fully_possible():
    # world 0 makes p false, world 1 makes it true
    d = PossibilityDistribution.from_values([p], [F(1), F(0)], 0)
    assert induced_necessity(d, p) == 0
    assert induced_possibility(d, Top()) == 1


def test_maximal_distribution_examples(corpus):
    d = maximal_distribution(KnowledgeBase([]), extra_atoms=[p, q])
    assert d.values() == [1, 1, 1, 1] and d.absurd == 0
    h = maximal_distribution(corpus("h"))
    for w, v in h.rows():
        if w.is_absurd:
            assert v == F(7, 10)
        else:
            assert v == (F(2, 5) if w.assignment[p] else 1)


@pytest.mark.parametrize("name, expected, klass", [
    ("u", N("0.3"), Consistency.NECESSARILY_INCONSISTENT),
    ("h", Pi("0.7"), Consistency.POSSIBLY_INCONSISTENT),
    ("pi_conjunction", Pi("0.4"), Consistency.POSSIBLY_INCONSISTENT),
    ("pi_conjunction_split", BOTTOM, Consistency.COMPLETELY_CONSISTENT),
    ("two_atoms", BOTTOM, Consistency.COMPLETELY_CONSISTENT),
])
def test_incons_corpus(corpus, name, expected, klass):
    report = incons(corpus(name))
    assert report.degree == expected
    assert report.klass is klass


def test_incons_two_certain_opposites():
    kb = KnowledgeBase([PossFormula(p, N("0.5")), PossFormula(Not(p), N(1))])
    assert incons(kb).degree == N("0.5")
    kb = KnowledgeBase([PossFormula(p, N(1)), PossFormula(Not(p), N(1))])
    assert incons(kb).klass is Consistency.COMPLETELY_INCONSISTENT


def test_entailment_examples(corpus):
    f = corpus("two_atoms")
    assert entails(f, PossFormula(q, Pi("0.8")))
    assert val_of(f, q) == Pi("0.8")
    u = corpus("u")
    assert entails(u, PossFormula(r, N("0.6")))
    assert not entails(u, PossFormula(r, N("0.7")))
    assert val_of(u, r) == N("0.6")
    assert entails(u, PossFormula(Top(), TOP))
    assert val_of(KnowledgeBase([]), p) == BOTTOM


def test_cut_examples(corpus):
    u = corpus("u")
    assert [str(e.body) for e in cut(u, N("0.6"))] == ["!p | r", "!q | !r", "p"]
    assert cut(u, BOTTOM) == u
    assert len(cut(u, TOP)) == 0
    assert len(cut(u, N("0.6"), strict=True)) == 2


def test_oracle_rejects_first_order(corpus):
    from posslogic.errors import SignatureError
    with pytest.raises(SignatureError):
        incons(corpus("election"))


def test_classification_bands():
    assert classify(BOTTOM) is Consistency.COMPLETELY_CONSISTENT
    assert classify(TOP) is Consistency.COMPLETELY_INCONSISTENT
    assert classify(Pi("0.2")) is Consistency.POSSIBLY_INCONSISTENT
    assert classify(Pi(1)) is Consistency.POSSIBLY_INCONSISTENT
    assert classify(N("0.99")) is Consistency.NECESSARILY_INCONSISTENT


def test_distribution_must_be_normalized():
    with pytest.raises(ValueError):
        PossibilityDistribution.from_values([p], [F(1, 2), F(1, 2)], F(1, 2))


# -- measure properties ------------------------------------------------------

@given(distributions(), formulas())
def test_duality(d, f):
    assert induced_possibility(d, f) == max(d.absurd, 1 - induced_necessity(d, Not(f)))


@given(distributions(), formulas(), formulas())
def test_decomposability(d, f, g):
    assert induced_necessity(d, And((f, g))) == min(induced_necessity(d, f), induced_necessity(d, g))
    assert induced_possibility(d, Or((f, g))) == max(induced_possibility(d, f),
                                                     induced_possibility(d, g))


@given(distributions(), formulas(), formulas())
def test_monotone_in_model_inclusion(d, f, h):
    smaller, larger = And((f, h)), Or((f, h))
    assert induced_possibility(d, smaller) <= induced_possibility(d, f) <= induced_possibility(d, larger)
    assert induced_necessity(d, smaller) <= induced_necessity(d, f) <= induced_necessity(d, larger)


@given(distributions(), formulas())
def test_unextended_semantics_is_the_zero_absurd_case(d, f):
    assume(d.absurd == 0)
    space = WorldSpace(d.atoms)
    truth = space.truth(f)
    vals = d.values()
    plain = max((v for v, t in zip(vals, truth) if t), default=F(0))
    assert induced_possibility(d, f) == plain


# -- incons properties -------------------------------------------------------

def _unsat(bodies, atoms):
    space = WorldSpace(atoms)
    if not bodies:
        return False
    return not space.entry_truth(bodies).all(axis=0).any()


def _fold(weights):
    out = TOP
    for w in weights:
        out = val_combine(out, w)
    return out


@given(formula_kbs(max_entries=5))
def test_incons_is_best_inconsistent_subset(kb):
    atoms = sorted(set(kb.atoms()), key=Atom.sort_key)
    entries = list(kb)
    best, witnesses = BOTTOM, []
    for k in range(1, len(entries) + 1):
        for subset in itertools.combinations(entries, k):
            if not _unsat([e.body for e in subset], atoms):
                continue
            v = _fold(e.weight for e in subset)
            if v > best:
                best, witnesses = v, [subset]
            elif v == best:
                witnesses.append(subset)
    assert incons(kb).degree == best
    if best.is_possibility and best != BOTTOM:
        minimal = min(witnesses, key=len)
        assert sum(e.weight.is_possibility for e in minimal) == 1


@given(formula_kbs(max_entries=5), st.data())
def test_removing_an_entry_never_raises_incons(kb, data):
    assume(len(kb) > 0)
    k = data.draw(st.integers(0, len(kb) - 1))
    rest = KnowledgeBase(e for i, e in enumerate(kb) if i != k)
    assert incons(rest, extra_atoms=kb.atoms()).degree <= incons(kb).degree


@given(formula_kbs(max_entries=5))
def test_witness_is_a_certificate(kb):
    report = incons(kb)
    d = report.witness
    assert satisfies(d, kb)
    if report.degree.is_necessity:
        assert induced_necessity(d, Bottom()) == report.degree.degree
    else:
        assert d.absurd == report.degree.degree


@given(formula_kbs(max_entries=4), st.integers(0, 2**32 - 1))
def test_maximal_distribution_dominates(kb, seed):
    rng = random.Random(seed)
    top = maximal_distribution(kb)
    nec = KnowledgeBase(e for e in kb if e.weight.is_necessity)
    n = len(top.values())
    for _ in range(20):
        ceiling = None if rng.random() < 0.5 else top.values()
        values = random_grid_values(rng, n, ceiling)
        d = PossibilityDistribution.from_values(top.atoms, values, 1)
        if satisfies(d, nec):
            assert all(a <= b for a, b in zip(d.values(), top.values()))


@given(formula_kbs(max_entries=4), formulas())
def test_triviality_floor(kb, f):
    assert val_of(kb, f) >= incons(kb).degree


@given(formula_kbs(max_entries=4), formulas())
def test_val_agrees_with_model_construction(kb, f):
    assert val_of(kb, f) == val_by_models(kb, f)


@given(formula_kbs(max_entries=4), formulas(), valuations)
def test_entailment_two_routes(kb, f, w):
    pf = PossFormula(f, w)
    assert entails(kb, pf) == entails_by_models(kb, pf)


@given(formula_kbs(max_entries=4), formulas(), valuations)
def test_cut_property_entailment(kb, f, w):
    pf = PossFormula(f, w)
    assert entails(kb, pf) == entails(cut(kb, w), pf)


@given(clausal_kbs(max_entries=5), formulas(), valuations)
def test_clausal_entailment_two_routes(kb, f, w):
    pf = PossFormula(f, w)
    assert entails(kb, pf) == entails_by_models(kb, pf)
