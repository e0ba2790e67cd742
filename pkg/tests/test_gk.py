import itertools
import random

import pytest
from hypothesis import given, settings

from generators import gk_theories
from gk2dlp import dlp
from gk2dlp.embeddings import SimpleRule, embed_dlp
from gk2dlp.errors import EnumerationLimitError, UnsupportedFragmentError
from gk2dlp.frontend.parsing import parse_gk
from gk2dlp.gk import (
    AAtom,
    GKModelDescriptor,
    GKTheory,
    KAtom,
    descriptor_closure_violations,
    gk_models_oracle,
    modal_atoms,
    tr_p,
)
from gk2dlp.prop import Atom, Not, implies

p, q = Atom("p"), Atom("q")
F = implies(Not(AAtom(Not(p))), KAtom(p))
G = KAtom(Not(p))


def knowledge(descriptors):
    return [sorted(str(f) for f in d.k_true) for d in descriptors]


def test_modal_atoms_examples():
    assert modal_atoms(GKTheory([F])) == ([p], [Not(p)])
    assert modal_atoms(GKTheory([F, G])) == ([p, Not(p)], [Not(p)])
    assert modal_atoms(GKTheory([])) == ([], [])


def test_modal_atoms_are_syntactic():
    T = GKTheory([KAtom(p & q) | KAtom(q & p)])
    assert len(T.atom_k) == 2


def test_tr_p_examples():
    assert tr_p(GKTheory([F])) == implies(Not(Atom("a__1")), Atom("k__1"))
    assert tr_p(GKTheory([F, G])) == implies(Not(Atom("a__1")), Atom("k__1")) & Atom("k__2")
    assert tr_p(GKTheory([KAtom(p) | AAtom(q)])) == Atom("k__1") | Atom("a__1")


def test_purity_is_enforced():
    with pytest.raises(UnsupportedFragmentError):
        GKTheory([p])
    with pytest.raises(UnsupportedFragmentError):
        GKTheory([KAtom(AAtom(p))])


def test_oracle_normal_default_single_model():
    assert knowledge(gk_models_oracle(GKTheory([F]))) == [["p"]]


def test_oracle_known_negation_overrides_default():
    assert knowledge(gk_models_oracle(GKTheory([F, G]))) == [["~p"]]


def test_oracle_assumption_loop_has_two_models():
    T = parse_gk("A(p) -> K(p)")
    assert knowledge(gk_models_oracle(T)) == [[], ["p"]]


def test_oracle_self_defeating_assumption_has_no_model():
    assert gk_models_oracle(parse_gk("~A(p) -> K(p)")) == []


def test_oracle_empty_theory():
    assert gk_models_oracle(GKTheory([])) == [GKModelDescriptor()]


def test_oracle_compares_knowledge_only_under_fixed_assumptions():
    # a closed smaller knowledge set with the same assumptions refutes {p}
    assert gk_models_oracle(parse_gk("A(p)\nK(p) | A(p)")) == []


def test_oracle_caps():
    T = GKTheory([KAtom(Atom(f"x{i}")) for i in range(13)])
    with pytest.raises(EnumerationLimitError):
        gk_models_oracle(T)


def test_closure_violations_detected():
    T = GKTheory([KAtom(p) | KAtom(p & q)])
    bad = GKModelDescriptor({p & q}, set())
    assert descriptor_closure_violations(T, bad)
    assert not descriptor_closure_violations(T, GKModelDescriptor({p}, set()))


@settings(max_examples=60, deadline=None)
@given(gk_theories(("p", "q", "r")))
def test_oracle_results_are_closed(T):
    for d in gk_models_oracle(T):
        assert descriptor_closure_violations(T, d) == []


@settings(max_examples=40, deadline=None)
@given(gk_theories())
def test_oracle_ignores_order_and_duplicates(T):
    expected = gk_models_oracle(T)
    shuffled = list(T.formulas)
    random.Random(len(shuffled)).shuffle(shuffled)
    assert gk_models_oracle(GKTheory(shuffled + shuffled[:1])) == expected


def _answer_set_atoms(rules):
    program = dlp.Program(
        [dlp.make_rule(r.head, r.positive, r.negative) for r in rules],
        frozenset(a for r in rules for a in (*r.head, *r.positive, *r.negative)),
    )
    return sorted(sorted(S) for S in dlp.answer_sets(program))


def _random_simple_program(rng):
    names = ["p", "q", "r"][: rng.randint(1, 3)]
    rules = []
    for _ in range(rng.randint(1, 3)):
        head = rng.sample(names, rng.randint(0, min(2, len(names))))
        pos = rng.sample(names, rng.randint(0, 1))
        neg = rng.sample(names, rng.randint(0, 1))
        rules.append(SimpleRule(head, pos, neg))
    return rules


def test_embedded_programs_match_answer_sets():
    rng = random.Random(3)
    for _ in range(60):
        rules = _random_simple_program(rng)
        T = embed_dlp(rules)
        if len(T.atom_k) + len(T.atom_a) > 12:
            continue
        got = sorted(
            sorted(f.name for f in d.k_true if isinstance(f, Atom)) for d in gk_models_oracle(T)
        )
        assert got == _answer_set_atoms(rules), rules


def test_textbook_programs_through_embedding():
    cases = [
        ([SimpleRule(["p"], [], ["q"]), SimpleRule(["q"], [], ["p"])], [["p"], ["q"]]),
        ([SimpleRule(["p", "q"])], [["p"], ["q"]]),
        ([SimpleRule(["p"], ["p"])], [[]]),
    ]
    for rules, expected in cases:
        got = [sorted(f.name for f in d.k_true) for d in gk_models_oracle(embed_dlp(rules))]
        assert sorted(got) == expected
        assert _answer_set_atoms(rules) == expected


def test_descriptor_sort_is_deterministic():
    ds = [GKModelDescriptor({q}), GKModelDescriptor(set()), GKModelDescriptor({p})]
    assert [d.knowledge() for d in sorted(ds, key=GKModelDescriptor.sort_key)] == [[], [p], [q]]
    for perm in itertools.permutations(ds):
        assert sorted(perm, key=GKModelDescriptor.sort_key)[0] == GKModelDescriptor(set())
