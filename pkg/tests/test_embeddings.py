import random

import pytest

from generators import random_default_theory
from gk2dlp.embeddings import (
    AELSentence,
    CAtom,
    Default,
    DefaultTheory,
    SimpleRule,
    UCLFormula,
    default_extensions_oracle,
    embed_ael,
    embed_default,
    embed_dlp,
    embed_ucl,
    konolige,
    theories_equivalent,
)
from gk2dlp.errors import UnsupportedFragmentError
from gk2dlp.gk import AAtom, KAtom, gk_models_oracle
from gk2dlp.prop import BOTTOM, TOP, Atom, Not, conj, implies

p, q, r, s = (Atom(n) for n in "pqrs")


def test_embed_default_examples():
    dt = DefaultTheory([], [Default(TOP, (p,), p)])
    assert embed_default(dt).formulas == (implies(KAtom(TOP) & Not(AAtom(Not(p))), KAtom(p)),)
    assert embed_default(DefaultTheory([q], [])).formulas == (KAtom(q),)
    assert embed_default(DefaultTheory([q], []), "weak").formulas == (KAtom(q),)
    assert embed_default(dt, "weak").formulas == (implies(AAtom(TOP) & Not(AAtom(Not(p))), KAtom(p)),)


def test_embed_default_keeps_input_order():
    dt = DefaultTheory([q, p], [Default(p, (), q), Default(q, (), p)])
    T = embed_default(dt)
    assert T.formulas[:2] == (KAtom(q), KAtom(p))
    assert T.formulas[2] == implies(KAtom(p), KAtom(q))


def test_embed_ael_examples():
    assert embed_ael([AELSentence(p, (), q)]).formulas == (implies(AAtom(p), KAtom(q)),)
    sentence = AELSentence(p, (q,), r)
    assert embed_ael([sentence]).formulas == (implies(AAtom(p) & Not(AAtom(q)), KAtom(r)),)
    assert embed_ael([sentence], "strong").formulas == (implies(KAtom(p) & Not(AAtom(q)), KAtom(r)),)


def test_embed_ael_without_negative_belief():
    assert embed_ael([AELSentence(None, (q,), r)]).formulas == (implies(Not(AAtom(q)), KAtom(r)),)
    assert embed_ael([AELSentence(objective=p)]).formulas == (KAtom(p),)


def test_embed_ucl_examples():
    u = UCLFormula(implies(p & ~q, CAtom(p & ~q)), ("p", "q"))
    assert embed_ucl(u).formulas == (
        implies(AAtom(p) & Not(AAtom(q)), KAtom(p & ~q)),
        AAtom(p) | AAtom(Not(p)),
        AAtom(q) | AAtom(Not(q)),
    )
    assert embed_ucl(UCLFormula(CAtom(p))).formulas == (KAtom(p), AAtom(p) | AAtom(Not(p)))
    assert embed_ucl(UCLFormula(implies(q, CAtom(q)))).formulas == (
        implies(AAtom(q), KAtom(q)),
        AAtom(q) | AAtom(Not(q)),
    )


def test_ucl_universe_must_cover_formula():
    with pytest.raises(ValueError):
        UCLFormula(p & q, ("p",))


def test_embed_dlp_examples():
    assert embed_dlp([SimpleRule(["p"], ["q"], ["r"])]).formulas == (
        implies(KAtom(q) & Not(AAtom(r)), KAtom(p)),
    )
    assert embed_dlp([SimpleRule(["p", "q"])]).formulas == (KAtom(p) | KAtom(q),)
    assert embed_dlp([SimpleRule([], ["p"])]).formulas == (implies(KAtom(p), BOTTOM),)


def test_embed_dlp_rejects_literals():
    with pytest.raises(UnsupportedFragmentError):
        embed_dlp([SimpleRule(["-p"])])


def _extension_theories(dt, extensions):
    # GK knowledge is always consistent, so only consistent extensions have a
    # GK counterpart
    return [e.formulas(dt) for e in extensions if e.consistent(dt)]


def test_extension_oracle_examples():
    one = DefaultTheory([], [Default(TOP, (p,), p)])
    exts = default_extensions_oracle(one)
    assert len(exts) == 1 and theories_equivalent(exts[0].formulas(one), [p])

    nixon = DefaultTheory([q & r], [Default(q, (s,), s), Default(r, (~s,), ~s)])
    exts = default_extensions_oracle(nixon)
    assert len(exts) == 2
    assert {frozenset(e.generators) for e in exts} == {frozenset({s}), frozenset({~s})}

    assert default_extensions_oracle(DefaultTheory([], [Default(TOP, (p,), ~p)])) == []


def _k_theories(descriptors):
    return [sorted(d.k_true, key=str) for d in descriptors]


def _same_theory_sets(a, b, universe):
    from gk2dlp.embeddings import theory_classes

    return theory_classes(a, universe) == theory_classes(b, universe) and len(a) == len(b)


def test_extension_oracle_matches_gk_oracle():
    rng = random.Random(11)
    for _ in range(60):
        dt = random_default_theory(rng)
        universe = dt.atoms() or ["p"]
        exts = _extension_theories(dt, default_extensions_oracle(dt))
        gk = _k_theories(gk_models_oracle(embed_default(dt)))
        assert _same_theory_sets(exts, gk, universe), dt


def test_konolige_compatibility():
    rng = random.Random(12)
    for _ in range(60):
        dt = random_default_theory(rng)
        universe = dt.atoms() or ["p"]
        sentences = konolige(dt)
        pairs = [("extension", "strong"), ("weak", "expansion")]
        for dl_sem, ael_sem in pairs:
            lhs = _k_theories(gk_models_oracle(embed_default(dt, dl_sem)))
            rhs = _k_theories(gk_models_oracle(embed_ael(sentences, ael_sem)))
            assert _same_theory_sets(lhs, rhs, universe), (dt, dl_sem)


def test_inconsistent_extension_has_no_gk_model():
    dt = DefaultTheory([~p], [Default(TOP, (), p)])
    (ext,) = default_extensions_oracle(dt)
    assert not ext.consistent(dt)
    assert gk_models_oracle(embed_default(dt)) == []


def test_konolige_shape():
    dt = DefaultTheory([q], [Default(p, (r,), s)])
    assert konolige(dt) == [AELSentence(objective=q), AELSentence(p, (Not(r),), s)]


def test_empty_antecedents_collapse():
    assert embed_ael([AELSentence(None, (), p)]).formulas == (KAtom(p),)
    assert conj([]) == TOP
