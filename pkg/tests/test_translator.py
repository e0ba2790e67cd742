import random

import pytest

from generators import random_gk_theory
from gk2dlp import dlp
from gk2dlp.errors import MalformedModelError
from gk2dlp.frontend.parsing import parse_gk
from gk2dlp.gk import AAtom, GKTheory, KAtom, gk_models_oracle, sorted_descriptors
from gk2dlp.namespace import TranslationNamespace
from gk2dlp.prop import TOP, And, Atom, Not, atoms, conj, implies, nnf, truth_mask
from gk2dlp.search import stable_models
from gk2dlp.translator import (
    build_phi,
    build_psi,
    build_tstar,
    decode,
    gk_models,
    solve_internal,
    to_nested,
    tr_lp,
    tr_ne,
)

p = Atom("p")
k1, k2, a1 = Atom("k__1"), Atom("k__2"), Atom("a__1")
F = implies(Not(AAtom(Not(p))), KAtom(p))
G = KAtom(Not(p))
RUNNING = GKTheory([F])
WITH_G = GKTheory([F, G])


def conjuncts(f):
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def test_phi_assumption_witness():
    expected = implies(Not(a1), Not(Not(Atom("w_a1__p"))) & implies(a1, Not(Atom("w_a1__p"))))
    assert expected in conjuncts(build_phi(RUNNING))


def test_phi_soundness_uses_global_copies():
    parts = conjuncts(build_phi(WITH_G))
    gk, ga = Atom("gk__p"), Atom("ga__p")
    for expected in (implies(k1, gk), implies(a1, Not(ga)), implies(k2, Not(gk))):
        assert expected in parts


def test_phi_knowledge_witnesses_for_two_k_atoms():
    parts = conjuncts(build_phi(WITH_G))
    w1, w2 = Atom("w_k1__p"), Atom("w_k2__p")
    phi_p = conj([Not(w1), implies(k1, w1), implies(k2, Not(w1))])
    phi_not_p = conj([Not(Not(w2)), implies(k1, w2), implies(k2, Not(w2))])
    assert implies(Not(k1), phi_p) in parts
    assert implies(Not(k2), phi_not_p) in parts


def test_empty_theory_formulas_are_top():
    assert build_phi(GKTheory([])) == TOP
    assert build_psi(GKTheory([])) == TOP
    assert tr_ne(GKTheory([])) == dlp.TOP


def test_psi_knowledge_witness():
    w = Atom("w_k1__p")
    expected = implies(Not(k1), conj([Not(w), implies(k1, w), implies(a1, Not(w))]))
    assert expected in conjuncts(build_psi(RUNNING))


def test_psi_soundness_over_base_atoms():
    parts = conjuncts(build_psi(RUNNING))
    assert implies(k1, p) in parts and implies(a1, Not(p)) in parts


def test_tstar_keeps_a_atoms():
    ns = TranslationNamespace(RUNNING.base_atoms)
    tstar = build_tstar(RUNNING, ns)
    assert implies(Not(a1), Atom("s__k__1")) in conjuncts(tstar)
    assert ns.kind_of("s__k__1") == "star" and "s__k__1" != "k__1"
    assert set(atoms(tstar)) & set(atoms(build_psi(RUNNING, ns))) == {"a__1"}


def test_nested_expression_shape():
    assert to_nested(Not(Atom("a")) | Atom("k")) == dlp.Disj(dlp.Lit("-a"), dlp.Lit("k"))
    assert to_nested(TOP) == dlp.TOP


def test_tr_ne_has_the_models_of_psi():
    psi = build_psi(RUNNING)
    universe = atoms(psi)
    assert len(universe) == 5
    expr = tr_ne(RUNNING)
    mask = truth_mask(psi, universe)
    for i in range(1 << len(universe)):
        S = {a if i >> j & 1 else "-" + a for j, a in enumerate(universe)}
        assert dlp.satisfies(S, expr) == bool(mask >> i & 1)


def test_running_example_single_projected_answer_set():
    out = tr_lp(RUNNING)
    (S,) = solve_internal(out)
    assert "k__1" in S
    assert decode(S, out).k_true == {p}
    # the unprojected program also guesses the unconstrained witness copy
    full = stable_models(out.disjunctive_rules())
    assert len(full) == 2
    assert {decode(S, out) for S in full} == {decode(S, out)}


def test_known_negation_example():
    out = tr_lp(WITH_G)
    (S,) = solve_internal(out)
    assert "k__2" in S and "k__1" not in S
    assert decode(S, out).k_true == {Not(p)}


def test_no_model_example():
    assert solve_internal(tr_lp(parse_gk("~A(p) -> K(p)"))) == []


def test_empty_theory_translation():
    out = tr_lp(GKTheory([]))
    sets = solve_internal(out)
    assert sets and all(decode(S, out).k_true == frozenset() for S in sets)


def test_decode_requires_saturation_atoms():
    out = tr_lp(RUNNING)
    with pytest.raises(MalformedModelError):
        decode({"k__1", "v"}, out)
    with pytest.raises(MalformedModelError):
        decode({"k__1", "u"}, out)


def test_rule_groups_shape():
    out = tr_lp(WITH_G)
    g = out.groups
    assert len(g[4]) == 1 and g[4][0].head == ("u", "c__1", "c__2")
    assert g[5][0] == dlp.DisjRule(("u",), ("c__1",), ("k__1",))
    assert g[6][0] == dlp.DisjRule(("u",), ("s__k__1",), ("k__1",))
    assert g[7][0] == dlp.DisjRule(("u",), ("c__1", "s__k__1"), ("-k__1",))
    assert g[8][0] == dlp.DisjRule(("u", "c__1", "s__k__1"), (), ("-k__1",))
    assert g[11] == [dlp.DisjRule((), (), ("u",))]
    assert g[14] == [dlp.DisjRule((), (), ("v",))]
    guessed = {r.head[0] for r in g[2]}
    kinds = {out.namespace.kind_of(n) for n in guessed}
    assert kinds <= {"base", "kAtom", "aAtom", "kWitnessCopy", "aWitnessCopy"}
    hats = {r.head[0] for r in g[13]}
    assert {out.namespace.kind_of(n) for n in hats} <= {"hat", "cnfDef"}


def test_every_program_atom_is_registered():
    rng = random.Random(41)
    for _ in range(30):
        out = tr_lp(random_gk_theory(rng), "structural")
        for rule in out.disjunctive_rules():
            for lit in rule.literals():
                assert dlp.atom_of(lit) in out.namespace


def _theories(seed, n, **limits):
    rng = random.Random(seed)
    return [random_gk_theory(rng, **limits) for _ in range(n)]


@pytest.mark.parametrize("mode", ["distributive", "structural"])
def test_translation_matches_oracle(mode):
    for T in _theories(42, 60):
        assert gk_models(T, mode) == gk_models_oracle(T), [str(f) for f in T]


def test_saturation_atoms_in_every_answer_set():
    for T in _theories(43, 30):
        out = tr_lp(T, "structural")
        forced = {r.head[0] for g in (9, 10, 13) for r in out.groups[g]} | {"u", "v"}
        for S in solve_internal(out):
            assert forced <= S


def test_nested_constraint_gives_same_answer_sets():
    for T in _theories(44, 25, max_atoms=1, max_modal=2, max_formulas=2):
        flat = stable_models(tr_lp(T).disjunctive_rules())
        nested = stable_models(tr_lp(T, nested_constraint=True).disjunctive_rules())
        assert flat == nested


def test_modes_agree_on_decoded_models():
    for T in _theories(45, 40, max_modal=5):
        assert gk_models(T, "distributive") == gk_models(T, "structural")


def _ka_projection(f, ka):
    rest = [a for a in atoms(f) if a not in ka]
    universe = list(ka) + rest
    mask = truth_mask(f, universe)
    low = (1 << len(ka)) - 1
    out, i = set(), 0
    while mask:
        if mask & 1:
            out.add(i & low)
        mask >>= 1
        i += 1
    return out


def test_phi_and_psi_agree_under_closure_conditions():
    from gk2dlp.prop import entails

    for T in _theories(46, 25, max_atoms=2, max_modal=3, max_formulas=2):
        ns = TranslationNamespace(T.base_atoms)
        phi, psi = build_phi(T, ns), build_psi(T, ns)
        ka = ns.names("kAtom") + ns.names("aAtom")
        nk = len(T.atom_k)

        def closed(bits):
            known = [f for j, f in enumerate(T.atom_k) if bits >> j & 1]
            return all(
                bool(bits >> (nk + j) & 1) == entails(known, f) for j, f in enumerate(T.atom_a)
            )

        lhs = {b for b in _ka_projection(phi, ka) if closed(b)}
        rhs = {b for b in _ka_projection(psi, ka) if closed(b)}
        assert lhs == rhs


def test_rule_count_is_bounded():
    # constants fitted once on random theories (observed maximum 9.75)
    for T in _theories(47, 60, max_modal=6, max_formulas=4):
        m = len(T.atom_k) + len(T.atom_a)
        assert tr_lp(T, "structural").rule_count() <= 12 * (m + 1) * T.size() + 12 * T.size()


def test_oracle_invariant_under_descriptor_sorting():
    T = parse_gk("A(p) -> K(p)")
    assert sorted_descriptors(gk_models(T)) == gk_models(T)
