import random

import pytest

from generators import random_nested_program
from gk2dlp import dlp
from gk2dlp.dlp import (
    BOT,
    TOP,
    Conj,
    Disj,
    DisjRule,
    Lit,
    Naf,
    Program,
    Rule,
    answer_sets,
    is_answer_set,
    is_normal,
    make_rule,
    normalize,
    reduct,
    satisfies,
)
from gk2dlp.errors import EnumerationLimitError

p, q, r = Lit("p"), Lit("q"), Lit("r")


def sets(xs):
    return [sorted(s) for s in xs]


def test_satisfies_examples():
    assert satisfies({"p"}, Disj(p, q))
    assert satisfies(set(), Naf(p))
    assert satisfies({"p"}, Rule(p, q))


def test_reduct_examples():
    P = Program([Rule(p, Naf(q))])
    assert reduct(P, {"p"}).rules == (Rule(p, TOP),)
    assert reduct(P, {"q"}).rules == (Rule(p, BOT),)
    assert reduct(Program([Rule(p, Naf(Naf(p)))]), {"p"}).rules == (Rule(p, TOP),)


def test_answer_sets_textbook():
    assert sets(answer_sets(Program([Rule(p, Naf(q)), Rule(q, Naf(p))]))) == [["p"], ["q"]]
    assert sets(answer_sets(Program([Rule(Disj(p, q))]))) == [["p"], ["q"]]
    assert answer_sets(Program([Rule(p, p)])) == [frozenset()]


def test_answer_sets_are_consistent():
    P = Program([Rule(Disj(p, Lit("-p")))])
    assert sets(answer_sets(P)) == [["-p"], ["p"]]
    assert answer_sets(Program([make_rule(["p"]), make_rule(["-p"])])) == []


def test_answer_set_cap():
    P = Program([make_rule([f"x{i}"]) for i in range(11)])
    with pytest.raises(EnumerationLimitError):
        answer_sets(P)


def test_declared_atoms_never_appear_unsupported():
    P = Program([make_rule(["p"])], declared={"z"})
    assert sets(answer_sets(P)) == [["p"]]


def test_normalize_examples():
    assert normalize(Program([Rule(p, Disj(q, r))])).rules == (Rule(p, q), Rule(p, r))
    assert normalize(Program([Rule(Conj(p, q), r)])).rules == (Rule(p, r), Rule(q, r))
    got = normalize(Program([Rule(BOT, Naf(Disj(p, q)))])).rules
    assert got == (make_rule([], [], ["p", "q"]),)


def test_normalize_moves_negated_heads():
    (rule,) = dlp.normalize_rule(Rule(Naf(p), q))
    assert rule == DisjRule((), ("q",), (), ("p",))


def test_is_normal():
    assert is_normal(Program([make_rule(["p"], ["q"], ["r"], ["p"])]))
    assert not is_normal(Program([Rule(p, Disj(q, r))]))


def test_normalize_preserves_answer_sets():
    rng = random.Random(21)
    for _ in range(150):
        P = random_nested_program(rng)
        expected = answer_sets(P)
        assert answer_sets(normalize(P)) == expected
        assert is_normal(normalize(P))


def test_answer_sets_verified_independently():
    rng = random.Random(22)
    for _ in range(100):
        P = random_nested_program(rng)
        found = answer_sets(P)
        for S in found:
            assert is_answer_set(P, S)
        positive = all("Naf" not in repr(rule) for rule in P)
        if positive:
            for a in found:
                for b in found:
                    assert a == b or not a < b
