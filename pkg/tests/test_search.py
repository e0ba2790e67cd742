import random

from hypothesis import given, settings
from hypothesis import strategies as st

from generators import random_nested_program
from gk2dlp import dlp
from gk2dlp.search import AnswerSetSearch, SatSolver, stable_models


def _brute_sat(clauses, n):
    for bits in range(1 << n):
        if all(any((bits >> (abs(l) - 1) & 1) == (l > 0) for l in c) for c in clauses):
            return True
    return False


clause_lists = st.lists(
    st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3),
    max_size=25,
)


@settings(max_examples=200, deadline=None)
@given(clause_lists)
def test_sat_solver_agrees_with_truth_tables(clauses):
    s = SatSolver()
    for _ in range(6):
        s.new_var()
    for c in clauses:
        s.add_clause(c)
    result = s.solve()
    assert result == _brute_sat(clauses, 6)
    if result:
        assert all(any(s.model[abs(l)] == (l > 0) for l in c) for c in clauses)


def test_sat_solver_incremental_blocking():
    s = SatSolver()
    a, b = s.new_var(), s.new_var()
    s.add_clause([a, b])
    models = set()
    while s.solve():
        m = (s.model[a], s.model[b])
        models.add(m)
        s.add_clause([-a if m[0] else a, -b if m[1] else b])
    assert models == {(True, False), (False, True), (True, True)}


def test_search_matches_brute_force():
    rng = random.Random(31)
    for _ in range(400):
        P = random_nested_program(rng)
        assert stable_models(P) == dlp.answer_sets(P)


def test_search_projection_reports_each_class_once():
    P = dlp.Program([dlp.make_rule(["p", "-p"]), dlp.make_rule(["q", "-q"])])
    assert len(stable_models(P)) == 4
    projected = stable_models(P, project=["p"])
    assert sorted(sorted(s & {"p", "-p"}) for s in projected) == [["-p"], ["p"]]


def test_search_disjunctive_cycles():
    # p;q with q <- p and p <- q: every model contains both atoms
    P = dlp.Program([dlp.make_rule(["p", "q"]), dlp.make_rule(["q"], ["p"]), dlp.make_rule(["p"], ["q"])])
    search = AnswerSetSearch(dlp.disjunctive_rules(P))
    assert [sorted(s) for s in search] == [["p", "q"]]
    Q = dlp.Program([dlp.make_rule(["p", "q"]), dlp.make_rule(["p"], [], ["r"]), dlp.make_rule(["r"], [], ["p"])])
    assert stable_models(Q) == dlp.answer_sets(Q)
