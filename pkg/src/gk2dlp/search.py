"""Guess-and-check answer-set enumeration for disjunctive programs.

Candidates are classical models of the program (``not l`` read as "l is
false in the candidate"), produced by a small CDCL propagation engine.  Each
candidate ``M`` is checked for minimality against its reduct; when a
smaller model ``M'`` of the reduct exists, a nogood excluding every
candidate refuted by the same removal ``M \\ M'`` is learned, so refutations
generalise beyond the single candidate.

Used where :func:`gk2dlp.dlp.answer_sets` (exhaustive) cannot scale, and
cross-checked against it on small programs.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Iterator

from .dlp import DisjRule, Program, disjunctive_rules, literal_key


class SatSolver:
    """Conflict-driven clause learning over integer literals ``+v`` / ``-v``."""

    def __init__(self):
        self.assign = [0]
        self.level = [0]
        self.reason = [None]
        self.activity = [0.0]
        self.phase = [False]
        self.clauses = []
        self.watches = {}
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.heap = []
        self.var_inc = 1.0
        self.ok = True

    @property
    def nvars(self):
        return len(self.assign) - 1

    def new_var(self, priority=0.0):
        self.assign.append(0)
        self.level.append(0)
        self.reason.append(None)
        self.activity.append(priority)
        self.phase.append(False)
        v = len(self.assign) - 1
        self.watches[v] = []
        self.watches[-v] = []
        heapq.heappush(self.heap, (-priority, v))
        return v

    def value(self, lit):
        v = self.assign[lit if lit > 0 else -lit]
        return v if lit > 0 else -v

    def _enqueue(self, lit, reason):
        v = lit if lit > 0 else -lit
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def backtrack(self, level):
        if len(self.trail_lim) <= level:
            return
        stop = self.trail_lim[level]
        for lit in self.trail[stop:]:
            v = lit if lit > 0 else -lit
            self.phase[v] = lit > 0
            self.assign[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[stop:]
        del self.trail_lim[level:]
        self.qhead = min(self.qhead, len(self.trail))

    def add_clause(self, lits: Iterable[int]):
        if not self.ok:
            return
        self.backtrack(0)
        clause = []
        for lit in dict.fromkeys(lits):
            val = self.value(lit)
            if val == 1 or -lit in clause:
                return
            if val == 0:
                clause.append(lit)
        if not clause:
            self.ok = False
            return
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            if self._propagate() is not None:
                self.ok = False
            return
        self.clauses.append(clause)
        ci = len(self.clauses) - 1
        self.watches[clause[0]].append(ci)
        self.watches[clause[1]].append(ci)

    def _propagate(self):
        assign, clauses, watches = self.assign, self.clauses, self.watches
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = watches[false_lit]
            kept = []
            n = len(ws)
            i = 0
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = assign[first] if first > 0 else -assign[-first]
                if fv == 1:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    lv = assign[lit] if lit > 0 else -assign[-lit]
                    if lv != -1:
                        c[1], c[k] = lit, false_lit
                        watches[lit].append(ci)
                        break
                else:
                    kept.append(ci)
                    if fv == -1:
                        kept.extend(ws[i:])
                        watches[false_lit] = kept
                        return ci
                    self._enqueue(first, ci)
            watches[false_lit] = kept
        return None

    def _bump(self, v):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for i in range(1, len(self.activity)):
                self.activity[i] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, len(self.assign)) if self.assign[u] == 0]
            heapq.heapify(self.heap)
        if self.assign[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl):
        current = len(self.trail_lim)
        seen = set()
        learnt = [0]
        counter = 0
        p = None
        index = len(self.trail) - 1
        clause = self.clauses[confl]
        while True:
            for q in clause if p is None else clause[1:]:
                v = q if q > 0 else -q
                if v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                self._bump(v)
                if self.level[v] == current:
                    counter += 1
                else:
                    learnt.append(q)
            while True:
                lit = self.trail[index]
                index -= 1
                if (lit if lit > 0 else -lit) in seen:
                    break
            p = lit
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[p if p > 0 else -p]]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda j: self.level[abs(learnt[j])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _decide(self):
        heap = self.heap
        while heap:
            _, v = heapq.heappop(heap)
            if self.assign[v] == 0:
                return v
        return 0

    def solve(self):
        """Search for a model; returns ``True`` and fills :attr:`model`."""
        if not self.ok:
            return False
        self.backtrack(0)
        if self._propagate() is not None:
            self.ok = False
            return False
        while True:
            confl = self._propagate()
            if confl is not None:
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, back = self._analyze(confl)
                self.backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self.clauses.append(learnt)
                    ci = len(self.clauses) - 1
                    self.watches[learnt[0]].append(ci)
                    self.watches[learnt[1]].append(ci)
                    self._enqueue(learnt[0], ci)
                self.var_inc /= 0.95
                continue
            v = self._decide()
            if v == 0:
                self.model = [a == 1 for a in self.assign]
                return True
            self.trail_lim.append(len(self.trail))
            self._enqueue(v if self.phase[v] else -v, None)


class _Encoding:
    """Literal-to-variable map for one program."""

    def __init__(self, solver, rules, priority_atoms=()):
        self.solver = solver
        self.var = {}
        self.lit_of = {}
        priority_atoms = set(priority_atoms)
        literals = dict.fromkeys(lit for r in rules for lit in r.literals())
        for lit in literals:
            atom = lit[1:] if lit.startswith("-") else lit
            v = solver.new_var(1.0 if atom in priority_atoms else 0.0)
            self.var[lit] = v
            self.lit_of[v] = lit

    def true_literals(self):
        model = self.solver.model
        return frozenset(lit for lit, v in self.var.items() if model[v])


def _rule_clause(var, r: DisjRule):
    return (
        [var[h] for h in r.head]
        + [-var[b] for b in r.pos]
        + [var[n] for n in r.neg]
        + [-var[m] for m in r.negneg]
    )


class AnswerSetSearch:
    """Enumerate answer sets of a normalized program.

    With ``project`` (a collection of atoms) one answer set is reported per
    distinct assignment to the literals over those atoms.
    """

    def __init__(self, rules: list[DisjRule], project=None):
        self.rules = list(rules)
        self.project = None if project is None else frozenset(project)
        self.solver = SatSolver()
        self.enc = _Encoding(self.solver, self.rules, self.project or ())
        self.by_head = {}
        for i, r in enumerate(self.rules):
            for h in r.head:
                self.by_head.setdefault(h, []).append(i)
        self.stats = {"candidates": 0, "refuted": 0}
        var = self.enc.var
        for lit, v in var.items():
            if not lit.startswith("-") and "-" + lit in var:
                self.solver.add_clause([-v, -var["-" + lit]])
            if lit not in self.by_head:
                # never derivable, hence false in every answer set
                self.solver.add_clause([-v])
        for r in self.rules:
            self.solver.add_clause(_rule_clause(var, r))

    def __iter__(self) -> Iterator[frozenset]:
        var = self.enc.var
        if self.project is None:
            block_vars = list(var.values())
        else:
            block_vars = [v for lit, v in var.items() if (lit[1:] if lit.startswith("-") else lit) in self.project]
        while self.solver.solve():
            self.stats["candidates"] += 1
            M = self.enc.true_literals()
            smaller = self.counter_model(M)
            if smaller is None:
                yield M
                model = self.solver.model
                self.solver.add_clause([-v if model[v] else v for v in block_vars])
                if not block_vars:
                    return
            else:
                self.stats["refuted"] += 1
                self.solver.add_clause([-var[l] if t else var[l] for l, t in self.nogood(M, smaller)])

    def counter_model(self, M):
        """A model of the reduct w.r.t. ``M`` strictly inside ``M``, or None."""
        if not M:
            return None
        solver = SatSolver()
        index = {}
        for lit in sorted(M):
            index[lit] = solver.new_var()
        for r in self.rules:
            if any(n in M for n in r.neg) or not all(m in M for m in r.negneg):
                continue
            if not all(b in M for b in r.pos):
                continue
            solver.add_clause([index[h] for h in r.head if h in M] + [-index[b] for b in r.pos])
            if not solver.ok:
                return None
        solver.add_clause([-v for v in index.values()])
        if not solver.solve():
            return None
        return frozenset(lit for lit, v in index.items() if solver.model[v])

    def nogood(self, M, smaller):
        """Literals (name, truth) whose conjunction refutes any candidate.

        Any candidate ``N`` containing the removed set ``D = M - smaller``
        and agreeing with the returned reasons has ``N - D`` as a model of
        its own reduct, so it is not an answer set.
        """
        D = M - smaller
        chosen = {lit: True for lit in D}
        for i in sorted({i for d in D for i in self.by_head.get(d, ())}):
            r = self.rules[i]
            if any(b in D for b in r.pos):
                continue
            options = (
                [(h, True) for h in r.head if h in smaller]
                + [(n, True) for n in r.neg if n in M]
                + [(m, False) for m in r.negneg if m not in M]
                + [(b, False) for b in r.pos if b not in M]
            )
            assert options, "counter-model does not satisfy the reduct"
            for opt in options:
                if chosen.get(opt[0]) == opt[1]:
                    break
            else:
                chosen[options[0][0]] = options[0][1]
        return list(chosen.items())


def stable_models(program: Program | list[DisjRule], project=None) -> list[frozenset]:
    """All answer sets (or one per projection class), sorted canonically."""
    rules = program if isinstance(program, list) else disjunctive_rules(program)
    found = list(AnswerSetSearch(rules, project))
    return sorted(found, key=literal_key)
