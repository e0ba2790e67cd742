"""Logic programs with nested expressions and their answer sets.

Literals are strings: ``"p"`` for an atom and ``"-p"`` for its classical
negation.  :func:`answer_sets` is the brute-force reference semantics; the
search-based enumerator used at translation scale lives in
:mod:`gk2dlp.search`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import EnumerationLimitError
from .prop import enumeration_cap

DEFAULT_LITERAL_CAP = 20


def atom_of(literal: str) -> str:
    return literal[1:] if literal.startswith("-") else literal


def complement(literal: str) -> str:
    return literal[1:] if literal.startswith("-") else "-" + literal


def is_consistent(literals) -> bool:
    return not any(lit.startswith("-") and lit[1:] in literals for lit in literals)


# -- nested expressions -------------------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Lit(Expr):
    literal: str


@dataclass(frozen=True, slots=True)
class Const(Expr):
    value: bool


@dataclass(frozen=True, slots=True)
class Naf(Expr):
    """Default negation ``not F``."""

    operand: Expr


@dataclass(frozen=True, slots=True)
class Conj(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Disj(Expr):
    left: Expr
    right: Expr


TOP = Const(True)
BOT = Const(False)


def conj_of(items, empty=TOP):
    items = list(items)
    if not items:
        return empty
    out = items[0]
    for item in items[1:]:
        out = Conj(out, item)
    return out


def disj_of(items, empty=BOT):
    items = list(items)
    if not items:
        return empty
    out = items[0]
    for item in items[1:]:
        out = Disj(out, item)
    return out


def expr_literals(e: Expr):
    stack, out = [e], []
    while stack:
        node = stack.pop()
        if isinstance(node, Lit):
            out.append(node.literal)
        elif isinstance(node, Naf):
            stack.append(node.operand)
        elif isinstance(node, (Conj, Disj)):
            stack.extend((node.right, node.left))
    return out


@dataclass(frozen=True)
class Rule:
    head: Expr
    body: Expr = TOP


def make_rule(head=(), pos=(), neg=(), negneg=(), body=None) -> Rule:
    """Rule ``h1;...;hk <- pos, not neg, not not negneg`` from literal lists."""
    if body is None:
        body = conj_of(
            [Lit(l) for l in pos] + [Naf(Lit(l)) for l in neg] + [Naf(Naf(Lit(l))) for l in negneg]
        )
    return Rule(disj_of(Lit(l) for l in head), body)


@dataclass(frozen=True)
class Program:
    rules: tuple = ()
    declared: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "declared", frozenset(self.declared))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def atoms(self):
        """Atoms of the rules followed by extra declared atoms, deterministic."""
        seen = {}
        for r in self.rules:
            for lit in expr_literals(r.head) + expr_literals(r.body):
                seen.setdefault(atom_of(lit), None)
        for a in sorted(self.declared):
            seen.setdefault(a, None)
        return list(seen)


# -- semantics ----------------------------------------------------------------


def _sat_expr(S, e):
    if isinstance(e, Lit):
        return e.literal in S
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Naf):
        return not _sat_expr(S, e.operand)
    if isinstance(e, Conj):
        return _sat_expr(S, e.left) and _sat_expr(S, e.right)
    if isinstance(e, Disj):
        return _sat_expr(S, e.left) or _sat_expr(S, e.right)
    raise TypeError(f"not a nested expression: {e!r}")


def satisfies(S, x) -> bool:
    """``S |= x`` for an expression, a rule, or a program."""
    if isinstance(x, Expr):
        return _sat_expr(S, x)
    if isinstance(x, Rule):
        return not _sat_expr(S, x.body) or _sat_expr(S, x.head)
    return all(satisfies(S, r) for r in x)


def _reduce(e, S):
    if isinstance(e, Naf):
        return BOT if _sat_expr(S, e.operand) else TOP
    if isinstance(e, Conj):
        return Conj(_reduce(e.left, S), _reduce(e.right, S))
    if isinstance(e, Disj):
        return Disj(_reduce(e.left, S), _reduce(e.right, S))
    return e


def reduct(program: Program, S) -> Program:
    """Replace every maximal ``not F`` by ``BOT`` if ``S |= F`` else ``TOP``."""
    S = frozenset(S)
    rules = [Rule(_reduce(r.head, S), _reduce(r.body, S)) for r in program]
    return Program(rules, program.declared)


def literal_key(S):
    return (len(S), sorted(S))


def answer_sets(program: Program, cap=None) -> list[frozenset]:
    """All answer sets by exhaustive search over consistent literal sets.

    Only atoms of the program (plus declared ones) are considered.  ``cap``
    bounds the number of literals ``2 * |atoms|`` (default 20).
    """
    atoms = program.atoms()
    cap = enumeration_cap(DEFAULT_LITERAL_CAP) if cap is None else cap
    if 2 * len(atoms) > cap:
        raise EnumerationLimitError(f"{2 * len(atoms)} literals exceed the answer-set cap of {cap}")
    result = []
    for choice in itertools.product((None, True, False), repeat=len(atoms)):
        S = frozenset(
            (a if value else "-" + a) for a, value in zip(atoms, choice) if value is not None
        )
        if not satisfies(S, program):
            continue
        if _is_minimal_model(reduct(program, S), S):
            result.append(S)
    return sorted(result, key=literal_key)


def _is_minimal_model(positive_program, S):
    members = sorted(S)
    for k in range(len(members)):
        for subset in itertools.combinations(members, k):
            if satisfies(frozenset(subset), positive_program):
                return False
    return True


def is_answer_set(program: Program, S) -> bool:
    """Independent re-check of ``S in Gamma_P(S)``."""
    S = frozenset(S)
    if not is_consistent(S) or not satisfies(S, program):
        return False
    return _is_minimal_model(reduct(program, S), S)


# -- normal form ----------------------------------------------------------------

# Body/head elements are pairs (literal, depth) with depth 0 = l, 1 = not l,
# 2 = not not l.


def _flip(depth):
    return 1 if depth != 1 else 2


def _product(xs, ys):
    return [a + b for a in xs for b in ys]


def _body_dnf(e, depth):
    if isinstance(e, Lit):
        return [((e.literal, depth),)]
    if isinstance(e, Const):
        return [()] if e.value == (depth != 1) else []
    if isinstance(e, Naf):
        return _body_dnf(e.operand, _flip(depth))
    if isinstance(e, Conj):
        if depth == 1:
            return _body_dnf(e.left, 1) + _body_dnf(e.right, 1)
        return _product(_body_dnf(e.left, depth), _body_dnf(e.right, depth))
    if isinstance(e, Disj):
        if depth == 1:
            return _product(_body_dnf(e.left, 1), _body_dnf(e.right, 1))
        return _body_dnf(e.left, depth) + _body_dnf(e.right, depth)
    raise TypeError(f"not a nested expression: {e!r}")


def _head_cnf(e, depth):
    if isinstance(e, Lit):
        return [((e.literal, depth),)]
    if isinstance(e, Const):
        return [] if e.value == (depth != 1) else [()]
    if isinstance(e, Naf):
        return _head_cnf(e.operand, _flip(depth))
    if isinstance(e, Conj):
        if depth == 1:
            return _product(_head_cnf(e.left, 1), _head_cnf(e.right, 1))
        return _head_cnf(e.left, depth) + _head_cnf(e.right, depth)
    if isinstance(e, Disj):
        if depth == 1:
            return _head_cnf(e.left, 1) + _head_cnf(e.right, 1)
        return _product(_head_cnf(e.left, depth), _head_cnf(e.right, depth))
    raise TypeError(f"not a nested expression: {e!r}")


@dataclass(frozen=True)
class DisjRule:
    """``head <- pos, not neg, not not negneg`` over literals."""

    head: tuple = ()
    pos: tuple = ()
    neg: tuple = ()
    negneg: tuple = ()

    def to_rule(self) -> Rule:
        return make_rule(self.head, self.pos, self.neg, self.negneg)

    def literals(self):
        return (*self.head, *self.pos, *self.neg, *self.negneg)


def _uniq(items):
    return tuple(dict.fromkeys(items))


def normalize_rule(rule: Rule) -> list[DisjRule]:
    out = []
    for clause in _head_cnf(rule.head, 0):
        head = _uniq(l for l, d in clause if d == 0)
        moved = tuple((l, 2 if d == 1 else 1) for l, d in clause if d != 0)
        for term in _body_dnf(rule.body, 0):
            elements = term + moved
            out.append(
                DisjRule(
                    head,
                    _uniq(l for l, d in elements if d == 0),
                    _uniq(l for l, d in elements if d == 1),
                    _uniq(l for l, d in elements if d == 2),
                )
            )
    return out


def disjunctive_rules(program: Program) -> list[DisjRule]:
    """The rules of :func:`normalize` as flat :class:`DisjRule` records."""
    return list(dict.fromkeys(r for rule in program for r in normalize_rule(rule)))


def normalize(program: Program) -> Program:
    """Strongly equivalent program in plain disjunctive form.

    Heads become disjunctions of literals and bodies conjunctions of
    ``l``, ``not l`` and ``not not l``; potentially exponential.
    """
    return Program([r.to_rule() for r in disjunctive_rules(program)], frozenset(program.atoms()))


def _flat_body(e, out):
    if isinstance(e, Conj):
        return _flat_body(e.left, out) and _flat_body(e.right, out)
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Lit):
        out[0].append(e.literal)
        return True
    if isinstance(e, Naf) and isinstance(e.operand, Lit):
        out[1].append(e.operand.literal)
        return True
    if isinstance(e, Naf) and isinstance(e.operand, Naf) and isinstance(e.operand.operand, Lit):
        out[2].append(e.operand.operand.literal)
        return True
    raise ValueError("body is not in disjunctive normal form")


def _flat_head(e, out):
    if isinstance(e, Disj):
        _flat_head(e.left, out)
        _flat_head(e.right, out)
    elif isinstance(e, Lit):
        out.append(e.literal)
    elif not (isinstance(e, Const) and not e.value):
        raise ValueError("head is not a disjunction of literals")


def is_normal(program: Program) -> bool:
    try:
        for r in program:
            _flat_head(r.head, [])
            _flat_body(r.body, ([], [], []))
    except ValueError:
        return False
    return True


def as_disjunctive(rule: Rule) -> DisjRule | None:
    """Read a rule already in normal form; ``None`` if its body is false."""
    head = []
    _flat_head(rule.head, head)
    parts = ([], [], [])
    if not _flat_body(rule.body, parts):
        return None
    return DisjRule(tuple(head), *map(tuple, parts))


def literals_sorted(S: Iterable[str]):
    return sorted(S, key=lambda l: (atom_of(l), l.startswith("-")))
