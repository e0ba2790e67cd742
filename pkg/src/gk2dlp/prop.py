"""Propositional formulas, interpretations, brute-force semantics and CNF.

Formulas are immutable trees built from :class:`Top`, :class:`Bottom`,
:class:`Atom`, :class:`Not`, :class:`And` and :class:`Or`.  Implication is
not a node type: :func:`implies` expands it to ``Or(Not(a), b)`` when the
formula is built.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import EnumerationLimitError, UniverseMismatchError

DEFAULT_ENUM_CAP = 24

ATOM_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")
RESERVED = frozenset({"true", "false", "not", "K", "A", "L", "C"})


def enumeration_cap(default=DEFAULT_ENUM_CAP):
    """Return the active atom cap, honouring ``GK2DLP_ENUM_CAP``."""
    value = os.environ.get("GK2DLP_ENUM_CAP")
    if value:
        return int(value)
    return default


def _check_cap(n, cap=None):
    cap = enumeration_cap() if cap is None else cap
    if n > cap:
        raise EnumerationLimitError(f"{n} atoms exceed the enumeration cap of {cap}")


class Formula:
    """Common base of propositional (and modal, see :mod:`gk2dlp.gk`) nodes."""

    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        from .frontend.parsing import format_formula

        return format_formula(self)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    def __repr__(self):
        return "Bottom()"


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom names must be nonempty")


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


TOP = Top()
BOTTOM = Bottom()


def implies(antecedent, consequent):
    return Or(Not(antecedent), consequent)


def _balanced(items, node, empty):
    items = list(items)
    if not items:
        return empty
    while len(items) > 1:
        paired = [node(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def _linear(items, node, empty):
    items = list(items)
    if not items:
        return empty
    result = items[0]
    for item in items[1:]:
        result = node(result, item)
    return result


def conj(items: Iterable[Formula], balanced=False) -> Formula:
    """Conjunction of ``items``; ``Top`` when empty.

    Left-nested by default so that printed formulas read naturally; pass
    ``balanced=True`` for long conjunctions to keep the tree shallow.
    """
    return (_balanced if balanced else _linear)(items, And, TOP)


def disj(items: Iterable[Formula], balanced=False) -> Formula:
    return (_balanced if balanced else _linear)(items, Or, BOTTOM)


def is_valid_atom_name(name):
    return bool(ATOM_RE.match(name)) and name not in RESERVED


def children(f):
    if isinstance(f, Not):
        return (f.operand,)
    if isinstance(f, (And, Or)):
        return (f.left, f.right)
    return ()


def iter_nodes(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal without recursion."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def size(f):
    return sum(1 for _ in iter_nodes(f))


def atoms(f: Formula) -> list[str]:
    """Atom names of ``f`` in first-occurrence order."""
    seen = {}
    for node in iter_nodes(f):
        if isinstance(node, Atom):
            seen.setdefault(node.name, None)
    return list(seen)


def atoms_of_all(formulas):
    seen = {}
    for f in formulas:
        for name in atoms(f):
            seen.setdefault(name, None)
    return list(seen)


def map_leaves(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    """Rebuild ``f`` with every non-connective node replaced by ``fn(node)``."""
    if isinstance(f, Not):
        return Not(map_leaves(f.operand, fn))
    if isinstance(f, And):
        return And(map_leaves(f.left, fn), map_leaves(f.right, fn))
    if isinstance(f, Or):
        return Or(map_leaves(f.left, fn), map_leaves(f.right, fn))
    return fn(f)


def substitute(f: Formula, mapping: Callable[[str], str] | dict) -> Formula:
    """Rename every atom of ``f`` through ``mapping``."""
    if isinstance(mapping, dict):
        table = mapping
        mapping = lambda name: table.get(name, name)  # noqa: E731
    return map_leaves(f, lambda leaf: Atom(mapping(leaf.name)) if isinstance(leaf, Atom) else leaf)


# -- interpretations -------------------------------------------------------


@dataclass(frozen=True)
class Interpretation:
    """A complete literal set over ``universe``, stored as its true atoms."""

    universe: frozenset
    true_atoms: frozenset

    def __post_init__(self):
        object.__setattr__(self, "universe", frozenset(self.universe))
        object.__setattr__(self, "true_atoms", frozenset(self.true_atoms))
        if not self.true_atoms <= self.universe:
            raise UniverseMismatchError(
                f"atoms {sorted(self.true_atoms - self.universe)} are not in the universe"
            )

    @classmethod
    def from_literals(cls, literals):
        """Build from strings ``p`` / ``-p``; each atom must occur exactly once."""
        universe, true = set(), set()
        for lit in literals:
            name = lit[1:] if lit.startswith("-") else lit
            if name in universe:
                raise ValueError(f"atom {name} occurs twice")
            universe.add(name)
            if not lit.startswith("-"):
                true.add(name)
        return cls(frozenset(universe), frozenset(true))

    def literals(self):
        return frozenset(p if p in self.true_atoms else "-" + p for p in self.universe)

    def __contains__(self, literal):
        return literal in self.literals()


def evaluate(interp: Interpretation, f: Formula) -> bool:
    def walk(node):
        if isinstance(node, Atom):
            if node.name not in interp.universe:
                raise UniverseMismatchError(f"atom {node.name} is outside the universe")
            return node.name in interp.true_atoms
        if isinstance(node, Top):
            return True
        if isinstance(node, Bottom):
            return False
        if isinstance(node, Not):
            return not walk(node.operand)
        if isinstance(node, And):
            return walk(node.left) and walk(node.right)
        if isinstance(node, Or):
            return walk(node.left) or walk(node.right)
        raise TypeError(f"cannot evaluate {node!r} propositionally")

    return walk(f)


def truth_mask(f: Formula, universe: Sequence[str]) -> int:
    """Bit ``i`` is set iff ``f`` holds in the ``i``-th interpretation.

    Interpretation ``i`` makes ``universe[j]`` true iff bit ``j`` of ``i``
    is set.  Used to make brute-force entailment cheap.
    """
    n = len(universe)
    full = (1 << (1 << n)) - 1
    index = {name: j for j, name in enumerate(universe)}
    cache = {}

    def atom_mask(j):
        mask = 0
        for i in range(1 << n):
            if i >> j & 1:
                mask |= 1 << i
        return mask

    def walk(node):
        if isinstance(node, Atom):
            j = index.get(node.name)
            if j is None:
                raise UniverseMismatchError(f"atom {node.name} is outside the universe")
            if j not in cache:
                cache[j] = atom_mask(j)
            return cache[j]
        if isinstance(node, Top):
            return full
        if isinstance(node, Bottom):
            return 0
        if isinstance(node, Not):
            return full ^ walk(node.operand)
        if isinstance(node, And):
            return walk(node.left) & walk(node.right)
        if isinstance(node, Or):
            return walk(node.left) | walk(node.right)
        raise TypeError(f"cannot evaluate {node!r} propositionally")

    return walk(f)


def models(f: Formula, universe: Iterable[str], cap=None) -> list[Interpretation]:
    universe = sorted(set(universe))
    missing = set(atoms(f)) - set(universe)
    if missing:
        raise UniverseMismatchError(f"atoms {sorted(missing)} are outside the universe")
    _check_cap(len(universe), cap)
    result = []
    for bits in itertools.product((False, True), repeat=len(universe)):
        interp = Interpretation(frozenset(universe), frozenset(p for p, b in zip(universe, bits) if b))
        if evaluate(interp, f):
            result.append(interp)
    return result


def entails(gamma: Iterable[Formula], f: Formula, cap=None) -> bool:
    gamma = list(gamma)
    universe = atoms_of_all(gamma + [f])
    _check_cap(len(universe), cap)
    premise = truth_mask(conj(gamma, balanced=True), universe)
    return premise & ~truth_mask(f, universe) == 0


def equivalent(f: Formula, g: Formula, cap=None) -> bool:
    universe = atoms_of_all([f, g])
    _check_cap(len(universe), cap)
    return truth_mask(f, universe) == truth_mask(g, universe)


def nnf(f: Formula) -> Formula:
    """Negation normal form; negation ends up directly above atoms only."""

    def walk(node, positive):
        if isinstance(node, Not):
            return walk(node.operand, not positive)
        if isinstance(node, And):
            op = And if positive else Or
            return op(walk(node.left, positive), walk(node.right, positive))
        if isinstance(node, Or):
            op = Or if positive else And
            return op(walk(node.left, positive), walk(node.right, positive))
        if isinstance(node, Top):
            return TOP if positive else BOTTOM
        if isinstance(node, Bottom):
            return BOTTOM if positive else TOP
        return node if positive else Not(node)

    return walk(f, True)


def is_nnf(f):
    for node in iter_nodes(f):
        if isinstance(node, Not) and not isinstance(node.operand, Atom):
            return False
    return True


# -- clauses ---------------------------------------------------------------


@dataclass(frozen=True)
class ClauseRule:
    """Clause ``h1 | ... | hk | ~b1 | ... | ~bm`` read as ``h1;...;hk <- b1,...,bm``."""

    head: frozenset
    body: frozenset

    def __post_init__(self):
        object.__setattr__(self, "head", frozenset(self.head))
        object.__setattr__(self, "body", frozenset(self.body))

    def as_formula(self):
        return disj([Atom(h) for h in sorted(self.head)] + [Not(Atom(b)) for b in sorted(self.body)])

    def atoms(self):
        return self.head | self.body


def clauses_formula(clauses: Iterable[ClauseRule]) -> Formula:
    return conj([c.as_formula() for c in clauses], balanced=True)


def _dedupe(clauses):
    seen = {}
    for clause in clauses:
        seen.setdefault(clause, None)
    return list(seen)


def _distribute(f):
    """Distributive CNF of an NNF formula as (positive, negative) set pairs."""
    if isinstance(f, Top):
        return []
    if isinstance(f, Bottom):
        return [(frozenset(), frozenset())]
    if isinstance(f, Atom):
        return [(frozenset([f.name]), frozenset())]
    if isinstance(f, Not):
        return [(frozenset(), frozenset([f.operand.name]))]
    if isinstance(f, And):
        return _distribute(f.left) + _distribute(f.right)
    left, right = _distribute(f.left), _distribute(f.right)
    out = []
    for lp, ln in left:
        for rp, rn in right:
            pos, neg = lp | rp, ln | rn
            if not pos & neg:
                out.append((pos, neg))
    return out


class _DefCounter:
    def __init__(self, avoid):
        self.avoid = set(avoid)
        self.i = 0

    def __call__(self):
        while True:
            self.i += 1
            name = f"d__{self.i}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name


def _tseitin(f, fresh):
    """Structural CNF of an NNF formula with full-equivalence definitions."""
    clauses = []
    memo = {}

    def literal(node):
        # returns (atom, positive) naming ``node``
        if isinstance(node, Atom):
            return node.name, True
        if isinstance(node, Not):
            return node.operand.name, False
        key = id(node)
        if key in memo:
            return memo[key][0]
        d = fresh()
        lits = [literal(c) for c in (node.left, node.right)] if not isinstance(node, (Top, Bottom)) else []
        if isinstance(node, Top):
            clauses.append(({d}, set()))
        elif isinstance(node, Bottom):
            clauses.append((set(), {d}))
        elif isinstance(node, And):
            # d <-> l1 & l2
            for name, pos in lits:
                clauses.append(({name}, {d}) if pos else (set(), {d, name}))
            clauses.append(_clause([(d, True)] + [(n, not p) for n, p in lits]))
        else:
            # d <-> l1 | l2
            clauses.append(_clause([(d, False)] + lits))
            for name, pos in lits:
                clauses.append(_clause([(d, True), (name, not pos)]))
        memo[key] = ((d, True), node)
        return d, True

    def required(node):
        if isinstance(node, And):
            required(node.left)
            required(node.right)
        elif isinstance(node, Top):
            pass
        elif isinstance(node, Bottom):
            clauses.append((set(), set()))
        else:
            parts = []
            stack = [node]
            while stack:
                cur = stack.pop()
                if isinstance(cur, Or):
                    stack.extend((cur.right, cur.left))
                elif isinstance(cur, Bottom):
                    continue
                elif isinstance(cur, Top):
                    return
                else:
                    parts.append(literal(cur))
            clauses.append(_clause(parts))

    required(f)
    out = []
    for pos, neg in clauses:
        pos, neg = frozenset(pos), frozenset(neg)
        if not pos & neg:
            out.append((pos, neg))
    return out


def _clause(lits):
    pos, neg = set(), set()
    for name, positive in lits:
        (pos if positive else neg).add(name)
    return pos, neg


def cnf(f: Formula, mode="distributive", fresh: Callable[[], str] | None = None) -> list[ClauseRule]:
    """Clausal form of ``f`` as rules ``head <- body``.

    ``distributive`` yields an equivalent clause set (worst case exponential).
    ``structural`` introduces definition atoms obtained from ``fresh`` and is
    linear; its models projected onto ``atoms(f)`` are exactly those of ``f``.
    """
    g = nnf(f)
    if mode == "distributive":
        pairs = _distribute(g)
    elif mode == "structural":
        pairs = _tseitin(g, fresh or _DefCounter(atoms(f)))
    else:
        raise ValueError(f"unknown CNF mode {mode!r}")
    return _dedupe(ClauseRule(pos, neg) for pos, neg in pairs)
