"""Pure GK theories: modal atoms, propositionalization and a GK-model oracle.

A GK model is represented by the set of K-atoms it makes true (and the
A-atoms, which a GK model makes true exactly for the formulas entailed by
the true K-atoms).  No Kripke structure is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import ClassVar

from .errors import EnumerationLimitError, UnsupportedFragmentError
from .prop import (
    And,
    Atom,
    Bottom,
    Formula,
    Not,
    Or,
    Top,
    atoms_of_all,
    conj,
    iter_nodes,
    map_leaves,
    truth_mask,
    _check_cap,
)


@dataclass(frozen=True, slots=True)
class KAtom(Formula):
    formula: Formula
    symbol: ClassVar[str] = "K"


@dataclass(frozen=True, slots=True)
class AAtom(Formula):
    formula: Formula
    symbol: ClassVar[str] = "A"


MODAL_TYPES = (KAtom, AAtom)


class NotPureError(UnsupportedFragmentError):
    pass


def check_propositional(f: Formula):
    for node in iter_nodes(f):
        if isinstance(node, MODAL_TYPES):
            raise NotPureError("nested modal operator")
        if not isinstance(node, (Atom, Top, Bottom, Not, And, Or)):
            raise NotPureError(f"unexpected node {node!r}")


def check_pure(f: Formula):
    """Raise :class:`NotPureError` unless ``f`` is a pure GK formula."""
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            raise NotPureError(f"atom {node.name!r} occurs outside any modal operator")
        if isinstance(node, MODAL_TYPES):
            check_propositional(node.formula)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend((node.left, node.right))
        elif not isinstance(node, (Top, Bottom)):
            raise NotPureError(f"unexpected node {node!r}")


def modal_leaves(f: Formula):
    """K- and A-atoms of ``f`` in left-to-right order."""
    out = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, MODAL_TYPES):
            out.append(node)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend((node.right, node.left))
    return out


@dataclass(frozen=True)
class GKTheory:
    formulas: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        for f in self.formulas:
            check_pure(f)

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)

    @cached_property
    def atom_k(self) -> list[Formula]:
        return modal_atoms(self)[0]

    @cached_property
    def atom_a(self) -> list[Formula]:
        return modal_atoms(self)[1]

    @cached_property
    def base_atoms(self) -> list[str]:
        return atoms_of_all(self.atom_k + self.atom_a)

    def size(self):
        """Node count, including the formulas inside modal atoms."""
        total = 0
        for f in self.formulas:
            total += sum(1 for _ in iter_nodes(f))
            total += sum(sum(1 for _ in iter_nodes(leaf.formula)) for leaf in modal_leaves(f))
        return total


def modal_atoms(theory) -> tuple[list[Formula], list[Formula]]:
    """AtomK and AtomA, duplicates merged structurally, first-occurrence order."""
    k, a = {}, {}
    for f in theory:
        for leaf in modal_leaves(f):
            (k if isinstance(leaf, KAtom) else a).setdefault(leaf.formula, None)
    return list(k), list(a)


def tr_p(theory: GKTheory, namespace=None) -> Formula:
    """Replace each ``K phi`` by ``k_phi`` and each ``A psi`` by ``a_psi``.

    Atom names come from ``namespace`` (a :class:`TranslationNamespace`);
    a fresh one seeded with the theory's base atoms is used when omitted.
    """
    from .namespace import TranslationNamespace

    if namespace is None:
        namespace = TranslationNamespace(theory.base_atoms)
    k_index = {phi: i for i, phi in enumerate(theory.atom_k, 1)}
    a_index = {psi: i for i, psi in enumerate(theory.atom_a, 1)}

    def leaf(node):
        if isinstance(node, KAtom):
            i = k_index[node.formula]
            return Atom(namespace.k_atom(i, node.formula))
        if isinstance(node, AAtom):
            i = a_index[node.formula]
            return Atom(namespace.a_atom(i, node.formula))
        return node

    return conj(map_leaves(f, leaf) for f in theory.formulas)


def evaluate_gk(f: Formula, k_true, a_true) -> bool:
    """Truth of a pure GK formula given which modal atoms hold."""
    if isinstance(f, KAtom):
        return f.formula in k_true
    if isinstance(f, AAtom):
        return f.formula in a_true
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not evaluate_gk(f.operand, k_true, a_true)
    if isinstance(f, And):
        return evaluate_gk(f.left, k_true, a_true) and evaluate_gk(f.right, k_true, a_true)
    if isinstance(f, Or):
        return evaluate_gk(f.left, k_true, a_true) or evaluate_gk(f.right, k_true, a_true)
    raise TypeError(f"not a pure GK formula: {f!r}")


def _text(f):
    return str(f)


@dataclass(frozen=True)
class GKModelDescriptor:
    """K(M) = A(M) = Th(k_true), together with the true A-atoms."""

    k_true: frozenset = field(default_factory=frozenset)
    a_true: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "k_true", frozenset(self.k_true))
        object.__setattr__(self, "a_true", frozenset(self.a_true))

    def sort_key(self):
        return (sorted(map(_text, self.k_true)), sorted(map(_text, self.a_true)))

    def knowledge(self):
        return sorted(self.k_true, key=_text)


def sorted_descriptors(descriptors):
    return sorted(set(descriptors), key=GKModelDescriptor.sort_key)


def descriptor_closure_violations(theory: GKTheory, d: GKModelDescriptor, cap=None):
    """Reasons why ``d`` breaks the descriptor invariants (empty if none)."""
    universe = theory.base_atoms
    _check_cap(len(universe), cap)
    known = truth_mask(conj(d.k_true, balanced=True), universe)
    problems = []
    if known == 0:
        problems.append("known formulas are inconsistent")
    for phi in theory.atom_k:
        entailed = known & ~truth_mask(phi, universe) == 0
        if entailed != (phi in d.k_true):
            problems.append(f"K-atom {phi} closure mismatch")
    for psi in theory.atom_a:
        entailed = known & ~truth_mask(psi, universe) == 0
        if entailed != (psi in d.a_true):
            problems.append(f"A-atom {psi} closure mismatch")
    return problems


ORACLE_MODAL_CAP = 12


def gk_models_oracle(theory: GKTheory, cap=None, modal_cap=ORACLE_MODAL_CAP) -> list[GKModelDescriptor]:
    """All GK models of ``theory`` by exhaustive search.

    A set ``X`` of K-atom formulas describes a GK model iff ``X`` is
    consistent and closed (``Th(X)`` contains no further K-atom formula), the
    theory holds when K-atoms in ``X`` and the A-atoms entailed by ``X`` are
    true, and no closed proper subset of ``X`` satisfies the theory under the
    same A-atoms (knowledge minimality with the assumptions held fixed).
    """
    atom_k, atom_a = theory.atom_k, theory.atom_a
    if len(atom_k) + len(atom_a) > modal_cap:
        raise EnumerationLimitError(
            f"{len(atom_k) + len(atom_a)} modal atoms exceed the oracle cap of {modal_cap}"
        )
    universe = theory.base_atoms
    _check_cap(len(universe), cap)
    full = (1 << (1 << len(universe))) - 1
    k_masks = [truth_mask(phi, universe) for phi in atom_k]
    a_masks = [truth_mask(psi, universe) for psi in atom_a]
    n = len(atom_k)

    models_of = [full] * (1 << n)
    for subset in range(1, 1 << n):
        low = subset & -subset
        models_of[subset] = models_of[subset ^ low] & k_masks[low.bit_length() - 1]

    def closed(subset):
        m = models_of[subset]
        return all(subset >> j & 1 or m & ~k_masks[j] != 0 for j in range(n))

    def holds(subset, a_true):
        k_true = {atom_k[j] for j in range(n) if subset >> j & 1}
        return all(evaluate_gk(f, k_true, a_true) for f in theory.formulas)

    closed_sets = [s for s in range(1 << n) if closed(s)]
    result = []
    for subset in closed_sets:
        m = models_of[subset]
        if m == 0:
            continue
        a_true = {psi for psi, mask in zip(atom_a, a_masks) if m & ~mask == 0}
        if not holds(subset, a_true):
            continue
        if any(sub != subset and sub & subset == sub and holds(sub, a_true) for sub in closed_sets):
            continue
        k_true = frozenset(atom_k[j] for j in range(n) if subset >> j & 1)
        result.append(GKModelDescriptor(k_true, frozenset(a_true)))
    return sorted_descriptors(result)


__all__ = [
    "KAtom",
    "AAtom",
    "GKTheory",
    "GKModelDescriptor",
    "NotPureError",
    "check_pure",
    "modal_atoms",
    "tr_p",
    "evaluate_gk",
    "gk_models_oracle",
    "descriptor_closure_violations",
    "sorted_descriptors",
]
