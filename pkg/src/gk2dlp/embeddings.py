"""Embeddings of default logic, autoepistemic logic, UCL and disjunctive
programs into pure GK, plus a direct Reiter-extension oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Sequence

from .errors import EnumerationLimitError, UnsupportedFragmentError
from .gk import AAtom, GKTheory, KAtom
from .prop import (
    BOTTOM,
    TOP,
    Atom,
    Formula,
    Not,
    Or,
    _check_cap,
    atoms,
    atoms_of_all,
    conj,
    disj,
    implies,
    is_valid_atom_name,
    map_leaves,
    truth_mask,
)


@dataclass(frozen=True)
class Default:
    prerequisite: Formula = TOP
    justifications: tuple = ()
    consequent: Formula = TOP

    def __post_init__(self):
        object.__setattr__(self, "justifications", tuple(self.justifications))


@dataclass(frozen=True)
class DefaultTheory:
    W: tuple = ()
    D: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "W", tuple(self.W))
        object.__setattr__(self, "D", tuple(self.D))

    def atoms(self):
        formulas = list(self.W)
        for d in self.D:
            formulas += [d.prerequisite, *d.justifications, d.consequent]
        return atoms_of_all(formulas)


@dataclass(frozen=True, slots=True)
class LAtom(Formula):
    """Belief operator of autoepistemic logic (only used while parsing)."""

    formula: Formula
    symbol: ClassVar[str] = "L"


@dataclass(frozen=True)
class AELSentence:
    """``~L(neg_l) | L(pos_l[0]) | ... | objective`` in normal form."""

    neg_l: Formula | None = None
    pos_l: tuple = ()
    objective: Formula = BOTTOM

    def __post_init__(self):
        object.__setattr__(self, "pos_l", tuple(self.pos_l))


@dataclass(frozen=True, slots=True)
class CAtom(Formula):
    formula: Formula
    symbol: ClassVar[str] = "C"


@dataclass(frozen=True)
class UCLFormula:
    formula: Formula
    universe: tuple = ()

    def __post_init__(self):
        universe = tuple(self.universe) or tuple(ucl_atoms(self.formula))
        missing = set(ucl_atoms(self.formula)) - set(universe)
        if missing:
            raise ValueError(f"atoms {sorted(missing)} are missing from the declared universe")
        object.__setattr__(self, "universe", universe)


def ucl_atoms(f):
    seen = {}

    def leaf(node):
        if isinstance(node, Atom):
            seen.setdefault(node.name, None)
        elif isinstance(node, CAtom):
            for p in atoms(node.formula):
                seen.setdefault(p, None)
        return node

    map_leaves(f, leaf)
    return list(seen)


@dataclass(frozen=True)
class SimpleRule:
    head: tuple = ()
    positive: tuple = ()
    negative: tuple = ()

    def __post_init__(self):
        for name in ("head", "positive", "negative"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


def _guarded(conjuncts, consequent):
    # an empty antecedent stands for true, so the implication collapses
    if not conjuncts:
        return consequent
    return implies(conj(conjuncts), consequent)


def embed_default(dt: DefaultTheory, semantics="extension") -> GKTheory:
    if semantics not in ("extension", "weak"):
        raise ValueError(f"unknown default semantics {semantics!r}")
    out = [KAtom(phi) for phi in dt.W]
    for d in dt.D:
        pre = KAtom(d.prerequisite) if semantics == "extension" else AAtom(d.prerequisite)
        body = [pre] + [Not(AAtom(Not(psi))) for psi in d.justifications]
        out.append(_guarded(body, KAtom(d.consequent)))
    return GKTheory(out)


def embed_ael(sentences: Sequence[AELSentence], semantics="expansion") -> GKTheory:
    if semantics not in ("expansion", "strong"):
        raise ValueError(f"unknown autoepistemic semantics {semantics!r}")
    out = []
    for s in sentences:
        body = []
        if s.neg_l is not None:
            body.append(AAtom(s.neg_l) if semantics == "expansion" else KAtom(s.neg_l))
        body += [Not(AAtom(psi)) for psi in s.pos_l]
        out.append(_guarded(body, KAtom(s.objective)))
    return GKTheory(out)


def embed_ucl(u: UCLFormula | Sequence[UCLFormula]) -> GKTheory:
    """C becomes K, atoms outside C get A, then ``A p | A ~p`` per atom."""
    items = [u] if isinstance(u, UCLFormula) else list(u)
    universe = {}
    out = []

    def leaf(node):
        if isinstance(node, CAtom):
            return KAtom(node.formula)
        if isinstance(node, Atom):
            return AAtom(node)
        return node

    for item in items:
        out.append(map_leaves(item.formula, leaf))
        for p in item.universe:
            universe.setdefault(p, None)
    for p in universe:
        out.append(Or(AAtom(Atom(p)), AAtom(Not(Atom(p)))))
    return GKTheory(out)


def embed_dlp(program: Sequence[SimpleRule]) -> GKTheory:
    out = []
    for rule in program:
        for name in (*rule.head, *rule.positive, *rule.negative):
            if not isinstance(name, str) or not is_valid_atom_name(name):
                raise UnsupportedFragmentError(f"{name!r} is not a plain atom")
        body = [KAtom(Atom(p)) for p in rule.positive] + [Not(AAtom(Atom(p))) for p in rule.negative]
        head = disj([KAtom(Atom(p)) for p in rule.head]) if rule.head else BOTTOM
        out.append(_guarded(body, head))
    return GKTheory(out)


def konolige(dt: DefaultTheory) -> list[AELSentence]:
    """Konolige's default-to-autoepistemic translation (test scaffolding)."""
    out = [AELSentence(objective=phi) for phi in dt.W]
    for d in dt.D:
        out.append(AELSentence(d.prerequisite, tuple(Not(psi) for psi in d.justifications), d.consequent))
    return out


# -- extension oracle -------------------------------------------------------

EXTENSION_CAP = 12


@dataclass(frozen=True)
class ExtensionDescriptor:
    """Extension ``Th(W | generators)``; generators are applied consequents."""

    generators: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "generators", frozenset(self.generators))

    def formulas(self, dt: DefaultTheory):
        return list(dt.W) + sorted(self.generators, key=str)

    def consistent(self, dt: DefaultTheory):
        return truth_mask(conj(self.formulas(dt)), dt.atoms()) != 0


class _Masks:
    """Truth-table cache over a fixed universe for fast entailment."""

    def __init__(self, universe):
        self.universe = list(universe)
        self.full = (1 << (1 << len(self.universe))) - 1
        self.cache = {}

    def __call__(self, f):
        if f not in self.cache:
            self.cache[f] = truth_mask(f, self.universe)
        return self.cache[f]

    def theory(self, formulas):
        m = self.full
        for f in formulas:
            m &= self(f)
        return m

    def entails(self, theory_mask, f):
        return theory_mask & ~self(f) == 0


def reiter_gamma(dt: DefaultTheory, e_mask, masks: _Masks):
    """Least fixpoint of the default operator for the belief set ``e_mask``.

    Returns the consequents applied, in application order.
    """
    current = masks.theory(dt.W)
    applied = []
    pending = list(dt.D)
    changed = True
    while changed:
        changed = False
        for d in list(pending):
            if not masks.entails(current, d.prerequisite):
                continue
            if any(masks.entails(e_mask, Not(psi)) for psi in d.justifications):
                continue
            pending.remove(d)
            applied.append(d.consequent)
            current &= masks(d.consequent)
            changed = True
    return current, applied


def default_extensions_oracle(dt: DefaultTheory, cap=None) -> list[ExtensionDescriptor]:
    """Extensions of ``dt`` by guessing generator sets among the consequents.

    Relies on Reiter's result that every extension is ``Th(W | C)`` for the
    consequents ``C`` of the defaults it applies.  Results are deduplicated
    up to logical equivalence and sorted.
    """
    consequents = list(dict.fromkeys(d.consequent for d in dt.D))
    if len(set(dt.W) | set(consequents)) > (EXTENSION_CAP if cap is None else cap):
        raise EnumerationLimitError("too many formulas for the extension oracle")
    universe = dt.atoms()
    _check_cap(len(universe))
    masks = _Masks(universe)
    base = masks.theory(dt.W)
    seen, tried = {}, set()
    for bits in range(1 << len(consequents)):
        chosen = [c for j, c in enumerate(consequents) if bits >> j & 1]
        e_mask = base & masks.theory(chosen)
        if e_mask in tried:
            continue
        tried.add(e_mask)
        gamma, applied = reiter_gamma(dt, e_mask, masks)
        if gamma == e_mask:
            seen[e_mask] = ExtensionDescriptor(frozenset(applied))
    return sorted(seen.values(), key=lambda e: sorted(map(str, e.generators)))


def theories_equivalent(gamma, delta, universe=None):
    """``Th(gamma) == Th(delta)``."""
    gamma, delta = list(gamma), list(delta)
    universe = universe or atoms_of_all(gamma + delta)
    masks = _Masks(universe)
    return masks.theory(gamma) == masks.theory(delta)


def theory_classes(theories, universe):
    """Distinct ``Th`` classes of the given formula collections, as masks."""
    masks = _Masks(universe)
    return {masks.theory(t) for t in theories}


__all__ = [
    "Default",
    "DefaultTheory",
    "AELSentence",
    "LAtom",
    "CAtom",
    "UCLFormula",
    "SimpleRule",
    "ExtensionDescriptor",
    "embed_default",
    "embed_ael",
    "embed_ucl",
    "embed_dlp",
    "konolige",
    "default_extensions_oracle",
    "reiter_gamma",
    "theories_equivalent",
    "theory_classes",
]
