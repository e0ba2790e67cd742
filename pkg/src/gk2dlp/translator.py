"""Compile a pure GK theory into a disjunctive logic program.

The program has fourteen rule groups.  Groups 1 and 2 guess a model of the
candidate formula (built by :func:`build_psi`); groups 3 to 11 use the
atom ``u`` to saturate over models of the starred theory and so rule out
candidates whose knowledge is not minimal; groups 12 to 14 use ``v`` to
check that every assumption follows from the knowledge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dlp
from .dlp import DisjRule
from .errors import MalformedModelError
from .gk import GKModelDescriptor, GKTheory, tr_p
from .namespace import TranslationNamespace, rename
from .prop import (
    And,
    Atom,
    Bottom,
    Formula,
    Not,
    Or,
    Top,
    atoms,
    cnf,
    conj,
    implies,
    nnf,
    substitute,
)

CNF_MODES = ("distributive", "structural")


def _conj_nontrivial(parts):
    return conj([f for f in parts if not isinstance(f, Top)])


def _namespace_for(theory, namespace):
    return TranslationNamespace(theory.base_atoms) if namespace is None else namespace


def _modal_names(theory, ns):
    k = [ns.k_atom(i, phi) for i, phi in enumerate(theory.atom_k, 1)]
    a = [ns.a_atom(i, phi) for i, phi in enumerate(theory.atom_a, 1)]
    return k, a


def build_phi(theory: GKTheory, namespace=None) -> Formula:
    """The model-candidate formula with per-K-atom and per-A-atom witnesses.

    Soundness uses one global copy of the vocabulary for knowledge and one
    for assumptions; a K-witness only has to respect the knowledge and an
    A-witness only the assumptions.
    """
    ns = _namespace_for(theory, namespace)
    k_names, a_names = _modal_names(theory, ns)
    K = list(zip(theory.atom_k, k_names))
    A = list(zip(theory.atom_a, a_names))
    snd = [implies(Atom(k), rename(phi, "k", ns)) for phi, k in K]
    snd += [implies(Atom(a), rename(phi, "a", ns)) for phi, a in A]
    wit_k = []
    for i, (psi, k) in enumerate(K, 1):
        tag = ("kw", i)
        body = [Not(rename(psi, tag, ns))] + [implies(Atom(kk), rename(phi, tag, ns)) for phi, kk in K]
        wit_k.append(implies(Not(Atom(k)), conj(body)))
    wit_a = []
    for i, (psi, a) in enumerate(A, 1):
        tag = ("aw", i)
        body = [Not(rename(psi, tag, ns))] + [implies(Atom(aa), rename(phi, tag, ns)) for phi, aa in A]
        wit_a.append(implies(Not(Atom(a)), conj(body)))
    return _conj_nontrivial([tr_p(theory, ns), conj(snd), conj(wit_k), conj(wit_a)])


def build_psi(theory: GKTheory, namespace=None) -> Formula:
    """Like :func:`build_phi` but knowledge and assumptions share one vocabulary.

    Soundness is stated over the base atoms and every witness must respect
    both the knowledge and the assumptions.
    """
    ns = _namespace_for(theory, namespace)
    k_names, a_names = _modal_names(theory, ns)
    K = list(zip(theory.atom_k, k_names))
    A = list(zip(theory.atom_a, a_names))
    snd = [implies(Atom(k), phi) for phi, k in K] + [implies(Atom(a), phi) for phi, a in A]

    def witness(psi, tag):
        parts = [Not(rename(psi, tag, ns))]
        parts += [implies(Atom(k), rename(phi, tag, ns)) for phi, k in K]
        parts += [implies(Atom(a), rename(phi, tag, ns)) for phi, a in A]
        return conj(parts)

    wit_k = [implies(Not(Atom(k)), witness(psi, ("kw", i))) for i, (psi, k) in enumerate(K, 1)]
    wit_a = [implies(Not(Atom(a)), witness(psi, ("aw", i))) for i, (psi, a) in enumerate(A, 1)]
    return _conj_nontrivial([tr_p(theory, ns), conj(snd), conj(wit_k), conj(wit_a)])


def build_tstar(theory: GKTheory, namespace=None) -> Formula:
    """:func:`build_phi` with every atom except the ``a`` atoms starred."""
    ns = _namespace_for(theory, namespace)
    phi = build_phi(theory, ns)
    keep = set(ns.names("aAtom"))
    return substitute(phi, lambda name: name if name in keep else ns.star(name))


def to_nested(f: Formula) -> dlp.Expr:
    """Nested expression of an NNF formula: ``,`` for and, ``;`` for or."""
    if isinstance(f, Atom):
        return dlp.Lit(f.name)
    if isinstance(f, Not):
        return dlp.Lit("-" + f.operand.name)
    if isinstance(f, Top):
        return dlp.TOP
    if isinstance(f, Bottom):
        return dlp.BOT
    if isinstance(f, And):
        return dlp.Conj(to_nested(f.left), to_nested(f.right))
    if isinstance(f, Or):
        return dlp.Disj(to_nested(f.left), to_nested(f.right))
    raise TypeError(f"unexpected node {f!r}")


def tr_ne(theory: GKTheory, namespace=None) -> dlp.Expr:
    """Nested expression of the candidate formula (negation as ``-p``)."""
    return to_nested(nnf(build_psi(theory, namespace)))


@dataclass
class TranslationOutput:
    program: dlp.Program
    namespace: TranslationNamespace
    k_index: list  # [(formula, atom name)] in AtomK order
    a_index: list
    groups: dict = field(default_factory=dict)  # group number -> list of DisjRule
    nested_constraint: bool = False

    def disjunctive_rules(self) -> list[DisjRule]:
        """Flat rules in emission order (group 1 normalized if nested)."""
        if self.nested_constraint:
            return dlp.disjunctive_rules(self.program)
        return [r for g in sorted(self.groups) for r in self.groups[g]]

    def projection(self):
        """Atoms that determine a GK model: the ``k`` and ``a`` atoms."""
        return [name for _, name in self.k_index] + [name for _, name in self.a_index]

    def rule_count(self):
        return sum(len(rules) for rules in self.groups.values())


def _sorted(names):
    return tuple(sorted(names))


def tr_lp(theory: GKTheory, cnf_mode="distributive", nested_constraint=False) -> TranslationOutput:
    """Build the disjunctive program whose answer sets encode the GK models.

    ``cnf_mode`` selects the clausal form used for the candidate constraints
    and for the two saturation blocks.  With ``nested_constraint`` the first
    group is kept as the single rule ``<- not E`` over the nested expression
    ``E`` instead of one constraint per clause.
    """
    if cnf_mode not in CNF_MODES:
        raise ValueError(f"unknown CNF mode {cnf_mode!r}")
    ns = TranslationNamespace(theory.base_atoms)
    k_names, a_names = _modal_names(theory, ns)
    u, v = ns.control("u"), ns.control("v")

    def clauses(f):
        defs = []

        def fresh():
            defs.append(ns.cnf_def())
            return defs[-1]

        return cnf(f, cnf_mode, fresh), defs

    groups = {g: [] for g in range(1, 15)}

    # candidate guess
    psi = build_psi(theory, ns)
    nested, psi_defs = None, []
    if nested_constraint:
        nested = dlp.Rule(dlp.BOT, dlp.Naf(to_nested(nnf(psi))))
        groups[1] = dlp.normalize_rule(nested)
    else:
        psi_clauses, psi_defs = clauses(psi)
        for c in psi_clauses:
            groups[1].append(DisjRule((), (), _sorted(c.head) + _sorted("-" + b for b in c.body)))
    guessed = atoms(psi) + psi_defs
    groups[2] = [DisjRule((p, "-" + p)) for p in guessed]

    # knowledge minimality by saturation on u
    tstar = build_tstar(theory, ns)
    star_clauses, star_defs = clauses(tstar)
    for c in star_clauses:
        groups[3].append(DisjRule((u, *_sorted(c.head)), _sorted(c.body)))
    c_names = [ns.c_atom(i, phi) for i, phi in enumerate(theory.atom_k, 1)]
    groups[4] = [DisjRule((u, *c_names))]
    k_star = [ns.star(k) for k in k_names]
    for k, ks, c in zip(k_names, k_star, c_names):
        groups[5].append(DisjRule((u,), (c,), (k,)))
        groups[6].append(DisjRule((u,), (ks,), (k,)))
        groups[7].append(DisjRule((u,), (c, ks), ("-" + k,)))
        groups[8].append(DisjRule((u, c, ks), (), ("-" + k,)))
    a_set = set(a_names)
    starred = [p for p in atoms(tstar) if p not in a_set] + star_defs
    groups[9] = [DisjRule((p,), (u,)) for p in starred]
    groups[10] = [DisjRule((c,), (u,)) for c in c_names]
    groups[11] = [DisjRule((), (), (u,))]

    # assumptions entailed by knowledge, saturation on v
    known = [implies(Atom(k), rename(phi, "hat", ns)) for phi, k in zip(theory.atom_k, k_names)]
    assumed = [implies(Atom(a), rename(phi, "hat", ns)) for phi, a in zip(theory.atom_a, a_names)]
    check = And(conj(known), Not(conj(assumed)))
    check_clauses, check_defs = clauses(check)
    for c in check_clauses:
        groups[12].append(DisjRule((v, *_sorted(c.head)), _sorted(c.body)))
    modal = set(k_names) | a_set
    hats = [p for p in atoms(check) if p not in modal] + check_defs
    groups[13] = [DisjRule((p,), (v,)) for p in hats]
    groups[14] = [DisjRule((), (), (v,))]

    rules = [nested] if nested_constraint else []
    for g in range(1 if not nested_constraint else 2, 15):
        rules += [r.to_rule() for r in groups[g]]
    return TranslationOutput(
        program=dlp.Program(rules, frozenset(ns.names())),
        namespace=ns,
        k_index=list(zip(theory.atom_k, k_names)),
        a_index=list(zip(theory.atom_a, a_names)),
        groups=groups,
        nested_constraint=nested_constraint,
    )


def decode(answer_set, out: TranslationOutput) -> GKModelDescriptor:
    S = frozenset(answer_set)
    for control in ("u", "v"):
        if out.namespace.name("control", control) not in S:
            raise MalformedModelError(f"answer set lacks the saturation atom {control!r}")
    return GKModelDescriptor(
        frozenset(phi for phi, name in out.k_index if name in S),
        frozenset(psi for psi, name in out.a_index if name in S),
    )


def solve_internal(out: TranslationOutput, project=True):
    """Answer sets of ``out.program``, one per ``k``/``a`` assignment by default."""
    from .search import stable_models

    return stable_models(out.disjunctive_rules(), out.projection() if project else None)


def gk_models(theory: GKTheory, cnf_mode="distributive"):
    """GK models of ``theory`` computed through the translation."""
    from .gk import sorted_descriptors

    out = tr_lp(theory, cnf_mode)
    return sorted_descriptors(decode(S, out) for S in solve_internal(out))


__all__ = [
    "build_phi",
    "build_psi",
    "build_tstar",
    "tr_ne",
    "to_nested",
    "tr_lp",
    "decode",
    "TranslationOutput",
    "solve_internal",
    "gk_models",
    "CNF_MODES",
]
