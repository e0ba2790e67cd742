"""Registry of the fresh atoms introduced by the translation.

Every generated atom is keyed by ``(kind, key)``.  Names are derived
deterministically from first-occurrence indices and never collide with a
base atom or with each other; on a clash the candidate name is extended
with underscores until it is free.
"""

from __future__ import annotations

from .errors import NamespaceError
from .prop import Formula, substitute

KINDS = (
    "base",
    "kAtom",
    "aAtom",
    "kCopy",
    "aCopy",
    "kWitnessCopy",
    "aWitnessCopy",
    "star",
    "hat",
    "control",
    "cAtom",
    "cnfDef",
)

# Renaming tags usable with :func:`rename`; witness tags carry the index of
# the modal atom they witness, e.g. ("kw", 2).
SIMPLE_TAGS = {"k": "kCopy", "a": "aCopy", "star": "star", "hat": "hat"}
WITNESS_TAGS = {"kw": "kWitnessCopy", "aw": "aWitnessCopy"}


class TranslationNamespace:
    def __init__(self, base_atoms=()):
        self._names = {}  # (kind, key) -> name
        self._keys = {}  # name -> (kind, key)
        self._descriptions = {}  # name -> human readable text
        self._defs = 0
        for p in base_atoms:
            self.base(p)

    # -- registration ------------------------------------------------------

    def _claim(self, kind, key, candidate, description):
        if (kind, key) in self._names:
            return self._names[kind, key]
        name = candidate
        while name in self._keys:
            name += "_"
        self._names[kind, key] = name
        self._keys[name] = (kind, key)
        self._descriptions[name] = description
        return name

    def base(self, p):
        existing = self._keys.get(p)
        if existing is not None and existing[0] != "base":
            raise NamespaceError(f"base atom {p!r} registered after a generated atom of that name")
        return self._claim("base", p, p, p)

    def k_atom(self, index, formula):
        return self._claim("kAtom", index, f"k__{index}", str(formula))

    def a_atom(self, index, formula):
        return self._claim("aAtom", index, f"a__{index}", str(formula))

    def k_copy(self, p):
        return self._claim("kCopy", p, f"gk__{p}", p)

    def a_copy(self, p):
        return self._claim("aCopy", p, f"ga__{p}", p)

    def k_witness(self, p, index):
        return self._claim("kWitnessCopy", (p, index), f"w_k{index}__{p}", f"{p} @ k{index}")

    def a_witness(self, p, index):
        return self._claim("aWitnessCopy", (p, index), f"w_a{index}__{p}", f"{p} @ a{index}")

    def star(self, name):
        if name not in self._keys:
            raise NamespaceError(f"cannot star unregistered atom {name!r}")
        if self._keys[name][0] == "star":
            raise NamespaceError(f"atom {name!r} is already starred")
        return self._claim("star", name, f"s__{name}", name)

    def hat(self, p):
        if p not in self._keys:
            raise NamespaceError(f"cannot hat unregistered atom {p!r}")
        if self._keys[p][0] == "hat":
            raise NamespaceError(f"atom {p!r} already carries the hat tag")
        return self._claim("hat", p, f"h__{p}", p)

    def control(self, which):
        if which not in ("u", "v"):
            raise NamespaceError(f"unknown control atom {which!r}")
        return self._claim("control", which, which, which)

    def c_atom(self, index, formula):
        return self._claim("cAtom", index, f"c__{index}", str(formula))

    def cnf_def(self):
        self._defs += 1
        return self._claim("cnfDef", self._defs, f"d__{self._defs}", f"definition {self._defs}")

    # -- lookup ------------------------------------------------------------

    def name(self, kind, key):
        return self._names[kind, key]

    def key_of(self, name):
        """``(kind, key)`` for a registered name."""
        return self._keys[name]

    def kind_of(self, name):
        return self._keys[name][0]

    def description(self, name):
        return self._descriptions[name]

    def __contains__(self, name):
        return name in self._keys

    def __len__(self):
        return len(self._keys)

    def names(self, kind=None):
        return [n for n, (k, _) in self._keys.items() if kind is None or k == kind]

    def items(self):
        """``(name, kind, description)`` in registration order."""
        return [(n, k, self._descriptions[n]) for n, (k, _) in self._keys.items()]


def rename(f: Formula, tag, namespace: TranslationNamespace) -> Formula:
    """Replace every atom of ``f`` by its ``tag``-copy.

    ``tag`` is one of ``"k"``, ``"a"``, ``"star"``, ``"hat"`` or a pair
    ``("kw", i)`` / ``("aw", i)`` for witness copies of the ``i``-th K- or
    A-atom.  Copies are only taken of base atoms, except ``star`` which
    applies to any registered atom that is not starred already.
    """
    if isinstance(tag, tuple):
        label, index = tag
        if label not in WITNESS_TAGS:
            raise NamespaceError(f"unknown renaming tag {tag!r}")
        make = (lambda p: namespace.k_witness(p, index)) if label == "kw" else (
            lambda p: namespace.a_witness(p, index)
        )
        kind = WITNESS_TAGS[label]
    elif tag in SIMPLE_TAGS:
        kind = SIMPLE_TAGS[tag]
        make = {
            "k": namespace.k_copy,
            "a": namespace.a_copy,
            "star": namespace.star,
            "hat": namespace.hat,
        }[tag]
    else:
        raise NamespaceError(f"unknown renaming tag {tag!r}")

    def one(p):
        if p not in namespace:
            namespace.base(p)
        current = namespace.kind_of(p)
        if current == kind:
            raise NamespaceError(f"atom {p!r} already carries tag {kind}")
        if kind != "star" and current != "base":
            raise NamespaceError(f"tag {kind} applies to base atoms only, not {p!r} ({current})")
        return make(p)

    return substitute(f, one)

