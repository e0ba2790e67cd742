"""ASP text emission with a sidecar name map."""

from __future__ import annotations

import re

from ..translator import TranslationOutput

_ASP_SAFE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def asp_names(out: TranslationOutput) -> dict:
    """Concrete ASP identifier for every registered atom.

    Identifiers starting with an upper-case letter or ``_`` are variables in
    ASP, so such base atoms get a ``b__`` prefix (plus underscores on a clash).
    """
    registered = out.namespace.names()
    taken = {n for n in registered if _ASP_SAFE.match(n)}
    table = {}
    for name in registered:
        if _ASP_SAFE.match(name):
            table[name] = name
            continue
        candidate = "b__" + name
        while candidate in taken:
            candidate += "_"
        taken.add(candidate)
        table[name] = candidate
    return table


def _literal(lit, names):
    return "-" + names[lit[1:]] if lit.startswith("-") else names[lit]


def format_rule(rule, names=None) -> str:
    """``h1 | h2 :- b1, not b2, not not b3.`` for a flat rule."""
    names = names or _Identity()
    head = " | ".join(_literal(l, names) for l in rule.head)
    body = [_literal(l, names) for l in rule.pos]
    body += ["not " + _literal(l, names) for l in rule.neg]
    body += ["not not " + _literal(l, names) for l in rule.negneg]
    if not body:
        return f"{head}." if head else ":- #true."
    return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."


class _Identity(dict):
    def __missing__(self, key):
        return key


def emit_asp(out: TranslationOutput, project=False) -> tuple[str, str]:
    """Program text and map text for a translation.

    With ``project``, ``#show``/``#project`` directives for the ``k``, ``a``
    and control atoms are appended so an external solver run with
    projection reports each GK model once.
    """
    names = asp_names(out)
    lines = [format_rule(r, names) for r in out.disjunctive_rules()]
    if project:
        shown = out.projection() + [out.namespace.name("control", c) for c in ("u", "v")]
        lines += [f"#show {names[n]}/0." for n in shown]
        lines += [f"#project {names[n]}/0." for n in out.projection()]
    program = "".join(line + "\n" for line in lines)
    mapping = "".join(f"{names[n]}\t{kind}\t{desc}\n" for n, kind, desc in out.namespace.items())
    return program, mapping


def parse_map(text) -> dict:
    """``{asp name: (kind, description)}`` from map text."""
    table = {}
    for line in text.splitlines():
        if line:
            name, kind, desc = line.split("\t", 2)
            table[name] = (kind, desc)
    return table
