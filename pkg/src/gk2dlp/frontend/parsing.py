"""Parsers and printers for the text formats.

Propositional grammar (shared by every format)::

    formula := disj ( '->' formula )?          # right associative
    disj    := conj ( '|' conj )*
    conj    := unary ( '&' unary )*
    unary   := '~' unary | primary
    primary := 'true' | 'false' | ATOM | M '(' formula ')' | '(' formula ')'

``M`` is a modal operator letter allowed by the caller (K and A for GK, L
for autoepistemic logic, C for UCL).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..embeddings import (
    AELSentence,
    CAtom,
    Default,
    DefaultTheory,
    LAtom,
    SimpleRule,
    UCLFormula,
)
from ..errors import ParseError, UnsupportedFragmentError
from ..gk import AAtom, GKTheory, KAtom, NotPureError, check_pure
from ..prop import BOTTOM, TOP, And, Atom, Bottom, Formula, Not, Or, Top, implies, iter_nodes, RESERVED

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<arrow>->)|(?P<op>[~&|()])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>.)"
)

MODAL_CLASSES = {"K": KAtom, "A": AAtom, "L": LAtom, "C": CAtom}


@dataclass
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(text, line, column0):
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, column0 + m.start())
        tokens.append(_Token(kind if kind != "op" else m.group(), m.group(), column0 + m.start()))
    tokens.append(_Token("end", "", column0 + len(text)))
    return tokens


class _FormulaParser:
    def __init__(self, text, modal, line, column0):
        self.tokens = _tokenize(text, line, column0)
        self.pos = 0
        self.modal = modal
        self.line = line
        self.depth = 0  # modal nesting depth

    def error(self, message, token=None):
        token = token or self.tokens[self.pos]
        return ParseError(message, self.line, token.column)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        token = self.tokens[self.pos]
        if kind is not None and token.kind != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise self.error(f"expected {expected}, found {found}", token)
        self.pos += 1
        return token

    def parse(self):
        f = self.formula()
        self.take("end")
        return f

    def formula(self):
        left = self.disjunction()
        if self.peek().kind == "arrow":
            self.take()
            return implies(left, self.formula())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek().kind == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek().kind == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.peek().kind == "~":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self):
        token = self.peek()
        if token.kind == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if token.kind != "ident":
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise self.error(f"expected a formula, found {found}")
        self.take()
        name = token.text
        if name == "true":
            return TOP
        if name == "false":
            return BOTTOM
        if name in MODAL_CLASSES:
            if name not in self.modal:
                raise self.error(f"modal operator {name} is not allowed here", token)
            if self.depth:
                raise self.error(f"nested modal operator {name}", token)
            self.take("(")
            self.depth += 1
            inner = self.formula()
            self.depth -= 1
            self.take(")")
            return MODAL_CLASSES[name](inner)
        if name in RESERVED:
            raise self.error(f"reserved word {name!r} cannot be used as an atom", token)
        return Atom(name)


def parse_formula(text, modal=(), line=None, column=1) -> Formula:
    """Parse one formula; ``modal`` lists the allowed operator letters."""
    return _FormulaParser(text, frozenset(modal), line, column).parse()


# -- printing -------------------------------------------------------------

_PREC = {Or: 1, And: 2, Not: 3}


def _prec(f):
    return _PREC.get(type(f), 4)


def format_formula(f: Formula) -> str:
    """Inverse of :func:`parse_formula` (up to whitespace)."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        return f.name
    symbol = getattr(type(f), "symbol", None)
    if symbol is not None:
        return f"{symbol}({format_formula(f.formula)})"
    if isinstance(f, Not):
        inner = format_formula(f.operand)
        return "~" + (inner if _prec(f.operand) >= 3 else f"({inner})")
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        mine = _prec(f)
        left = format_formula(f.left)
        right = format_formula(f.right)
        if _prec(f.left) < mine:
            left = f"({left})"
        if _prec(f.right) <= mine:
            right = f"({right})"
        return left + op + right
    raise TypeError(f"cannot format {f!r}")


# -- line-oriented formats -------------------------------------------------


def _lines(text):
    """Yield ``(line_number, column, content)`` skipping blanks and comments."""
    for number, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        stripped = content.strip()
        if stripped:
            yield number, len(content) - len(content.lstrip()) + 1, stripped


def parse_gk(text) -> GKTheory:
    formulas = []
    for number, column, content in _lines(text):
        f = parse_formula(content, "KA", number, column)
        try:
            check_pure(f)
        except NotPureError as exc:
            raise ParseError(str(exc), number, column) from None
        formulas.append(f)
    return GKTheory(formulas)


def format_gk(theory: GKTheory) -> str:
    return "".join(format_formula(f) + "\n" for f in theory.formulas)


def _sections(text, allowed):
    section = None
    for number, column, content in _lines(text):
        m = re.fullmatch(r"\[(\w+)\](.*)", content)
        if m:
            name = m.group(1)
            if name not in allowed:
                raise ParseError(f"unknown section [{name}]", number, column)
            section = name
            rest = m.group(2).strip()
            if rest:
                yield section, number, column + content.index(rest), rest, True
            continue
        if section is None:
            raise ParseError(f"content before any section header (expected one of {sorted(allowed)})", number, column)
        yield section, number, column, content, False


def parse_default_theory(text) -> DefaultTheory:
    W, D = [], []
    for section, number, column, content, header_rest in _sections(text, {"W", "D"}):
        if header_rest:
            raise ParseError("unexpected text after section header", number, column)
        if section == "W":
            W.append(parse_formula(content, (), number, column))
            continue
        if ":" not in content or "/" not in content:
            raise ParseError("defaults are written 'pre : just1, just2 / cons'", number, column)
        pre_text, rest = content.split(":", 1)
        just_text, cons_text = rest.rsplit("/", 1)
        offset_just = column + len(pre_text) + 1
        offset_cons = offset_just + len(just_text) + 1
        pre = parse_formula(pre_text, (), number, column) if pre_text.strip() else TOP
        justs = []
        if just_text.strip():
            offset = offset_just
            for part in just_text.split(","):
                if not part.strip():
                    raise ParseError("empty justification", number, offset)
                justs.append(parse_formula(part, (), number, offset))
                offset += len(part) + 1
        if not cons_text.strip():
            raise ParseError("missing consequent", number, offset_cons)
        D.append(Default(pre, tuple(justs), parse_formula(cons_text, (), number, offset_cons)))
    return DefaultTheory(W, D)


def format_default_theory(dt: DefaultTheory) -> str:
    out = ["[W]"]
    out += [format_formula(f) for f in dt.W]
    out.append("[D]")
    for d in dt.D:
        pre = "" if d.prerequisite == TOP else format_formula(d.prerequisite)
        justs = ", ".join(format_formula(j) for j in d.justifications)
        out.append(f"{pre} : {justs} / {format_formula(d.consequent)}".strip())
    return "\n".join(out) + "\n"


def _disjuncts(f):
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def _has(f, cls):
    return any(isinstance(node, cls) for node in iter_nodes(f))


def parse_ael(text) -> list[AELSentence]:
    sentences = []
    for _, number, column, content, header_rest in _sections(text, {"AEL"}):
        if header_rest:
            raise ParseError("unexpected text after section header", number, column)
        f = parse_formula(content, "L", number, column)
        neg, pos, objective = None, [], []
        for part in _disjuncts(f):
            if isinstance(part, Not) and isinstance(part.operand, LAtom):
                if neg is not None:
                    raise ParseError("at most one ~L(...) disjunct per sentence", number, column)
                neg = part.operand.formula
            elif isinstance(part, LAtom):
                pos.append(part.formula)
            elif _has(part, LAtom):
                raise ParseError("sentence is not in normal form", number, column)
            else:
                objective.append(part)
        sentences.append(AELSentence(neg, tuple(pos), _rebuild_or(objective) if objective else BOTTOM))
    return sentences


def _rebuild_or(parts):
    f = parts[0]
    for p in parts[1:]:
        f = Or(f, p)
    return f


def format_ael(sentences) -> str:
    out = ["[AEL]"]
    for s in sentences:
        parts = []
        if s.neg_l is not None:
            parts.append(f"~L({format_formula(s.neg_l)})")
        parts += [f"L({format_formula(p)})" for p in s.pos_l]
        if s.objective != BOTTOM or not parts:
            objective = format_formula(s.objective)
            parts.append(f"({objective})" if isinstance(s.objective, Or) else objective)
        out.append(" | ".join(parts))
    return "\n".join(out) + "\n"


def parse_ucl(text) -> list[UCLFormula]:
    universe = None
    formulas = []
    for number, column, content in _lines(text):
        m = re.fullmatch(r"\[ATOMS\](.*)", content)
        if m:
            if universe is not None or formulas:
                raise ParseError("[ATOMS] must come first and only once", number, column)
            names = m.group(1).split()
            for name in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in RESERVED:
                    raise ParseError(f"invalid atom {name!r}", number, column)
            universe = tuple(names)
            continue
        formulas.append((number, column, parse_formula(content, "C", number, column)))
    out = []
    for number, column, f in formulas:
        try:
            out.append(UCLFormula(f, universe or ()))
        except ValueError as exc:
            raise ParseError(str(exc), number, column) from None
    if universe is None:
        # default universe: every atom occurring anywhere in the file
        seen = {}
        for u in out:
            for p in u.universe:
                seen.setdefault(p, None)
        out = [UCLFormula(u.formula, tuple(seen)) for u in out]
    return out


def format_ucl(formulas) -> str:
    universe = {}
    for u in formulas:
        for p in u.universe:
            universe.setdefault(p, None)
    out = ["[ATOMS] " + " ".join(universe)]
    out += [format_formula(u.formula) for u in formulas]
    return "\n".join(out) + "\n"


# -- logic programs ---------------------------------------------------------

_LP_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<comment>%[^\n]*)|(?P<if>:-)|(?P<sym>[.,|;])|(?P<neg>-)"
    r"|(?P<const>#true|#false)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>.)"
)


def _lp_tokens(text):
    line, line_start = 1, 0
    for m in _LP_TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind in ("ws", "comment"):
            newlines = m.group().count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + m.group().rfind("\n") + 1
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, col)
        yield kind, m.group(), line, col
    yield "end", "", line, len(text) - line_start + 1


_HASH_COMMENT = re.compile(r"#(?!true\b|false\b).*$", re.M)


def _strip_hash_comments(text):
    return _HASH_COMMENT.sub("", text)


def parse_lp_rules(text):
    """Parse disjunctive rules into ``(head, pos, neg, negneg)`` literal tuples.

    Literals are strings; classical negation is written ``-p``.
    """
    tokens = list(_lp_tokens(_strip_hash_comments(text)))
    i = 0
    rules = []

    def peek():
        return tokens[i]

    def error(message, tok=None):
        tok = tok or tokens[i]
        return ParseError(message, tok[2], tok[3])

    def literal():
        nonlocal i
        neg = False
        if peek()[0] == "neg":
            neg = True
            i += 1
        kind, text_, _, _ = peek()
        if kind != "ident" or text_ in RESERVED:
            raise error(f"expected an atom, found {text_!r}" if text_ else "expected an atom")
        i += 1
        return ("-" if neg else "") + text_

    while peek()[0] != "end":
        head, pos, neg, negneg = [], [], [], []
        if peek()[0] != "if":
            if peek()[0] == "const" and peek()[1] == "#false":
                i += 1
            else:
                head.append(literal())
                while peek()[1] in ("|", ";"):
                    i += 1
                    head.append(literal())
        if peek()[0] == "if":
            i += 1
            while True:
                kind, text_, _, _ = peek()
                if kind == "const":
                    i += 1
                    if text_ == "#false":
                        pos.append(None)
                elif kind == "ident" and text_ == "not":
                    i += 1
                    if peek()[0] == "ident" and peek()[1] == "not":
                        i += 1
                        negneg.append(literal())
                    else:
                        neg.append(literal())
                else:
                    pos.append(literal())
                if peek()[1] == ",":
                    i += 1
                    continue
                break
        if peek()[1] != ".":
            raise error(f"expected '.', found {peek()[1]!r}" if peek()[1] else "expected '.'")
        i += 1
        rules.append((tuple(head), tuple(pos), tuple(neg), tuple(negneg)))
    return rules


def parse_lp(text):
    """Parse a disjunctive program into a :class:`gk2dlp.dlp.Program`."""
    from ..dlp import BOT, Program, make_rule

    rules = []
    for head, pos, neg, negneg in parse_lp_rules(text):
        if None in pos:
            rules.append(make_rule(head, [], [], [], body=BOT))
        else:
            rules.append(make_rule(head, pos, neg, negneg))
    return Program(rules)


def parse_simple_lp(text) -> list[SimpleRule]:
    out = []
    for head, pos, neg, negneg in parse_lp_rules(text):
        if negneg or None in pos:
            raise UnsupportedFragmentError("only 'not' over atoms is supported in simple programs")
        for lit in (*head, *pos, *neg):
            if lit.startswith("-"):
                raise UnsupportedFragmentError(f"classical negation ({lit}) is not supported in simple programs")
        out.append(SimpleRule(head, pos, neg))
    return out


def format_simple_lp(rules) -> str:
    lines = []
    for r in rules:
        head = " | ".join(r.head)
        body = ", ".join(list(r.positive) + [f"not {p}" for p in r.negative])
        if body:
            lines.append(f"{head} :- {body}." if head else f":- {body}.")
        else:
            lines.append(f"{head}." if head else ":- #true.")
    return "\n".join(lines) + ("\n" if lines else "")


LANGUAGES = ("gk", "dl", "dl-weak", "ael", "ael-strong", "ucl", "lp")


def parse(source, text):
    """Parse ``text`` written in the format of language tag ``source``."""
    if source == "gk":
        return parse_gk(text)
    if source in ("dl", "dl-weak"):
        return parse_default_theory(text)
    if source in ("ael", "ael-strong"):
        return parse_ael(text)
    if source == "ucl":
        return parse_ucl(text)
    if source == "lp":
        return parse_simple_lp(text)
    raise ValueError(f"unknown source language {source!r}")
