"""Parse, embed, translate, solve and decode, plus model listings."""

from __future__ import annotations

from dataclasses import dataclass

from ..embeddings import (
    DefaultTheory,
    embed_ael,
    embed_default,
    embed_dlp,
    embed_ucl,
)
from ..prop import Not
from ..gk import GKModelDescriptor, GKTheory, gk_models_oracle, sorted_descriptors
from ..translator import TranslationOutput, decode, solve_internal, tr_lp
from .emit import asp_names, emit_asp
from .external import run_external
from .parsing import format_formula, parse

DEFAULT_EXTERNAL = "python3 -m clingo -n0 --project"


@dataclass(frozen=True)
class PipelineRequest:
    source: str
    text: str
    cnf_mode: str = "distributive"
    solver: str = "internal"  # "internal" or an external command line


@dataclass
class SolveResult:
    descriptors: list
    theory: GKTheory
    parsed: object
    source: str
    output: TranslationOutput | None = None

    def listing(self) -> str:
        return listing(self.descriptors, self.source, self.parsed)


def to_gk(source, parsed) -> GKTheory:
    """Apply the embedding selected by the language tag."""
    if source == "gk":
        return parsed
    if source == "dl":
        return embed_default(parsed, "extension")
    if source == "dl-weak":
        return embed_default(parsed, "weak")
    if source == "ael":
        return embed_ael(parsed, "expansion")
    if source == "ael-strong":
        return embed_ael(parsed, "strong")
    if source == "ucl":
        return embed_ucl(parsed)
    if source == "lp":
        return embed_dlp(parsed)
    raise ValueError(f"unknown source language {source!r}")


def load(source, text):
    parsed = parse(source, text)
    return parsed, to_gk(source, parsed)


def translate(source, text, cnf_mode="distributive") -> TranslationOutput:
    return tr_lp(load(source, text)[1], cnf_mode)


def decode_external(answer_sets, out: TranslationOutput):
    back = {asp: name for name, asp in asp_names(out).items()}

    def original(lit):
        if lit.startswith("-"):
            return "-" + back.get(lit[1:], lit[1:])
        return back.get(lit, lit)

    return [frozenset(map(original, S)) for S in answer_sets]


def solve(req: PipelineRequest) -> SolveResult:
    parsed, theory = load(req.source, req.text)
    out = tr_lp(theory, req.cnf_mode)
    if req.solver == "internal":
        sets = solve_internal(out)
    else:
        program, _ = emit_asp(out, project=True)
        sets = decode_external(run_external(program, req.solver), out)
    descriptors = sorted_descriptors(decode(S, out) for S in sets)
    return SolveResult(descriptors, theory, parsed, req.source, out)


def oracle(source, text) -> SolveResult:
    parsed, theory = load(source, text)
    return SolveResult(gk_models_oracle(theory), theory, parsed, source)


def generating_consequents(dt: DefaultTheory, d: GKModelDescriptor, weak=False):
    """Consequents of the defaults applied in the extension ``d`` stands for."""
    out = []
    for default in dt.D:
        pre = d.a_true if weak else d.k_true
        if default.prerequisite not in pre:
            continue
        if any(Not(psi) in d.a_true for psi in default.justifications):
            continue
        out.append(default.consequent)
    return list(dict.fromkeys(out))


def _braces(formulas):
    return "{" + ", ".join(sorted(format_formula(f) for f in formulas)) + "}"


def listing(descriptors, source, parsed=None) -> str:
    lines = []
    for d in descriptors:
        line = "K: " + _braces(d.k_true)
        if source in ("dl", "dl-weak") and parsed is not None:
            line += " | D: " + _braces(generating_consequents(parsed, d, source == "dl-weak"))
        lines.append(line)
    lines.append(f"{len(descriptors)} models")
    return "\n".join(lines) + "\n"
