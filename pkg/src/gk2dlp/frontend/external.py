"""Run an external answer-set solver as a child process and parse its output.

Two output styles are understood: the clasp/clingo style, where each
``Answer: N`` line is followed by a witness line, and a plain style with one
answer set per line.  Literals are space separated; ``-p`` is classical
negation.
"""

from __future__ import annotations

import re
import shlex
import subprocess

from ..errors import AdapterError, SolverError

# clingo: 10 satisfiable, 20 unsatisfiable, 30 satisfiable and exhausted
OK_EXIT_CODES = {0, 10, 20, 30}
_LITERAL = re.compile(r"-?[A-Za-z_][A-Za-z0-9_']*\Z")
_STATUS = re.compile(
    r"(SATISFIABLE|UNSATISFIABLE|UNKNOWN|OPTIMUM FOUND|Models|Calls|Time|CPU Time|Reading|Solving"
    r"|clingo version|pyclingo version|clasp version|Optimization|Stopped|INTERRUPTED)\b"
)
_ANSWER = re.compile(r"Answer:\s*\d+")


def _literals(line):
    tokens = line.split()
    for tok in tokens:
        if not _LITERAL.match(tok):
            raise AdapterError(f"cannot parse solver output token {tok!r}")
    return frozenset(tokens)


def parse_output(text) -> list[frozenset]:
    """Answer sets printed by a solver, deduplicated, in output order."""
    lines = text.splitlines()
    found = {}
    if any(_ANSWER.match(line) for line in lines):
        for i, line in enumerate(lines):
            if _ANSWER.match(line):
                witness = lines[i + 1] if i + 1 < len(lines) else ""
                found.setdefault(_literals(witness), None)
        return list(found)
    for line in lines:
        stripped = line.strip()
        if not stripped or _STATUS.match(stripped) or stripped.startswith(("%", "c ")):
            continue
        found.setdefault(_literals(stripped), None)
    return list(found)


def run_external(program_text, command, timeout=None) -> list[frozenset]:
    """Feed ``program_text`` to ``command`` on standard input; parse answer sets."""
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    if not argv:
        raise SolverError("empty solver command")
    try:
        proc = subprocess.run(
            argv, input=program_text, capture_output=True, text=True, timeout=timeout, check=False
        )
    except FileNotFoundError:
        raise SolverError(f"solver command not found: {argv[0]}") from None
    except subprocess.TimeoutExpired:
        raise SolverError(f"solver timed out after {timeout} s") from None
    if proc.returncode not in OK_EXIT_CODES:
        detail = proc.stderr.strip().splitlines()[-1:] or [""]
        raise SolverError(f"solver exited with code {proc.returncode}: {detail[0]}")
    return parse_output(proc.stdout)
