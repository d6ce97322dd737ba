"""Sequence files and the structured report document.

Sequence file format: one transition sequence per line, labels are positive
integers separated by commas and/or whitespace, ``#`` starts a comment line,
and a ``d=<int>`` line pins the dimension for the sequences that follow it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Iterable

from .core import TransitionSequence
from .errors import SequenceParseError

_HEADER = re.compile(r"^d\s*=\s*(\S*)\s*$")
_TOKEN = re.compile(r"[^,\s]+|,")


@dataclass(frozen=True)
class ParsedSequence:
    sequence: TransitionSequence
    line: int


def parse_sequences(text: str) -> list[ParsedSequence]:
    out: list[ParsedSequence] = []
    pinned: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col0 = raw.index(stripped[0]) + 1
        header = _HEADER.match(stripped)
        if header:
            value = header.group(1)
            if not value.isdigit() or int(value) < 1:
                raise SequenceParseError(f"bad dimension {value!r}", lineno, col0)
            pinned = int(value)
            continue
        labels = _parse_labels(raw, lineno)
        d = pinned if pinned is not None else max(labels)
        if max(labels) > d:
            col = raw.index(str(max(labels))) + 1
            raise SequenceParseError(f"label {max(labels)} exceeds pinned d={d}", lineno, col)
        out.append(ParsedSequence(TransitionSequence(tuple(labels), d), lineno))
    return out


def _parse_labels(raw: str, lineno: int) -> list[int]:
    labels: list[int] = []
    expect_value = True
    last_col = 1
    for m in _TOKEN.finditer(raw):
        tok, col = m.group(0), m.start() + 1
        last_col = col
        if tok == ",":
            if expect_value:
                raise SequenceParseError("empty label", lineno, col)
            expect_value = True
            continue
        if not tok.isdigit() or int(tok) < 1:
            raise SequenceParseError(f"expected a positive integer, got {tok!r}", lineno, col)
        labels.append(int(tok))
        expect_value = False
    if expect_value:
        raise SequenceParseError("trailing separator", lineno, last_col)
    return labels


def read_sequences(path: str) -> list[ParsedSequence]:
    with open(path, encoding="utf-8") as fh:
        return parse_sequences(fh.read())


def format_sequence(T: TransitionSequence | Iterable[int]) -> str:
    return ",".join(str(x) for x in T)


def format_sequences(seqs: Iterable[TransitionSequence]) -> str:
    """Canonical writer output; emits a ``d=`` line whenever d is not the largest label."""
    lines: list[str] = []
    current: int | None = None
    for T in seqs:
        # a pinned d stays in force for every later line
        if current is None and T.d == max(T.entries):
            pass
        elif current != T.d:
            lines.append(f"d={T.d}")
            current = T.d
        lines.append(format_sequence(T))
    return "".join(line + "\n" for line in lines)


_NULL_INT = {"type": ["integer", "null"]}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "params", "verdict", "witnesses", "classes", "metrics", "details"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": ["verify", "analyze", "construct", "canon", "iso", "search"]},
        "params": {
            "type": "object",
            "required": ["d", "k", "l", "r", "N"],
            "additionalProperties": False,
            "properties": {key: _NULL_INT for key in ("d", "k", "l", "r", "N")},
        },
        "verdict": {"type": "string"},
        "witnesses": {"type": "array", "items": {"type": "object"}},
        "classes": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
        "metrics": {
            "type": "object",
            "required": ["nodes", "pruned", "seconds"],
            "additionalProperties": False,
            "properties": {
                "nodes": _NULL_INT,
                "pruned": {
                    "type": ["object", "null"],
                    "additionalProperties": {"type": "integer"},
                },
                "seconds": {"type": ["number", "null"]},
            },
        },
        "details": {"type": "object"},
    },
}


def report_document(
    command: str,
    verdict: str,
    *,
    d: int | None = None,
    k: int | None = None,
    l: int | None = None,
    r: int | None = None,
    N: int | None = None,
    witnesses: list[dict] | None = None,
    classes: Iterable[Iterable[int]] = (),
    nodes: int | None = None,
    pruned: dict[str, int] | None = None,
    seconds: float | None = None,
    details: dict | None = None,
) -> dict[str, Any]:
    return {
        "command": command,
        "params": {"d": d, "k": k, "l": l, "r": r, "N": N},
        "verdict": verdict,
        "witnesses": list(witnesses or []),
        "classes": [list(c) for c in classes],
        "metrics": {"nodes": nodes, "pruned": pruned, "seconds": seconds},
        "details": dict(details or {}),
    }
