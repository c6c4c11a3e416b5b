"""
Line-oriented record of every stochastic choice an LPBSA run makes.

One record per line, whitespace separated::

    INDIV B1 4320 3120          initial individual and its genes
    SUBPOP B3 B8 B11 ...        subpopulation members by id
    PAIR B13 K1                 parent and crossover partner
    CHILD C8 1028 6189          override a crossover child's genes
    MUTBIT C1 X1 1              flipped bit (0 = most significant), '-' = none
    THRESHOLD C1 0.6            acceptance threshold for one child
    ACCEPT C1 / REJECT C7       forced acceptance verdict

Blank lines and lines starting with ``#`` are kept so that
``DecisionScript.parse(text).dumps() == text``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

__all__ = ["KINDS", "Record", "DecisionScript", "ReplayDesyncError", "ScriptCursor"]

KINDS = ("INDIV", "SUBPOP", "PAIR", "CHILD", "MUTBIT", "THRESHOLD", "ACCEPT", "REJECT")

_ARITY = {"PAIR": 2, "MUTBIT": 3, "THRESHOLD": 2, "ACCEPT": 1, "REJECT": 1}


class ReplayDesyncError(RuntimeError):
    """The engine asked for a record the script does not hold next."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Record:
    kind: str
    args: tuple
    line: int
    raw: str

    @property
    def is_data(self) -> bool:
        return self.kind in KINDS


class DecisionScript:
    """Parsed script; records keep their source line for error messages."""

    def __init__(self, records):
        self.records = list(records)

    @classmethod
    def parse(cls, text: str) -> "DecisionScript":
        records = []
        lines = text.split("\n")
        for lineno, raw in enumerate(lines, start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                records.append(Record("#", (), lineno, raw))
                continue
            kind, *args = stripped.split()
            if kind not in KINDS:
                raise ReplayDesyncError(f"unknown record kind {kind!r}", lineno)
            want = _ARITY.get(kind)
            if want is not None and len(args) != want:
                raise ReplayDesyncError(f"{kind} takes {want} fields, got {len(args)}", lineno)
            if kind in ("INDIV", "CHILD", "SUBPOP") and len(args) < 2:
                raise ReplayDesyncError(f"{kind} record is too short", lineno)
            records.append(Record(kind, tuple(args), lineno, raw))
        return cls(records)

    @classmethod
    def load(cls, path) -> "DecisionScript":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dumps(self) -> str:
        return "\n".join(r.raw for r in self.records)

    def data_records(self) -> list[Record]:
        return [r for r in self.records if r.is_data]

    def cursor(self) -> "ScriptCursor":
        return ScriptCursor(self.data_records())


class ScriptCursor:
    """Sequential reader; any out-of-order request raises ReplayDesyncError."""

    def __init__(self, records):
        self._records = records
        self._pos = 0

    def peek(self) -> Optional[Record]:
        if self._pos < len(self._records):
            return self._records[self._pos]
        return None

    def take(self, kind: str, key: Optional[str] = None) -> Record:
        rec = self.peek()
        if rec is None:
            raise ReplayDesyncError(f"script ended while expecting {kind}" + (f" {key}" if key else ""))
        if rec.kind != kind or (key is not None and rec.args[0] != key):
            expected = kind + (f" {key}" if key else "")
            raise ReplayDesyncError(f"expected {expected}, found {rec.raw.strip()!r}", rec.line)
        self._pos += 1
        return rec

    def take_optional(self, kind: str, key: Optional[str] = None) -> Optional[Record]:
        rec = self.peek()
        if rec is not None and rec.kind == kind and (key is None or rec.args[0] == key):
            self._pos += 1
            return rec
        return None

    def take_verdict(self, key: str) -> Optional[Record]:
        return self.take_optional("ACCEPT", key) or self.take_optional("REJECT", key)

    def finish(self) -> None:
        rec = self.peek()
        if rec is not None:
            raise ReplayDesyncError(f"unconsumed record {rec.raw.strip()!r}", rec.line)
