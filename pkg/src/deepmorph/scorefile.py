"""Whitespace-separated score files, one trial per line.

Licit trials have four columns::

    <claimed-id> <true-id> <probe-id> <score>

and are genuine iff claimed-id == true-id. Attack trials append a literal
fifth column ``attack``::

    <claimed-id> <true-id> <probe-id> <score> attack

Scores are written with ``repr`` so files round-trip exactly. Blank lines
and lines starting with ``#`` are ignored on read.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .metrics import ScoreSet

ATTACK_MARKER = "attack"


class ScoreFileError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ScoreRecord:
    claimed_id: str
    true_id: str
    probe_id: str
    score: float
    attack: bool = False

    @property
    def genuine(self) -> bool:
        return not self.attack and self.claimed_id == self.true_id

    def line(self) -> str:
        ids = (self.claimed_id, self.true_id, self.probe_id)
        for v in ids:
            if not v or any(c.isspace() for c in v) or v.startswith("#"):
                raise ScoreFileError(f"id {v!r} cannot be written to a score file")
        fields = [*ids, repr(float(self.score))]
        if self.attack:
            fields.append(ATTACK_MARKER)
        return " ".join(fields)


def format_scores(records) -> str:
    return "".join(r.line() + "\n" for r in records)


def parse_scores(text: str, source: str = "<string>"):
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        attack = False
        if len(fields) == 5:
            if fields[4] != ATTACK_MARKER:
                raise ScoreFileError(f"{source}:{lineno}: fifth column must be {ATTACK_MARKER!r}")
            attack = True
        elif len(fields) != 4:
            raise ScoreFileError(f"{source}:{lineno}: expected 4 or 5 columns, got {len(fields)}")
        try:
            score = float(fields[3])
        except ValueError:
            raise ScoreFileError(f"{source}:{lineno}: bad score {fields[3]!r}") from None
        if not np.isfinite(score):
            raise ScoreFileError(f"{source}:{lineno}: non-finite score")
        records.append(ScoreRecord(fields[0], fields[1], fields[2], score, attack))
    return records


def write_scores(path, records):
    Path(path).write_text(format_scores(records))


def read_scores(path):
    path = Path(path)
    return parse_scores(path.read_text(), str(path))


def split_records(records):
    """Return ``(genuine, zero_effort_impostor, attack)`` score arrays."""
    genuine = [r.score for r in records if r.genuine]
    impostor = [r.score for r in records if not r.attack and not r.genuine]
    attack = [r.score for r in records if r.attack]
    return np.array(genuine), np.array(impostor), np.array(attack)


def to_scoreset(records) -> ScoreSet:
    genuine, impostor, _ = split_records(records)
    return ScoreSet(genuine, impostor)
