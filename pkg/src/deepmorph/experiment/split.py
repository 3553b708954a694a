"""Subject-disjoint Train/Test splits and frame sampling."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)


class SplitError(ValueError):
    pass


class SplitLeakageError(SplitError):
    pass


@dataclass(frozen=True)
class SplitPlan:
    seed: int
    train: tuple
    test: tuple

    def __post_init__(self):
        overlap = set(self.train) & set(self.test)
        if overlap:
            raise SplitLeakageError(f"subjects in both train and test: {sorted(overlap)}")

    def to_dict(self) -> dict:
        return {"seed": self.seed, "train": list(self.train), "test": list(self.test)}

    def check_covers(self, manifest):
        assigned = set(self.train) | set(self.test)
        ids = set(manifest.subject_ids)
        if assigned != ids:
            raise SplitError(f"split does not match manifest subjects: missing {sorted(ids - assigned)}, "
                             f"unknown {sorted(assigned - ids)}")


def _groups(manifest):
    """Subjects bundled with their declared look-alike pair."""
    seen = set()
    groups = []
    for s in sorted(manifest.subjects, key=lambda s: s.id):
        if s.id in seen:
            continue
        members = {s.id}
        if s.pair is not None:
            members.add(s.pair)
        members |= {o.id for o in manifest.subjects if o.pair == s.id}
        seen |= members
        groups.append(tuple(sorted(members)))
    return groups


def make_split(manifest, seed: int = 0, test_fraction: float = 0.5) -> SplitPlan:
    """Seeded subject-level shuffle; look-alike pairs stay on one side."""
    if not 0.0 < test_fraction < 1.0:
        raise SplitError(f"test_fraction must lie in (0, 1), got {test_fraction}")
    groups = _groups(manifest)
    if len(groups) < 2:
        raise SplitError("splitting needs at least two subject groups")
    order = np.random.default_rng(seed).permutation(len(groups))
    n_test = min(max(int(round(test_fraction * len(groups))), 1), len(groups) - 1)
    test = sorted(m for i in order[:n_test] for m in groups[i])
    train = sorted(m for i in order[n_test:] for m in groups[i])
    return SplitPlan(seed=int(seed), train=tuple(train), test=tuple(test))


def save_split(path, plan: SplitPlan):
    Path(path).write_text(json.dumps(plan.to_dict(), indent=2) + "\n")


def load_split(path) -> SplitPlan:
    doc = json.loads(Path(path).read_text())
    return SplitPlan(seed=int(doc["seed"]), train=tuple(doc["train"]), test=tuple(doc["test"]))


def sample_indices(frame_count: int, n: int = 20):
    """``n`` evenly spaced frame indices, or all frames if there are fewer."""
    if frame_count < 1:
        raise SplitError("video has no frames")
    if frame_count <= n:
        return list(range(frame_count))
    return [int(i) for i in np.floor(np.linspace(0, frame_count, n, endpoint=False))]


def sample_frames(video, n: int = 20):
    """``(index, path)`` pairs chosen by :func:`sample_indices`."""
    return [(i, video.frames[i]) for i in sample_indices(len(video.frames), n)]


def audit_fit_subjects(videos, plan: SplitPlan, what: str):
    """Refuse to fit on anything touching a Test subject."""
    test = set(plan.test)
    leaked = sorted({v.id for v in videos if v.subject in test or (v.target is not None and v.target in test)})
    if leaked:
        raise SplitLeakageError(f"{what}: test-subject videos in fit data: {leaked}")
    log.info("%s: fit on %d videos from %d train subjects, no test subjects",
             what, len(videos), len({v.subject for v in videos}))
