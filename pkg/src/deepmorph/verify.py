"""Face verification on precomputed embeddings.

A subject model is the mean embedding over all frames of its enrollment
videos. A probe video is represented by the mean of its frame embeddings
and scored by cosine similarity against the claimed subject's model.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .scorefile import ScoreRecord

log = logging.getLogger(__name__)

NORM_FLOOR = 1e-12

ProbeResult = ScoreRecord


class VerificationError(ValueError):
    pass


class MissingEmbeddingError(VerificationError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        lines = "\n".join(f"  {trial}: no embeddings for video {vid}" for trial, vid in self.missing)
        super().__init__(f"{len(self.missing)} trial(s) lack embeddings:\n{lines}")


@dataclass(frozen=True)
class SubjectModel:
    subject_id: str
    mean: np.ndarray
    video_ids: tuple = ()
    frame_count: int = 0


def cosine_similarity(a, b) -> float:
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise VerificationError(f"dimension mismatch {a.shape[0]} vs {b.shape[0]}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na < NORM_FLOOR or nb < NORM_FLOOR:
        raise VerificationError("cosine similarity of a zero vector")
    return float(np.clip(a @ b / (na * nb), -1.0, 1.0))


def _stack(embeddings) -> np.ndarray:
    if isinstance(embeddings, np.ndarray):
        arr = np.atleast_2d(embeddings.astype(np.float64))
    else:
        rows = [np.atleast_2d(np.asarray(e, dtype=np.float64)) for e in embeddings]
        if not rows:
            raise VerificationError("no embeddings given")
        if len({r.shape[1] for r in rows}) != 1:
            raise VerificationError("embeddings have mixed dimensions")
        arr = np.vstack(rows)
    if arr.shape[0] == 0:
        raise VerificationError("no embeddings given")
    return arr


def enroll(subject_id: str, embeddings, video_ids=()) -> SubjectModel:
    """Average a subject's enrollment embeddings into a model."""
    arr = _stack(embeddings)
    mean = arr.mean(axis=0)
    if np.linalg.norm(mean) < NORM_FLOOR:
        raise VerificationError(f"subject {subject_id}: enrollment mean has zero norm")
    return SubjectModel(subject_id=subject_id, mean=mean, video_ids=tuple(video_ids), frame_count=arr.shape[0])


def score_probe(model: SubjectModel, probe_frames) -> float:
    probe = _stack(probe_frames).mean(axis=0)
    if np.linalg.norm(probe) < NORM_FLOOR:
        raise VerificationError("probe mean embedding has zero norm")
    return cosine_similarity(model.mean, probe)


def _fetch(store, videos, trial: str, missing: list):
    out = []
    for v in videos:
        if v.id not in store:
            missing.append((trial, v.id))
        else:
            out.append(store[v.id])
    return out


def enroll_subjects(manifest, store) -> dict:
    """Model per subject that has enrollment videos."""
    models = {}
    missing = []
    for s in manifest.subjects:
        videos = [v for v in s.videos if v.role == "enroll"]
        if not videos:
            continue
        frames = _fetch(store, videos, f"enroll {s.id}", missing)
        if not missing:
            models[s.id] = enroll(s.id, frames, [v.id for v in videos])
    if missing:
        raise MissingEmbeddingError(missing)
    return models


def _claims(manifest, subject_id: str, models: dict, impostors: str):
    if impostors == "all":
        return sorted(models)
    if impostors == "paired":
        pair = manifest.subject(subject_id).pair
        return sorted(c for c in models if c == subject_id or c == pair)
    raise VerificationError(f"impostors must be 'all' or 'paired', got {impostors!r}")


def run_licit_protocol(manifest, store, impostors: str = "all", models=None):
    """Score every original probe video against own and other subject models.

    Returns score records sorted by (claimed, true, probe). Claims against
    the probe's own subject are genuine trials; all others are zero-effort
    impostor trials (restricted to the look-alike pair with
    ``impostors="paired"``).
    """
    models = enroll_subjects(manifest, store) if models is None else models
    probes = manifest.videos(role="probe")
    missing = []
    for v in probes:
        if v.id not in store:
            missing.append((f"probe {v.id}", v.id))
    if missing:
        raise MissingEmbeddingError(missing)
    records = []
    for v in probes:
        frames = store[v.id]
        for claimed in _claims(manifest, v.subject, models, impostors):
            records.append(ScoreRecord(claimed, v.subject, v.id, score_probe(models[claimed], frames)))
    records.sort()
    log.info("licit protocol: %d models, %d probes, %d trials", len(models), len(probes), len(records))
    return records


def run_tampered_protocol(manifest, store, models=None, quality=None):
    """Score each attack video against the model of the subject it claims."""
    models = enroll_subjects(manifest, store) if models is None else models
    attacks = manifest.videos(role="attack", quality=quality)
    missing = []
    for v in attacks:
        if v.target not in models:
            raise VerificationError(f"attack video {v.id} claims subject {v.target}, which has no model")
        if v.id not in store:
            missing.append((f"attack {v.id}", v.id))
    if missing:
        raise MissingEmbeddingError(missing)
    records = [
        ScoreRecord(v.target, v.subject, v.id, score_probe(models[v.target], store[v.id]), attack=True)
        for v in attacks
    ]
    records.sort()
    return records
