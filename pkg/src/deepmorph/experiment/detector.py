"""Deep-morph detectors: per-frame features, fitting on Train, video scoring on Test."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import learn, netpbm
from ..iqm import MEASURES, ReferenceParams, extract_iqm, pixel_features
from ..iqm.io import FeatureTable
from ..learn import io as model_io
from ..metrics import EvalSummary, ScoreSet, evaluate
from ..scorefile import ScoreRecord
from .config import DETECTOR_LABELS, ExperimentConfig
from .split import SplitPlan, audit_fit_subjects, sample_frames

log = logging.getLogger(__name__)

GENUINE_LABEL = "original"


def _frame_feature(task):
    path, bbox, kind, sigma, ksize, pixel_mode = task
    img = netpbm.read_image(path)
    if kind == "iqm":
        return extract_iqm(img, bbox, ReferenceParams(sigma, ksize)).values
    return pixel_features(img, bbox, pixel_mode)


def extract_features(videos, config: ExperimentConfig, kind: str | None = None) -> FeatureTable:
    """Features of the sampled frames of each video, rows sorted by frame id."""
    kind = kind or config.feature_kind
    tasks, ids = [], []
    for v in videos:
        for i, path in sample_frames(v, config.frames):
            ids.append(v.frame_id(i))
            tasks.append((str(path), v.bbox(i), kind, config.reference_sigma, config.reference_ksize, config.pixel_mode))
    order = sorted(range(len(ids)), key=ids.__getitem__)
    tasks = [tasks[i] for i in order]
    ids = [ids[i] for i in order]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_frame_feature, tasks, chunksize=32))
    else:
        rows = [_frame_feature(t) for t in tasks]
    if len({r.shape for r in rows}) > 1:
        raise ValueError("frames yield features of different sizes; crops must share one size")
    width = rows[0].shape[0] if rows else 0
    columns = MEASURES if kind == "iqm" else tuple(f"px_{j}" for j in range(width))
    return FeatureTable(columns, ids, np.array(rows).reshape(len(rows), width))


@dataclass(frozen=True)
class Detector:
    kind: str
    models: tuple

    def score(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        for m in self.models[:-1]:
            X = m.project(X) if isinstance(m, learn.PcaModel) else m.transform(X)
        return self.models[-1].score(X)

    def save(self, path):
        model_io.save_models(path, list(self.models), self.kind)

    @classmethod
    def load(cls, path) -> "Detector":
        kind, models = model_io.load_models(path)
        return cls(kind=kind, models=tuple(models))


def fit_detector(config: ExperimentConfig, X_pos, X_neg) -> Detector:
    """Genuine frames are the positive class, deep-morph frames the negative."""
    X_pos = np.asarray(X_pos, dtype=np.float64)
    X_neg = np.asarray(X_neg, dtype=np.float64)
    if config.detector == "iqm-svm":
        std = learn.fit_standardizer(np.vstack([X_pos, X_neg]))
        X = std.transform(np.vstack([X_pos, X_neg]))
        y = np.concatenate([np.ones(len(X_pos)), -np.ones(len(X_neg))])
        svm = learn.fit_linear_svm(X, y, C=config.svm_c, seed=config.seed)
        log.info("svm fit: %d epochs, duality gap %.3g", svm.epochs, svm.duality_gap)
        return Detector(config.detector, (std, svm))
    pca = learn.fit_pca(np.vstack([X_pos, X_neg]), config.retained_variance)
    log.info("pca: kept %d of %d dimensions", pca.k, X_pos.shape[1])
    lda = learn.fit_lda(pca.project(X_pos), pca.project(X_neg))
    return Detector(config.detector, (pca, lda))


def attack_qualities(config: ExperimentConfig, train: bool):
    if config.quality is None or (train and config.training == "pooled"):
        return ("LQ", "HQ")
    return (config.quality,)


def training_videos(manifest, split: SplitPlan, config: ExperimentConfig):
    train = set(split.train)
    originals = manifest.videos(role=("enroll", "probe"), subjects=train)
    attacks = manifest.videos(role="attack", quality=attack_qualities(config, True), subjects=train)
    kept = [v for v in attacks if v.target in train]
    if len(kept) < len(attacks):
        log.warning("dropped %d training attack videos whose target is a test subject", len(attacks) - len(kept))
    return originals, kept


def test_videos(manifest, split: SplitPlan, config: ExperimentConfig):
    test = set(split.test)
    originals = manifest.videos(role=("enroll", "probe"), subjects=test)
    attacks = manifest.videos(role="attack", quality=attack_qualities(config, False), subjects=test)
    return originals, attacks


def _features_for(videos, table: FeatureTable | None, config: ExperimentConfig) -> FeatureTable:
    if table is None:
        return extract_features(videos, config)
    ids = sorted(v.frame_id(i) for v in videos for i, _ in sample_frames(v, config.frames))
    return FeatureTable(table.columns, ids, table.rows_for(ids))


def train_detector(config: ExperimentConfig, manifest, split: SplitPlan, features: FeatureTable | None = None) -> Detector:
    split.check_covers(manifest)
    originals, attacks = training_videos(manifest, split, config)
    if not originals or not attacks:
        raise ValueError("training needs both original and deep-morph videos from train subjects")
    audit_fit_subjects(originals + attacks, split, f"train {config.detector}")
    X_pos = _features_for(originals, features, config).values
    X_neg = _features_for(attacks, features, config).values
    return fit_detector(config, X_pos, X_neg)


def score_videos(detector: Detector, videos, config: ExperimentConfig, features: FeatureTable | None = None):
    """One record per video: the mean of its sampled per-frame scores."""
    table = _features_for(videos, features, config)
    frame_scores = dict(zip(table.frame_ids, detector.score(table.values))) if table.frame_ids else {}
    records = []
    for v in videos:
        scores = [frame_scores[v.frame_id(i)] for i, _ in sample_frames(v, config.frames)]
        true_id = GENUINE_LABEL if not v.is_attack else v.quality
        records.append(ScoreRecord(GENUINE_LABEL, true_id, v.id, float(np.mean(scores))))
    records.sort()
    return records


@dataclass
class DetectorResult:
    database: str
    detector: str
    summary: EvalSummary
    records: list
    model: Detector

    def to_dict(self) -> dict:
        return {"kind": "detector", "database": self.database, "detector": self.detector,
                "summary": self.summary.to_dict()}


def database_label(config: ExperimentConfig) -> str:
    return f"{config.quality} deep morph" if config.quality else "all deep morph"


def evaluate_detector(detector: Detector, config: ExperimentConfig, manifest, split: SplitPlan,
                      features: FeatureTable | None = None) -> DetectorResult:
    """Score every Test video; originals are genuine, deep morphs impostors."""
    split.check_covers(manifest)
    originals, attacks = test_videos(manifest, split, config)
    if not originals or not attacks:
        raise ValueError("test split needs both original and deep-morph videos")
    records = score_videos(detector, originals + attacks, config, features)
    genuine = [r.score for r in records if r.genuine]
    morphs = [r.score for r in records if not r.genuine]
    summary = evaluate(ScoreSet(genuine, morphs))
    return DetectorResult(database_label(config), DETECTOR_LABELS[config.detector], summary, records, detector)


def run_detector_experiment(config: ExperimentConfig, manifest, split: SplitPlan,
                            features: FeatureTable | None = None) -> DetectorResult:
    """Fit on Train subjects, then report EER and FRR@FAR=10% on Test videos."""
    detector = train_detector(config, manifest, split, features)
    return evaluate_detector(detector, config, manifest, split, features)
