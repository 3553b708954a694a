from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

DETECTORS = ("pixels-pca-lda", "iqm-pca-lda", "iqm-svm")
DETECTOR_LABELS = {"pixels-pca-lda": "Pixels+PCA+LDA", "iqm-pca-lda": "IQM+PCA+LDA", "iqm-svm": "IQM+SVM"}
DEFAULT_RETAINED = {"pixels-pca-lda": 0.99, "iqm-pca-lda": 0.95, "iqm-svm": None}
TRAINING_MODES = ("per-quality", "pooled")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    detector: str = "iqm-svm"
    retained: float | None = None  # None picks the detector's default
    svm_c: float = 1.0
    frames: int = 20
    reference_sigma: float = 0.5
    reference_ksize: int = 3
    pixel_mode: str = "gray"
    quality: str | None = None  # LQ, HQ or None for every attack video
    training: str = "per-quality"
    test_fraction: float = 0.5
    seed: int = 0
    bins: int = 40
    impostors: str = "all"
    jobs: int = 1
    manifest: str | None = None
    split: str | None = None
    out: str | None = None

    def __post_init__(self):
        if self.detector not in DETECTORS:
            raise ConfigError(f"detector must be one of {DETECTORS}, got {self.detector!r}")
        if self.retained is not None and not 0.0 < self.retained <= 1.0:
            raise ConfigError(f"retained must lie in (0, 1], got {self.retained}")
        if not self.svm_c > 0:
            raise ConfigError(f"svm_c must be positive, got {self.svm_c}")
        if self.frames < 1:
            raise ConfigError(f"frames must be >= 1, got {self.frames}")
        if not self.reference_sigma > 0 or self.reference_ksize < 3 or self.reference_ksize % 2 == 0:
            raise ConfigError("reference blur needs sigma > 0 and an odd ksize >= 3")
        if self.pixel_mode not in ("gray", "rgb"):
            raise ConfigError(f"pixel_mode must be gray or rgb, got {self.pixel_mode!r}")
        if self.quality not in (None, "LQ", "HQ"):
            raise ConfigError(f"quality must be LQ, HQ or null, got {self.quality!r}")
        if self.training not in TRAINING_MODES:
            raise ConfigError(f"training must be one of {TRAINING_MODES}, got {self.training!r}")
        if not 0.0 < self.test_fraction < 1.0:
            raise ConfigError(f"test_fraction must lie in (0, 1), got {self.test_fraction}")
        if self.bins < 1:
            raise ConfigError(f"bins must be >= 1, got {self.bins}")
        if self.impostors not in ("all", "paired"):
            raise ConfigError(f"impostors must be all or paired, got {self.impostors!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")

    @property
    def retained_variance(self) -> float | None:
        return self.retained if self.retained is not None else DEFAULT_RETAINED[self.detector]

    @property
    def feature_kind(self) -> str:
        return "pixels" if self.detector.startswith("pixels") else "iqm"

    def override(self, **values) -> "ExperimentConfig":
        """Copy with every non-None value replaced."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path) -> ExperimentConfig:
    doc = json.loads(Path(path).read_text())
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return ExperimentConfig(**doc)
