from .config import DETECTORS, ExperimentConfig, load_config
from .detector import Detector, DetectorResult, extract_features, run_detector_experiment, train_detector
from .report import emit_report
from .split import SplitPlan, make_split, sample_frames, sample_indices
from .synth import SynthParams, generate_corpus
from .vuln import VulnResult, run_vulnerability_experiment

__all__ = [
    "DETECTORS",
    "Detector",
    "DetectorResult",
    "ExperimentConfig",
    "SplitPlan",
    "SynthParams",
    "VulnResult",
    "emit_report",
    "extract_features",
    "generate_corpus",
    "load_config",
    "make_split",
    "run_detector_experiment",
    "run_vulnerability_experiment",
    "sample_frames",
    "sample_indices",
    "train_detector",
]
