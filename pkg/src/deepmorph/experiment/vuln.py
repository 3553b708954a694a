"""Vulnerability of embedding-based verification to deep-morph probes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..metrics import EvalSummary, ScoreSet, evaluate, histogram
from ..scorefile import split_records
from ..verify import enroll_subjects, run_licit_protocol, run_tampered_protocol


@dataclass
class VulnResult:
    database: str
    summary: EvalSummary
    licit: list
    attack: list
    bins: int
    histograms: dict

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.bins + 1)

    def to_dict(self) -> dict:
        return {
            "kind": "vulnerability",
            "database": self.database,
            "summary": self.summary.to_dict(),
            "bins": self.bins,
            "histograms": {k: v.tolist() for k, v in self.histograms.items()},
        }


def run_vulnerability_experiment(manifest, store, bins: int = 40, quality=None,
                                 impostors: str = "all") -> VulnResult:
    """Licit EER and threshold, then attack FAR at that threshold.

    Histograms of genuine, zero-effort impostor and attack scores span
    [-1, 1] with ``bins`` uniform bins.
    """
    models = enroll_subjects(manifest, store)
    licit = run_licit_protocol(manifest, store, impostors=impostors, models=models)
    attack = run_tampered_protocol(manifest, store, models=models, quality=quality)
    genuine, zero_effort, _ = split_records(licit)
    attack_scores = np.array([r.score for r in attack])
    summary = evaluate(ScoreSet(genuine, zero_effort), attack=attack_scores)
    hists = {
        "genuine": histogram(genuine, bins, (-1.0, 1.0)),
        "zero_effort": histogram(zero_effort, bins, (-1.0, 1.0)),
        "attack": histogram(attack_scores, bins, (-1.0, 1.0)),
    }
    database = f"{quality} deep morph" if quality else "all deep morph"
    return VulnResult(database, summary, licit, attack, bins, hists)
