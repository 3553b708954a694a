"""Verification error rates over score sets.

Scores are similarities: a trial is accepted when ``score >= threshold``.
Threshold sweeps use the sorted unique scores plus the midpoints between
neighbouring unique scores; nothing is interpolated, so every reported
rate is a ratio of trial counts.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import floor

import numpy as np


class MetricError(ValueError):
    pass


def _scores(values, name) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise MetricError(f"{name} scores are empty")
    if not np.all(np.isfinite(arr)):
        raise MetricError(f"{name} scores contain non-finite values")
    return arr


@dataclass(frozen=True)
class ScoreSet:
    genuine: np.ndarray
    impostor: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "genuine", np.sort(_scores(self.genuine, "genuine")))
        object.__setattr__(self, "impostor", np.sort(_scores(self.impostor, "impostor")))


@dataclass(frozen=True)
class VulnScoreSet:
    licit: ScoreSet
    attack: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "attack", np.sort(_scores(self.attack, "attack")))


@dataclass(frozen=True)
class EvalSummary:
    eer: float
    eer_threshold: float
    far_at_threshold: float
    frr_at_threshold: float
    frr_at_far10: float
    far10_threshold: float
    attack_far: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def candidate_thresholds(s: ScoreSet) -> np.ndarray:
    u = np.unique(np.concatenate([s.genuine, s.impostor]))
    mids = (u[:-1] + u[1:]) / 2.0
    return np.unique(np.concatenate([u, mids]))


def _counts(s: ScoreSet, thetas):
    """Accepted-impostor and rejected-genuine counts at each threshold."""
    thetas = np.asarray(thetas, dtype=np.float64)
    fa = s.impostor.size - np.searchsorted(s.impostor, thetas, side="left")
    fr = np.searchsorted(s.genuine, thetas, side="left")
    return fa.astype(np.int64), fr.astype(np.int64)


def far_at(s: ScoreSet, theta: float) -> float:
    fa, _ = _counts(s, [theta])
    return int(fa[0]) / s.impostor.size


def frr_at(s: ScoreSet, theta: float) -> float:
    _, fr = _counts(s, [theta])
    return int(fr[0]) / s.genuine.size


def eer(s: ScoreSet):
    """Return ``(eer, threshold)``.

    The threshold minimizes |FAR - FRR|; ties go to the smaller mean error,
    then to the smaller threshold. Comparisons are done on integer
    cross-products so they are exact.
    """
    thetas = candidate_thresholds(s)
    fa, fr = _counts(s, thetas)
    m, n = s.impostor.size, s.genuine.size
    gap = np.abs(fa * n - fr * m)
    total = fa * n + fr * m
    best = np.lexsort((thetas, total, gap))[0]
    return int(total[best]) / (2 * m * n), float(thetas[best])


def frr_at_far(s: ScoreSet, far_target: float = 0.10):
    """Return ``(frr, threshold)`` at the smallest threshold with FAR <= target.

    If no swept threshold reaches the target (many impostors tied at the top
    score), the threshold moves just above the highest score, where FAR = 0
    and FRR = 1.
    """
    if not 0.0 < far_target < 1.0:
        raise MetricError(f"far_target must lie in (0, 1), got {far_target}")
    thetas = candidate_thresholds(s)
    fa, fr = _counts(s, thetas)
    limit = floor(Fraction(far_target) * s.impostor.size)
    ok = np.nonzero(fa <= limit)[0]
    if ok.size == 0:
        theta = float(np.nextafter(thetas[-1], np.inf))
        return 1.0, theta
    i = ok[0]
    return int(fr[i]) / s.genuine.size, float(thetas[i])


def vulnerability_far(v: VulnScoreSet) -> float:
    """Share of attack probes accepted at the licit EER threshold."""
    _, theta = eer(v.licit)
    accepted = v.attack.size - np.searchsorted(v.attack, theta, side="left")
    return int(accepted) / v.attack.size


def det_points(s: ScoreSet):
    """(FAR, FRR) at each candidate threshold, ascending threshold order."""
    thetas = candidate_thresholds(s)
    fa, fr = _counts(s, thetas)
    return [(int(a) / s.impostor.size, int(r) / s.genuine.size) for a, r in zip(fa, fr)]


def histogram(scores, bins: int, range: tuple = (-1.0, 1.0)) -> np.ndarray:
    """Uniform-width bin counts; bins are right-open except the last."""
    lo, hi = range
    if bins < 1:
        raise MetricError(f"bins must be >= 1, got {bins}")
    if not lo < hi:
        raise MetricError(f"invalid histogram range [{lo}, {hi}]")
    counts, _ = np.histogram(np.asarray(scores, dtype=np.float64), bins=bins, range=(lo, hi))
    return counts


def evaluate(s: ScoreSet, attack=None, far_target: float = 0.10) -> EvalSummary:
    rate, theta = eer(s)
    frr10, theta10 = frr_at_far(s, far_target)
    attack_far = None
    if attack is not None:
        attack_far = vulnerability_far(VulnScoreSet(s, attack))
    return EvalSummary(
        eer=rate,
        eer_threshold=theta,
        far_at_threshold=far_at(s, theta),
        frr_at_threshold=frr_at(s, theta),
        frr_at_far10=frr10,
        far10_threshold=theta10,
        attack_far=attack_far,
    )
