"""Linear SVM trained by dual coordinate descent.

The primal problem is

    min_{w, b}  0.5 * (|w|^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b))

i.e. the bias is folded into the weights through a constant feature of 1
and regularized with them (the liblinear convention). The dual has box
constraints only, so each coordinate update is closed-form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linear import FitError, _matrix, _vector

DEFAULT_C = 1.0
DEFAULT_TOL = 1e-6
DEFAULT_MAX_EPOCHS = 10_000
DEFAULT_SEED = 0


@dataclass(frozen=True)
class SvmModel:
    w: np.ndarray
    b: float
    C: float
    epochs: int = 0
    duality_gap: float = 0.0

    def score(self, x) -> np.ndarray:
        x = _vector(x, self.w.shape[0])
        return x @ self.w + self.b


def primal_objective(w, b, X, y, C) -> float:
    margins = y * (X @ w + b)
    return 0.5 * (float(w @ w) + b * b) + C * float(np.sum(np.maximum(0.0, 1.0 - margins)))


def fit_linear_svm(X, y, C: float = DEFAULT_C, tol: float = DEFAULT_TOL,
                   max_epochs: int = DEFAULT_MAX_EPOCHS, seed: int = DEFAULT_SEED) -> SvmModel:
    """Fit on labels in {-1, +1}; +1 is the genuine class.

    Coordinates are visited in a fresh seeded permutation each epoch.
    Training stops once the duality gap falls below ``tol * max(1, primal)``
    or after ``max_epochs`` epochs.
    """
    X = _matrix(X)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if y.shape[0] != X.shape[0]:
        raise FitError(f"{X.shape[0]} samples but {y.shape[0]} labels")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise FitError("labels must be -1 or +1")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise FitError("both classes must be present")
    if not C > 0:
        raise FitError(f"C must be positive, got {C}")

    n, d = X.shape
    Xa = np.hstack([X, np.ones((n, 1))])
    rows = [Xa[i] for i in range(n)]
    q = np.einsum("ij,ij->i", Xa, Xa)
    alpha = np.zeros(n)
    wa = np.zeros(d + 1)
    rng = np.random.default_rng(seed)
    gap = np.inf
    epoch = 0
    for epoch in range(1, max_epochs + 1):
        for i in rng.permutation(n):
            xi = rows[i]
            yi = y[i]
            g = yi * float(wa @ xi) - 1.0
            a = alpha[i]
            if a <= 0.0:
                pg = min(g, 0.0)
            elif a >= C:
                pg = max(g, 0.0)
            else:
                pg = g
            if pg == 0.0 or q[i] <= 0.0:
                continue
            a_new = min(max(a - g / q[i], 0.0), C)
            if a_new != a:
                wa += (a_new - a) * yi * xi
                alpha[i] = a_new
        primal = 0.5 * float(wa @ wa) + C * float(np.sum(np.maximum(0.0, 1.0 - y * (Xa @ wa))))
        dual = float(alpha.sum()) - 0.5 * float(wa @ wa)
        gap = primal - dual
        if gap <= tol * max(1.0, primal):
            break
    return SvmModel(w=wa[:d].copy(), b=float(wa[d]), C=float(C), epochs=epoch, duality_gap=float(gap))


def svm_score(model: SvmModel, x):
    return model.score(x)
