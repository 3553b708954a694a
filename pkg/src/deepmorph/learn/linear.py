"""Standardization, PCA with retained-variance selection, and two-class LDA."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STD_FLOOR = 1e-12


class FitError(ValueError):
    pass


class SingularScatterError(FitError, np.linalg.LinAlgError):
    pass


def _matrix(X, name="X") -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] == 0:
        raise FitError(f"{name} must be a non-empty 2-D matrix, got shape {X.shape}")
    return X


def _vector(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != dim:
        raise FitError(f"expected feature dimension {dim}, got {x.shape[-1]}")
    return x


@dataclass(frozen=True)
class StandardizerModel:
    mean: np.ndarray
    std: np.ndarray

    def transform(self, x) -> np.ndarray:
        """Z-score; columns that were constant at fit time map to 0."""
        x = _vector(x, self.mean.shape[0])
        return np.where(self.std > STD_FLOOR, (x - self.mean) / self.std, 0.0)


def fit_standardizer(X) -> StandardizerModel:
    """Per-column mean and population std, std floored at 1e-12."""
    X = _matrix(X)
    mean = X.mean(axis=0)
    std = np.sqrt(((X - mean) ** 2).mean(axis=0))
    std = np.where(std < STD_FLOOR, STD_FLOOR, std)
    return StandardizerModel(mean=mean, std=std)


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    basis: np.ndarray  # (d, k), orthonormal columns
    eigenvalues: np.ndarray  # retained, descending
    retained_variance_target: float
    total_variance: float

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    def project(self, x) -> np.ndarray:
        x = _vector(x, self.mean.shape[0])
        return (x - self.mean) @ self.basis

    def reconstruct(self, z) -> np.ndarray:
        return np.asarray(z) @ self.basis.T + self.mean


def _orient(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so each one's largest-magnitude entry is positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def covariance_eigh(X: np.ndarray):
    """Descending eigenpairs of the sample covariance (divisor n - 1).

    When there are fewer samples than dimensions the n x n Gram matrix is
    decomposed instead; its non-zero spectrum is identical and the
    eigenvectors map back through ``Xc^T``.
    """
    n, d = X.shape
    Xc = X - X.mean(axis=0)
    if d <= n:
        vals, vecs = np.linalg.eigh(Xc.T @ Xc / (n - 1))
        order = np.argsort(vals)[::-1]
        return np.clip(vals[order], 0.0, None), vecs[:, order]
    vals, u = np.linalg.eigh(Xc @ Xc.T / (n - 1))
    order = np.argsort(vals)[::-1]
    vals = np.clip(vals[order], 0.0, None)
    u = u[:, order]
    keep = vals > vals[0] * 1e-12 if vals[0] > 0 else np.zeros_like(vals, dtype=bool)
    vecs = Xc.T @ u[:, keep]
    vecs /= np.linalg.norm(vecs, axis=0)
    return vals[keep], vecs


def fit_pca(X, retained: float = 0.99) -> PcaModel:
    X = _matrix(X)
    if X.shape[0] < 2:
        raise FitError("PCA needs at least two samples")
    if not 0.0 < retained <= 1.0:
        raise FitError(f"retained variance must lie in (0, 1], got {retained}")
    vals, vecs = covariance_eigh(X)
    total = float(vals.sum())
    if not total > 0:
        raise FitError("PCA on data without variance")
    ratio = np.cumsum(vals) / total
    k = int(np.searchsorted(ratio, retained - 1e-12)) + 1
    k = min(k, vals.shape[0])
    return PcaModel(
        mean=X.mean(axis=0),
        basis=_orient(vecs[:, :k]),
        eigenvalues=vals[:k],
        retained_variance_target=float(retained),
        total_variance=total,
    )


def pca_project(model: PcaModel, x) -> np.ndarray:
    return model.project(x)


@dataclass(frozen=True)
class LdaModel:
    """Fisher direction; positive scores favour the positive (genuine) class."""

    w: np.ndarray
    b: float
    ridge: float

    def score(self, x) -> np.ndarray:
        x = _vector(x, self.w.shape[0])
        return x @ self.w + self.b


def default_ridge(Sw: np.ndarray) -> float:
    return 1e-6 * float(np.trace(Sw)) / Sw.shape[0]


def fit_lda(X_pos, X_neg, ridge: float | None = None) -> LdaModel:
    """Two-class Fisher LDA with ridge-regularized within-class scatter.

    ``ridge=None`` uses 1e-6 * trace(Sw) / d. With ``ridge=0`` a singular
    scatter matrix raises :class:`SingularScatterError`.
    """
    Xp = _matrix(X_pos, "X_pos")
    Xn = _matrix(X_neg, "X_neg")
    if Xp.shape[0] < 2 or Xn.shape[0] < 2:
        raise FitError("each class needs at least two samples")
    if Xp.shape[1] != Xn.shape[1]:
        raise FitError("classes have different feature dimensions")
    mu_p = Xp.mean(axis=0)
    mu_n = Xn.mean(axis=0)
    Dp = Xp - mu_p
    Dn = Xn - mu_n
    Sw = Dp.T @ Dp + Dn.T @ Dn
    if ridge is None:
        ridge = default_ridge(Sw)
    if ridge < 0:
        raise FitError(f"ridge must be non-negative, got {ridge}")
    A = Sw + ridge * np.eye(Sw.shape[0])
    if np.linalg.cond(A) > 1.0 / np.finfo(np.float64).eps:
        raise SingularScatterError("within-class scatter is singular; use ridge > 0")
    w = np.linalg.solve(A, mu_p - mu_n)
    norm = np.linalg.norm(w)
    if not norm > 0:
        raise FitError("class means coincide; no discriminant direction")
    w = w / norm
    b = -float(w @ (mu_p + mu_n)) / 2.0
    return LdaModel(w=w, b=b, ridge=float(ridge))


def lda_score(model: LdaModel, x):
    return model.score(x)
