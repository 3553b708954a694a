from .linear import (
    FitError,
    LdaModel,
    PcaModel,
    SingularScatterError,
    StandardizerModel,
    fit_lda,
    fit_pca,
    fit_standardizer,
    lda_score,
    pca_project,
)
from .svm import SvmModel, fit_linear_svm, primal_objective, svm_score

__all__ = [
    "FitError",
    "LdaModel",
    "PcaModel",
    "SingularScatterError",
    "StandardizerModel",
    "SvmModel",
    "fit_lda",
    "fit_linear_svm",
    "fit_pca",
    "fit_standardizer",
    "lda_score",
    "pca_project",
    "primal_objective",
    "svm_score",
]
