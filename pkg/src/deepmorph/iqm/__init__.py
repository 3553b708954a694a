from .features import IqmVector, ReferenceParams, extract_iqm, make_reference, pixel_features
from .measures import full_reference_measures, no_reference_measures
from .registry import MEASURES, REGISTRY_HASH, REGISTRY_VERSION

__all__ = [
    "IqmVector",
    "MEASURES",
    "REGISTRY_HASH",
    "REGISTRY_VERSION",
    "ReferenceParams",
    "extract_iqm",
    "full_reference_measures",
    "make_reference",
    "no_reference_measures",
    "pixel_features",
]
