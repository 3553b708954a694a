from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import raster
from .measures import full_reference_measures, no_reference_measures
from .registry import MEASURES


@dataclass(frozen=True)
class ReferenceParams:
    """Gaussian blur that produces the full-reference comparison image."""

    sigma: float = 0.5
    ksize: int = 3

    def __post_init__(self):
        if not self.sigma > 0:
            raise raster.RasterError(f"reference sigma must be positive, got {self.sigma}")
        if self.ksize < 3 or self.ksize % 2 == 0:
            raise raster.RasterError(f"reference ksize must be odd and >= 3, got {self.ksize}")


@dataclass(frozen=True)
class IqmVector:
    values: np.ndarray
    source_frame: str = ""
    names: tuple = field(default=MEASURES, repr=False)

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.names.index(name)])

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values.tolist()))


def make_reference(img, params: ReferenceParams = ReferenceParams()) -> np.ndarray:
    return raster.gaussian_blur(img, params.sigma, params.ksize)


def extract_iqm(frame, bbox=None, params: ReferenceParams = ReferenceParams(), frame_id: str = "") -> IqmVector:
    """Crop, convert to gray, blur a reference and evaluate every measure.

    Color-intrinsic measures read the RGB crop and its per-channel blurred
    reference; everything else works on the luma plane.
    """
    pixels = frame.pixels if isinstance(frame, raster.RasterImage) else np.asarray(frame, dtype=np.float64)
    if bbox is not None:
        pixels = raster.crop(pixels, bbox)
    gray = raster.to_grayscale(pixels)
    reference = make_reference(gray, params)
    if pixels.ndim == 3:
        color, color_ref = pixels, make_reference(pixels, params)
    else:
        color = color_ref = None
    values = full_reference_measures(gray, reference, color, color_ref)
    values.update(no_reference_measures(pixels))
    vec = np.array([values[name] for name in MEASURES], dtype=np.float64)
    if not np.all(np.isfinite(vec)):
        bad = [n for n, v in zip(MEASURES, vec) if not np.isfinite(v)]
        raise FloatingPointError(f"non-finite measures {bad} for frame {frame_id!r}")
    return IqmVector(values=vec, source_frame=frame_id)


def pixel_features(frame, bbox=None, mode: str = "gray") -> np.ndarray:
    """Raveled crop used by the raw-pixel detector."""
    pixels = frame.pixels if isinstance(frame, raster.RasterImage) else np.asarray(frame, dtype=np.float64)
    if bbox is not None:
        pixels = raster.crop(pixels, bbox)
    if mode == "gray":
        pixels = raster.to_grayscale(pixels)
    elif mode != "rgb":
        raise ValueError(f"pixel mode must be 'gray' or 'rgb', got {mode!r}")
    return pixels.reshape(-1).astype(np.float64)
