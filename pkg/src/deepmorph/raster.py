"""Raster primitives and the filter kernels used by the quality measures.

Images are numpy arrays of float64 samples in [0, 255]: ``(H, W)`` for gray
planes and ``(H, W, 3)`` for RGB (channel-interleaved, row-major). Every
neighbourhood operation replicates edge pixels at the border.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

LUMA_WEIGHTS = (0.299, 0.587, 0.114)  # BT.601

SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
SOBEL_Y = SOBEL_X.T.copy()
LAPLACIAN = np.array([[0.0, 1.0, 0.0], [1.0, -4.0, 1.0], [0.0, 1.0, 0.0]])


class RasterError(ValueError):
    """Invalid image or filter parameter."""


@dataclass(frozen=True)
class RasterImage:
    """Validated pixel container; ``pixels`` is (H, W) or (H, W, 3) float64."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.float64)
        if arr.ndim == 3 and arr.shape[2] == 1:
            arr = arr[:, :, 0]
        if arr.ndim not in (2, 3) or (arr.ndim == 3 and arr.shape[2] != 3):
            raise RasterError(f"expected (H, W) or (H, W, 3) pixels, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise RasterError("image must have positive width and height")
        if not np.all(np.isfinite(arr)):
            raise RasterError("pixel samples must be finite")
        if arr.min() < 0.0 or arr.max() > 255.0:
            raise RasterError("pixel samples must lie in [0, 255]")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    @property
    def data(self) -> np.ndarray:
        """Flat row-major, channel-interleaved samples."""
        return self.pixels.reshape(-1)


@dataclass(frozen=True)
class GradientField:
    magnitude: np.ndarray
    phase: np.ndarray
    gx: np.ndarray
    gy: np.ndarray


@dataclass(frozen=True)
class SpectrumPlane:
    real: np.ndarray
    imag: np.ndarray

    @property
    def complex(self) -> np.ndarray:
        return self.real + 1j * self.imag

    @property
    def magnitude(self) -> np.ndarray:
        return np.hypot(self.real, self.imag)


def _pixels(img) -> np.ndarray:
    if isinstance(img, RasterImage):
        return img.pixels
    return np.asarray(img, dtype=np.float64)


def _gray(img) -> np.ndarray:
    arr = _pixels(img)
    if arr.ndim != 2:
        raise RasterError(f"expected a single-channel plane, got shape {arr.shape}")
    return arr


def _check_min_size(arr: np.ndarray, size: int = 3):
    if arr.shape[0] < size or arr.shape[1] < size:
        raise RasterError(f"image {arr.shape[1]}x{arr.shape[0]} smaller than {size}x{size} kernel")


def to_grayscale(img) -> np.ndarray:
    """BT.601 luma; single-channel input passes through unchanged."""
    arr = _pixels(img)
    if arr.ndim == 2:
        return arr
    r, g, b = LUMA_WEIGHTS
    out = r * arr[:, :, 0] + g * arr[:, :, 1] + b * arr[:, :, 2]
    return np.clip(out, 0.0, 255.0)


def gaussian_kernel(sigma: float, ksize: int) -> np.ndarray:
    """Sampled 2-D Gaussian, normalized to unit sum."""
    if not sigma > 0:
        raise RasterError(f"sigma must be positive, got {sigma}")
    if ksize < 3 or ksize % 2 == 0:
        raise RasterError(f"ksize must be odd and >= 3, got {ksize}")
    half = ksize // 2
    ax = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(ax[:, None] ** 2 + ax[None, :] ** 2) / (2.0 * sigma * sigma))
    return g / g.sum()


def correlate(plane: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Plain 2-D correlation with edge replication."""
    kh, kw = kernel.shape
    padded = np.pad(plane, ((kh // 2, kh // 2), (kw // 2, kw // 2)), mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (kh, kw))
    return np.einsum("ijkl,kl->ij", windows, kernel)


def gaussian_blur(img, sigma: float, ksize: int) -> np.ndarray:
    """Gaussian low-pass of a gray plane (or each RGB channel).

    Evaluated as ``center + sum(w * (neighbour - center))`` so flat regions
    come back bit-exact regardless of how the kernel sum rounds.
    """
    kernel = gaussian_kernel(sigma, ksize)
    arr = _pixels(img)
    if arr.ndim == 3:
        return np.stack([gaussian_blur(arr[:, :, c], sigma, ksize) for c in range(3)], axis=2)
    half = ksize // 2
    padded = np.pad(arr, half, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (ksize, ksize))
    deviation = np.einsum("ijkl,kl->ij", windows - arr[:, :, None, None], kernel)
    return np.clip(arr + deviation, 0.0, 255.0)


def sobel_gradients(img) -> GradientField:
    arr = _gray(img)
    _check_min_size(arr)
    return sobel_field(arr)


def sobel_field(arr: np.ndarray) -> GradientField:
    """Sobel gradients without the size check; edge replication makes any
    plane well defined, which the measure code relies on for tiny crops."""
    gx = correlate(arr, SOBEL_X)
    gy = correlate(arr, SOBEL_Y)
    phase = np.arctan2(gy, gx)
    phase[phase <= -np.pi] = np.pi
    return GradientField(magnitude=np.hypot(gx, gy), phase=phase, gx=gx, gy=gy)


def laplacian_response(img) -> np.ndarray:
    arr = _gray(img)
    _check_min_size(arr)
    return correlate(arr, LAPLACIAN)


def dft2(img) -> SpectrumPlane:
    """Unnormalized forward 2-D DFT at the native size (no padding)."""
    spectrum = np.fft.fft2(_gray(img))
    return SpectrumPlane(real=spectrum.real.copy(), imag=spectrum.imag.copy())


def harris_response(img, k: float = 0.04, window_sigma: float = 1.0, window_size: int = 5) -> np.ndarray:
    grad = sobel_field(_gray(img))
    sxx = gaussian_window(grad.gx * grad.gx, window_sigma, window_size)
    syy = gaussian_window(grad.gy * grad.gy, window_sigma, window_size)
    sxy = gaussian_window(grad.gx * grad.gy, window_sigma, window_size)
    return sxx * syy - sxy * sxy - k * (sxx + syy) ** 2


def gaussian_window(plane: np.ndarray, sigma: float, ksize: int) -> np.ndarray:
    """Gaussian-weighted local sum for arbitrary real planes (no clipping)."""
    return correlate(plane, gaussian_kernel(sigma, ksize))


def harris_corner_count(img, k: float = 0.04, rel_threshold: float = 0.01) -> int:
    """Number of Harris corners.

    A corner is a connected plateau of 3x3 local maxima whose response is at
    least ``rel_threshold`` times the global maximum response. Counting
    plateaus rather than pixels keeps the count stable when symmetric
    geometry produces tied neighbours.
    """
    if not 0.02 <= k <= 0.08:
        raise RasterError(f"harris k must lie in [0.02, 0.08], got {k}")
    if not 0.0 < rel_threshold < 1.0:
        raise RasterError(f"rel_threshold must lie in (0, 1), got {rel_threshold}")
    resp = harris_response(img, k)
    peak = resp.max()
    if not peak > 1e-12:
        return 0
    local_max = ndimage.maximum_filter(resp, size=3, mode="nearest")
    mask = (resp >= local_max) & (resp >= rel_threshold * peak)
    _, count = ndimage.label(mask, structure=np.ones((3, 3), dtype=int))
    return int(count)


def crop(img, bbox) -> np.ndarray:
    """Copy of the ``(x, y, w, h)`` sub-rectangle."""
    arr = _pixels(img)
    x, y, w, h = (int(v) for v in bbox)
    if w < 1 or h < 1 or x < 0 or y < 0 or x + w > arr.shape[1] or y + h > arr.shape[0]:
        raise RasterError(f"bbox {tuple(bbox)} outside {arr.shape[1]}x{arr.shape[0]} image")
    return arr[y:y + h, x:x + w].copy()
