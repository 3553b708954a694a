"""Full-reference and no-reference image-quality measures.

Full-reference measures compare a gray plane ``I`` with its reference ``R``
(normally a Gaussian-blurred copy). Singular formulas follow fixed sentinel
rules so every value stays finite:

* psnr is capped at 100 dB (and is 100 when mse < 1e-12);
* snr, sc, nae, nxc, lmse and tcd are 0 when their denominator < 1e-12
  (snr also when the signal energy is below that floor);
* blur, edge and spectral ratios are 0 on images without any structure.
"""

from __future__ import annotations

import numpy as np

from .. import raster
from .registry import FULL_REFERENCE, NO_REFERENCE

EPS = 1e-12
PSNR_CAP = 100.0
RAMD_COUNT = 10
SSIM_WINDOW = 8
SSIM_C1 = (0.01 * 255.0) ** 2
SSIM_C2 = (0.03 * 255.0) ** 2
HARRIS_K = 0.04
HARRIS_REL_THRESHOLD = 0.01
CRETE_FILTER_LEN = 9
SPECULAR_LUMA = 0.95 * 255.0
DIVERSITY_COVERAGE = 0.99
HLFI_RADIUS = 0.15


def _ratio(num: float, den: float) -> float:
    return float(num / den) if abs(den) >= EPS else 0.0


def wrap_phase(d: np.ndarray) -> np.ndarray:
    """Map angles into (-pi, pi]."""
    return d - 2.0 * np.pi * np.ceil((d - np.pi) / (2.0 * np.pi))


def edge_map(magnitude: np.ndarray) -> np.ndarray:
    """Binarize a gradient magnitude at twice its RMS value."""
    cutoff = 2.0 * np.sqrt(np.mean(magnitude * magnitude))
    return magnitude > cutoff


def angular_terms(a: np.ndarray, b: np.ndarray):
    """Per-pixel angle between RGB vectors and the norm of their difference.

    Uses atan2(|a x b|, a.b), which stays well conditioned for nearly
    parallel vectors. Pixels where either vector vanishes get angle 0.
    """
    a = a.reshape(-1, 3)
    b = b.reshape(-1, 3)
    cross = np.linalg.norm(np.cross(a, b), axis=1)
    dot = np.einsum("ij,ij->i", a, b)
    angle = np.arctan2(cross, dot)
    degenerate = (np.linalg.norm(a, axis=1) < EPS) | (np.linalg.norm(b, axis=1) < EPS)
    angle[degenerate] = 0.0
    return angle, np.linalg.norm(a - b, axis=1)


def ssim(x: np.ndarray, y: np.ndarray, window: int = SSIM_WINDOW) -> float:
    """Mean SSIM over all sliding square windows (uniform weights, stride 1)."""
    wh, ww = min(window, x.shape[0]), min(window, x.shape[1])
    xw = np.lib.stride_tricks.sliding_window_view(x, (wh, ww))
    yw = np.lib.stride_tricks.sliding_window_view(y, (wh, ww))
    mx = xw.mean(axis=(2, 3))
    my = yw.mean(axis=(2, 3))
    dx = xw - mx[:, :, None, None]
    dy = yw - my[:, :, None, None]
    vx = (dx * dx).mean(axis=(2, 3))
    vy = (dy * dy).mean(axis=(2, 3))
    cxy = (dx * dy).mean(axis=(2, 3))
    num = (2.0 * mx * my + SSIM_C1) * (2.0 * cxy + SSIM_C2)
    den = (mx * mx + my * my + SSIM_C1) * (vx + vy + SSIM_C2)
    return float(np.mean(num / den))


def full_reference_measures(image, reference, image_color=None, reference_color=None) -> dict:
    """All full-reference measures, keyed and ordered like the registry.

    ``image_color``/``reference_color`` feed the angular measures (mas,
    mams); gray planes are replicated to three channels when omitted.
    """
    I = np.asarray(image, dtype=np.float64)
    R = np.asarray(reference, dtype=np.float64)
    if I.shape != R.shape or I.ndim != 2:
        raise raster.RasterError(f"image {I.shape} and reference {R.shape} must be equal-sized planes")
    if image_color is None:
        image_color = np.repeat(I[:, :, None], 3, axis=2)
    if reference_color is None:
        reference_color = np.repeat(R[:, :, None], 3, axis=2)
    Ic = np.asarray(image_color, dtype=np.float64)
    Rc = np.asarray(reference_color, dtype=np.float64)
    if Ic.shape != Rc.shape or Ic.shape[:2] != I.shape:
        raise raster.RasterError("color planes must match the gray planes")

    diff = I - R
    adiff = np.abs(diff)
    sq_err = float(np.sum(diff * diff))
    energy_i = float(np.sum(I * I))
    energy_r = float(np.sum(R * R))
    mse = float(np.mean(diff * diff))

    out = {}
    out["mse"] = mse
    out["psnr"] = PSNR_CAP if mse < EPS else min(PSNR_CAP, 10.0 * np.log10(255.0 ** 2 / mse))
    if sq_err < EPS or energy_i < EPS:
        out["snr"] = 0.0
    else:
        out["snr"] = float(10.0 * np.log10(energy_i / sq_err))
    out["sc"] = _ratio(energy_i, energy_r)
    out["md"] = float(adiff.max())
    out["ad"] = float(np.mean(diff))
    out["nae"] = _ratio(np.sum(adiff), np.sum(np.abs(I)))
    top = np.sort(adiff, axis=None)[::-1][:RAMD_COUNT]
    out["ramd"] = float(np.mean(top))
    li = raster.correlate(I, raster.LAPLACIAN)
    lr = raster.correlate(R, raster.LAPLACIAN)
    out["lmse"] = _ratio(np.sum((li - lr) ** 2), np.sum(li * li))
    out["nxc"] = _ratio(np.sum(I * R), energy_i)

    angle, dist = angular_terms(Ic, Rc)
    ang_sim = 1.0 - 2.0 * angle / np.pi
    out["mas"] = float(np.mean(ang_sim))
    out["mams"] = float(np.mean(ang_sim * (1.0 - dist / (np.sqrt(3.0) * 255.0))))

    gi = raster.sobel_field(I)
    gr = raster.sobel_field(R)
    out["ted"] = float(np.mean(edge_map(gi.magnitude) != edge_map(gr.magnitude)))
    ci = raster.harris_corner_count(I, HARRIS_K, HARRIS_REL_THRESHOLD)
    cr = raster.harris_corner_count(R, HARRIS_K, HARRIS_REL_THRESHOLD)
    out["tcd"] = _ratio(abs(ci - cr), max(ci, cr))

    fi = raster.dft2(I).complex
    fr = raster.dft2(R).complex
    out["sme"] = float(np.mean((np.abs(fi) - np.abs(fr)) ** 2))
    out["spe"] = float(np.mean(wrap_phase(np.angle(fi) - np.angle(fr)) ** 2))
    out["gme"] = float(np.mean((gi.magnitude - gr.magnitude) ** 2))
    out["gpe"] = float(np.mean(wrap_phase(gi.phase - gr.phase) ** 2))
    out["ssim"] = ssim(I, R)
    return {name: out[name] for name in FULL_REFERENCE}


def rgb_to_hsv(rgb: np.ndarray) -> np.ndarray:
    """Vectorized HSV for samples in [0, 255]; H, S, V returned in [0, 1]."""
    c = np.asarray(rgb, dtype=np.float64).reshape(-1, 3) / 255.0
    r, g, b = c[:, 0], c[:, 1], c[:, 2]
    maxc = c.max(axis=1)
    minc = c.min(axis=1)
    span = maxc - minc
    chromatic = span > 0
    safe_span = np.where(chromatic, span, 1.0)
    s = np.where(chromatic, span / np.where(maxc > 0, maxc, 1.0), 0.0)
    rc = (maxc - r) / safe_span
    gc = (maxc - g) / safe_span
    bc = (maxc - b) / safe_span
    h = np.where(r == maxc, bc - gc, np.where(g == maxc, 2.0 + rc - bc, 4.0 + gc - rc))
    h = np.where(chromatic, (h / 6.0) % 1.0, 0.0)
    return np.stack([h, s, maxc], axis=1)


def crete_blur(gray: np.ndarray) -> float:
    """Re-blur perceptual blur score in [0, 1]; larger means blurrier."""
    box = np.full((CRETE_FILTER_LEN, 1), 1.0 / CRETE_FILTER_LEN)
    scores = []
    for kernel, axis in ((box, 0), (box.T, 1)):
        blurred = raster.correlate(gray, kernel)
        d_f = np.abs(np.diff(gray, axis=axis))
        d_b = np.abs(np.diff(blurred, axis=axis))
        s_f = float(np.sum(d_f))
        s_v = float(np.sum(np.maximum(0.0, d_f - d_b)))
        scores.append(_ratio(s_f - s_v, s_f))
    return max(scores)


def marziliano_blur(gray: np.ndarray) -> float:
    """Mean width, in pixels, of vertical edges found by the Sobel x mask.

    Each edge pixel is widened left and right along its row until the
    intensity profile stops being monotone in the gradient's direction.
    """
    gx = raster.correlate(gray, raster.SOBEL_X)
    edges = edge_map(np.abs(gx))
    if not edges.any():
        return 0.0
    w = gray.shape[1]
    widths = []
    for r, c in zip(*np.nonzero(edges)):
        row = gray[r]
        sign = 1.0 if gx[r, c] > 0 else -1.0
        left = c
        while left > 0 and sign * (row[left] - row[left - 1]) > 0:
            left -= 1
        right = c
        while right < w - 1 and sign * (row[right + 1] - row[right]) > 0:
            right += 1
        widths.append(right - left)
    return float(np.mean(widths))


def high_low_frequency_index(gray: np.ndarray) -> float:
    mag = raster.dft2(gray).magnitude
    h, w = gray.shape
    fy = np.fft.fftfreq(h) * h
    fx = np.fft.fftfreq(w) * w
    dist = np.hypot(fy[:, None], fx[None, :])
    low = dist <= HLFI_RADIUS * min(h, w)
    total = float(np.sum(mag))
    return _ratio(abs(float(np.sum(mag[low])) - float(np.sum(mag[~low]))), total)


def color_diversity(rgb: np.ndarray) -> float:
    """Share of the 5-bit RGB palette needed to cover 99% of the pixels."""
    q = np.minimum(np.floor(rgb.reshape(-1, 3) / 8.0), 31).astype(np.int64)
    codes = q[:, 0] * 1024 + q[:, 1] * 32 + q[:, 2]
    counts = np.sort(np.unique(codes, return_counts=True)[1])[::-1]
    n = codes.size
    needed = int(np.searchsorted(np.cumsum(counts) * 100, 99 * n)) + 1
    return needed / 32768.0


def no_reference_measures(img) -> dict:
    """All no-reference measures; gray input is replicated to RGB."""
    arr = np.asarray(img.pixels if isinstance(img, raster.RasterImage) else img, dtype=np.float64)
    rgb = np.repeat(arr[:, :, None], 3, axis=2) if arr.ndim == 2 else arr
    gray = raster.to_grayscale(rgb)

    out = {}
    out["hlfi"] = high_low_frequency_index(gray)
    out["blur_crete"] = crete_blur(gray)
    out["blur_marziliano"] = marziliano_blur(gray)
    out["specularity_ratio"] = float(np.mean(gray >= SPECULAR_LUMA))
    hsv = rgb_to_hsv(rgb)
    for i in range(3):
        out[f"chroma_moment_{2 * i + 1}"] = float(np.mean(hsv[:, i]))
        out[f"chroma_moment_{2 * i + 2}"] = float(np.std(hsv[:, i]))
    out["color_diversity"] = color_diversity(rgb)
    return {name: out[name] for name in NO_REFERENCE}
