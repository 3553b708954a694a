"""Seeded synthetic corpus for dataset-free end-to-end runs.

Each subject gets a face-like RGB patch: a skin-toned ellipse with eyes and
mouth, smooth shading and a fixed fine texture, on a coloured background.
Original videos jitter that patch slightly per video and per frame. Deep
morphs draw the subject's face over the background of the look-alike pair
partner they impersonate, blurred (sigma in [1, 2]) and noised (sigma in
[2, 6]): LQ morphs take the harsher half of both ranges, HQ the milder half.

Embeddings mimic a recognizer: per-subject unit centres plus small video
and frame noise; morph embeddings sit close to the impersonated subject.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

from .. import embeddings, netpbm

DEGRADATION = {"LQ": ((1.5, 2.0), (4.0, 6.0)), "HQ": ((1.0, 1.5), (2.0, 4.0))}


@dataclass(frozen=True)
class SynthParams:
    subjects: int = 16
    originals: int = 10
    enroll: int = 2
    attacks: int = 5  # per quality
    qualities: tuple = ("LQ", "HQ")
    frames: int = 24
    size: int = 48
    margin: int = 4
    embedding_dim: int = 128
    video_noise: float = 0.15
    frame_noise: float = 0.1
    morph_identity: float = 0.85
    seed: int = 0


@dataclass(frozen=True)
class _Face:
    background: np.ndarray
    skin: np.ndarray
    shading: np.ndarray
    texture: np.ndarray
    geometry: tuple


def _rng(params: SynthParams, *keys) -> np.random.Generator:
    return np.random.default_rng([params.seed, *keys])


def _face(params: SynthParams, index: int) -> _Face:
    rng = _rng(params, 1, index)
    full = params.size + 2 * params.margin
    shading = ndimage.gaussian_filter(rng.normal(size=(full, full)), 4.0, mode="wrap")
    shading *= 25.0 / max(shading.std(), 1e-9)
    texture = ndimage.gaussian_filter(rng.normal(size=(full, full)), 0.6, mode="wrap")
    texture *= 14.0 / max(texture.std(), 1e-9)
    geometry = (
        rng.uniform(0.30, 0.38),  # half width
        rng.uniform(0.38, 0.45),  # half height
        rng.uniform(0.12, 0.16),  # eye offset
        rng.uniform(0.05, 0.07),  # eye radius
    )
    return _Face(
        background=rng.uniform(30, 200, size=3),
        skin=np.array([rng.uniform(150, 220), rng.uniform(100, 160), rng.uniform(80, 130)]),
        shading=shading,
        texture=texture,
        geometry=geometry,
    )


def _render(face: _Face, background: np.ndarray, size: int, dx: float, dy: float, gain: float, rng) -> np.ndarray:
    full = face.shading.shape[0]
    yy, xx = np.mgrid[0:full, 0:full].astype(np.float64)
    cx, cy = full / 2.0 + dx, full / 2.0 + dy
    hw, hh, eye, eye_r = face.geometry
    u = (xx - cx) / (hw * size)
    v = (yy - cy) / (hh * size)
    mask = ndimage.gaussian_filter((u * u + v * v <= 1.0).astype(np.float64), 0.8)
    img = background[None, None, :] * (1.0 - mask[:, :, None])
    skin = face.skin[None, None, :] + (face.shading + face.texture)[:, :, None]
    img = img + skin * mask[:, :, None]
    for sx in (-1, 1):
        ex, ey = cx + sx * eye * size * 1.6, cy - eye * size
        eyes = np.hypot(xx - ex, yy - ey) <= eye_r * size
        img[eyes] = img[eyes] * 0.25
    mouth = (np.abs(xx - cx) <= 0.16 * size) & (np.abs(yy - (cy + 0.2 * size)) <= 0.025 * size)
    img[mouth] = img[mouth] * 0.45
    img = img * gain + rng.normal(scale=1.0, size=img.shape)
    return np.clip(img, 0.0, 255.0)


def _degrade(img: np.ndarray, blur: float, noise: float, rng) -> np.ndarray:
    out = np.stack([ndimage.gaussian_filter(img[:, :, c], blur, mode="nearest") for c in range(3)], axis=2)
    return np.clip(out + rng.normal(scale=noise, size=out.shape), 0.0, 255.0)


def _unit(rng, dim):
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def subject_ids(params: SynthParams):
    return [f"s{i:02d}" for i in range(params.subjects)]


def partner(i: int, n: int) -> int:
    j = i ^ 1
    return j if j < n else (i + 1) % n


def generate_corpus(out_dir, params: SynthParams = SynthParams()) -> Path:
    """Write frames, embeddings and ``manifest.json`` under ``out_dir``."""
    if params.subjects < 2:
        raise ValueError("a corpus needs at least two subjects")
    out = Path(out_dir)
    (out / "frames").mkdir(parents=True, exist_ok=True)
    (out / "emb").mkdir(parents=True, exist_ok=True)
    ids = subject_ids(params)
    faces = [_face(params, i) for i in range(params.subjects)]
    centres = [_unit(_rng(params, 2, i), params.embedding_dim) for i in range(params.subjects)]
    d = params.embedding_dim
    bbox = [params.margin, params.margin, params.size, params.size]

    def write_video(vid, frames, embs):
        fdir = out / "frames" / vid
        fdir.mkdir(exist_ok=True)
        for k, frame in enumerate(frames):
            netpbm.write_image(fdir / f"{k:04d}.ppm", frame)
        embeddings.write_embeddings(out / "emb" / f"{vid}.emb", embs)

    subjects = []
    for i, sid in enumerate(ids):
        j = partner(i, params.subjects)
        videos = []
        for k in range(params.originals):
            rng = _rng(params, 3, i, k)
            vid = f"{sid}-orig-{k:02d}"
            dx, dy = rng.uniform(-2, 2, size=2)
            gain = rng.uniform(0.92, 1.08)
            frames = [_render(faces[i], faces[i].background, params.size, dx + rng.uniform(-1, 1),
                              dy + rng.uniform(-1, 1), gain, rng) for _ in range(params.frames)]
            offset = rng.normal(size=d) * params.video_noise / np.sqrt(d)
            embs = centres[i] + offset + rng.normal(size=(params.frames, d)) * params.frame_noise / np.sqrt(d)
            write_video(vid, frames, embs)
            videos.append({"id": vid, "role": "enroll" if k < params.enroll else "probe", "quality": "original",
                           "frames_dir": f"frames/{vid}", "bbox": bbox, "embeddings": f"emb/{vid}.emb"})
        for qi, quality in enumerate(params.qualities):
            (blur_lo, blur_hi), (noise_lo, noise_hi) = DEGRADATION[quality]
            for k in range(params.attacks):
                rng = _rng(params, 4, i, qi, k)
                vid = f"{sid}-{ids[j]}-{quality.lower()}-{k:02d}"
                blur = rng.uniform(blur_lo, blur_hi)
                noise = rng.uniform(noise_lo, noise_hi)
                dx, dy = rng.uniform(-2, 2, size=2)
                gain = rng.uniform(0.92, 1.08)
                frames = [_degrade(_render(faces[i], faces[j].background, params.size, dx + rng.uniform(-1, 1),
                                           dy + rng.uniform(-1, 1), gain, rng), blur, noise, rng)
                          for _ in range(params.frames)]
                a = params.morph_identity
                base = a * centres[j] + (1.0 - a) * centres[i]
                embs = base + rng.normal(size=(params.frames, d)) * params.frame_noise / np.sqrt(d)
                write_video(vid, frames, embs)
                videos.append({"id": vid, "role": "attack", "quality": quality, "target": ids[j],
                               "frames_dir": f"frames/{vid}", "bbox": bbox, "embeddings": f"emb/{vid}.emb"})
        subjects.append({"id": sid, "pair": ids[j], "videos": videos})

    params_doc = asdict(params)
    params_doc["qualities"] = list(params.qualities)
    manifest = {"schema_version": 1, "name": "synthetic", "generator": params_doc, "subjects": subjects}
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=1) + "\n")
    return path
