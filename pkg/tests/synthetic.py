"""Synthetic inputs shared by the tests: clustered-embedding manifests and random frames."""

import numpy as np
from scipy import ndimage

from deepmorph.manifest import parse_manifest


def partner(i, n):
    j = i ^ 1
    return j if j < n else (i + 1) % n


def cluster_corpus(n_subjects, probes=8, enroll=2, attacks=0, dim=32, frames=4,
                   video_noise=0.05, frame_noise=0.05, seed=0, attack_embeddings=None):
    """Return ``(manifest, store, centres)``.

    Subject centres are random unit vectors; each video adds a video offset
    and per-frame noise. ``attack_embeddings(rng, subject, target, centres,
    store)`` supplies the frames of each attack video; by default attacks
    are drawn like genuine videos of the target.
    """
    rng = np.random.default_rng(seed)
    centres = rng.normal(size=(n_subjects, dim))
    centres /= np.linalg.norm(centres, axis=1, keepdims=True)
    ids = [f"s{i:02d}" for i in range(n_subjects)]
    subjects, store = [], {}

    def video(i):
        base = centres[i] + rng.normal(size=dim) * video_noise
        return base + rng.normal(size=(frames, dim)) * frame_noise

    for i, sid in enumerate(ids):
        videos = []
        for k in range(enroll + probes):
            vid = f"{sid}-v{k:02d}"
            store[vid] = video(i)
            videos.append({"id": vid, "role": "enroll" if k < enroll else "probe", "quality": "original"})
        subjects.append({"id": sid, "pair": ids[partner(i, n_subjects)] if n_subjects > 1 else None,
                         "videos": videos})
    for i, sid in enumerate(ids):
        j = partner(i, n_subjects)
        for k in range(attacks):
            vid = f"{sid}-{ids[j]}-hq-{k:02d}"
            store[vid] = video(j) if attack_embeddings is None else attack_embeddings(rng, i, j, centres, store)
            subjects[i]["videos"].append({"id": vid, "role": "attack", "quality": "HQ", "target": ids[j]})
    for s in subjects:
        if s["pair"] is None:
            del s["pair"]
    doc = {"schema_version": 1, "name": "clusters", "subjects": subjects}
    return parse_manifest(doc, check_files=False), store, centres


def random_frames(seed, count):
    """Alternate plain noise with smooth, partly saturated scenes so edge,
    corner and specular measures all see non-trivial inputs."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        h, w = (int(v) for v in rng.integers(8, 33, size=2))
        if i % 2 == 0:
            img = rng.uniform(0, 255, (h, w, 3))
        else:
            base = ndimage.gaussian_filter(rng.normal(size=(h, w, 3)), (1.5, 1.5, 0))
            img = np.clip(128 + 400 * base, 0, 255)
            y, x = rng.integers(0, h // 2), rng.integers(0, w // 2)
            img[y:y + h // 3, x:x + w // 3] = 255.0
        out.append(img)
    return out
