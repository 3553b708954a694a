"""Dataset manifests: subjects, their videos, frames, embeddings and roles.

A manifest is a JSON document (``schema_version`` 1)::

    {
      "schema_version": 1,
      "name": "deepfaketimit-hq",
      "subjects": [
        {
          "id": "fadg0",
          "pair": "fram1",
          "videos": [
            {"id": "fadg0-sa1", "role": "enroll", "quality": "original",
             "frames_dir": "frames/fadg0-sa1",
             "bbox": [40, 30, 128, 128],
             "embeddings": "emb/fadg0-sa1.emb"},
            {"id": "fadg0-si1279", "role": "probe", "quality": "original",
             "frames": ["frames/fadg0-si1279/0000.ppm", "frames/fadg0-si1279/0001.ppm"],
             "bboxes": [[40, 30, 128, 128], [41, 30, 128, 128]]},
            {"id": "fadg0-fram1-hq-sa1", "role": "attack", "quality": "HQ",
             "target": "fram1", "frames_dir": "frames/fadg0-fram1-hq-sa1"}
          ]
        }
      ]
    }

Paths are relative to the manifest's directory. ``frames_dir`` lists the
``.ppm``/``.pgm`` files of a directory in name order. ``bbox`` applies to
every frame, ``bboxes`` gives one box per frame. Attack videos are filed
under the subject whose face was synthesized and name the identity they
claim in ``target``. ``pair`` optionally links look-alike subjects; it keeps
pairs on the same side of a split and drives ``impostors="paired"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1
ROLES = ("enroll", "probe", "attack")
QUALITIES = ("original", "LQ", "HQ")
FRAME_SUFFIXES = (".ppm", ".pgm")


class ManifestError(ValueError):
    """Validation failure; ``code`` is one of the E_* constants below."""

    def __init__(self, code: str, message: str):
        super().__init__(f"[{code}] {message}")
        self.code = code


E_SCHEMA = "E_SCHEMA"
E_DUPLICATE_ID = "E_DUPLICATE_ID"
E_ROLE_OVERLAP = "E_ROLE_OVERLAP"
E_DANGLING_TARGET = "E_DANGLING_TARGET"
E_MISSING_FILE = "E_MISSING_FILE"


@dataclass(frozen=True)
class Video:
    id: str
    subject: str
    role: str
    quality: str
    frames: tuple
    bboxes: tuple | None = None
    embeddings: Path | None = None
    target: str | None = None

    @property
    def is_attack(self) -> bool:
        return self.role == "attack"

    def frame_id(self, index: int) -> str:
        return f"{self.id}/{index:05d}"

    def bbox(self, index: int):
        return None if self.bboxes is None else self.bboxes[index]


@dataclass(frozen=True)
class Subject:
    id: str
    videos: tuple
    pair: str | None = None


@dataclass(frozen=True)
class DatasetManifest:
    subjects: tuple
    root: Path = field(default_factory=Path)
    name: str = ""

    @property
    def subject_ids(self):
        return [s.id for s in self.subjects]

    def subject(self, subject_id: str) -> Subject:
        for s in self.subjects:
            if s.id == subject_id:
                return s
        raise KeyError(subject_id)

    def videos(self, role=None, quality=None, subjects=None):
        """Videos filtered by role(s), quality tag(s) and subject ids."""
        roles = (role,) if isinstance(role, str) else role
        qualities = (quality,) if isinstance(quality, str) else quality
        wanted = None if subjects is None else set(subjects)
        return [
            v
            for s in self.subjects
            if wanted is None or s.id in wanted
            for v in s.videos
            if (roles is None or v.role in roles) and (qualities is None or v.quality in qualities)
        ]

    def video(self, video_id: str) -> Video:
        for s in self.subjects:
            for v in s.videos:
                if v.id == video_id:
                    return v
        raise KeyError(video_id)


def _require(cond, code, message):
    if not cond:
        raise ManifestError(code, message)


def _ident(value, what):
    _require(isinstance(value, str) and value and not any(c.isspace() for c in value),
             E_SCHEMA, f"{what} must be a non-empty string without whitespace, got {value!r}")
    return value


def _bbox(value, what):
    _require(isinstance(value, (list, tuple)) and len(value) == 4 and all(isinstance(v, int) for v in value),
             E_SCHEMA, f"{what} must be [x, y, w, h] integers, got {value!r}")
    return tuple(value)


def _video(raw: dict, subject_id: str, root: Path) -> Video:
    _require(isinstance(raw, dict), E_SCHEMA, f"video entries of {subject_id} must be objects")
    vid = _ident(raw.get("id"), "video id")
    role = raw.get("role")
    _require(role in ROLES, E_SCHEMA, f"video {vid}: role must be one of {ROLES}, got {role!r}")
    quality = raw.get("quality", "original" if role != "attack" else None)
    _require(quality in QUALITIES, E_SCHEMA, f"video {vid}: quality must be one of {QUALITIES}, got {quality!r}")
    _require((role == "attack") == (quality != "original"), E_SCHEMA,
             f"video {vid}: attack videos carry LQ/HQ quality, enroll/probe videos are original")
    target = raw.get("target")
    if role == "attack":
        _ident(target, f"video {vid}: target")
    else:
        _require(target is None, E_SCHEMA, f"video {vid}: only attack videos name a target")

    if "frames_dir" in raw:
        _require("frames" not in raw, E_SCHEMA, f"video {vid}: give frames or frames_dir, not both")
        d = root / raw["frames_dir"]
        _require(d.is_dir(), E_MISSING_FILE, f"video {vid}: frame directory {d} does not exist")
        frames = tuple(sorted(p for p in d.iterdir() if p.suffix.lower() in FRAME_SUFFIXES))
    else:
        listed = raw.get("frames", [])
        _require(isinstance(listed, list) and all(isinstance(p, str) for p in listed), E_SCHEMA,
                 f"video {vid}: frames must be a list of paths")
        frames = tuple(root / p for p in listed)

    bboxes = None
    if "bboxes" in raw:
        _require(isinstance(raw["bboxes"], list) and len(raw["bboxes"]) == len(frames), E_SCHEMA,
                 f"video {vid}: bboxes must give one box per frame")
        bboxes = tuple(_bbox(b, f"video {vid} bbox") for b in raw["bboxes"])
    elif raw.get("bbox") is not None:
        bboxes = (_bbox(raw["bbox"], f"video {vid} bbox"),) * len(frames)

    emb = raw.get("embeddings")
    return Video(
        id=vid,
        subject=subject_id,
        role=role,
        quality=quality,
        frames=frames,
        bboxes=bboxes,
        embeddings=None if emb is None else root / emb,
        target=target,
    )


def parse_manifest(doc: dict, root=".", check_files: bool = True) -> DatasetManifest:
    root = Path(root)
    _require(isinstance(doc, dict), E_SCHEMA, "manifest must be a JSON object")
    _require(doc.get("schema_version") == SCHEMA_VERSION, E_SCHEMA,
             f"unsupported schema_version {doc.get('schema_version')!r} (expected {SCHEMA_VERSION})")
    raw_subjects = doc.get("subjects")
    _require(isinstance(raw_subjects, list) and raw_subjects, E_SCHEMA, "manifest needs a non-empty subjects list")

    subjects = []
    seen_subjects = set()
    seen_videos = {}
    for raw in raw_subjects:
        _require(isinstance(raw, dict), E_SCHEMA, "subject entries must be objects")
        sid = _ident(raw.get("id"), "subject id")
        _require(sid not in seen_subjects, E_DUPLICATE_ID, f"subject {sid} listed twice")
        seen_subjects.add(sid)
        pair = raw.get("pair")
        if pair is not None:
            _ident(pair, f"subject {sid}: pair")
        videos = []
        for rv in raw.get("videos", []):
            v = _video(rv, sid, root)
            if v.id in seen_videos:
                other = seen_videos[v.id]
                if other.subject == sid and {other.role, v.role} == {"enroll", "probe"}:
                    raise ManifestError(E_ROLE_OVERLAP, f"subject {sid}: video {v.id} is both enroll and probe")
                raise ManifestError(E_DUPLICATE_ID, f"video id {v.id} listed twice")
            seen_videos[v.id] = v
            videos.append(v)
        subjects.append(Subject(id=sid, videos=tuple(videos), pair=pair))

    for s in subjects:
        enroll_frames = {f for v in s.videos if v.role == "enroll" for f in v.frames}
        for v in s.videos:
            if v.role == "probe" and enroll_frames.intersection(v.frames):
                raise ManifestError(E_ROLE_OVERLAP, f"subject {s.id}: probe video {v.id} reuses enrollment frames")
        if s.pair is not None:
            _require(s.pair in seen_subjects, E_DANGLING_TARGET, f"subject {s.id}: pair {s.pair} is not a subject")
        for v in s.videos:
            if v.role == "attack":
                _require(v.target in seen_subjects, E_DANGLING_TARGET,
                         f"attack video {v.id} targets unknown subject {v.target}")

    if check_files:
        for v in seen_videos.values():
            for p in v.frames:
                _require(p.is_file(), E_MISSING_FILE, f"video {v.id}: frame {p} does not exist")
            if v.embeddings is not None:
                _require(v.embeddings.is_file(), E_MISSING_FILE, f"video {v.id}: embeddings {v.embeddings} do not exist")

    return DatasetManifest(subjects=tuple(subjects), root=root, name=str(doc.get("name", "")))


def load_manifest(path, check_files: bool = True) -> DatasetManifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise ManifestError(E_MISSING_FILE, f"manifest {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise ManifestError(E_SCHEMA, f"manifest {path} is not valid JSON: {exc}") from None
    return parse_manifest(doc, path.parent, check_files=check_files)
