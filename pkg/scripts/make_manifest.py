"""Build a manifest from a tree of pre-extracted frames.

Expected layout under --root (frames numbered so that name order is time order,
e.g. produced by ``ffmpeg -i clip.avi -start_number 0 <dir>/%04d.ppm``)::

    originals/<subject>/<video>/0000.ppm ...
    attacks/<LQ|HQ>/<subject>/<target>/<video>/0000.ppm ...
    embeddings/<video>.emb  (or .csv; optional)

The first --enroll videos of each subject in name order are enrollment videos,
the rest are probes. Look-alike pairs are inferred from the attack targets.
"""

import argparse
import json
from pathlib import Path

from deepmorph.manifest import load_manifest


def video_entry(root, vid, role, frames_dir, quality="original", target=None):
    entry = {"id": vid, "role": role, "quality": quality, "frames_dir": frames_dir.relative_to(root).as_posix()}
    if target is not None:
        entry["target"] = target
    for suffix in (".emb", ".csv"):
        emb = root / "embeddings" / f"{vid}{suffix}"
        if emb.exists():
            entry["embeddings"] = emb.relative_to(root).as_posix()
            break
    return entry


def build(root: Path, enroll: int, name: str) -> dict:
    subjects = {}
    for sdir in sorted(p for p in (root / "originals").iterdir() if p.is_dir()):
        videos = sorted(p for p in sdir.iterdir() if p.is_dir())
        subjects[sdir.name] = {"id": sdir.name, "videos": [
            video_entry(root, f"{sdir.name}-{v.name}", "enroll" if k < enroll else "probe", v)
            for k, v in enumerate(videos)]}
    for qdir in sorted(p for p in (root / "attacks").glob("*") if p.name in ("LQ", "HQ")):
        for sdir in sorted(p for p in qdir.iterdir() if p.is_dir()):
            for tdir in sorted(p for p in sdir.iterdir() if p.is_dir()):
                subjects[sdir.name].setdefault("pair", tdir.name)
                for v in sorted(p for p in tdir.iterdir() if p.is_dir()):
                    vid = f"{sdir.name}-{tdir.name}-{qdir.name.lower()}-{v.name}"
                    subjects[sdir.name]["videos"].append(video_entry(root, vid, "attack", v, qdir.name, tdir.name))
    return {"schema_version": 1, "name": name, "subjects": list(subjects.values())}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--root", required=True)
    ap.add_argument("--enroll", type=int, default=2, help="enrollment videos per subject")
    ap.add_argument("--name", default="corpus")
    args = ap.parse_args()
    root = Path(args.root)
    path = root / "manifest.json"
    path.write_text(json.dumps(build(root, args.enroll, args.name), indent=2) + "\n")
    m = load_manifest(path)
    print(f"{path}: {len(m.subjects)} subjects, {len(m.videos())} videos")


if __name__ == "__main__":
    main()
