"""Command-line entry point: ``deepmorph <subcommand> ...``.

Every subcommand accepts ``--config FILE``, a JSON object with
ExperimentConfig keys; explicit flags override values from the file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import embeddings
from .experiment import detector as det
from .experiment.config import DETECTORS, ConfigError, ExperimentConfig, load_config
from .experiment.report import emit_report, load_summaries
from .experiment.split import SplitError, load_split, make_split, save_split
from .experiment.synth import SynthParams, generate_corpus
from .experiment.vuln import run_vulnerability_experiment
from .iqm.io import read_features, write_features
from .learn.io import to_json
from .manifest import ManifestError, load_manifest
from .scorefile import write_scores

log = logging.getLogger("deepmorph")


def _common(p: argparse.ArgumentParser, *flags):
    p.add_argument("--config", help="JSON file with ExperimentConfig values")
    p.add_argument("--out", help="output directory (or file, where noted)")
    p.add_argument("-v", "--verbose", action="store_true")
    table = {
        "manifest": (("--manifest",), dict(help="dataset manifest JSON")),
        "split": (("--split",), dict(help="split plan JSON from make-split")),
        "seed": (("--seed",), dict(type=int)),
        "detector": (("--detector",), dict(choices=DETECTORS)),
        "retained": (("--retained",), dict(type=float, help="PCA retained variance")),
        "svm_c": (("--svm-c",), dict(type=float, dest="svm_c")),
        "frames": (("--frames",), dict(type=int, help="frames sampled per video")),
        "bins": (("--bins",), dict(type=int)),
        "quality": (("--quality",), dict(choices=("LQ", "HQ"))),
        "training": (("--training",), dict(choices=("per-quality", "pooled"))),
        "test_fraction": (("--test-fraction",), dict(type=float, dest="test_fraction")),
        "jobs": (("--jobs",), dict(type=int)),
        "features": (("--features",), dict(help="feature table from extract-features")),
        "impostors": (("--impostors",), dict(choices=("all", "paired"))),
    }
    for f in flags:
        names, kw = table[f]
        p.add_argument(*names, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deepmorph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-manifest", help="check a manifest and summarize it")
    _common(p, "manifest")

    p = sub.add_parser("make-split", help="subject-disjoint Train/Test plan (--out is the JSON file)")
    _common(p, "manifest", "seed", "test_fraction")

    p = sub.add_parser("extract-features", help="per-frame features (--out is a .csv or binary file)")
    p.add_argument("kind", choices=("pixels", "iqm"))
    _common(p, "manifest", "frames", "jobs")
    p.add_argument("--pixel-mode", choices=("gray", "rgb"), dest="pixel_mode")

    p = sub.add_parser("train-detector", help="fit a detector on the Train subjects")
    _common(p, "manifest", "split", "detector", "retained", "svm_c", "frames", "quality", "training",
            "jobs", "features", "seed")

    p = sub.add_parser("eval-detector", help="score Test videos with a trained detector")
    p.add_argument("--model", required=True, help="detector.model from train-detector")
    _common(p, "manifest", "split", "frames", "quality", "jobs", "features")

    p = sub.add_parser("run-vuln", help="licit and tampered verification protocols")
    _common(p, "manifest", "bins", "quality", "impostors")

    p = sub.add_parser("report", help="tables and histogram figures from summary files")
    p.add_argument("summaries", nargs="+", help="summary.json files")
    _common(p)

    p = sub.add_parser("synth-corpus", help="write a seeded synthetic corpus with manifest")
    _common(p, "seed")
    p.add_argument("--subjects", type=int)
    p.add_argument("--frames-per-video", type=int, dest="frames_per_video")
    p.add_argument("--size", type=int)
    return parser


def resolve_config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else ExperimentConfig()
    keys = ("manifest", "split", "seed", "detector", "retained", "svm_c", "frames", "bins", "quality",
            "training", "test_fraction", "jobs", "impostors", "out", "pixel_mode")
    return cfg.override(**{k: getattr(args, k, None) for k in keys})


def _need(value, flag):
    if value is None:
        raise ConfigError(f"{flag} is required")
    return value


def _out_dir(cfg) -> Path:
    out = Path(_need(cfg.out, "--out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _features(args):
    return read_features(args.features) if getattr(args, "features", None) else None


def cmd_validate_manifest(args, cfg):
    m = load_manifest(_need(cfg.manifest, "--manifest"))
    counts = {}
    for v in m.videos():
        key = v.role if v.role != "attack" else f"attack-{v.quality}"
        counts[key] = counts.get(key, 0) + 1
    print(json.dumps({"subjects": len(m.subjects), "videos": counts,
                      "frames": sum(len(v.frames) for v in m.videos())}, sort_keys=True))


def cmd_make_split(args, cfg):
    m = load_manifest(_need(cfg.manifest, "--manifest"), check_files=False)
    plan = make_split(m, cfg.seed, cfg.test_fraction)
    out = Path(_need(cfg.out, "--out"))
    if out.is_dir():
        out = out / "split.json"
    save_split(out, plan)
    print(out)


def cmd_extract_features(args, cfg):
    m = load_manifest(_need(cfg.manifest, "--manifest"))
    table = det.extract_features(m.videos(), cfg, kind=args.kind)
    out = Path(_need(cfg.out, "--out"))
    out.parent.mkdir(parents=True, exist_ok=True)
    write_features(out, table)
    print(f"{out}: {len(table.frame_ids)} frames x {len(table.columns)} features")


def cmd_train_detector(args, cfg):
    m = load_manifest(_need(cfg.manifest, "--manifest"))
    split = load_split(_need(cfg.split, "--split"))
    model = det.train_detector(cfg, m, split, _features(args))
    out = _out_dir(cfg)
    model.save(out / "detector.model")
    (out / "detector.json").write_text(to_json(list(model.models), model.kind) + "\n")
    (out / "config.json").write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")
    print(out / "detector.model")


def cmd_eval_detector(args, cfg):
    m = load_manifest(_need(cfg.manifest, "--manifest"))
    split = load_split(_need(cfg.split, "--split"))
    model = det.Detector.load(args.model)
    result = det.evaluate_detector(model, cfg.override(detector=model.kind), m, split, _features(args))
    out = _out_dir(cfg)
    write_scores(out / "scores.txt", result.records)
    (out / "summary.json").write_text(json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n")
    print(json.dumps(result.to_dict(), sort_keys=True))


def cmd_run_vuln(args, cfg):
    m = load_manifest(_need(cfg.manifest, "--manifest"))
    store = embeddings.load_store(m)
    result = run_vulnerability_experiment(m, store, bins=cfg.bins, quality=cfg.quality, impostors=cfg.impostors)
    out = _out_dir(cfg)
    write_scores(out / "licit_scores.txt", result.licit)
    write_scores(out / "attack_scores.txt", result.attack)
    doc = result.to_dict()
    (out / "summary.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    emit_report([doc], out)
    print(json.dumps(doc["summary"], sort_keys=True))


def cmd_report(args, cfg):
    for p in emit_report(load_summaries(args.summaries), _out_dir(cfg)):
        print(p)


def cmd_synth_corpus(args, cfg):
    params = SynthParams()
    overrides = {"seed": args.seed, "subjects": args.subjects, "frames": args.frames_per_video, "size": args.size}
    params = SynthParams(**{**params.__dict__, **{k: v for k, v in overrides.items() if v is not None}})
    print(generate_corpus(_need(cfg.out, "--out"), params))


COMMANDS = {
    "validate-manifest": cmd_validate_manifest,
    "make-split": cmd_make_split,
    "extract-features": cmd_extract_features,
    "train-detector": cmd_train_detector,
    "eval-detector": cmd_eval_detector,
    "run-vuln": cmd_run_vuln,
    "report": cmd_report,
    "synth-corpus": cmd_synth_corpus,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        COMMANDS[args.command](args, cfg)
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, SplitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
