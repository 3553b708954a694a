"""Licit and tampered verification on a synthetic corpus; writes tables and score histograms.

Usage: python3 scripts/run_vuln_synthetic.py [--subjects 16] [--seed 0] [--out runs/vuln]
"""

import argparse
import json
from pathlib import Path

from deepmorph import embeddings
from deepmorph.experiment.report import emit_report
from deepmorph.experiment.synth import SynthParams, generate_corpus
from deepmorph.experiment.vuln import run_vulnerability_experiment
from deepmorph.manifest import load_manifest


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--subjects", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bins", type=int, default=40)
    ap.add_argument("--impostors", choices=("all", "paired"), default="all")
    ap.add_argument("--out", default="runs/vuln")
    args = ap.parse_args()

    out = Path(args.out)
    params = SynthParams(subjects=args.subjects, seed=args.seed, frames=8, size=24)
    manifest = load_manifest(generate_corpus(out / "corpus", params))
    store = embeddings.load_store(manifest)
    docs = []
    for quality in ("LQ", "HQ"):
        result = run_vulnerability_experiment(manifest, store, bins=args.bins, quality=quality,
                                              impostors=args.impostors)
        docs.append(result.to_dict())
        print(json.dumps({"database": result.database, **docs[-1]["summary"]}, sort_keys=True))
    for p in emit_report(docs, out / "report"):
        print(p)


if __name__ == "__main__":
    main()
