"""Result tables and score-histogram figures.

Summaries are plain dicts as produced by ``DetectorResult.to_dict`` and
``VulnResult.to_dict``. Percentages are rounded only when rendered.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

import numpy as np

TABLE_COLUMNS = ("database", "detector", "EER%", "FRR@FAR10%")
VULN_COLUMNS = ("database", "licit EER%", "threshold", "attack FAR%")
SERIES = (("genuine", "#1f77b4"), ("zero_effort", "#2ca02c"), ("attack", "#d62728"))


def _pct(x) -> str:
    return f"{100.0 * x:.2f}"


def detector_table(summaries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for s in summaries:
        w.writerow([s["database"], s["detector"], _pct(s["summary"]["eer"]), _pct(s["summary"]["frr_at_far10"])])
    return buf.getvalue()


def vulnerability_table(summaries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(VULN_COLUMNS)
    for s in summaries:
        m = s["summary"]
        w.writerow([s["database"], _pct(m["eer"]), f"{m['eer_threshold']:.4f}", _pct(m["attack_far"])])
    return buf.getvalue()


def histogram_csv(vuln: dict) -> str:
    edges = np.linspace(-1.0, 1.0, vuln["bins"] + 1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("bin_lo", "bin_hi") + tuple(name for name, _ in SERIES))
    for i in range(vuln["bins"]):
        w.writerow([f"{edges[i]:.6f}", f"{edges[i + 1]:.6f}"] + [vuln["histograms"][n][i] for n, _ in SERIES])
    return buf.getvalue()


def histogram_svg(vuln: dict, width: int = 480, height: int = 300) -> str:
    """Overlaid step histograms (each normalized to unit area) plus the
    licit EER threshold as a dashed vertical line."""
    bins = vuln["bins"]
    left, right, top, bottom = 50, 10, 20, 40
    pw, ph = width - left - right, height - top - bottom
    edges = np.linspace(-1.0, 1.0, bins + 1)
    freqs = {}
    for name, _ in SERIES:
        counts = np.asarray(vuln["histograms"][name], dtype=np.float64)
        freqs[name] = counts / counts.sum() if counts.sum() > 0 else counts
    ymax = max(max(float(f.max()) for f in freqs.values()), 1e-12)

    def px(x):
        return left + (x + 1.0) / 2.0 * pw

    def py(y):
        return top + ph - y / ymax * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for name, color in SERIES:
        pts = [f"{px(edges[0]):.2f},{py(0):.2f}"]
        for i in range(bins):
            pts.append(f"{px(edges[i]):.2f},{py(freqs[name][i]):.2f}")
            pts.append(f"{px(edges[i + 1]):.2f},{py(freqs[name][i]):.2f}")
        pts.append(f"{px(edges[-1]):.2f},{py(0):.2f}")
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(pts)}"/>')
    theta = vuln["summary"]["eer_threshold"]
    x = px(min(max(theta, -1.0), 1.0))
    out.append(f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" stroke="black" stroke-dasharray="4,3"/>')
    for tick in (-1.0, -0.5, 0.0, 0.5, 1.0):
        out.append(f'<text x="{px(tick):.2f}" y="{top + ph + 15}" font-size="10" text-anchor="middle">{tick:g}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 5}" font-size="11" text-anchor="middle">score</text>')
    for i, (name, color) in enumerate(SERIES):
        out.append(f'<text x="{left + 8}" y="{top + 14 + 13 * i}" font-size="10" fill="{color}">{name.replace("_", "-")}</text>')
    out.append(f'<text x="{x + 3:.2f}" y="{top + ph - 5}" font-size="10">EER threshold {theta:.3f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "-", text).strip("-").lower()


def emit_report(summaries, out_dir) -> list:
    """Write the detector table, vulnerability table and one histogram
    SVG/CSV per vulnerability summary. Returns the written paths."""
    summaries = list(summaries)
    if not summaries:
        raise ValueError("nothing to report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    detectors = [s for s in summaries if s.get("kind") == "detector"]
    vulns = [s for s in summaries if s.get("kind") == "vulnerability"]
    if detectors:
        p = out / "detection_table.csv"
        p.write_text(detector_table(detectors))
        written.append(p)
    if vulns:
        p = out / "vulnerability_table.csv"
        p.write_text(vulnerability_table(vulns))
        written.append(p)
    for s in vulns:
        stem = "histogram-" + _slug(s["database"] + " " + s.get("system", ""))
        for suffix, text in ((".svg", histogram_svg(s)), (".csv", histogram_csv(s))):
            p = out / (stem + suffix)
            p.write_text(text)
            written.append(p)
    return written


def load_summaries(paths) -> list:
    return [json.loads(Path(p).read_text()) for p in paths]
