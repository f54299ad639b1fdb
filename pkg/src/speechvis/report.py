"""Build report: per-segment CSV plus summary figures rendered to files."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # render to files; no display in batch runs
import matplotlib.pyplot as plt  # noqa: E402

from .manifest import load_manifest

CSV_NAME = "segments.csv"
SCORE_FIG = "scores.png"
COVERAGE_FIG = "coverage.png"


def write_segment_csv(manifest: dict, path: Path) -> None:
    fields = ["index", "t_start", "t_end", "score", "score_backend",
              "keyphrases", "placements", "image_asset", "skip_reasons", "text"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for e in manifest["segments"]:
            writer.writerow({
                "index": e["index"],
                "t_start": f"{e['t_start']:.3f}",
                "t_end": f"{e['t_end']:.3f}",
                "score": e["score"],
                "score_backend": e["score_backend"],
                "keyphrases": "|".join(k["phrase"] for k in e["keyphrases"]),
                "placements": len(e["placements"]),
                "image_asset": e["image_asset"] or "",
                "skip_reasons": "|".join(e["skip_reasons"]),
                "text": e["text"],
            })


def plot_scores(manifest: dict, path: Path) -> None:
    """Imageability per segment with the generation threshold marked."""
    entries = manifest["segments"]
    xs = [e["index"] for e in entries]
    ys = [e["score"] for e in entries]
    threshold = manifest["threshold"]
    colors = ["#d94f2b" if y > threshold else "#8a8a8a" for y in ys]
    fig, ax = plt.subplots(figsize=(max(6, len(xs) * 0.6), 3.2))
    ax.bar(xs, ys, color=colors)
    ax.axhline(threshold + 0.5, color="#333333", linestyle="--", linewidth=1,
               label=f"generation cutoff (> {threshold})")
    ax.set_xlabel("segment")
    ax.set_ylabel("imageability")
    ax.set_ylim(0, 10.5)
    ax.set_xticks(xs)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_coverage(manifest: dict, path: Path) -> None:
    """Fraction of frame area covered by augmentations, split by kind."""
    entries = manifest["segments"]
    area = manifest["frame_width"] * manifest["frame_height"]
    xs = [e["index"] for e in entries]
    img_frac = []
    txt_frac = []
    for e in entries:
        img = sum(p["w"] * p["h"] for p in e["placements"] if p["kind"] == "image")
        txt = sum(p["w"] * p["h"] for p in e["placements"] if p["kind"] == "keyphrase")
        img_frac.append(img / area)
        txt_frac.append(txt / area)
    fig, ax = plt.subplots(figsize=(max(6, len(xs) * 0.6), 3.2))
    ax.bar(xs, img_frac, label="image", color="#4477aa")
    ax.bar(xs, txt_frac, bottom=img_frac, label="keyphrases", color="#cc3311")
    ax.set_xlabel("segment")
    ax.set_ylabel("frame area fraction")
    ax.set_xticks(xs)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(manifest_path: Path, out_dir: Path) -> list[Path]:
    """CSV + figures for one manifest; returns the files written."""
    manifest = load_manifest(manifest_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, fn in ((CSV_NAME, write_segment_csv),
                     (SCORE_FIG, plot_scores),
                     (COVERAGE_FIG, plot_coverage)):
        target = out_dir / name
        fn(manifest, target)
        written.append(target)
    return written
