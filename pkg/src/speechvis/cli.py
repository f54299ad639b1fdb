"""Command-line entry points: process, serve, saliency, report.

Exit codes: 0 success, 1 input/processing error, 2 configuration or usage
error (argparse uses 2 natively). The process command prints one JSON summary
line to stdout; progress goes to stderr so stdout stays machine-readable.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np
from PIL import Image

from .config import ConfigError, load_settings
from .manifest import (
    MANIFEST_NAME,
    InvariantViolation,
    SchemaMismatch,
    build_project,
)
from .saliency import MissingFrame, binarize, mbd_transform, otsu_threshold, to_gray
from .transcript import TranscriptError


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_process(args: argparse.Namespace) -> int:
    settings = load_settings(args.config)
    overrides = {}
    if args.offline:
        overrides["offline"] = True
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threshold is not None:
        overrides["threshold"] = args.threshold
    if overrides:
        settings = dataclasses.replace(settings, **overrides)

    out_dir = Path(args.out)
    project_id = args.project_id or out_dir.name
    manifest = build_project(
        project_id=project_id,
        frames_dir=Path(args.frames),
        transcript_path=Path(args.transcript),
        out_dir=out_dir,
        settings=settings,
        dump_masks=args.dump_masks,
        dump_packing=args.dump_packing,
        progress=_progress,
    )
    segments = manifest["segments"]
    summary = {
        "project_id": project_id,
        "manifest": str(out_dir / MANIFEST_NAME),
        "segments": len(segments),
        "augmented": sum(1 for e in segments if e["placements"]),
        "images": sum(1 for e in segments if e["image_asset"]),
        "skipped": sum(1 for e in segments if e["skip_reasons"]),
    }
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import run

    ui_dir = Path(args.ui) if args.ui else None
    run(root=Path(args.root), port=args.port, bind=args.bind, ui_dir=ui_dir,
        allow_origins=args.allow_origin or None)
    return 0


def cmd_saliency(args: argparse.Namespace) -> int:
    frame = Path(args.frame)
    if not frame.is_file():
        raise FileNotFoundError(f"no such frame: {frame}")
    with Image.open(frame) as im:
        rgb = np.asarray(im.convert("RGB"))
    smap = mbd_transform(to_gray(rgb), passes=args.passes)
    threshold = None
    if args.binarize:
        threshold = float(otsu_threshold(smap))
        out = binarize(smap, threshold).astype(np.uint8) * 255
    else:
        out = np.clip(smap * 255.0 + 0.5, 0, 255).astype(np.uint8)
    Image.fromarray(out, mode="L").save(args.out)
    print(json.dumps({"frame": str(frame), "out": str(args.out),
                      "passes": args.passes, "threshold": threshold}))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    from .report import write_report

    written = write_report(Path(args.manifest), Path(args.out))
    print(json.dumps({"out": str(args.out),
                      "files": [p.name for p in written]}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="speechvis",
        description="Augment speech-rich video with saliency-aware images "
                    "and keyphrase overlays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("process", help="build a project manifest and assets")
    p.add_argument("--frames", required=True, help="directory of frame_%%06d.png files")
    p.add_argument("--transcript", required=True, help=".srt or .vtt transcript")
    p.add_argument("--out", required=True, help="output project directory")
    p.add_argument("--config", help="YAML settings file")
    p.add_argument("--project-id", help="stable id (default: output dir name)")
    p.add_argument("--offline", action="store_true",
                   help="force deterministic stub backends")
    p.add_argument("--seed", type=int, help="base seed for image generation")
    p.add_argument("--threshold", type=int,
                   help="imageability cutoff (generate when score is above it)")
    p.add_argument("--dump-masks", action="store_true",
                   help="also write per-segment saliency masks under debug/")
    p.add_argument("--dump-packing", action="store_true",
                   help="also write packing overlays under debug/")
    p.set_defaults(fn=cmd_process)

    p = sub.add_parser("serve", help="serve built projects over HTTP")
    env_root = os.environ.get("SPEECHVIS_ROOT")
    p.add_argument("--root", required=env_root is None, default=env_root,
                   help="directory of project dirs ($SPEECHVIS_ROOT)")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("SPEECHVIS_PORT", "8008")),
                   help="listen port ($SPEECHVIS_PORT)")
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--ui", help="static UI build directory")
    p.add_argument("--allow-origin", action="append",
                   help="CORS origin allow-list entry (repeatable)")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("saliency", help="saliency map for a single frame")
    p.add_argument("--frame", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--passes", type=int, default=3)
    p.add_argument("--binarize", action="store_true")
    p.set_defaults(fn=cmd_saliency)

    p = sub.add_parser("report", help="CSV + figures for a built manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (TranscriptError, MissingFrame, SchemaMismatch, InvariantViolation,
            FileNotFoundError, NotADirectoryError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
