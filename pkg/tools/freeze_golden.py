"""Rebuild the sample project and freeze its canonical manifest.

The frozen file pins pipeline determinism: any intentional behavior change
must regenerate it (and the diff reviewed) for the golden test to pass.

Usage: python3 tools/freeze_golden.py
"""
from __future__ import annotations

import contextlib
import io
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from speechvis.cli import main  # noqa: E402
from speechvis.manifest import canonical_manifest_bytes, load_manifest  # noqa: E402

SAMPLE = REPO / "sample"
GOLDEN = REPO / "tests" / "golden" / "manifest.canonical.json"


def build_once(out_dir: Path) -> bytes:
    argv = [
        "process",
        "--frames", str(SAMPLE / "frames"),
        "--transcript", str(SAMPLE / "transcript.srt"),
        "--out", str(out_dir),
        "--config", str(SAMPLE / "config.yaml"),
        "--offline", "--seed", "7", "--project-id", "sample",
    ]
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    if code != 0:
        raise SystemExit(f"build failed with exit code {code}")
    return canonical_manifest_bytes(load_manifest(out_dir / "manifest.json"))


def run() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        first = build_once(Path(tmp) / "a")
        second = build_once(Path(tmp) / "b")
    if first != second:
        raise SystemExit("two consecutive builds differ; refusing to freeze")
    GOLDEN.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN.write_bytes(first)
    print(f"froze {GOLDEN} ({len(first)} bytes)")


if __name__ == "__main__":
    run()
