#!/usr/bin/env python3
"""Regenerate the checked-in sample project (frames + transcript + config).

Twelve synthetic 320x180 frames at 1 fps: a dark textured backdrop with a
bright disc sweeping left to right and a static bright panel, so saliency
maps have clear structure and packing has both busy and calm regions. The
ten-segment transcript mixes concrete, visual language with abstract talk so
imageability scores land on both sides of the default threshold.

Deterministic: fixed RNG seed, fixed text. Run from the repo root:

    python3 tools/make_sample_project.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

ROOT = Path(__file__).resolve().parent.parent / "sample"
WIDTH, HEIGHT = 320, 180
FRAMES = 12

SEGMENTS = [
    # (start, end, text)
    (0.0, 1.2, "Welcome back, today we are hiking to the mountain lake."),
    (1.2, 2.4, "The trail begins in a dark green pine forest."),
    (2.4, 3.6, "Honestly the permit process involved endless abstract rules."),
    (3.6, 4.8, "A red fox crossed the path right in front of us."),
    (4.8, 6.0, "People argue about policy, but nature does not wait."),
    (6.0, 7.2, "We ate bread and cheese beside a waterfall."),
    (7.2, 8.4, "My opinion kept changing, a vague feeling of doubt and worry."),
    (8.4, 9.6, "Snow covered the summit and the sky turned orange."),
    (9.6, 10.8, "Planning such trips requires patience and judgement."),
    (10.8, 11.8, "A golden eagle circled above the frozen ridge."),
]

CONFIG = """\
# Sample project settings: offline build, default thresholds.
offline: true
threshold: 5
saliency:
  passes: 3
packing:
  scan_stride: 8
  margin: 8
"""


def render_frame(idx: int, rng: np.random.Generator) -> np.ndarray:
    img = np.zeros((HEIGHT, WIDTH, 3), dtype=np.float64)
    grad = np.linspace(18.0, 52.0, HEIGHT)[:, None]
    img += grad[..., None]
    img += rng.normal(0.0, 2.5, size=(HEIGHT, WIDTH, 1))

    yy, xx = np.mgrid[0:HEIGHT, 0:WIDTH].astype(np.float64)

    # bright disc sweeping across the lower half
    cx = 30.0 + idx * 24.0
    cy = 120.0 + 18.0 * np.sin(idx * 0.9)
    disc = (xx - cx) ** 2 + (yy - cy) ** 2 <= 26.0**2
    img[disc] = np.array([235.0, 210.0 - idx * 6.0, 70.0 + idx * 9.0])

    # static bright panel, upper right quadrant
    img[24:72, 230:300] = np.array([200.0, 225.0, 240.0])

    # faint diagonal stripe that drifts per frame
    stripe = np.abs((xx + yy * 0.5) % 160.0 - (idx * 7.0) % 160.0) < 5.0
    img[stripe] += 25.0

    return np.clip(img, 0, 255).astype(np.uint8)


def srt_timestamp(t: float) -> str:
    ms = round(t * 1000)
    h, rem = divmod(ms, 3_600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d},{ms:03d}"


def main() -> None:
    frames_dir = ROOT / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(42)
    for idx in range(FRAMES):
        Image.fromarray(render_frame(idx, rng), mode="RGB").save(
            frames_dir / f"frame_{idx:06d}.png")

    blocks = []
    for i, (t0, t1, text) in enumerate(SEGMENTS):
        blocks.append(f"{i + 1}\n{srt_timestamp(t0)} --> {srt_timestamp(t1)}\n{text}\n")
    (ROOT / "transcript.srt").write_text("\n".join(blocks) + "\n", encoding="utf-8")
    (ROOT / "config.yaml").write_text(CONFIG, encoding="utf-8")
    print(f"wrote {FRAMES} frames + transcript + config under {ROOT}")


if __name__ == "__main__":
    main()
