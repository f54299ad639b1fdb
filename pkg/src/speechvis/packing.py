"""Overlay packing: find low-saliency rectangles for images and keyphrases.

Search order is part of the contract (results land in a reproducible
manifest): candidate sizes largest-first, and for each size a top-to-bottom,
left-to-right scan on a fixed stride. The first rectangle whose salient-pixel
count stays under budget wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fonts import TextMetrics


class OutOfBounds(ValueError):
    pass


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"degenerate rect {self.w}x{self.h}")

    def as_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "w": self.w, "h": self.h}


@dataclass(frozen=True)
class PlacementConfig:
    salient_budget_fraction: float = 0.02
    shrink_factor: float = 0.9
    min_width_fraction: float = 0.2
    scan_stride: int = 8
    margin: int = 8

    def __post_init__(self):
        if not 0.0 <= self.salient_budget_fraction <= 1.0:
            raise ValueError("salient_budget_fraction must be in [0, 1]")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError("shrink_factor must be in (0, 1)")
        if not 0.0 < self.min_width_fraction <= 1.0:
            raise ValueError("min_width_fraction must be in (0, 1]")
        if self.scan_stride < 1:
            raise ValueError("scan_stride must be >= 1")
        if self.margin < 0:
            raise ValueError("margin must be >= 0")


@dataclass(frozen=True)
class PlacedAugmentation:
    segment_index: int
    kind: str  # "image" | "keyphrase"
    rect: Rect
    ref: str  # asset path for images, the phrase itself for text
    style: dict = field(default_factory=dict)


RENDER_STYLE_IMAGE = {"border": "white"}
RENDER_STYLE_KEYPHRASE = {"color": "red"}


def build_integral(mask: np.ndarray) -> np.ndarray:
    """Summed-area table with a zero top row/left column, shape (H+1, W+1)."""
    if mask.ndim != 2:
        raise ValueError(f"expected 2-D mask, got shape {mask.shape}")
    ii = np.zeros((mask.shape[0] + 1, mask.shape[1] + 1), dtype=np.int64)
    ii[1:, 1:] = mask.astype(np.int64).cumsum(axis=0).cumsum(axis=1)
    return ii


def count_salient(ii: np.ndarray, rect: Rect) -> int:
    h, w = ii.shape[0] - 1, ii.shape[1] - 1
    if rect.x < 0 or rect.y < 0 or rect.x + rect.w > w or rect.y + rect.h > h:
        raise OutOfBounds(f"{rect} outside {w}x{h} frame")
    return int(
        ii[rect.y + rect.h, rect.x + rect.w]
        - ii[rect.y, rect.x + rect.w]
        - ii[rect.y + rect.h, rect.x]
        + ii[rect.y, rect.x]
    )


def size_schedule(asset_w: int, asset_h: int, frame_w: int, frame_h: int,
                  cfg: PlacementConfig) -> list[tuple[int, int]]:
    """Candidate sizes, aspect-preserving, largest first.

    Starts from the asset size clamped to the frame minus margins and shrinks
    by shrink_factor until width drops below min_width_fraction of the frame.
    """
    if asset_w <= 0 or asset_h <= 0:
        raise ValueError("asset size must be positive")
    avail_w = frame_w - 2 * cfg.margin
    avail_h = frame_h - 2 * cfg.margin
    if avail_w <= 0 or avail_h <= 0:
        return []
    scale = min(1.0, avail_w / asset_w, avail_h / asset_h)
    w = math.floor(asset_w * scale)
    min_w = cfg.min_width_fraction * frame_w
    sizes: list[tuple[int, int]] = []
    while w >= min_w and w >= 1:
        h = max(1, math.floor(w * asset_h / asset_w + 0.5))
        if h <= avail_h and w <= avail_w:
            sizes.append((w, h))
        w_next = math.floor(w * cfg.shrink_factor)
        w = w_next if w_next < w else w - 1
    return sizes


def _scan_positions(frame_len: int, box_len: int, margin: int, stride: int) -> range:
    return range(margin, frame_len - margin - box_len + 1, stride)


def _window_sums(ii: np.ndarray, ya: np.ndarray, xa: np.ndarray,
                 w: int, h: int) -> np.ndarray:
    return (
        ii[np.ix_(ya + h, xa + w)]
        - ii[np.ix_(ya, xa + w)]
        - ii[np.ix_(ya + h, xa)]
        + ii[np.ix_(ya, xa)]
    )


def _first_fit(ii: np.ndarray, sizes: list[tuple[int, int]],
               cfg: PlacementConfig, occ_ii: np.ndarray | None = None
               ) -> Rect | None:
    frame_h, frame_w = ii.shape[0] - 1, ii.shape[1] - 1
    for w, h in sizes:
        ys = _scan_positions(frame_h, h, cfg.margin, cfg.scan_stride)
        xs = _scan_positions(frame_w, w, cfg.margin, cfg.scan_stride)
        if not ys or not xs:
            continue
        ya = np.fromiter(ys, dtype=np.int64)
        xa = np.fromiter(xs, dtype=np.int64)
        ok = _window_sums(ii, ya, xa, w, h) < cfg.salient_budget_fraction * w * h
        if occ_ii is not None:
            # already-placed rects are hard obstacles, not budget spend
            ok &= _window_sums(occ_ii, ya, xa, w, h) == 0
        if ok.any():
            flat = int(np.argmax(ok))  # row-major: y-major, x-minor
            return Rect(int(xa[flat % len(xa)]), int(ya[flat // len(xa)]), w, h)
    return None


def find_placement(mask: np.ndarray, asset_w: int, asset_h: int,
                   cfg: PlacementConfig,
                   occupied: np.ndarray | None = None) -> Rect | None:
    """First under-budget rectangle in declared scan order, or None."""
    sizes = size_schedule(asset_w, asset_h, mask.shape[1], mask.shape[0], cfg)
    occ_ii = None if occupied is None else build_integral(occupied)
    return _first_fit(build_integral(mask), sizes, cfg, occ_ii)


def find_text_placement(mask: np.ndarray, text_w: int, text_h: int,
                        cfg: PlacementConfig,
                        occupied: np.ndarray | None = None) -> Rect | None:
    """Same scan as find_placement but at the exact text size (no shrinking)."""
    frame_h, frame_w = mask.shape
    if (text_w > frame_w - 2 * cfg.margin) or (text_h > frame_h - 2 * cfg.margin):
        return None
    occ_ii = None if occupied is None else build_integral(occupied)
    return _first_fit(build_integral(mask), [(text_w, text_h)], cfg, occ_ii)


def commit_placement(mask: np.ndarray, rect: Rect) -> np.ndarray:
    """New mask with the rectangle marked occupied; the input is not mutated."""
    h, w = mask.shape
    if rect.x < 0 or rect.y < 0 or rect.x + rect.w > w or rect.y + rect.h > h:
        raise OutOfBounds(f"{rect} outside {w}x{h} frame")
    out = mask.copy()
    out[rect.y : rect.y + rect.h, rect.x : rect.x + rect.w] = True
    return out


def pack_segment(mask: np.ndarray, segment_index: int,
                 image: tuple[int, int, str] | None, phrases: list[str],
                 cfg: PlacementConfig, metrics: TextMetrics
                 ) -> tuple[list[PlacedAugmentation], list[str], np.ndarray]:
    """Place the segment's image (first) then its keyphrases.

    image is (asset_w, asset_h, ref). Returns (placements, skip reasons,
    final occupancy mask). Anything that does not fit is skipped with a
    reason; placements never overlap each other or the frame edge.
    """
    placed: list[PlacedAugmentation] = []
    skips: list[str] = []
    occupied = np.zeros_like(mask, dtype=bool)
    if image is not None:
        asset_w, asset_h, ref = image
        rect = find_placement(mask, asset_w, asset_h, cfg, occupied)
        if rect is None:
            skips.append("image-not-placed")
        else:
            placed.append(PlacedAugmentation(segment_index, "image", rect, ref,
                                             dict(RENDER_STYLE_IMAGE)))
            occupied = commit_placement(occupied, rect)
    for phrase in phrases:
        text_w, text_h = metrics.measure(phrase)
        rect = find_text_placement(mask, text_w, text_h, cfg, occupied)
        if rect is None:
            skips.append(f"keyphrase-not-placed:{phrase}")
            continue
        placed.append(PlacedAugmentation(segment_index, "keyphrase", rect, phrase,
                                         dict(RENDER_STYLE_KEYPHRASE)))
        occupied = commit_placement(occupied, rect)
    return placed, skips, np.logical_or(mask, occupied)
