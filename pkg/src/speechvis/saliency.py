"""Per-frame saliency and per-segment cumulative masks.

Frames are grayscale arrays in [0,1]. The saliency transform is the
raster-scan approximation of the minimum barrier distance: boundary pixels
seed the distance map at 0 and each pass relaxes every pixel from its
already-visited neighbors, first in raster order (up/left), then in inverse
raster order (down/right). The per-pixel path maximum/minimum maps make the
barrier cost max(U,p)-min(L,p) incremental.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np
from numba import njit
from PIL import Image

REC601 = (0.299, 0.587, 0.114)

_FRAME_RE = re.compile(r"^frame_(\d{6})\.(png|jpg)$")


class ShapeMismatch(ValueError):
    pass


class MissingFrame(FileNotFoundError):
    def __init__(self, index: int, path: Path):
        self.index = index
        self.path = path
        super().__init__(f"no frame file for second {index} (looked for {path})")


@njit(cache=True)
def _mbd_passes(img, dist, pmax, pmin, n_passes):
    h, w = img.shape
    for _ in range(n_passes):
        # raster sweep: relax from up/left
        for y in range(h):
            for x in range(w):
                v = img[y, x]
                d = dist[y, x]
                if y > 0:
                    hi = max(pmax[y - 1, x], v)
                    lo = min(pmin[y - 1, x], v)
                    if hi - lo < d:
                        d = hi - lo
                        dist[y, x] = d
                        pmax[y, x] = hi
                        pmin[y, x] = lo
                if x > 0:
                    hi = max(pmax[y, x - 1], v)
                    lo = min(pmin[y, x - 1], v)
                    if hi - lo < d:
                        d = hi - lo
                        dist[y, x] = d
                        pmax[y, x] = hi
                        pmin[y, x] = lo
        # inverse raster sweep: relax from down/right
        for y in range(h - 1, -1, -1):
            for x in range(w - 1, -1, -1):
                v = img[y, x]
                d = dist[y, x]
                if y < h - 1:
                    hi = max(pmax[y + 1, x], v)
                    lo = min(pmin[y + 1, x], v)
                    if hi - lo < d:
                        d = hi - lo
                        dist[y, x] = d
                        pmax[y, x] = hi
                        pmin[y, x] = lo
                if x < w - 1:
                    hi = max(pmax[y, x + 1], v)
                    lo = min(pmin[y, x + 1], v)
                    if hi - lo < d:
                        d = hi - lo
                        dist[y, x] = d
                        pmax[y, x] = hi
                        pmin[y, x] = lo


def _check_gray(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"expected non-empty 2-D gray image, got shape {img.shape}")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("gray image values must lie in [0,1]")
    return img


def mbd_raw(img: np.ndarray, passes: int = 3) -> np.ndarray:
    """Raw (unnormalized) barrier distances to the image boundary."""
    if passes < 1:
        raise ValueError("passes must be >= 1")
    img = _check_gray(img)
    h, w = img.shape
    dist = np.full((h, w), np.inf)
    dist[0, :] = 0.0
    dist[-1, :] = 0.0
    dist[:, 0] = 0.0
    dist[:, -1] = 0.0
    pmax = img.copy()
    pmin = img.copy()
    _mbd_passes(img, dist, pmax, pmin, passes)
    return dist


def mbd_transform(img: np.ndarray, passes: int = 3) -> np.ndarray:
    """Saliency map in [0,1]; max is 1 unless all raw distances are 0."""
    dist = mbd_raw(img, passes)
    peak = dist.max()
    if peak > 0:
        return dist / peak
    return np.zeros_like(dist)


def otsu_threshold(saliency: np.ndarray) -> float:
    """Between-class-variance-maximizing threshold of a 256-bin histogram.

    Values are quantized by floor(v*256) (clamped to bin 255); candidate
    t splits bins <=t from bins >t and both sides must be non-empty. Ties
    take the lowest t; a single occupied bin takes itself. The returned
    value is the winning bin's upper edge, (t+1)/256, so binarizing the
    degenerate uniform map with strict '>' yields an all-false mask.
    """
    saliency = _check_gray(saliency)
    q = np.minimum((saliency * 256).astype(np.int64), 255)
    hist = np.bincount(q.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    w0 = np.cumsum(hist)
    sum0 = np.cumsum(hist * np.arange(256))
    w1 = total - w0
    valid = (w0 > 0) & (w1 > 0)
    if not valid.any():
        t = int(np.flatnonzero(hist)[0])
        return (t + 1) / 256.0
    mu0 = np.where(valid, sum0 / np.maximum(w0, 1), 0.0)
    mu1 = np.where(valid, (sum0[-1] - sum0) / np.maximum(w1, 1), 0.0)
    sigma = np.where(valid, w0 * w1 * (mu0 - mu1) ** 2, -1.0)
    t = int(np.argmax(sigma))  # argmax returns the lowest index on ties
    return (t + 1) / 256.0


def binarize(saliency: np.ndarray, threshold: float) -> np.ndarray:
    """Boolean mask of pixels strictly above the threshold."""
    saliency = np.asarray(saliency)
    if saliency.ndim != 2:
        raise ValueError("expected a 2-D saliency map")
    return saliency > threshold


def cumulative_mask(masks: list[np.ndarray]) -> np.ndarray:
    """Per-pixel OR across all per-frame masks of one transcript segment."""
    if not masks:
        raise ValueError("cumulative_mask needs at least one mask")
    shape = masks[0].shape
    for m in masks[1:]:
        if m.shape != shape:
            raise ShapeMismatch(f"mask shape {m.shape} != {shape}")
    out = masks[0].astype(bool).copy()
    for m in masks[1:]:
        np.logical_or(out, m, out=out)
    return out


def sample_frame_indices(t_start: float, t_end: float) -> list[int]:
    """Integer seconds i with t_start <= i <= t_end, ascending.

    A sub-second segment that straddles no integer boundary still owns one
    frame: floor(t_start).
    """
    if not (0 <= t_start < t_end):
        raise ValueError(f"invalid interval [{t_start}, {t_end}]")
    lo = math.ceil(t_start)
    hi = math.floor(t_end)
    if lo > hi:
        return [math.floor(t_start)]
    return list(range(lo, hi + 1))


def to_gray(arr: np.ndarray) -> np.ndarray:
    """Luminance in [0,1] from an RGB(A) or grayscale uint8/float array."""
    arr = np.asarray(arr)
    if arr.dtype == np.uint8:
        arr = arr.astype(np.float64) / 255.0
    else:
        arr = arr.astype(np.float64)
    if arr.ndim == 2:
        return np.clip(arr, 0.0, 1.0)
    if arr.ndim == 3 and arr.shape[2] >= 3:
        r, g, b = REC601
        return np.clip(r * arr[..., 0] + g * arr[..., 1] + b * arr[..., 2], 0.0, 1.0)
    raise ValueError(f"unsupported image shape {arr.shape}")


class FrameStore:
    """Directory of frames pre-extracted at 1 fps, named frame_%06d.png/.jpg.

    The six-digit number is the integer second index. A README-documented
    ffmpeg invocation produces this layout from a source video.
    """

    def __init__(self, root, fps: float = 1.0):
        self.root = Path(root)
        self.fps = fps
        if not self.root.is_dir():
            raise NotADirectoryError(f"frame directory not found: {self.root}")

    def resolve(self, index: int) -> Path:
        candidates = [
            self.root / f"frame_{index:06d}.png",
            self.root / f"frame_{index:06d}.jpg",
        ]
        present = [p for p in candidates if p.is_file()]
        if not present:
            raise MissingFrame(index, candidates[0])
        if len(present) > 1:
            raise ValueError(f"frame {index} resolves to multiple files in {self.root}")
        return present[0]

    def indices(self) -> list[int]:
        out = []
        for p in self.root.iterdir():
            m = _FRAME_RE.match(p.name)
            if m:
                out.append(int(m.group(1)))
        return sorted(set(out))

    def load_gray(self, index: int) -> np.ndarray:
        with Image.open(self.resolve(index)) as im:
            return to_gray(np.asarray(im.convert("RGB")))

    def frame_size(self) -> tuple[int, int]:
        """(width, height) of the store, taken from the first frame."""
        idx = self.indices()
        if not idx:
            raise MissingFrame(0, self.root / "frame_000000.png")
        with Image.open(self.resolve(idx[0])) as im:
            return im.size


def segment_saliency(store: FrameStore, t_start: float, t_end: float,
                     passes: int = 3) -> np.ndarray:
    """OR-composition of binarized per-frame saliency over a segment's window."""
    masks = []
    for idx in sample_frame_indices(t_start, t_end):
        gray = store.load_gray(idx)
        smap = mbd_transform(gray, passes)
        masks.append(binarize(smap, otsu_threshold(smap)))
    return cumulative_mask(masks)
