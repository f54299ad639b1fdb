"""Fixed-metric 5x7 bitmap font bundled with the package.

Text boxes in the packing stage and the text drawn onto placeholder images
must measure and render identically on every platform, so the glyphs live
here as data instead of going through a system font stack. Every glyph is
5 columns wide with a 1-column gap (advance 6) on an 8-unit em, which keeps
all metric math in exact integer/rational arithmetic.
"""

from __future__ import annotations

import math

import numpy as np

GLYPH_W = 5
GLYPH_H = 7
ADVANCE = 6  # 5px glyph + 1px gap
EM = 8  # 7px glyph + 1px line gap

_RAW = {
    " ": (
        ".....",
        ".....",
        ".....",
        ".....",
        ".....",
        ".....",
        ".....",
    ),
    "0": (
        ".###.",
        "#...#",
        "#..##",
        "#.#.#",
        "##..#",
        "#...#",
        ".###.",
    ),
    "1": (
        "..#..",
        ".##..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        ".###.",
    ),
    "2": (
        ".###.",
        "#...#",
        "....#",
        "...#.",
        "..#..",
        ".#...",
        "#####",
    ),
    "3": (
        ".###.",
        "#...#",
        "....#",
        "..##.",
        "....#",
        "#...#",
        ".###.",
    ),
    "4": (
        "...#.",
        "..##.",
        ".#.#.",
        "#..#.",
        "#####",
        "...#.",
        "...#.",
    ),
    "5": (
        "#####",
        "#....",
        "####.",
        "....#",
        "....#",
        "#...#",
        ".###.",
    ),
    "6": (
        "..##.",
        ".#...",
        "#....",
        "####.",
        "#...#",
        "#...#",
        ".###.",
    ),
    "7": (
        "#####",
        "....#",
        "...#.",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
    ),
    "8": (
        ".###.",
        "#...#",
        "#...#",
        ".###.",
        "#...#",
        "#...#",
        ".###.",
    ),
    "9": (
        ".###.",
        "#...#",
        "#...#",
        ".####",
        "....#",
        "...#.",
        ".##..",
    ),
    "A": (
        ".###.",
        "#...#",
        "#...#",
        "#####",
        "#...#",
        "#...#",
        "#...#",
    ),
    "B": (
        "####.",
        "#...#",
        "#...#",
        "####.",
        "#...#",
        "#...#",
        "####.",
    ),
    "C": (
        ".###.",
        "#...#",
        "#....",
        "#....",
        "#....",
        "#...#",
        ".###.",
    ),
    "D": (
        "####.",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "####.",
    ),
    "E": (
        "#####",
        "#....",
        "#....",
        "####.",
        "#....",
        "#....",
        "#####",
    ),
    "F": (
        "#####",
        "#....",
        "#....",
        "####.",
        "#....",
        "#....",
        "#....",
    ),
    "G": (
        ".###.",
        "#...#",
        "#....",
        "#.###",
        "#...#",
        "#...#",
        ".###.",
    ),
    "H": (
        "#...#",
        "#...#",
        "#...#",
        "#####",
        "#...#",
        "#...#",
        "#...#",
    ),
    "I": (
        ".###.",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        ".###.",
    ),
    "J": (
        "..###",
        "...#.",
        "...#.",
        "...#.",
        "...#.",
        "#..#.",
        ".##..",
    ),
    "K": (
        "#...#",
        "#..#.",
        "#.#..",
        "##...",
        "#.#..",
        "#..#.",
        "#...#",
    ),
    "L": (
        "#....",
        "#....",
        "#....",
        "#....",
        "#....",
        "#....",
        "#####",
    ),
    "M": (
        "#...#",
        "##.##",
        "#.#.#",
        "#.#.#",
        "#...#",
        "#...#",
        "#...#",
    ),
    "N": (
        "#...#",
        "##..#",
        "#.#.#",
        "#..##",
        "#...#",
        "#...#",
        "#...#",
    ),
    "O": (
        ".###.",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        ".###.",
    ),
    "P": (
        "####.",
        "#...#",
        "#...#",
        "####.",
        "#....",
        "#....",
        "#....",
    ),
    "Q": (
        ".###.",
        "#...#",
        "#...#",
        "#...#",
        "#.#.#",
        "#..#.",
        ".##.#",
    ),
    "R": (
        "####.",
        "#...#",
        "#...#",
        "####.",
        "#.#..",
        "#..#.",
        "#...#",
    ),
    "S": (
        ".####",
        "#....",
        "#....",
        ".###.",
        "....#",
        "....#",
        "####.",
    ),
    "T": (
        "#####",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
    ),
    "U": (
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        ".###.",
    ),
    "V": (
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        "#...#",
        ".#.#.",
        "..#..",
    ),
    "W": (
        "#...#",
        "#...#",
        "#...#",
        "#.#.#",
        "#.#.#",
        "##.##",
        "#...#",
    ),
    "X": (
        "#...#",
        "#...#",
        ".#.#.",
        "..#..",
        ".#.#.",
        "#...#",
        "#...#",
    ),
    "Y": (
        "#...#",
        "#...#",
        ".#.#.",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
    ),
    "Z": (
        "#####",
        "....#",
        "...#.",
        "..#..",
        ".#...",
        "#....",
        "#####",
    ),
    ".": (
        ".....",
        ".....",
        ".....",
        ".....",
        ".....",
        ".##..",
        ".##..",
    ),
    ",": (
        ".....",
        ".....",
        ".....",
        ".....",
        ".##..",
        "..#..",
        ".#...",
    ),
    ":": (
        ".....",
        ".##..",
        ".##..",
        ".....",
        ".##..",
        ".##..",
        ".....",
    ),
    ";": (
        ".....",
        ".##..",
        ".##..",
        ".....",
        ".##..",
        "..#..",
        ".#...",
    ),
    "!": (
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        "..#..",
        ".....",
        "..#..",
    ),
    "?": (
        ".###.",
        "#...#",
        "....#",
        "...#.",
        "..#..",
        ".....",
        "..#..",
    ),
    "-": (
        ".....",
        ".....",
        ".....",
        "#####",
        ".....",
        ".....",
        ".....",
    ),
    "+": (
        ".....",
        "..#..",
        "..#..",
        "#####",
        "..#..",
        "..#..",
        ".....",
    ),
    "'": (
        "..#..",
        "..#..",
        ".....",
        ".....",
        ".....",
        ".....",
        ".....",
    ),
    '"': (
        ".#.#.",
        ".#.#.",
        ".....",
        ".....",
        ".....",
        ".....",
        ".....",
    ),
    "/": (
        "....#",
        "....#",
        "...#.",
        "..#..",
        ".#...",
        "#....",
        "#....",
    ),
    "(": (
        "...#.",
        "..#..",
        ".#...",
        ".#...",
        ".#...",
        "..#..",
        "...#.",
    ),
    ")": (
        ".#...",
        "..#..",
        "...#.",
        "...#.",
        "...#.",
        "..#..",
        ".#...",
    ),
    "%": (
        "##..#",
        "##..#",
        "...#.",
        "..#..",
        ".#...",
        "#..##",
        "#..##",
    ),
    "&": (
        ".##..",
        "#..#.",
        "#.#..",
        ".#...",
        "#.#.#",
        "#..#.",
        ".##.#",
    ),
    "#": (
        ".#.#.",
        "#####",
        ".#.#.",
        ".#.#.",
        ".#.#.",
        "#####",
        ".#.#.",
    ),
}

# Unknown characters render as a hollow box.
_FALLBACK = (
    "#####",
    "#...#",
    "#...#",
    "#...#",
    "#...#",
    "#...#",
    "#####",
)


def _compile(rows):
    g = np.zeros((GLYPH_H, GLYPH_W), dtype=bool)
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            g[y, x] = ch == "#"
    return g


_GLYPHS = {ch: _compile(rows) for ch, rows in _RAW.items()}
_FALLBACK_GLYPH = _compile(_FALLBACK)


def glyph(ch: str) -> np.ndarray:
    """Boolean 7x5 bitmap for one character; lowercase folds to uppercase."""
    return _GLYPHS.get(ch.upper(), _FALLBACK_GLYPH)


class TextMetrics:
    """Single-line text measurement at a configured point size.

    The point size is the pixel height of the rendered line (one em). Widths
    scale the fixed per-character advance by point/EM and round up, so the
    same text at the same point size measures identically everywhere.
    """

    def __init__(self, point_px: int):
        if point_px < 1:
            raise ValueError(f"point size must be >= 1, got {point_px}")
        self.point_px = int(point_px)

    def measure(self, text: str) -> tuple[int, int]:
        """Return (width_px, height_px) of `text` as a single line."""
        if not text:
            return (0, self.point_px)
        w = math.ceil(len(text) * ADVANCE * self.point_px / EM)
        return (w, self.point_px)


def render_text(canvas: np.ndarray, text: str, x: int, y: int, scale: int,
                value) -> None:
    """Draw `text` onto a 2-D (gray) or 3-D (RGB) array, clipping at edges.

    `scale` is an integer pixel multiplier per glyph cell; `value` is the
    scalar (gray) or length-3 sequence (RGB) written at set pixels.
    """
    if scale < 1:
        raise ValueError("scale must be >= 1")
    h, w = canvas.shape[:2]
    cx = x
    for ch in text:
        g = glyph(ch)
        big = np.kron(g, np.ones((scale, scale), dtype=bool))
        gh, gw = big.shape
        x0, y0 = max(cx, 0), max(y, 0)
        x1, y1 = min(cx + gw, w), min(y + gh, h)
        if x1 > x0 and y1 > y0:
            sub = big[y0 - y : y1 - y, x0 - cx : x1 - cx]
            canvas[y0:y1, x0:x1][sub] = value
        cx += ADVANCE * scale
        if cx >= w:
            break


def default_point_size(frame_height: int, fraction: float = 0.05) -> int:
    """Keyphrase point size: a fraction of the frame height, floored at one em."""
    return max(EM, round(frame_height * fraction))
