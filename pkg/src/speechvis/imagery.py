"""Image prompt formulation, image generation, and the on-disk asset cache.

The placeholder generator is fully deterministic: same prompt text, seed and
size always produce the same pixels, which keeps end-to-end builds
byte-for-byte reproducible without a diffusion backend.
"""

from __future__ import annotations

import colorsys
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from . import fonts, prompts
from .backends import BackendUnavailable, ChatBackend, ImageBackend, StubChatBackend
from .language import ContextBundle
from .util import stable_hash_int

MAX_PROMPT_CHARS = 500
MIN_IMAGE_SIDE = 64
PLACEHOLDER_ID = "placeholder"


class EmptyPrompt(ValueError):
    pass


@dataclass(frozen=True)
class ImagePrompt:
    segment_index: int
    prompt_text: str
    derived_from: str  # digest of the context bundle that produced it

    def __post_init__(self):
        if not self.prompt_text.strip():
            raise EmptyPrompt(f"empty prompt for segment {self.segment_index}")
        if len(self.prompt_text) > MAX_PROMPT_CHARS:
            raise ValueError(
                f"prompt exceeds {MAX_PROMPT_CHARS} chars: {len(self.prompt_text)}"
            )


@dataclass(frozen=True)
class GeneratedImage:
    segment_index: int
    pixels: np.ndarray  # (h, w, 3) uint8
    generator_id: str
    seed: int

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


def truncate_at_word(text: str, limit: int) -> str:
    """Cut to <= limit chars, preferring the last word boundary before it."""
    if len(text) <= limit:
        return text
    cut = text[:limit]
    head, _, _ = cut.rpartition(" ")
    return (head or cut).rstrip()


def formulate_prompt(ctx: ContextBundle, backend: ChatBackend,
                     stub: StubChatBackend | None = None) -> ImagePrompt:
    """Short scene description for the target segment, capped at 500 chars."""
    request = prompts.render_image_prompt_request(
        ctx.global_summary, list(ctx.local_segments), ctx.target_text
    )
    candidates = [b for b in (backend, stub) if b is not None]
    last_error: Exception | None = None
    for candidate in candidates:
        try:
            text = " ".join(candidate.complete(request).split())
            if not text:
                raise EmptyPrompt(f"backend {candidate.backend_id} returned no text")
            return ImagePrompt(
                segment_index=ctx.segment_index,
                prompt_text=truncate_at_word(text, MAX_PROMPT_CHARS),
                derived_from=ctx.digest(),
            )
        except (BackendUnavailable, EmptyPrompt) as exc:
            last_error = exc
    raise last_error if last_error else BackendUnavailable("no prompt backend")


def _hsv_bytes(hue_deg: float, sat: float, val: float) -> np.ndarray:
    r, g, b = colorsys.hsv_to_rgb((hue_deg % 360.0) / 360.0, sat, val)
    return np.array([r * 255, g * 255, b * 255], dtype=np.float64)


def placeholder_image(prompt_text: str, seed: int, width: int = 512,
                      height: int = 512) -> np.ndarray:
    """Two-tone diagonal gradient keyed on (prompt, seed), labelled with the
    first words of the prompt and framed by a 2 px border."""
    if width < MIN_IMAGE_SIDE or height < MIN_IMAGE_SIDE:
        raise ValueError(f"placeholder below minimum size: {width}x{height}")
    key = stable_hash_int(prompt_text) ^ (seed & 0xFFFFFFFFFFFFFFFF)
    hue = key % 360
    light = _hsv_bytes(hue, 0.45, 0.92)
    dark = _hsv_bytes(hue, 0.80, 0.38)

    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    t = ((xx + yy) / max(1, width + height - 2))[..., None]
    img = np.clip(light * (1.0 - t) + dark * t, 0, 255).astype(np.uint8)

    scale = max(1, min(width, height) // 128)
    x0 = y0 = 4 + 2 * scale
    line_h = fonts.EM * scale + 2 * scale
    for i, word in enumerate(prompt_text.split()[:4]):
        fonts.render_text(img, word, x0, y0 + i * line_h, scale=scale,
                          value=(245, 245, 245))

    img[:2, :] = img[-2:, :] = img[:, :2] = img[:, -2:] = 255
    return img


class PlaceholderImageBackend:
    backend_id = PLACEHOLDER_ID

    def generate(self, prompt: str, seed: int, width: int, height: int) -> np.ndarray:
        return placeholder_image(prompt, seed, width, height)


def generate_image(image_prompt: ImagePrompt, backend: ImageBackend | None,
                   seed: int, width: int = 512, height: int = 512) -> GeneratedImage:
    """Render the prompt via the backend, or the placeholder on failure.

    The placeholder fallback reuses the same seed, so a run stays
    deterministic whether or not the real generator was reachable.
    """
    if backend is not None:
        try:
            pixels = backend.generate(image_prompt.prompt_text, seed, width, height)
            return GeneratedImage(
                segment_index=image_prompt.segment_index,
                pixels=np.ascontiguousarray(pixels, dtype=np.uint8),
                generator_id=backend.backend_id,
                seed=seed,
            )
        except BackendUnavailable:
            pass
    return GeneratedImage(
        segment_index=image_prompt.segment_index,
        pixels=placeholder_image(image_prompt.prompt_text, seed, width, height),
        generator_id=PLACEHOLDER_ID,
        seed=seed,
    )


def save_png(pixels: np.ndarray, path: Path) -> None:
    """Atomic PNG write (temp file in the target directory, then rename)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            Image.fromarray(pixels, mode="RGB").save(fh, format="PNG")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class AssetCache:
    """Content-addressed PNG cache with single-flight generation.

    Keyed on (prompt digest, seed, size, generator id). Concurrent requests
    for the same key block on one producer call instead of racing; the
    producer call count is exposed for cache-behaviour tests.
    """

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._inflight: dict[str, threading.Event] = {}
        self.producer_calls = 0

    def path_for(self, prompt_digest: str, seed: int, width: int, height: int,
                 generator_id: str) -> Path:
        safe_gen = "".join(c if c.isalnum() or c in "-_" else "-" for c in generator_id)
        name = f"{prompt_digest[:20]}_{seed & 0xFFFFFFFFFFFFFFFF:016x}_{width}x{height}_{safe_gen}.png"
        return self.root / name

    def get_or_create(self, prompt_digest: str, seed: int, width: int, height: int,
                      generator_id: str, producer) -> Path:
        path = self.path_for(prompt_digest, seed, width, height, generator_id)
        key = path.name
        while True:
            with self._lock:
                if path.exists():
                    return path
                event = self._inflight.get(key)
                if event is None:
                    self._inflight[key] = threading.Event()
                    self.producer_calls += 1
                    break
            event.wait()
        try:
            save_png(producer(), path)
        finally:
            with self._lock:
                self._inflight.pop(key).set()
        return path
