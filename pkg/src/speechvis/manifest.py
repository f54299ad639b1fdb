"""End-to-end build: transcript + frames -> augmentation manifest + assets.

The manifest is the single source of truth consumed by the CLI, the HTTP
service and the UI. It is written as canonical JSON (sorted keys, fixed
3-decimal floats) so identical inputs yield byte-identical files; the
generation timestamp is the one field excluded from canonical comparison.

Per-segment failures never abort a build: each stage records a skip reason on
its segment and processing continues.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from PIL import Image

from . import imagery, language, packing
from .backends import (
    OFFLINE_STUB_ID,
    HttpChatBackend,
    HttpImageBackend,
    StubChatBackend,
)
from .config import PipelineSettings
from .fonts import TextMetrics, default_point_size
from .lexicon import bundled_lexicon
from .saliency import FrameStore, MissingFrame, segment_saliency
from .transcript import parse_transcript_file
from .util import canonical_json_bytes, sha256_hex, stable_hash_int

SCHEMA_VERSION = 1
MANIFEST_NAME = "manifest.json"
ASSET_DIR = "assets/images"


class SchemaMismatch(ValueError):
    pass


class InvariantViolation(ValueError):
    pass


def segment_seed(project_id: str, segment_index: int, base_seed: int) -> int:
    """Stable per-segment seed so one segment's image never depends on another's."""
    return stable_hash_int(f"{project_id}/{segment_index}/{base_seed}") & 0x7FFFFFFF


def _pmap(fn, items, workers: int) -> list:
    """Order-preserving parallel map; falls back to serial for tiny inputs."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def make_chat_backends(settings: PipelineSettings,
                       lexicon=None) -> tuple[object, StubChatBackend | None]:
    """(primary, fallback) chat backends for the given settings."""
    stub = StubChatBackend(lexicon if lexicon is not None else bundled_lexicon())
    if settings.offline or not settings.chat.endpoint:
        return stub, None
    primary = HttpChatBackend(
        endpoint=settings.chat.endpoint,
        model=settings.chat.model,
        timeout=settings.chat.timeout,
        retries=settings.chat.retries,
        temperature=settings.chat.temperature,
    )
    return primary, stub


def make_image_backend(settings: PipelineSettings):
    if settings.offline or not settings.image.endpoint:
        return imagery.PlaceholderImageBackend()
    return HttpImageBackend(
        endpoint=settings.image.endpoint,
        timeout=settings.image.timeout,
        retries=settings.image.retries,
    )


def build_project(project_id: str, frames_dir: Path, transcript_path: Path,
                  out_dir: Path, settings: PipelineSettings | None = None,
                  chat_backend=None, chat_fallback=None, image_backend=None,
                  dump_masks: bool = False, dump_packing: bool = False,
                  progress=None) -> dict:
    """Run the full pipeline and atomically publish manifest + assets.

    Returns the manifest dict that was written to out_dir/manifest.json.
    Backends default to what the settings imply (offline -> deterministic
    stub + placeholder); pass explicit ones to override.
    """
    settings = settings or PipelineSettings()
    out_dir = Path(out_dir)
    say = progress or (lambda _msg: None)

    transcript = parse_transcript_file(transcript_path)
    store = FrameStore(frames_dir)
    frame_w, frame_h = store.frame_size()
    lexicon = bundled_lexicon()
    if chat_backend is None:
        chat_backend, chat_fallback = make_chat_backends(settings, lexicon)
    stub = chat_fallback if isinstance(chat_fallback, StubChatBackend) else None
    if isinstance(chat_backend, StubChatBackend):
        stub = stub or chat_backend
    if image_backend is None:
        image_backend = make_image_backend(settings)

    say(f"{project_id}: {len(transcript.segments)} segments, "
        f"frames {frame_w}x{frame_h}")

    summary, summary_backend = language.summarize_global(
        transcript, chat_backend, stub)
    say(f"summary via {summary_backend}")

    n = len(transcript.segments)
    skip_reasons: list[list[str]] = [[] for _ in range(n)]

    def analyze(i: int):
        ctx = language.context_bundle(transcript, i, summary,
                                      k=settings.language.local_window)
        try:
            rec = language.assess_imageability(ctx, chat_backend, lexicon)
        except Exception as exc:  # total per contract: fall to lexicon
            skip_reasons[i].append(f"error:imageability:{type(exc).__name__}")
            rec = language.ImageabilityRecord(
                i, language.lexicon_imageability(ctx.target_text, lexicon),
                language.LEXICON_BACKEND_ID, "")
        try:
            kps = language.extract_keyphrases(
                ctx, chat_backend, settings.language.max_keyphrases, stub)
        except Exception as exc:
            skip_reasons[i].append(f"error:keyphrases:{type(exc).__name__}")
            kps = []
        return ctx, rec, kps

    analyses = _pmap(analyze, range(n), settings.chat.concurrency)
    records = [rec for _, rec, _ in analyses]
    qualifying = set(language.filter_imageable(records, settings.threshold))
    say(f"{len(qualifying)}/{n} segments above threshold {settings.threshold}")

    cache = imagery.AssetCache(out_dir / "cache")
    prompts_by_seg: dict[int, imagery.ImagePrompt] = {}
    asset_src: dict[int, Path] = {}
    asset_size: dict[int, tuple[int, int]] = {}

    def render(i: int):
        ctx = analyses[i][0]
        try:
            prompt = imagery.formulate_prompt(ctx, chat_backend, stub)
            seed = segment_seed(project_id, i, settings.seed)
            pdigest = sha256_hex(prompt.prompt_text)
            w, h = settings.image.width, settings.image.height
            hit = cache.path_for(pdigest, seed, w, h, image_backend.backend_id)
            if hit.exists():
                path = hit
            else:
                img = imagery.generate_image(prompt, image_backend, seed, w, h)
                if img.generator_id != image_backend.backend_id:
                    skip_reasons[i].append(f"image-fallback:{img.generator_id}")
                path = cache.get_or_create(pdigest, seed, img.width, img.height,
                                           img.generator_id, lambda: img.pixels)
            with Image.open(path) as im:
                size = im.size
            prompts_by_seg[i] = prompt
            asset_src[i] = path
            asset_size[i] = size
        except Exception as exc:
            skip_reasons[i].append(f"error:imagery:{type(exc).__name__}")

    _pmap(render, sorted(qualifying), settings.image.concurrency)
    say(f"{len(asset_src)} images ready "
        f"({cache.producer_calls} generated, rest cached)")

    placement_cfg = settings.packing.to_placement_config()
    metrics = TextMetrics(default_point_size(
        frame_h, settings.packing.text_point_fraction))
    placements_by_seg: dict[int, list[packing.PlacedAugmentation]] = {}
    masks_by_seg: dict[int, np.ndarray] = {}

    def place(i: int):
        if i not in qualifying:
            return
        seg = transcript.segments[i]
        try:
            mask = segment_saliency(store, seg.t_start, seg.t_end,
                                    passes=settings.saliency.passes)
        except MissingFrame:
            skip_reasons[i].append("missing-frame")
            return
        except Exception as exc:
            skip_reasons[i].append(f"error:saliency:{type(exc).__name__}")
            return
        image_arg = None
        if i in asset_src:
            w, h = asset_size[i]
            image_arg = (w, h, f"{ASSET_DIR}/seg_{i:04d}.png")
        phrases = [kp.phrase for kp in analyses[i][2]]
        placed, skips, final_mask = packing.pack_segment(
            mask, i, image_arg, phrases, placement_cfg, metrics)
        placements_by_seg[i] = placed
        skip_reasons[i].extend(skips)
        masks_by_seg[i] = (mask, final_mask) if dump_packing else mask

    _pmap(place, range(n), settings.jobs)
    say(f"packing done for {len(placements_by_seg)} segments")

    entries = []
    for i, seg in enumerate(transcript.segments):
        ctx, rec, kps = analyses[i]
        placed = placements_by_seg.get(i, [])
        has_image = any(p.kind == "image" for p in placed)
        entries.append({
            "index": i,
            "t_start": seg.t_start,
            "t_end": seg.t_end,
            "text": seg.text,
            "score": rec.score,
            "score_backend": rec.backend_id,
            "keyphrases": [
                {"phrase": kp.phrase,
                 "char_span": list(kp.char_span) if kp.char_span else None}
                for kp in kps
            ],
            "prompt": prompts_by_seg[i].prompt_text if i in prompts_by_seg else None,
            "image_asset": f"{ASSET_DIR}/seg_{i:04d}.png" if (i in asset_src and has_image) else None,
            "placements": [
                {"kind": p.kind, "ref": p.ref, "style": p.style, **p.rect.as_dict()}
                for p in placed
            ],
            "skip_reasons": list(skip_reasons[i]),
        })

    indices = store.indices()
    duration = max(
        transcript.segments[-1].t_end,
        float(max(indices) + 1) if indices else 0.0,
    )
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "project_id": project_id,
        "frame_width": frame_w,
        "frame_height": frame_h,
        "duration": duration,
        "threshold": settings.threshold,
        "generation": {
            "chat_backend": getattr(chat_backend, "backend_id", OFFLINE_STUB_ID),
            "image_backend": image_backend.backend_id,
            "summary_backend": summary_backend,
            "global_summary": summary,
            "seed": settings.seed,
            "config_digest": settings.digest(),
            "template_version": 1,
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
        "segments": entries,
    }
    validate_manifest(manifest)

    _publish(out_dir, manifest, asset_src, say)
    if dump_masks or dump_packing:
        _dump_debug(out_dir, masks_by_seg, placements_by_seg,
                    dump_masks, dump_packing)
    return manifest


def _publish(out_dir: Path, manifest: dict, asset_src: dict[int, Path],
             say) -> None:
    """Stage assets, swap them in, then replace the manifest last."""
    out_dir.mkdir(parents=True, exist_ok=True)
    stage = Path(tempfile.mkdtemp(prefix=".stage-", dir=out_dir))
    try:
        images = stage / "assets" / "images"
        images.mkdir(parents=True)
        for i, src in sorted(asset_src.items()):
            shutil.copyfile(src, images / f"seg_{i:04d}.png")
        final_assets = out_dir / "assets"
        if final_assets.exists():
            os.replace(final_assets, stage / "old-assets")
        os.replace(stage / "assets", final_assets)
        fd, tmp = tempfile.mkstemp(dir=out_dir, suffix=".tmp")
        with os.fdopen(fd, "wb") as fh:
            fh.write(canonical_json_bytes(manifest))
            fh.write(b"\n")
        os.replace(tmp, out_dir / MANIFEST_NAME)
        say(f"wrote {out_dir / MANIFEST_NAME}")
    finally:
        shutil.rmtree(stage, ignore_errors=True)


def _dump_debug(out_dir: Path, masks_by_seg: dict, placements_by_seg: dict,
                dump_masks: bool, dump_packing: bool) -> None:
    debug = out_dir / "debug"
    for i, entry in masks_by_seg.items():
        mask, final = entry if isinstance(entry, tuple) else (entry, None)
        if dump_masks:
            p = debug / "masks" / f"seg_{i:04d}.png"
            p.parent.mkdir(parents=True, exist_ok=True)
            Image.fromarray(mask.astype(np.uint8) * 255, mode="L").save(p)
        if dump_packing and final is not None:
            rgb = np.stack([mask.astype(np.uint8) * 120] * 3, axis=-1)
            for placed in placements_by_seg.get(i, []):
                r = placed.rect
                color = (255, 255, 255) if placed.kind == "image" else (255, 64, 64)
                rgb[r.y, r.x:r.x + r.w] = color
                rgb[r.y + r.h - 1, r.x:r.x + r.w] = color
                rgb[r.y:r.y + r.h, r.x] = color
                rgb[r.y:r.y + r.h, r.x + r.w - 1] = color
            p = debug / "packing" / f"seg_{i:04d}.png"
            p.parent.mkdir(parents=True, exist_ok=True)
            Image.fromarray(rgb, mode="RGB").save(p)


def canonical_manifest_bytes(manifest: dict) -> bytes:
    """Canonical form for equality checks: the timestamp field is dropped."""
    trimmed = dict(manifest)
    if isinstance(trimmed.get("generation"), dict):
        gen = dict(trimmed["generation"])
        gen.pop("generated_at", None)
        trimmed["generation"] = gen
    return canonical_json_bytes(trimmed)


def load_manifest(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaMismatch(f"{path}: manifest root must be an object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaMismatch(
            f"{path}: schema_version {version!r}, expected {SCHEMA_VERSION}")
    validate_manifest(data)
    return data


def validate_manifest(m: dict) -> None:
    """Structural invariants; raises InvariantViolation naming entry and field."""
    for key in ("project_id", "frame_width", "frame_height", "duration",
                "threshold", "generation", "segments"):
        if key not in m:
            raise InvariantViolation(f"missing top-level field {key!r}")
    fw, fh = m["frame_width"], m["frame_height"]
    if not (isinstance(fw, int) and isinstance(fh, int) and fw > 0 and fh > 0):
        raise InvariantViolation("frame_width/frame_height must be positive ints")
    if not isinstance(m["segments"], list):
        raise InvariantViolation("segments must be a list")
    for pos, entry in enumerate(m["segments"]):
        where = f"segment entry {pos}"
        if not isinstance(entry, dict):
            raise InvariantViolation(f"{where}: not an object")
        if entry.get("index") != pos:
            raise InvariantViolation(
                f"{where}: field 'index' is {entry.get('index')!r}, expected {pos}")
        if not isinstance(entry.get("t_start"), (int, float)) or \
                not isinstance(entry.get("t_end"), (int, float)):
            raise InvariantViolation(f"{where}: field 't_start'/'t_end' not numeric")
        if entry["t_end"] < entry["t_start"]:
            raise InvariantViolation(f"{where}: field 't_end' precedes 't_start'")
        score = entry.get("score")
        if not isinstance(score, int) or not 1 <= score <= 10:
            raise InvariantViolation(f"{where}: field 'score' must be int in 1..10")
        text = entry.get("text")
        if not isinstance(text, str):
            raise InvariantViolation(f"{where}: field 'text' must be a string")
        for k, kp in enumerate(entry.get("keyphrases", [])):
            span = kp.get("char_span")
            if span is None:
                continue
            if (not isinstance(span, list) or len(span) != 2
                    or not all(isinstance(v, int) for v in span)
                    or not 0 <= span[0] < span[1] <= len(text)
                    or text.casefold()[span[0]:span[1]] != kp["phrase"].casefold()):
                raise InvariantViolation(
                    f"{where}: field 'keyphrases[{k}].char_span' does not "
                    f"locate the phrase in the segment text")
        if entry.get("image_asset") is not None and score <= m["threshold"]:
            raise InvariantViolation(
                f"{where}: field 'image_asset' set but score {score} is not "
                f"above threshold {m['threshold']}")
        for j, pl in enumerate(entry.get("placements", [])):
            for fld in ("x", "y", "w", "h"):
                if not isinstance(pl.get(fld), int):
                    raise InvariantViolation(
                        f"{where}: field 'placements[{j}].{fld}' must be int")
            if pl["w"] <= 0 or pl["h"] <= 0 or pl["x"] < 0 or pl["y"] < 0 \
                    or pl["x"] + pl["w"] > fw or pl["y"] + pl["h"] > fh:
                raise InvariantViolation(
                    f"{where}: field 'placements[{j}]' rect "
                    f"({pl['x']},{pl['y']},{pl['w']},{pl['h']}) outside "
                    f"{fw}x{fh} frame")
            if pl.get("kind") not in ("image", "keyphrase"):
                raise InvariantViolation(
                    f"{where}: field 'placements[{j}].kind' invalid")


def filter_view(manifest: dict, min_score: int) -> dict:
    """View with augmentations hidden on segments scoring below min_score.

    Text, score, times, keyphrase metadata and skip reasons are retained for
    every segment; only placements/image/prompt are blanked. Composes:
    filtering at a then b equals filtering once at max(a, b).
    """
    if not 1 <= min_score <= 10:
        raise ValueError(f"min_score must be in 1..10, got {min_score}")
    out = dict(manifest)
    segments = []
    for entry in manifest["segments"]:
        e = dict(entry)
        if e["score"] < min_score:
            e["placements"] = []
            e["image_asset"] = None
            e["prompt"] = None
        else:
            e["placements"] = [dict(p) for p in e.get("placements", [])]
        e["keyphrases"] = [dict(kp) for kp in e.get("keyphrases", [])]
        e["skip_reasons"] = list(e.get("skip_reasons", []))
        segments.append(e)
    out["segments"] = segments
    return out
