"""Per-segment language analysis: context assembly, imageability, keyphrases.

Every operation is total: the configured chat backend is tried first and a
deterministic offline path (stub backend or word lexicon) steps in when it
fails, so a build never stalls on a flaky model server. The backend that
actually produced each result is recorded for audit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import prompts
from .backends import (
    BackendUnavailable,
    ChatBackend,
    StubChatBackend,
    stub_keyphrases,
    truncate_words,
)
from .lexicon import ImageabilityLexicon
from .transcript import Transcript
from .util import canonical_json_bytes, sha256_hex

LOCAL_WINDOW = 5
LEXICON_BACKEND_ID = "lexicon"


class UnparseableScore(ValueError):
    def __init__(self, response: str):
        self.response = response
        super().__init__(f"no integer in 1..10 found in response: {response!r}")


@dataclass(frozen=True)
class ContextBundle:
    """Scoring/prompting context for one target segment."""

    segment_index: int
    global_summary: str
    local_segments: tuple[str, ...]
    target_text: str

    def digest(self) -> str:
        """Content digest for cache keying (independent of segment index)."""
        payload = {
            "global": self.global_summary,
            "local": list(self.local_segments),
            "target": self.target_text,
        }
        return sha256_hex(canonical_json_bytes(payload))


@dataclass(frozen=True)
class ImageabilityRecord:
    segment_index: int
    score: int
    backend_id: str
    raw_response: str

    def __post_init__(self):
        if not 1 <= self.score <= 10:
            raise ValueError(f"imageability score out of range: {self.score}")


@dataclass(frozen=True)
class Keyphrase:
    segment_index: int
    phrase: str
    char_span: tuple[int, int] | None


def local_context(transcript: Transcript, i: int, k: int = LOCAL_WINDOW) -> list[str]:
    """Texts of the up-to-k segments preceding segment i, oldest first."""
    if not 0 <= i < len(transcript.segments):
        raise IndexError(f"segment index {i} out of range")
    return [seg.text for seg in transcript.segments[max(0, i - k) : i]]


def context_bundle(transcript: Transcript, i: int, global_summary: str,
                   k: int = LOCAL_WINDOW) -> ContextBundle:
    return ContextBundle(
        segment_index=i,
        global_summary=global_summary,
        local_segments=tuple(local_context(transcript, i, k)),
        target_text=transcript.segments[i].text,
    )


def summarize_global(transcript: Transcript, backend: ChatBackend,
                     stub: StubChatBackend | None = None) -> tuple[str, str]:
    """Whole-transcript summary capped at 150 words; returns (text, backend_id)."""
    if not transcript.segments:
        raise ValueError("cannot summarize an empty transcript")
    prompt = prompts.render_summary_prompt([s.text for s in transcript.segments])
    for candidate in _chain(backend, stub):
        try:
            text = " ".join(candidate.complete(prompt).split())
            if text:
                return truncate_words(text, 150), candidate.backend_id
        except BackendUnavailable:
            continue
    raise BackendUnavailable("no backend produced a summary")


def parse_llm_score(response: str) -> int:
    """First standalone integer in 1..10, scanning left to right.

    Digit runs attached to a decimal point (3.5) are not standalone;
    out-of-range integers are skipped, not errors.
    """
    for m in re.finditer(r"(?<![\d.])(\d+)(?!\.?\d)", response):
        value = int(m.group(1))
        if 1 <= value <= 10:
            return value
    raise UnparseableScore(response)


def lexicon_imageability(text: str, lex: ImageabilityLexicon) -> int:
    return lex.score_text(text)


def assess_imageability(ctx: ContextBundle, backend: ChatBackend,
                        lex: ImageabilityLexicon) -> ImageabilityRecord:
    """Score 1..10 for the bundle's target segment.

    Backend failures and unparseable replies fall back to the word lexicon;
    the raw reply (when there was one) is retained either way.
    """
    prompt = prompts.render_imageability_prompt(
        ctx.global_summary, list(ctx.local_segments), ctx.target_text
    )
    raw = ""
    try:
        raw = backend.complete(prompt)
        score = parse_llm_score(raw)
        return ImageabilityRecord(ctx.segment_index, score, backend.backend_id, raw)
    except (BackendUnavailable, UnparseableScore):
        score = lexicon_imageability(ctx.target_text, lex)
        return ImageabilityRecord(ctx.segment_index, score, LEXICON_BACKEND_ID, raw)


_BULLET_RE = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s*")


def extract_keyphrases(ctx: ContextBundle, backend: ChatBackend, max_k: int = 3,
                       stub: StubChatBackend | None = None) -> list[Keyphrase]:
    """Up to max_k keyphrases for the target segment, located when possible."""
    prompt = prompts.render_keyphrase_prompt(
        ctx.global_summary, list(ctx.local_segments), ctx.target_text, max_k
    )
    lines: list[str] = []
    for candidate in _chain(backend, stub):
        try:
            lines = candidate.complete(prompt).splitlines()
            break
        except BackendUnavailable:
            continue
    else:
        lines = stub_keyphrases(ctx.target_text, max_k)

    phrases: list[str] = []
    for line in lines:
        phrase = _BULLET_RE.sub("", line).strip().strip('"').strip()
        if phrase and phrase.lower() not in (p.lower() for p in phrases):
            phrases.append(phrase)
        if len(phrases) == max_k:
            break
    return [_locate(ctx.segment_index, p, ctx.target_text) for p in phrases]


def _locate(segment_index: int, phrase: str, target_text: str) -> Keyphrase:
    pos = target_text.casefold().find(phrase.casefold())
    span = (pos, pos + len(phrase)) if pos >= 0 else None
    return Keyphrase(segment_index=segment_index, phrase=phrase, char_span=span)


def filter_imageable(records: list[ImageabilityRecord], threshold: int = 5) -> list[int]:
    """Segment indices whose score is strictly above the threshold, ascending."""
    if not 1 <= threshold <= 10:
        raise ValueError(f"threshold must be in 1..10, got {threshold}")
    return sorted(r.segment_index for r in records if r.score > threshold)


def _chain(*backends: ChatBackend | None):
    seen = []
    for b in backends:
        if b is not None and all(b is not s for s in seen):
            seen.append(b)
    return seen
