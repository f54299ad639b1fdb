"""SRT and WebVTT transcript ingestion.

Both parsers produce the same normalized form: cues sorted by start time,
re-indexed from 0, markup stripped, multi-line cue text joined into one
whitespace-normalized line. Timestamps are kept at millisecond precision
(seconds as float, always an exact multiple of 0.001).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

SourceFormat = Literal["srt", "vtt"]


class TranscriptError(ValueError):
    """Base class for transcript parsing/validation failures."""


class MalformedTimestamp(TranscriptError):
    def __init__(self, line_no: int, content: str, reason: str = ""):
        self.line_no = line_no
        self.content = content
        detail = f": {reason}" if reason else ""
        super().__init__(f"malformed timestamp at line {line_no}: {content!r}{detail}")


class InvertedInterval(TranscriptError):
    def __init__(self, line_no: int, content: str):
        self.line_no = line_no
        self.content = content
        super().__init__(f"cue end precedes start at line {line_no}: {content!r}")


class EmptyTranscript(TranscriptError):
    def __init__(self):
        super().__init__("transcript contains no cues")


class MissingHeader(TranscriptError):
    def __init__(self):
        super().__init__("WebVTT input does not start with a WEBVTT header")


class NestedCue(TranscriptError):
    def __init__(self, index: int):
        super().__init__(
            f"cue {index} ends after its successor; nested cues are not supported"
        )


@dataclass(frozen=True)
class TranscriptSegment:
    """One timed caption unit."""

    index: int
    t_start: float  # seconds, millisecond precision
    t_end: float
    text: str

    def __post_init__(self):
        if self.t_start < 0:
            raise TranscriptError(f"segment {self.index}: negative start time")
        if not self.t_start < self.t_end:
            raise InvertedInterval(-1, f"{self.t_start} --> {self.t_end}")
        if not self.text:
            raise TranscriptError(f"segment {self.index}: empty text")


@dataclass(frozen=True)
class Transcript:
    segments: tuple[TranscriptSegment, ...]
    source_format: SourceFormat

    def __post_init__(self):
        for i, seg in enumerate(self.segments):
            if seg.index != i:
                raise TranscriptError(f"segment indices not contiguous at {i}")
            if i + 1 < len(self.segments):
                nxt = self.segments[i + 1]
                if seg.t_start > nxt.t_start:
                    raise TranscriptError(f"segments not sorted by start at {i}")
                if seg.t_end > nxt.t_end:
                    raise NestedCue(i)

    def __len__(self) -> int:
        return len(self.segments)


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def strip_markup(text: str) -> str:
    """Drop well-formed <...> spans; keep malformed '<' as literal text.

    Structural scan, no regex: a tag is a '<' followed by a '>' with no
    other '<' in between. Anything else stays verbatim so speech content
    is never lost.
    """
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch != "<":
            out.append(ch)
            i += 1
            continue
        j = i + 1
        while j < n and text[j] not in "<>":
            j += 1
        if j < n and text[j] == ">":
            i = j + 1  # complete tag, dropped
        else:
            out.append("<")  # literal '<'; rescan from the next char
            i += 1
    return "".join(out)


def _parse_timestamp(ts: str, ms_sep: str, line_no: int, line: str) -> float:
    ts = ts.strip()
    if ms_sep not in ts:
        raise MalformedTimestamp(line_no, line, f"missing '{ms_sep}' millisecond separator")
    clock, _, ms_part = ts.rpartition(ms_sep)
    parts = clock.split(":")
    if len(parts) == 2:  # WebVTT short form MM:SS
        parts = ["0"] + parts
    if len(parts) != 3:
        raise MalformedTimestamp(line_no, line, "expected HH:MM:SS or MM:SS clock")
    if not all(p.isdigit() for p in parts) or not ms_part.isdigit() or len(ms_part) != 3:
        raise MalformedTimestamp(line_no, line, "non-numeric timestamp fields")
    h, m, s = (int(p) for p in parts)
    if m >= 60 or s >= 60:
        raise MalformedTimestamp(line_no, line, "minutes/seconds out of range")
    return h * 3600 + m * 60 + s + int(ms_part) / 1000.0


def _parse_cue_interval(line: str, ms_sep: str, line_no: int) -> tuple[float, float]:
    left, arrow, right = line.partition("-->")
    if not arrow:
        raise MalformedTimestamp(line_no, line, "missing '-->'")
    # WebVTT cue settings (position/align/...) trail the end timestamp.
    end_field = right.strip().split(" ", 1)[0] if right.strip() else ""
    t0 = _parse_timestamp(left, ms_sep, line_no, line)
    t1 = _parse_timestamp(end_field, ms_sep, line_no, line)
    if not t0 < t1:
        raise InvertedInterval(line_no, line)
    return t0, t1


def normalize_cues(cues: list[tuple[float, float, str]]) -> tuple[TranscriptSegment, ...]:
    """Sort by (start, end, input order), drop empty-text cues, re-index from 0."""
    cleaned = []
    for order, (t0, t1, text) in enumerate(cues):
        text = _normalize_ws(text)
        if text:
            cleaned.append((t0, t1, order, text))
    cleaned.sort(key=lambda c: (c[0], c[1], c[2]))
    return tuple(
        TranscriptSegment(index=i, t_start=t0, t_end=t1, text=text)
        for i, (t0, t1, _, text) in enumerate(cleaned)
    )


def _split_blocks(lines: list[str]) -> list[tuple[int, list[str]]]:
    """Group non-blank line runs as (first_line_no, lines) blocks."""
    blocks = []
    cur: list[str] = []
    start = 0
    for no, line in enumerate(lines, start=1):
        if line.strip():
            if not cur:
                start = no
            cur.append(line)
        elif cur:
            blocks.append((start, cur))
            cur = []
    if cur:
        blocks.append((start, cur))
    return blocks


def parse_srt(raw: str) -> Transcript:
    """Parse SubRip text into a normalized Transcript.

    The cue counter lines in the file are ignored; output indices always
    run 0..n-1 in start-time order.
    """
    raw = raw.lstrip("﻿")
    cues: list[tuple[float, float, str]] = []
    for block_start, block in _split_blocks(raw.splitlines()):
        offset = 0
        if block and "-->" not in block[0]:
            # SRT counter line (or stray text) before the timing line
            if len(block) == 1:
                raise MalformedTimestamp(block_start, block[0], "cue without timing line")
            offset = 1
        timing_no = block_start + offset
        t0, t1 = _parse_cue_interval(block[offset], ",", timing_no)
        text = strip_markup(" ".join(block[offset + 1 :]))
        cues.append((t0, t1, text))
    segments = normalize_cues(cues)
    if not segments:
        raise EmptyTranscript()
    return Transcript(segments=segments, source_format="srt")


def parse_vtt(raw: str) -> Transcript:
    """Parse WebVTT text into a normalized Transcript.

    NOTE/STYLE/REGION blocks and per-cue settings are skipped; only timing
    and cue text survive.
    """
    raw = raw.lstrip("﻿")
    lines = raw.splitlines()
    if not lines or not lines[0].startswith("WEBVTT"):
        raise MissingHeader()
    cues: list[tuple[float, float, str]] = []
    blocks = _split_blocks(lines)
    for block_start, block in blocks[1:] if blocks and blocks[0][0] == 1 else blocks:
        head = block[0].strip()
        if head.startswith(("NOTE", "STYLE", "REGION")):
            continue
        offset = 0
        if "-->" not in block[0]:
            # cue identifier line
            if len(block) == 1:
                continue
            offset = 1
            if "-->" not in block[offset]:
                continue
        t0, t1 = _parse_cue_interval(block[offset], ".", block_start + offset)
        text = strip_markup(" ".join(block[offset + 1 :]))
        cues.append((t0, t1, text))
    segments = normalize_cues(cues)
    if not segments:
        raise EmptyTranscript()
    return Transcript(segments=segments, source_format="vtt")


def parse_transcript_file(path) -> Transcript:
    """Dispatch on file extension (.srt / .vtt)."""
    from pathlib import Path

    p = Path(path)
    raw = p.read_text(encoding="utf-8-sig")
    suffix = p.suffix.lower()
    if suffix == ".vtt":
        return parse_vtt(raw)
    if suffix == ".srt":
        return parse_srt(raw)
    raise TranscriptError(f"unsupported transcript extension: {p.suffix!r}")


def format_srt_timestamp(seconds: float) -> str:
    ms_total = round(seconds * 1000)
    h, rem = divmod(ms_total, 3_600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d},{ms:03d}"


def serialize_srt(t: Transcript) -> str:
    """Canonical SRT: 1-based numbering, comma separator, LF endings."""
    blocks = []
    for seg in t.segments:
        blocks.append(
            f"{seg.index + 1}\n"
            f"{format_srt_timestamp(seg.t_start)} --> {format_srt_timestamp(seg.t_end)}\n"
            f"{seg.text}\n\n"
        )
    return "".join(blocks)
