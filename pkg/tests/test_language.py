from __future__ import annotations

import pytest

from speechvis import language
from speechvis.backends import BackendUnavailable, StubChatBackend
from speechvis.language import (
    ContextBundle,
    ImageabilityRecord,
    Keyphrase,
    UnparseableScore,
    assess_imageability,
    context_bundle,
    extract_keyphrases,
    filter_imageable,
    local_context,
    parse_llm_score,
    summarize_global,
)
from speechvis.lexicon import ImageabilityLexicon
from speechvis.transcript import Transcript, TranscriptSegment


def make_transcript(texts):
    segs = tuple(
        TranscriptSegment(i, float(i), i + 1.0, t) for i, t in enumerate(texts)
    )
    return Transcript(segments=segs, source_format="srt")


class FixedBackend:
    """Chat backend returning a canned response (or raising)."""

    backend_id = "fixed"

    def __init__(self, response=None, error=None):
        self.response = response
        self.error = error
        self.prompts = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        if self.error is not None:
            raise self.error
        return self.response


@pytest.fixture()
def lex():
    return ImageabilityLexicon(
        scores={"lake": 9.0, "barn": 8.0, "idea": 2.0, "justice": 2.0},
        default_score=5.0,
    )


@pytest.fixture()
def stub(lex):
    return StubChatBackend(lex)


# ---------------------------------------------------------------------------
# score parsing


@pytest.mark.parametrize(
    "raw, want",
    [
        ("7", 7),
        ("Score: 8/10 because vivid", 8),
        ("I'd rate this 3 out of 10.", 3),
        ("10", 10),
        ("rated 7.", 7),
        ("version 2.0 gives 9", 9),
        ("0 then 11 then 6", 6),
        ("  4  ", 4),
    ],
)
def test_parse_llm_score(raw, want):
    assert parse_llm_score(raw) == want


@pytest.mark.parametrize("raw", ["eleven", "", "score: 0", "3.5 stars", "42", "0.7"])
def test_parse_llm_score_unparseable(raw):
    with pytest.raises(UnparseableScore) as exc:
        parse_llm_score(raw)
    assert exc.value.response == raw


# ---------------------------------------------------------------------------
# context assembly


def test_local_context_window():
    t = make_transcript([f"s{i}" for i in range(8)])
    assert local_context(t, 0) == []
    assert local_context(t, 3) == ["s0", "s1", "s2"]
    assert local_context(t, 7) == ["s2", "s3", "s4", "s5", "s6"]
    assert local_context(t, 7, k=2) == ["s5", "s6"]
    with pytest.raises(IndexError):
        local_context(t, 8)


def test_context_bundle_contents():
    t = make_transcript(["a", "b", "c"])
    ctx = context_bundle(t, 2, "summary here")
    assert ctx.segment_index == 2
    assert ctx.local_segments == ("a", "b")
    assert ctx.target_text == "c"


def test_context_digest_ignores_index_but_not_content():
    a = ContextBundle(0, "g", ("x",), "t")
    b = ContextBundle(5, "g", ("x",), "t")
    c = ContextBundle(0, "g", ("x",), "different")
    assert a.digest() == b.digest()
    assert a.digest() != c.digest()


# ---------------------------------------------------------------------------
# summary


def test_summarize_global_uses_backend():
    t = make_transcript(["First thing. Tail.", "Second thing."])
    backend = FixedBackend(response="A neat summary.")
    text, backend_id = summarize_global(t, backend)
    assert text == "A neat summary."
    assert backend_id == "fixed"


def test_summarize_global_truncates_to_150_words():
    t = make_transcript(["x"])
    backend = FixedBackend(response="word " * 300)
    text, _ = summarize_global(t, backend)
    assert len(text.split()) == 150


def test_summarize_global_falls_back_to_stub(stub):
    t = make_transcript(["Lake story begins. More.", "And continues."])
    bad = FixedBackend(error=BackendUnavailable("down"))
    text, backend_id = summarize_global(t, bad, stub)
    assert backend_id == stub.backend_id
    assert text == "Lake story begins."


def test_summarize_global_empty_response_falls_through(stub):
    t = make_transcript(["Only sentence here."])
    empty = FixedBackend(response="   ")
    text, backend_id = summarize_global(t, empty, stub)
    assert backend_id == stub.backend_id
    assert text == "Only sentence here."


# ---------------------------------------------------------------------------
# imageability


def test_assess_imageability_via_backend(lex):
    ctx = ContextBundle(4, "g", (), "whatever")
    backend = FixedBackend(response="Score: 9/10")
    rec = assess_imageability(ctx, backend, lex)
    assert rec == ImageabilityRecord(4, 9, "fixed", "Score: 9/10")


def test_assess_imageability_fallback_on_unavailable(lex):
    ctx = ContextBundle(1, "g", (), "lake lake")
    backend = FixedBackend(error=BackendUnavailable("down"))
    rec = assess_imageability(ctx, backend, lex)
    assert rec.score == 9
    assert rec.backend_id == language.LEXICON_BACKEND_ID
    assert rec.raw_response == ""


def test_assess_imageability_fallback_on_unparseable_keeps_raw(lex):
    ctx = ContextBundle(1, "g", (), "idea idea")
    backend = FixedBackend(response="I cannot rate that.")
    rec = assess_imageability(ctx, backend, lex)
    assert rec.score == 2
    assert rec.backend_id == language.LEXICON_BACKEND_ID
    assert rec.raw_response == "I cannot rate that."


def test_imageability_record_validates_range():
    with pytest.raises(ValueError):
        ImageabilityRecord(0, 0, "x", "")
    with pytest.raises(ValueError):
        ImageabilityRecord(0, 11, "x", "")


def test_assess_with_stub_matches_lexicon(lex, stub):
    ctx = ContextBundle(0, "g", (), "lake and justice")
    rec = assess_imageability(ctx, stub, lex)
    assert rec.score == lex.score_text("lake and justice")
    assert rec.backend_id == stub.backend_id


# ---------------------------------------------------------------------------
# keyphrases


def test_extract_keyphrases_cleans_bullets():
    ctx = ContextBundle(0, "g", (), "The Lighthouse stood on cliffs")
    backend = FixedBackend(response='- Lighthouse\n2. "stood on cliffs"\n* lighthouse\n- extra')
    out = extract_keyphrases(ctx, backend, max_k=3)
    assert [k.phrase for k in out] == ["Lighthouse", "stood on cliffs", "extra"]
    assert out[0].char_span == (4, 14)
    assert out[1].char_span == (15, 30)
    assert out[2].char_span is None  # not a substring of the target


def test_extract_keyphrases_span_is_case_insensitive():
    ctx = ContextBundle(0, "g", (), "A RED barn")
    backend = FixedBackend(response="red barn")
    (kp,) = extract_keyphrases(ctx, backend, max_k=1)
    assert kp == Keyphrase(0, "red barn", (2, 10))


def test_extract_keyphrases_fallback_to_stub(stub):
    ctx = ContextBundle(0, "g", (), "The enormous lighthouse waited")
    bad = FixedBackend(error=BackendUnavailable("down"))
    out = extract_keyphrases(ctx, bad, max_k=2, stub=stub)
    assert [k.phrase for k in out] == ["lighthouse", "enormous"]
    assert all(k.char_span is not None for k in out)


def test_extract_keyphrases_respects_max_k():
    ctx = ContextBundle(0, "g", (), "alpha beta gamma delta")
    backend = FixedBackend(response="alpha\nbeta\ngamma\ndelta")
    assert len(extract_keyphrases(ctx, backend, max_k=2)) == 2


# ---------------------------------------------------------------------------
# threshold filter


def test_filter_imageable_strictly_above():
    recs = [ImageabilityRecord(i, s, "x", "") for i, s in enumerate([3, 5, 6, 9])]
    assert filter_imageable(recs, 5) == [2, 3]


def test_filter_imageable_edge_thresholds():
    recs = [ImageabilityRecord(i, s, "x", "") for i, s in enumerate([1, 10, 10])]
    assert filter_imageable(recs, 10) == []
    assert filter_imageable(recs, 9) == [1, 2]
    assert filter_imageable(recs, 1) == [1, 2]


def test_filter_imageable_rejects_bad_threshold():
    with pytest.raises(ValueError):
        filter_imageable([], 0)
    with pytest.raises(ValueError):
        filter_imageable([], 11)


def test_filter_imageable_sorted_output():
    recs = [ImageabilityRecord(i, 9, "x", "") for i in (4, 0, 2)]
    assert filter_imageable(recs, 5) == [0, 2, 4]
