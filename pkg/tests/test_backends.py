from __future__ import annotations

import base64
import io
import json

import httpx
import numpy as np
import pytest
from PIL import Image

from speechvis import prompts
from speechvis.backends import (
    BackendUnavailable,
    HttpChatBackend,
    HttpImageBackend,
    StubChatBackend,
    first_sentence,
    stub_image_prompt,
    stub_keyphrases,
    stub_summary,
    truncate_words,
)
from speechvis.lexicon import ImageabilityLexicon


def test_first_sentence():
    assert first_sentence("One. Two.") == "One."
    assert first_sentence("No terminator here") == "No terminator here"
    assert first_sentence("Really? Yes.") == "Really?"


def test_truncate_words():
    assert truncate_words("a b c d", 2) == "a b"
    assert truncate_words("a b", 10) == "a b"


def test_stub_summary_takes_every_tenth_segment():
    texts = [f"Sentence {i}. Extra tail {i}." for i in range(25)]
    out = stub_summary(texts)
    assert out == "Sentence 0. Sentence 10. Sentence 20."


def test_stub_summary_caps_at_150_words():
    texts = ["word " * 200 + "."]
    assert len(stub_summary(texts).split()) <= 150


def test_stub_keyphrases_rules():
    text = "The enormous lighthouse keeper watched enormous waves because storms"
    out = stub_keyphrases(text, 3)
    # longest first, dedupe case-insensitively, stopwords ("because") excluded
    assert out == ["lighthouse", "enormous", "watched"]
    assert stub_keyphrases("tiny cat sat", 3) == []  # all under 5 chars
    assert stub_keyphrases("Because there would", 3) == []  # stopwords only


def test_stub_image_prompt_shape():
    out = stub_image_prompt("A red barn in snow.", "Farm tour video.")
    assert out.startswith("Illustration of: A red barn in snow.")
    assert "context: Farm tour video." in out


@pytest.fixture()
def stub():
    lex = ImageabilityLexicon(scores={"lake": 9.0, "idea": 2.0}, default_score=5.0)
    return StubChatBackend(lex)


def test_stub_backend_dispatch(stub):
    p = prompts.render_summary_prompt(["Alpha one. More.", "Beta two."])
    assert stub.complete(p) == "Alpha one."

    p = prompts.render_imageability_prompt("g", [], "lake lake")
    assert stub.complete(p) == "9"

    p = prompts.render_keyphrase_prompt("g", [], "The enormous lighthouse waited", 2)
    assert stub.complete(p).splitlines() == ["lighthouse", "enormous"]

    p = prompts.render_image_prompt_request("Global summary.", [], "A lake at dawn.")
    out = stub.complete(p)
    assert out.startswith("Illustration of: A lake at dawn.")


def test_stub_backend_rejects_foreign_prompts(stub):
    with pytest.raises(ValueError):
        stub.complete("free-form question")


def _chat_backend(handler, retries=1):
    transport = httpx.MockTransport(handler)
    client = httpx.Client(transport=transport)
    return HttpChatBackend(
        "http://chat.test/v1/chat/completions",
        model="test-model",
        retries=retries,
        client=client,
        retry_wait=0.0,
    )


def test_http_chat_backend_success():
    def handler(request):
        body = json.loads(request.content)
        assert body["model"] == "test-model"
        assert body["messages"][0]["content"] == "hello"
        assert body["temperature"] == 0.0
        return httpx.Response(
            200, json={"choices": [{"message": {"content": "world"}}]}
        )

    backend = _chat_backend(handler)
    assert backend.complete("hello") == "world"
    assert backend.backend_id == "http:test-model"


def test_http_chat_backend_retries_then_fails():
    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(500, text="boom")

    backend = _chat_backend(handler, retries=2)
    with pytest.raises(BackendUnavailable):
        backend.complete("hello")
    assert len(calls) == 3  # initial + 2 retries


def test_http_chat_backend_recovers_on_retry():
    calls = []

    def handler(request):
        calls.append(1)
        if len(calls) == 1:
            return httpx.Response(502, text="bad gateway")
        return httpx.Response(200, json={"choices": [{"message": {"content": "ok"}}]})

    backend = _chat_backend(handler, retries=1)
    assert backend.complete("x") == "ok"


def test_http_chat_backend_malformed_body():
    def handler(request):
        return httpx.Response(200, json={"unexpected": True})

    backend = _chat_backend(handler)
    with pytest.raises(BackendUnavailable):
        backend.complete("x")


def test_http_chat_backend_custom_response_path():
    def handler(request):
        return httpx.Response(200, json={"output": {"text": "custom"}})

    transport = httpx.MockTransport(handler)
    backend = HttpChatBackend(
        "http://chat.test/generate",
        model="m",
        response_path=("output", "text"),
        client=httpx.Client(transport=transport),
        retry_wait=0.0,
    )
    assert backend.complete("x") == "custom"


def _png_b64(arr: np.ndarray) -> str:
    buf = io.BytesIO()
    Image.fromarray(arr).save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


def test_http_image_backend_decodes_png():
    arr = np.zeros((8, 10, 3), dtype=np.uint8)
    arr[:, :5] = (255, 0, 0)

    def handler(request):
        body = json.loads(request.content)
        assert body["width"] == 10 and body["height"] == 8 and body["seed"] == 42
        return httpx.Response(200, json={"image": _png_b64(arr)})

    backend = HttpImageBackend(
        "http://img.test/generate",
        client=httpx.Client(transport=httpx.MockTransport(handler)),
        retry_wait=0.0,
    )
    out = backend.generate("a red half", seed=42, width=10, height=8)
    assert out.shape == (8, 10, 3)
    assert (out == arr).all()


def test_http_image_backend_failure():
    def handler(request):
        return httpx.Response(503, text="down")

    backend = HttpImageBackend(
        "http://img.test/generate",
        retries=1,
        client=httpx.Client(transport=httpx.MockTransport(handler)),
        retry_wait=0.0,
    )
    with pytest.raises(BackendUnavailable):
        backend.generate("x", seed=0, width=64, height=64)
