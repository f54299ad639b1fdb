"""Chat-completion backends: remote HTTP client and deterministic stub.

Every operation that needs language understanding talks to a ChatBackend
through `complete(prompt)`. The HTTP implementation speaks the common
chat-completion wire shape; the stub applies fixed rules to the sections it
parses back out of the rendered prompt, so the whole pipeline runs and tests
offline with byte-stable outputs.
"""

from __future__ import annotations

import base64
import json
import re
import time
from typing import Protocol, Sequence, runtime_checkable

import httpx
import numpy as np

from . import prompts
from .lexicon import ImageabilityLexicon

OFFLINE_STUB_ID = "offline-stub"

SUMMARY_WORD_LIMIT = 150
SUMMARY_SEGMENT_STRIDE = 10
KEYPHRASE_MIN_LEN = 5

STOPWORDS = frozenset("""
a about above after again against all also am an and any are as at be because
been before being below between both but by can cannot could did do does
doing down during each few for from further had has have having he her here
hers herself him himself his how i if in into is it its itself just may me
might more most must my myself no nor not now of off on once only or other
our ours ourselves out over own same shall she should so some such than that
the their theirs them themselves then there these they this those through to
too under until up very was we were what when where which while who whom why
will with would you your yours yourself
""".split())


class BackendUnavailable(RuntimeError):
    """Remote backend could not produce a usable response."""


@runtime_checkable
class ChatBackend(Protocol):
    backend_id: str

    def complete(self, prompt: str) -> str: ...


@runtime_checkable
class ImageBackend(Protocol):
    backend_id: str

    def generate(self, prompt: str, seed: int, width: int, height: int) -> np.ndarray: ...


# ---------------------------------------------------------------------------
# deterministic stub rules (pure functions, shared by the stub backend)

def first_sentence(text: str) -> str:
    for i, ch in enumerate(text):
        if ch in ".!?":
            return text[: i + 1].strip()
    return text.strip()


def truncate_words(text: str, limit: int) -> str:
    words = text.split()
    return " ".join(words[:limit])


def stub_summary(segment_texts: Sequence[str]) -> str:
    """First sentence of every 10th segment, capped at 150 words."""
    picked = [
        first_sentence(text)
        for i, text in enumerate(segment_texts)
        if i % SUMMARY_SEGMENT_STRIDE == 0
    ]
    return truncate_words(" ".join(picked), SUMMARY_WORD_LIMIT)


_WORD_RE = re.compile(r"[^\W\d_]\w*", re.UNICODE)


def stub_keyphrases(text: str, max_k: int) -> list[str]:
    """Longest non-stopword words of >=5 chars, by length then first occurrence."""
    seen: dict[str, tuple[int, int, str]] = {}
    for m in _WORD_RE.finditer(text):
        word = m.group(0)
        lower = word.lower()
        if len(word) < KEYPHRASE_MIN_LEN or lower in STOPWORDS or lower in seen:
            continue
        seen[lower] = (-len(word), m.start(), word)
    ranked = sorted(seen.values())
    return [word for _, _, word in ranked[:max_k]]


def stub_image_prompt(target_text: str, global_summary: str) -> str:
    head = truncate_words(target_text, 20)
    ctx = truncate_words(global_summary, 10)
    return f"Illustration of: {head}; context: {ctx}"


class StubChatBackend:
    """Offline ChatBackend: fixed rules over the prompt's parsed sections."""

    backend_id = OFFLINE_STUB_ID

    def __init__(self, lexicon: ImageabilityLexicon):
        self.lexicon = lexicon

    def complete(self, prompt: str) -> str:
        parsed = prompts.parse_prompt_sections(prompt)
        task = parsed["task"]
        if task == prompts.TASK_SUMMARY:
            return stub_summary([text for _, text in parsed["segments"]])
        if task == prompts.TASK_IMAGEABILITY:
            return str(self.lexicon.score_text(parsed["target"]))
        if task == prompts.TASK_KEYPHRASES:
            max_k = parsed["max_k"] or 3
            return "\n".join(stub_keyphrases(parsed["target"], max_k))
        if task == prompts.TASK_IMAGE_PROMPT:
            return stub_image_prompt(parsed["target"], parsed["global"])
        raise ValueError(f"stub backend cannot handle task {task!r}")


class HttpChatBackend:
    """Chat-completion client: POST {model, messages, temperature} as JSON.

    `response_path` walks the reply JSON to the completion text (default
    matches the usual choices[0].message.content shape). Network errors, bad
    status codes and malformed bodies all surface as BackendUnavailable once
    the retry budget is spent.
    """

    def __init__(self, endpoint: str, model: str, timeout: float = 30.0,
                 retries: int = 2, temperature: float = 0.0,
                 response_path: Sequence = ("choices", 0, "message", "content"),
                 backend_id: str | None = None,
                 client: httpx.Client | None = None,
                 retry_wait: float = 0.2):
        self.endpoint = endpoint
        self.model = model
        self.timeout = timeout
        self.retries = retries
        self.temperature = temperature
        self.response_path = tuple(response_path)
        self.backend_id = backend_id or f"http:{model}"
        self._client = client or httpx.Client(timeout=timeout)
        self._retry_wait = retry_wait

    def complete(self, prompt: str) -> str:
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.temperature,
        }
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            if attempt and self._retry_wait:
                time.sleep(self._retry_wait * attempt)
            try:
                resp = self._client.post(self.endpoint, json=payload)
                resp.raise_for_status()
                return self._extract(resp.json())
            except (httpx.HTTPError, json.JSONDecodeError, LookupError, TypeError) as exc:
                last_error = exc
        raise BackendUnavailable(
            f"chat backend {self.endpoint} failed after {self.retries + 1} attempts: {last_error}"
        )

    def _extract(self, body) -> str:
        node = body
        for step in self.response_path:
            node = node[step]
        if not isinstance(node, str):
            raise TypeError(f"completion at {self.response_path} is not text")
        return node

    def close(self) -> None:
        self._client.close()


class HttpImageBackend:
    """Text-to-image client: POST {prompt, width, height, seed}, base64 reply."""

    def __init__(self, endpoint: str, timeout: float = 60.0, retries: int = 1,
                 backend_id: str = "http-image",
                 client: httpx.Client | None = None, retry_wait: float = 0.2):
        self.endpoint = endpoint
        self.timeout = timeout
        self.retries = retries
        self.backend_id = backend_id
        self._client = client or httpx.Client(timeout=timeout)
        self._retry_wait = retry_wait

    def generate(self, prompt: str, seed: int, width: int, height: int) -> np.ndarray:
        from io import BytesIO

        from PIL import Image

        payload = {"prompt": prompt, "width": width, "height": height, "seed": seed}
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            if attempt and self._retry_wait:
                time.sleep(self._retry_wait * attempt)
            try:
                resp = self._client.post(self.endpoint, json=payload)
                resp.raise_for_status()
                blob = base64.b64decode(resp.json()["image"])
                with Image.open(BytesIO(blob)) as im:
                    return np.asarray(im.convert("RGB"))
            except (httpx.HTTPError, json.JSONDecodeError, KeyError, ValueError,
                    OSError) as exc:
                last_error = exc
        raise BackendUnavailable(
            f"image backend {self.endpoint} failed after {self.retries + 1} attempts: {last_error}"
        )

    def close(self) -> None:
        self._client.close()
