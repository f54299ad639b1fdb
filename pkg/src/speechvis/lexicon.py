"""Word-level imageability lexicon used as the offline scoring fallback.

The bundled list (data/lexicon.tsv) is curated in-repo: single words grouped
by category (concrete nouns high, perceptual adjectives and visible actions
mid, abstract concepts low), scores on the same 1..10 scale the chat backend
uses. tools/make_lexicon.py regenerates it.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

_PUNCT_TO_SPACE = str.maketrans({c: " " for c in string.punctuation})


@dataclass
class ImageabilityLexicon:
    scores: dict[str, float] = field(default_factory=dict)
    default_score: float = 5.0

    def __post_init__(self):
        if not 1 <= self.default_score <= 10:
            raise ValueError("default_score must lie in [1,10]")
        for word, s in self.scores.items():
            if not 1 <= s <= 10:
                raise ValueError(f"lexicon score out of [1,10] for {word!r}: {s}")

    def word_score(self, word: str) -> float:
        return self.scores.get(word.lower(), self.default_score)

    def score_text(self, text: str) -> int:
        """Average word scores, round half-up, clamp to 1..10.

        Punctuation maps to spaces before tokenizing; unknown words take the
        default. Text that is empty after stripping scores the default.
        """
        words = text.lower().translate(_PUNCT_TO_SPACE).split()
        if not words:
            return _round_half_up_clamped(self.default_score)
        mean = sum(self.word_score(w) for w in words) / len(words)
        return _round_half_up_clamped(mean)


def _round_half_up_clamped(x: float) -> int:
    return min(10, max(1, math.floor(x + 0.5)))


def load_lexicon(path: Path, default_score: float = 5.0) -> ImageabilityLexicon:
    """Read a `word<TAB>score` file; blank lines and '#' comments skipped."""
    scores: dict[str, float] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            word, value = line.split("\t")
            scores[word.lower()] = float(value)
        except ValueError as exc:
            raise ValueError(f"bad lexicon line {line_no}: {line!r}") from exc
    return ImageabilityLexicon(scores=scores, default_score=default_score)


def bundled_lexicon(default_score: float = 5.0) -> ImageabilityLexicon:
    ref = resources.files("speechvis").joinpath("data/lexicon.tsv")
    with resources.as_file(ref) as path:
        return load_lexicon(path, default_score=default_score)
