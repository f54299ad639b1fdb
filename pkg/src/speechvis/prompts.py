"""Prompt templates and their structural form.

The four templates live as versioned assets under data/templates/. Each one
carries a task id on its first line and labeled sections (global context,
recent segments, target segment), which is also what lets the deterministic
offline backend recover the inputs from a rendered prompt.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

TEMPLATE_VERSION = 1

TASK_SUMMARY = "summarize-transcript"
TASK_IMAGEABILITY = "rate-imageability"
TASK_KEYPHRASES = "extract-keyphrases"
TASK_IMAGE_PROMPT = "formulate-image-prompt"

_TEMPLATE_FILES = {
    TASK_SUMMARY: "summary.txt",
    TASK_IMAGEABILITY: "imageability.txt",
    TASK_KEYPHRASES: "keyphrases.txt",
    TASK_IMAGE_PROMPT: "imageprompt.txt",
}

_SECTION_HEADERS = (
    "Global context:",
    "Recent segments:",
    "Target segment:",
    "Transcript segments:",
    "Instruction:",
)

NONE_SENTINEL = "(none)"


@lru_cache(maxsize=None)
def load_template(task: str) -> str:
    ref = resources.files("speechvis").joinpath(f"data/templates/{_TEMPLATE_FILES[task]}")
    return ref.read_text(encoding="utf-8")


def _one_line(text: str) -> str:
    return " ".join(text.split())


def render_summary_prompt(segment_texts: list[str]) -> str:
    lines = [f"{i}. {_one_line(t)}" for i, t in enumerate(segment_texts)]
    return load_template(TASK_SUMMARY).format(segments="\n".join(lines) or NONE_SENTINEL)


def _context_fields(global_summary: str, local_segments: list[str], target_text: str):
    return {
        "global": _one_line(global_summary) or NONE_SENTINEL,
        "local": "\n".join(f"- {_one_line(t)}" for t in local_segments) or NONE_SENTINEL,
        "target": _one_line(target_text),
    }


def render_imageability_prompt(global_summary: str, local_segments: list[str],
                               target_text: str) -> str:
    return load_template(TASK_IMAGEABILITY).format(
        **_context_fields(global_summary, local_segments, target_text)
    )


def render_keyphrase_prompt(global_summary: str, local_segments: list[str],
                            target_text: str, max_k: int) -> str:
    return load_template(TASK_KEYPHRASES).format(
        max_k=max_k, **_context_fields(global_summary, local_segments, target_text)
    )


def render_image_prompt_request(global_summary: str, local_segments: list[str],
                                target_text: str) -> str:
    return load_template(TASK_IMAGE_PROMPT).format(
        **_context_fields(global_summary, local_segments, target_text)
    )


def parse_prompt_sections(prompt: str) -> dict:
    """Recover task id and labeled sections from a rendered prompt.

    Used by the offline stub backend; only prompts rendered from the bundled
    templates are supported.
    """
    lines = prompt.splitlines()
    if not lines or not lines[0].startswith("Task: "):
        raise ValueError("prompt does not carry a task header")
    task = lines[0].removeprefix("Task: ").split(" (", 1)[0].strip()

    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for line in lines[1:]:
        if line in _SECTION_HEADERS:
            current = []
            sections[line[:-1].lower()] = current
        elif current is not None and line.strip():
            current.append(line)

    def joined(name: str) -> str:
        text = " ".join(sections.get(name, [])).strip()
        return "" if text == NONE_SENTINEL else text

    local = [
        line[2:].strip()
        for line in sections.get("recent segments", [])
        if line.startswith("- ")
    ]
    numbered = []
    for line in sections.get("transcript segments", []):
        idx, _, text = line.partition(". ")
        if idx.strip().isdigit():
            numbered.append((int(idx), text.strip()))

    max_k = None
    for line in sections.get("instruction", []):
        for token in line.split():
            if token.isdigit():
                max_k = int(token)
                break
        if max_k is not None:
            break

    return {
        "task": task,
        "global": joined("global context"),
        "local": local,
        "target": joined("target segment"),
        "segments": numbered,
        "max_k": max_k,
    }
