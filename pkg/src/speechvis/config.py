"""Pipeline settings: defaults, YAML loading, validation, stable digest.

The digest of the effective settings is stamped into every manifest (and used
as the service ETag), so two builds can be compared by configuration alone.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import yaml

from .packing import PlacementConfig
from .util import canonical_json_bytes, sha256_hex


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SaliencySettings:
    passes: int = 3

    def __post_init__(self):
        if self.passes < 1:
            raise ConfigError("saliency.passes must be >= 1")


@dataclass(frozen=True)
class LanguageSettings:
    local_window: int = 5
    max_keyphrases: int = 3

    def __post_init__(self):
        if self.local_window < 0:
            raise ConfigError("language.local_window must be >= 0")
        if self.max_keyphrases < 0:
            raise ConfigError("language.max_keyphrases must be >= 0")


@dataclass(frozen=True)
class PackingSettings:
    salient_budget_fraction: float = 0.02
    shrink_factor: float = 0.9
    min_width_fraction: float = 0.2
    scan_stride: int = 8
    margin: int = 8
    text_point_fraction: float = 0.05  # keyphrase point size = fraction * frame height

    def __post_init__(self):
        try:
            self.to_placement_config()
        except ValueError as exc:
            raise ConfigError(f"packing: {exc}") from exc
        if not 0.0 < self.text_point_fraction <= 1.0:
            raise ConfigError("packing.text_point_fraction must be in (0, 1]")

    def to_placement_config(self) -> PlacementConfig:
        return PlacementConfig(
            salient_budget_fraction=self.salient_budget_fraction,
            shrink_factor=self.shrink_factor,
            min_width_fraction=self.min_width_fraction,
            scan_stride=self.scan_stride,
            margin=self.margin,
        )


@dataclass(frozen=True)
class ChatSettings:
    endpoint: str | None = None
    model: str = "llama-3.1-8b-instruct"
    timeout: float = 30.0
    retries: int = 2
    temperature: float = 0.0
    concurrency: int = 4

    def __post_init__(self):
        if self.timeout <= 0:
            raise ConfigError("chat.timeout must be positive")
        if self.retries < 0:
            raise ConfigError("chat.retries must be >= 0")
        if self.concurrency < 1:
            raise ConfigError("chat.concurrency must be >= 1")


@dataclass(frozen=True)
class ImageSettings:
    endpoint: str | None = None
    width: int = 512
    height: int = 512
    timeout: float = 60.0
    retries: int = 1
    concurrency: int = 2

    def __post_init__(self):
        if self.width < 64 or self.height < 64:
            raise ConfigError("image.width/height must be >= 64")
        if self.timeout <= 0:
            raise ConfigError("image.timeout must be positive")
        if self.retries < 0:
            raise ConfigError("image.retries must be >= 0")
        if self.concurrency < 1:
            raise ConfigError("image.concurrency must be >= 1")


@dataclass(frozen=True)
class PipelineSettings:
    threshold: int = 5
    seed: int = 0
    offline: bool = False
    jobs: int = 4
    saliency: SaliencySettings = field(default_factory=SaliencySettings)
    language: LanguageSettings = field(default_factory=LanguageSettings)
    packing: PackingSettings = field(default_factory=PackingSettings)
    chat: ChatSettings = field(default_factory=ChatSettings)
    image: ImageSettings = field(default_factory=ImageSettings)

    def __post_init__(self):
        if not 1 <= self.threshold <= 10:
            raise ConfigError("threshold must be in 1..10")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        return sha256_hex(canonical_json_bytes(self.to_dict()))


_SECTIONS = {
    "saliency": SaliencySettings,
    "language": LanguageSettings,
    "packing": PackingSettings,
    "chat": ChatSettings,
    "image": ImageSettings,
}


def _build_section(cls, data: dict, section: str):
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown key(s) in {section}: {', '.join(sorted(unknown))}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"bad value in {section}: {exc}") from exc


def settings_from_dict(data: dict) -> PipelineSettings:
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    top: dict = {}
    for key, value in data.items():
        if key in _SECTIONS:
            if not isinstance(value, dict):
                raise ConfigError(f"section {key!r} must be a mapping")
            top[key] = _build_section(_SECTIONS[key], value, key)
        else:
            top[key] = value
    return _build_section(PipelineSettings, top, "top level")


def load_settings(path: str | Path | None = None) -> PipelineSettings:
    """Settings from a YAML file, or all defaults when path is None."""
    if path is None:
        return PipelineSettings()
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    return settings_from_dict(data if data is not None else {})
