from __future__ import annotations

import shutil
import sys
from pathlib import Path

import pytest

from speechvis.config import PipelineSettings, load_settings
from speechvis.manifest import build_project

REPO = Path(__file__).resolve().parent.parent
SAMPLE = REPO / "sample"
CORPUS = REPO / "tests" / "corpus"
GOLDEN = REPO / "tests" / "golden"


@pytest.fixture(scope="session")
def sample_dir() -> Path:
    return SAMPLE


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


def sample_settings() -> PipelineSettings:
    import dataclasses

    settings = load_settings(SAMPLE / "config.yaml")
    return dataclasses.replace(settings, offline=True, seed=7)


def build_sample(out_dir: Path) -> dict:
    return build_project(
        project_id="sample",
        frames_dir=SAMPLE / "frames",
        transcript_path=SAMPLE / "transcript.srt",
        out_dir=out_dir,
        settings=sample_settings(),
    )


@pytest.fixture(scope="session")
def built_sample(tmp_path_factory) -> tuple[Path, dict]:
    """One shared offline build of the checked-in sample project."""
    out = tmp_path_factory.mktemp("built") / "sample"
    manifest = build_sample(out)
    return out, manifest


@pytest.fixture(scope="session")
def service_root(tmp_path_factory, built_sample) -> Path:
    """Service root layout: root/sample/{manifest.json, assets/, frames/}."""
    out, _ = built_sample
    root = tmp_path_factory.mktemp("serve")
    project = root / "sample"
    shutil.copytree(out, project, ignore=shutil.ignore_patterns(".stage-*"))
    shutil.copytree(SAMPLE / "frames", project / "frames")
    return root


def pytest_terminal_summary(terminalreporter):
    # acceptance verdicts are recorded under capture; echo them where visible
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "VERDICTS", []) if module else []
    if lines:
        terminalreporter.section("acceptance verdicts")
        for line in lines:
            terminalreporter.write_line(line)
