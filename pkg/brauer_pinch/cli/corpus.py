"""The built-in corpus of worked examples and their committed expected reports.

Each entry is a pair `<name>.config.json` / `<name>.report.json` in the `brauer_pinch.corpus` package. Changing a
formula means consciously regenerating the expected reports with `brauer-pinch corpus --regenerate`.
"""
from __future__ import annotations

import json
from importlib.resources import files
from logging import getLogger
from pathlib import Path
from typing import TYPE_CHECKING, Literal

from pydantic import BaseModel, ConfigDict

from brauer_pinch.cli.errors import ConfigError
from brauer_pinch.cli.parser import load_document, to_config
from brauer_pinch.cli.report import build_report_document, run_oracle, to_json
from brauer_pinch.errors import BrauerPinchError
from brauer_pinch.theorems import analyze


if TYPE_CHECKING:
    from brauer_pinch.cli.models import ReportDocument
    from brauer_pinch.oracle import OracleCaps


logger = getLogger("brauer_pinch.cli.corpus")


CORPUS_PACKAGE = "brauer_pinch.corpus"
CONFIG_SUFFIX = ".config.json"
REPORT_SUFFIX = ".report.json"


class CorpusEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    config_path: Path
    report_path: Path


class CorpusOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    status: Literal["match", "mismatch", "missing", "error", "regenerated"]
    detail: str = ""


def corpus_dir() -> Path:
    """The directory of the packaged corpus."""
    return Path(str(files(CORPUS_PACKAGE)))


def list_entries(directory: Path | None = None) -> list[CorpusEntry]:
    """All corpus entries in `directory` (default: the packaged corpus), sorted by name."""
    directory = directory or corpus_dir()
    entries = []
    for config_path in sorted(directory.glob(f"*{CONFIG_SUFFIX}")):
        name = config_path.name.removesuffix(CONFIG_SUFFIX)
        entries.append(CorpusEntry(name=name, config_path=config_path, report_path=directory / f"{name}{REPORT_SUFFIX}"))
    return entries


def compute_report(data: bytes | str, caps: OracleCaps) -> ReportDocument:
    """Parse, analyze and oracle-check one config document.

    Raises:
        ConfigError: If the document is rejected.
        BrauerPinchError: If the analysis fails.
    """
    document = load_document(data)
    config = to_config(document)
    report = analyze(config)
    return build_report_document(document, report, run_oracle(config, report, caps))


def _mismatch_detail(committed: bytes, actual: str) -> str:
    try:
        expected = json.loads(committed)
    except (json.JSONDecodeError, UnicodeDecodeError):
        return "committed report is not JSON"
    computed = json.loads(actual)
    if not isinstance(expected, dict):
        return "committed report is not a JSON object"

    differing = sorted(key for key in set(expected) | set(computed) if expected.get(key) != computed.get(key))
    if not differing:
        return "differs in formatting"
    return f"differs in {', '.join(differing)}"


def check_entry(entry: CorpusEntry, caps: OracleCaps) -> CorpusOutcome:
    """Compare the freshly computed report of an entry byte for byte with its committed report."""
    try:
        actual = to_json(compute_report(entry.config_path.read_bytes(), caps))
    except (ConfigError, BrauerPinchError) as e:
        return CorpusOutcome(name=entry.name, status="error", detail=f"{e.code}: {e}")

    if not entry.report_path.is_file():
        return CorpusOutcome(name=entry.name, status="missing", detail=f"no {entry.report_path.name}")

    committed = entry.report_path.read_bytes()
    if committed == actual.encode("utf-8"):
        return CorpusOutcome(name=entry.name, status="match")
    return CorpusOutcome(name=entry.name, status="mismatch", detail=_mismatch_detail(committed, actual))


def regenerate_entry(entry: CorpusEntry, caps: OracleCaps) -> CorpusOutcome:
    """Overwrite the committed report of an entry with the freshly computed one."""
    try:
        actual = to_json(compute_report(entry.config_path.read_bytes(), caps))
    except (ConfigError, BrauerPinchError) as e:
        return CorpusOutcome(name=entry.name, status="error", detail=f"{e.code}: {e}")

    entry.report_path.write_bytes(actual.encode("utf-8"))
    logger.info("Regenerated %s", entry.report_path)
    return CorpusOutcome(name=entry.name, status="regenerated")


def run_corpus(caps: OracleCaps, directory: Path | None = None, *, regenerate: bool = False) -> list[CorpusOutcome]:
    """Check (or regenerate) every entry of the corpus."""
    action = regenerate_entry if regenerate else check_entry
    outcomes = [action(entry, caps) for entry in list_entries(directory)]
    for outcome in outcomes:
        logger.debug("Corpus entry %s: %s %s", outcome.name, outcome.status, outcome.detail)
    return outcomes
