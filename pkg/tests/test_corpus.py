from __future__ import annotations

import copy
import json
import shutil
from typing import TYPE_CHECKING

import pytest
from brauer_pinch import theorems
from brauer_pinch.cli.corpus import (
    CONFIG_SUFFIX,
    REPORT_SUFFIX,
    CorpusEntry,
    check_entry,
    corpus_dir,
    list_entries,
    run_corpus,
)
from brauer_pinch.cli.parser import parse_config
from brauer_pinch.errors import InvalidChainError
from brauer_pinch.oracle import OracleCaps


if TYPE_CHECKING:
    from collections.abc import Callable
    from pathlib import Path


pytestmark = pytest.mark.integration


@pytest.fixture
def corpus_copy(tmp_path: Path) -> Path:
    """A writable copy of the packaged corpus."""
    directory = tmp_path / "corpus"
    shutil.copytree(corpus_dir(), directory, ignore=shutil.ignore_patterns("__init__.py", "__pycache__"))
    return directory


def test_corpus_has_the_worked_examples():
    names = [entry.name for entry in list_entries()]

    assert names == sorted(names)
    assert {
        "empty-locus",
        "imperfect-wound-curve",
        "index-gcd-order",
        "inseparable-fiber-d1",
        "inseparable-fiber-d2",
        "inseparable-fiber-d3",
        "pinched-line-padic",
        "residue-iso-cusp",
        "severi-brauer-conic",
    } <= set(names)
    assert all(entry.report_path.is_file() for entry in list_entries())


@pytest.mark.parametrize("entry", list_entries(), ids=lambda entry: entry.name)
def test_corpus_entry_reproduces(entry: CorpusEntry):
    outcome = check_entry(entry, OracleCaps())
    assert outcome.status == "match", outcome.detail


@pytest.mark.parametrize("d", [1, 2, 3])
def test_inseparable_fiber_reports(d: int):
    report = json.loads((corpus_dir() / f"inseparable-fiber-d{d}{REPORT_SUFFIX}").read_text(encoding="utf-8"))
    assert report["br1Pinched"] == f"Q/Z (+) Z/{2**d}"
    assert report["oracleStatus"] == "pass"


def test_regenerate_rewrites_byte_identical_reports(corpus_copy: Path):
    originals = {path.name: path.read_text(encoding="utf-8") for path in corpus_copy.glob(f"*{REPORT_SUFFIX}")}
    for path in corpus_copy.glob(f"*{REPORT_SUFFIX}"):
        path.unlink()

    outcomes = run_corpus(OracleCaps(), corpus_copy, regenerate=True)

    assert {o.status for o in outcomes} == {"regenerated"}
    regenerated = {path.name: path.read_text(encoding="utf-8") for path in corpus_copy.glob(f"*{REPORT_SUFFIX}")}
    assert regenerated == originals


def test_changed_report_is_a_mismatch(corpus_copy: Path):
    report_path = corpus_copy / f"pinched-line-padic{REPORT_SUFFIX}"
    report = json.loads(report_path.read_text(encoding="utf-8"))
    report["kerPhi1"] = "Z/4"
    report_path.write_text(json.dumps(report), encoding="utf-8")

    outcomes = {o.name: o for o in run_corpus(OracleCaps(), corpus_copy)}

    assert outcomes["pinched-line-padic"].status == "mismatch"
    assert outcomes["pinched-line-padic"].detail == "differs in kerPhi1"
    assert outcomes["residue-iso-cusp"].status == "match"


@pytest.mark.parametrize(
    "reformat",
    [
        lambda text: json.dumps(json.loads(text), sort_keys=True, separators=(",", ":")),
        lambda text: text.replace("\n", "\r\n"),
        lambda text: text.rstrip("\n"),
        lambda text: json.dumps(json.loads(text), indent=4) + "\n",
    ],
    ids=["compact", "crlf", "no-final-newline", "unsorted-indent-4"],
)
def test_reformatted_report_is_a_mismatch(corpus_copy: Path, reformat: Callable[[str], str]):
    report_path = corpus_copy / f"empty-locus{REPORT_SUFFIX}"
    report_path.write_bytes(reformat(report_path.read_text(encoding="utf-8")).encode("utf-8"))

    entry = CorpusEntry(name="empty-locus", config_path=corpus_copy / f"empty-locus{CONFIG_SUFFIX}", report_path=report_path)
    outcome = check_entry(entry, OracleCaps())

    assert outcome.status == "mismatch"
    assert outcome.detail == "differs in formatting"


def test_report_that_is_not_json_is_a_mismatch(corpus_copy: Path):
    (corpus_copy / f"empty-locus{REPORT_SUFFIX}").write_text("not json", encoding="utf-8")
    outcomes = {o.name: o for o in run_corpus(OracleCaps(), corpus_copy)}
    assert (outcomes["empty-locus"].status, outcomes["empty-locus"].detail) == ("mismatch", "committed report is not JSON")


def test_missing_report_and_broken_config(corpus_copy: Path):
    (corpus_copy / f"empty-locus{REPORT_SUFFIX}").unlink()
    (corpus_copy / f"broken{CONFIG_SUFFIX}").write_text("{", encoding="utf-8")

    outcomes = {o.name: o for o in run_corpus(OracleCaps(), corpus_copy)}

    assert outcomes["empty-locus"].status == "missing"
    assert outcomes["broken"].status == "error"
    assert outcomes["broken"].detail.startswith("parse-error: ")


### Seminormalization chains from the residue-isomorphic entry ###
##################################################################

def _residue_iso_chain_documents(length: int) -> list[dict]:
    document = json.loads((corpus_dir() / f"residue-iso-cusp{CONFIG_SUFFIX}").read_text(encoding="utf-8"))
    steps = []
    for i in range(length):
        step = copy.deepcopy(document)
        step["cover"]["br1"] = "base-brauer"
        step["points"][0]["label"] = f"c{i}"
        steps.append(step)
    return steps


@pytest.mark.parametrize("length", [2, 3, 10])
def test_residue_iso_entry_extends_to_a_seminormalization_chain(length: int):
    committed = json.loads((corpus_dir() / f"residue-iso-cusp{REPORT_SUFFIX}").read_text(encoding="utf-8"))
    steps = [parse_config(json.dumps(step)) for step in _residue_iso_chain_documents(length)]

    chain = theorems.seminormalization_chain(steps)

    assert chain.is_isomorphism
    assert [str(report.br1_pinched) for report in chain.steps] == [committed["br1Pinched"]] * length
    assert all(str(report.ker_phi1) == committed["kerPhi1"] for report in chain.steps)


def test_residue_iso_chain_with_a_foreign_step_is_rejected():
    documents = _residue_iso_chain_documents(3)
    documents[2]["cover"] = {"br1": [2], "closedPointDegrees": [1]}

    with pytest.raises(InvalidChainError) as exc_info:
        theorems.seminormalization_chain([parse_config(json.dumps(step)) for step in documents])
    assert exc_info.value.step == 2
