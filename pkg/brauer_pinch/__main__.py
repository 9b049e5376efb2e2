from __future__ import annotations

import json
import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn, cast

import tomli as toml
from pydantic import TypeAdapter, ValidationError

from brauer_pinch.cli.corpus import run_corpus
from brauer_pinch.cli.errors import (
    ConfigError,
    ConfigSchemaError,
    ConfigValidationError,
    DirectoryNotFoundError,
    NotAFileError,
    SettingsError,
    UsageError,
)
from brauer_pinch.cli.models import BrauerPinchConfigDict, CliArgsNamespace, PyProjectConfigDict
from brauer_pinch.cli.parser import load_document, to_config
from brauer_pinch.cli.report import build_report_document, render, run_oracle
from brauer_pinch.cli.selfcheck import run_selfcheck
from brauer_pinch.errors import BrauerPinchError
from brauer_pinch.oracle import DEFAULT_CENSUS_CAP, DEFAULT_MODULUS_CAP, OracleCaps
from brauer_pinch.theorems import analyze
from brauer_pinch.utils._version import MODULE_VERSION
from brauer_pinch.utils.logging import configure_brauer_logger, configure_local_logger


if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from brauer_pinch.cli.corpus import CorpusOutcome
    from brauer_pinch.cli.selfcheck import SelfcheckSummary
    from brauer_pinch.types import OutputFormatStr


logger = logging.getLogger("brauer_pinch")


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2
EXIT_USAGE = 64


class BrauerArgumentParser(ArgumentParser):
    """An ArgumentParser that raises `UsageError` instead of exiting, so usage errors get their own exit code."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        msg = f"expected a positive integer, got {text!r}"
        raise ArgumentTypeError(msg) from e
    if value < 1:
        msg = f"expected a positive integer, got {value}"
        raise ArgumentTypeError(msg)
    return value


def setup_cli() -> ArgumentParser:
    """Set up the command-line interface for the script.

    Returns:
        argparse.ArgumentParser: The argument parser for the CLI.
    """
    parser = BrauerArgumentParser(
        prog="brauer-pinch",
        description="Compute Brauer groups of varieties obtained by pinching closed subschemes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {MODULE_VERSION}")
    parser.add_argument(
        "--project-dir",
        type=Path,
        default=None,
        help="Directory holding the pyproject.toml with [tool.brauer-pinch] settings; logs go to its logs/ folder.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level.")

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=BrauerArgumentParser)

    analyze_parser = subparsers.add_parser("analyze", help="Analyze one pinching config document.")
    analyze_parser.add_argument("config_file", type=Path, help="Path to a JSON config document.")
    analyze_parser.add_argument("--format", choices=["json", "text"], default=None, help="Output format.")
    analyze_parser.add_argument("--oracle", action="store_true", help="Cross-check the report by enumeration.")

    corpus_parser = subparsers.add_parser("corpus", help="Check the built-in worked examples.")
    corpus_parser.add_argument("--format", choices=["json", "text"], default=None, help="Output format.")
    corpus_parser.add_argument(
        "--regenerate",
        action="store_true",
        help="Overwrite the expected reports with freshly computed ones.",
    )

    selfcheck_parser = subparsers.add_parser("selfcheck", help="Cross-check the group arithmetic by enumeration.")
    selfcheck_parser.add_argument("--format", choices=["json", "text"], default=None, help="Output format.")
    selfcheck_parser.add_argument("--max-order", type=_positive_int, default=200, help="Largest cyclic order checked.")
    selfcheck_parser.add_argument(
        "--census-samples",
        type=_positive_int,
        default=500,
        help="Number of random factor lists for the census suite.",
    )

    return parser


def read_brauer_config_from_pyproject(project_dir: Path) -> BrauerPinchConfigDict:
    """Get the `[tool.brauer-pinch]` section from the pyproject.toml in a project directory.

    A missing pyproject.toml or a missing section means no settings.

    Args:
        project_dir (Path): The directory containing the pyproject.toml.

    Returns:
        BrauerPinchConfigDict: The validated settings table.

    Raises:
        DirectoryNotFoundError: If the specified project_dir does not exist.
        NotADirectoryError: If the specified project_dir is not a directory.
        SettingsError: If pyproject.toml is not valid TOML or the section has wrongly typed values.
    """
    if not project_dir.exists():
        msg = f"The directory '{project_dir}' does not exist."
        raise DirectoryNotFoundError(msg, directory=project_dir)
    if not project_dir.is_dir():
        msg = f"The provided directory exists but is not a directory: '{project_dir}'."
        raise NotADirectoryError(msg)

    pyproject_path = project_dir / "pyproject.toml"
    if not pyproject_path.is_file():
        return {}

    with pyproject_path.open("rb") as f:
        try:
            pyproject_config: PyProjectConfigDict = toml.load(f)

        except toml.TOMLDecodeError as e:
            msg = f"Cannot read '{pyproject_path}': {e}"
            raise SettingsError(msg) from e

    raw_settings = pyproject_config.get("tool", {}).get("brauer-pinch", {})
    try:
        return TypeAdapter(BrauerPinchConfigDict).validate_python(raw_settings)

    except ValidationError as e:
        msg = f"Invalid [tool.brauer-pinch] section in '{pyproject_path}': {e}"
        raise SettingsError(msg) from e


def resolve_caps(settings: BrauerPinchConfigDict, environ: Mapping[str, str] | None = None) -> OracleCaps:
    """Oracle caps from defaults, then pyproject settings, then the environment."""
    base = OracleCaps(
        census_cap=settings.get("oracle_census_cap", DEFAULT_CENSUS_CAP),
        modulus_cap=settings.get("oracle_modulus_cap", DEFAULT_MODULUS_CAP),
    )
    return OracleCaps.from_env(base, environ)


def resolve_format(settings: BrauerPinchConfigDict, flag: OutputFormatStr | None) -> OutputFormatStr:
    return flag or settings.get("default_format", "json")


def _read_config_file(path: Path) -> bytes:
    if not path.exists():
        msg = f"The file '{path}' does not exist."
        raise FileNotFoundError(msg)
    if not path.is_file():
        msg = f"The provided filepath '{path}' is not a file."
        raise NotAFileError(msg)
    return path.read_bytes()


### Subcommands ###
###################

def run_analyze(args: CliArgsNamespace, settings: BrauerPinchConfigDict) -> int:
    document = load_document(_read_config_file(args.config_file))
    config = to_config(document)
    report = analyze(config)
    verdict = run_oracle(config, report, resolve_caps(settings)) if args.oracle else None

    report_document = build_report_document(document, report, verdict)
    sys.stdout.write(render(report_document, resolve_format(settings, args.format)))

    if verdict is not None and verdict.status == "fail":
        return EXIT_MISMATCH
    return EXIT_OK


def _render_outcomes(outcomes: Sequence[CorpusOutcome], output_format: OutputFormatStr) -> str:
    if output_format == "json":
        payload = [outcome.model_dump(mode="json") for outcome in outcomes]
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    width = max((len(outcome.name) for outcome in outcomes), default=0)
    lines = [f"{o.name:<{width}}  {o.status}{f'  ({o.detail})' if o.detail else ''}" for o in outcomes]
    return "\n".join(lines) + "\n"


def run_corpus_command(args: CliArgsNamespace, settings: BrauerPinchConfigDict) -> int:
    outcomes = run_corpus(resolve_caps(settings), regenerate=args.regenerate)
    sys.stdout.write(_render_outcomes(outcomes, resolve_format(settings, args.format)))

    if all(outcome.status in ("match", "regenerated") for outcome in outcomes):
        return EXIT_OK
    return EXIT_MISMATCH


def _render_summary(summary: SelfcheckSummary, output_format: OutputFormatStr) -> str:
    if output_format == "json":
        payload = summary.model_dump(mode="json") | {"passed": summary.passed}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    lines = []
    for name, result in (("lattice (gcd/lcm)", summary.lattice_model), ("lattice (qz)", summary.lattice_qz)):
        status = "pass" if result.passed else "FAIL"
        lines.append(f"{name}: {status}, {result.pairs_checked} pairs")
        if result.counterexample is not None:
            c = result.counterexample
            lines.append(f"  {c.operation}({c.a}, {c.b}): expected {c.expected}, got {c.got}")
    census_status = "FAIL" if summary.census_mismatches else "pass"
    lines.append(f"census: {census_status}, {summary.census_checked} samples")
    lines.extend(f"  {list(m.factors)} -> {list(m.canonical)}" for m in summary.census_mismatches)
    return "\n".join(lines) + "\n"


def run_selfcheck_command(args: CliArgsNamespace, settings: BrauerPinchConfigDict) -> int:
    summary = run_selfcheck(args.max_order, resolve_caps(settings), census_samples=args.census_samples)
    sys.stdout.write(_render_summary(summary, resolve_format(settings, args.format)))
    return EXIT_OK if summary.passed else EXIT_MISMATCH


_COMMANDS = {
    "analyze": run_analyze,
    "corpus": run_corpus_command,
    "selfcheck": run_selfcheck_command,
}


### Entry point ###
###################

def _report_config_error(e: ConfigError) -> None:
    sys.stderr.write(f"brauer-pinch: {e.code}: {e}\n")
    if isinstance(e, ConfigSchemaError):
        for path, message in e.errors:
            sys.stderr.write(f"  {path}: {message}\n")
    elif isinstance(e, ConfigValidationError):
        for violation in e.violations:
            sys.stderr.write(f"  {violation.code}: {violation.message}\n")


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and return its exit code.

    Results are written to stdout; diagnostics go to stderr and the log.
    """
    parser = setup_cli()
    try:
        args = cast(CliArgsNamespace, parser.parse_args(argv))

    except UsageError as e:
        sys.stderr.write(f"{parser.format_usage()}brauer-pinch: error: {e}\n")
        return EXIT_USAGE

    try:
        settings = read_brauer_config_from_pyproject(args.project_dir or Path.cwd())

        log_level = logging.DEBUG if args.verbose else logging.INFO
        # After configuring once here, every module logger `brauer_pinch.<module>` shares the handlers.
        if args.project_dir is not None:
            configure_local_logger(name="brauer_pinch", project_dir=args.project_dir, log_level=log_level)
        else:
            configure_brauer_logger(name="brauer_pinch", log_level=log_level)
        logger.debug("Running %s", args.command)

        return _COMMANDS[args.command](args, settings)

    except (FileNotFoundError, NotADirectoryError) as e:
        sys.stderr.write(f"brauer-pinch: error: {e}\n")
        return EXIT_USAGE

    except ConfigError as e:
        _report_config_error(e)
        return EXIT_ERROR

    except BrauerPinchError as e:
        sys.stderr.write(f"brauer-pinch: {e.code}: {e}\n")
        return EXIT_ERROR


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
