"""Turn JSON config documents into validated pinching configurations.

Failures are reported in three layers: malformed JSON (`ConfigParseError`), documents that do not match the schema
(`ConfigSchemaError`), and documents that describe no pinched variety (`ConfigValidationError`).
"""
from __future__ import annotations

import codecs
import json
import re
from logging import getLogger
from typing import TYPE_CHECKING

from pydantic import ValidationError

from brauer_pinch import qz
from brauer_pinch.cli.errors import ConfigParseError, ConfigSchemaError, ConfigValidationError
from brauer_pinch.cli.models import ConfigDocument, CoverRecord
from brauer_pinch.fieldspec import FieldSpec, brauer_group
from brauer_pinch.pinchmodel import CoverData, PinchingConfig, PinchPoint, Violation, validate


if TYPE_CHECKING:
    from pydantic_core import ErrorDetails

    from brauer_pinch.cli.models import PointRecord


logger = getLogger("brauer_pinch.cli.parser")


_UTF8_BOM = "\ufeff"

_JSON_POSITION = re.compile(r"line (\d+) column (\d+)")


def _strip_bom(data: bytes | str) -> bytes | str:
    if isinstance(data, bytes):
        return data.removeprefix(codecs.BOM_UTF8)
    return data.removeprefix(_UTF8_BOM)


def _parse_error_from(err: ErrorDetails) -> ConfigParseError:
    match = _JSON_POSITION.search(err["msg"])
    line, column = (int(match[1]), int(match[2])) if match else (1, 1)
    msg = f"Malformed JSON at line {line}, column {column}: {err['msg']}."
    return ConfigParseError(msg, line=line, column=column)


def load_document(data: bytes | str) -> ConfigDocument:
    """Parse and schema-check a config document. A leading UTF-8 byte order mark is ignored.

    Raises:
        ConfigParseError: If the data is not UTF-8 JSON.
        ConfigSchemaError: If the JSON does not match the schema; each error carries its key path.
    """
    data = _strip_bom(data)
    # json.loads only locates syntax errors; the schema check below reads JSON directly so strict mode accepts objects.
    try:
        json.loads(data)

    except json.JSONDecodeError as e:
        msg = f"Malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}."
        raise ConfigParseError(msg, line=e.lineno, column=e.colno) from e

    except UnicodeDecodeError as e:
        msg = f"Config document is not valid UTF-8 (byte {e.start})."
        raise ConfigParseError(msg, line=1, column=e.start + 1) from e

    try:
        return ConfigDocument.model_validate_json(data)

    except ValidationError as e:
        details = e.errors()
        invalid_json = [err for err in details if err["type"] == "json_invalid"]
        if invalid_json:
            raise _parse_error_from(invalid_json[0]) from e

        errors = [(".".join(str(part) for part in err["loc"]) or "<root>", err["msg"]) for err in details]
        msg = "; ".join(f"{path}: {message}" for path, message in errors)
        raise ConfigSchemaError(msg, errors=errors) from e


def _violations_from(e: ValidationError, where: str) -> list[Violation]:
    return [Violation(code=err["type"], message=f"{where}: {err['msg']}") for err in e.errors()]


def _br1(record: CoverRecord, field: FieldSpec) -> qz.AbGroupDescriptor | None:
    if record.br1 is None:
        return None
    if record.br1 == "base-brauer":
        return brauer_group(field)
    if record.br1 == "unknown":
        return qz.unknown(note="Br_1 X~")
    return qz.known(*record.br1)


def _cover(record: CoverRecord, field: FieldSpec) -> CoverData:
    """The cover as declared; `CoverData` fills an omitted Amitsur subgroup or Br_a from the cover kind."""
    declared: dict[str, qz.QmodZSubgroup | qz.AbGroupDescriptor] = {}
    if record.amitsur_order is not None:
        declared["amitsur"] = qz.KnownCyclic(n=record.amitsur_order)
    if record.br_a_order is not None:
        declared["br_a"] = qz.known(record.br_a_order)
    return CoverData(
        base_field=field,
        br1=_br1(record, field),
        closed_point_degrees=tuple(record.closed_point_degrees) if record.closed_point_degrees else None,
        declared_index=record.index,
        cover_kind=record.cover_kind,
        class_order=record.class_order,
        smooth_normalization=record.smooth_normalization,
        **declared,
    )


def _point(record: PointRecord, field: FieldSpec) -> PinchPoint:
    return PinchPoint.of(
        field,
        record.residue_degree,
        [(f.degree, f.separable_degree or f.degree) for f in record.fibers],
        label=record.label,
        residue_separable_degree=record.residue_separable_degree,
    )


def to_config(document: ConfigDocument) -> PinchingConfig:
    """Build the configuration described by a schema-valid document, then validate it.

    Raises:
        ConfigValidationError: If a field, extension or cover invariant is violated.
    """
    try:
        field = FieldSpec(kind=document.field.kind, p=document.field.p, label=document.field.label)
    except ValidationError as e:
        msg = f"Invalid base field: {e}"
        raise ConfigValidationError(msg, violations=_violations_from(e, "field")) from e

    violations: list[Violation] = []
    points: list[PinchPoint] = []
    for i, record in enumerate(document.points):
        try:
            points.append(_point(record, field))
        except ValidationError as e:
            violations.extend(_violations_from(e, f"points.{i} ({record.label})"))

    cover: CoverData | None = None
    try:
        cover = _cover(document.cover, field)
    except ValidationError as e:
        violations.extend(_violations_from(e, "cover"))

    if violations or cover is None:
        msg = "; ".join(f"{v.code}: {v.message}" for v in violations)
        raise ConfigValidationError(msg, violations=violations)

    config = PinchingConfig(cover=cover, points=tuple(points))

    violations = validate(config)
    if violations:
        msg = "; ".join(f"{v.code}: {v.message}" for v in violations)
        raise ConfigValidationError(msg, violations=violations)
    return config


def parse_config(data: bytes | str) -> PinchingConfig:
    """Parse a UTF-8 JSON config document into a validated configuration.

    Raises:
        ConfigParseError: If the data is not JSON.
        ConfigSchemaError: If the document does not match the schema.
        ConfigValidationError: If the configuration violates a structural invariant.
    """
    document = load_document(data)
    config = to_config(document)
    logger.debug("Parsed config with %d pinch points over %s", len(config.points), config.cover.base_field.kind)
    return config
