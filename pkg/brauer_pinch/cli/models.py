"""Models for CLI arguments, the pyproject.toml settings table, and the JSON config and report documents."""
from __future__ import annotations

from typing import TYPE_CHECKING, Any, Literal, Protocol

from pydantic import BaseModel, ConfigDict, Field, PositiveInt
from pydantic.alias_generators import to_camel
from typing_extensions import TypedDict

from brauer_pinch.types import (  # noqa: TC001
    CoverKindStr,
    FieldKindStr,
    OracleStatusStr,
    OutputFormatStr,
    TheoremTagStr,
)


if TYPE_CHECKING:
    from pathlib import Path



### CLI Arguments Namespace ###
##################################

class CliArgsNamespace(Protocol):
    """Represents the command-line arguments namespace."""
    command: Literal["analyze", "corpus", "selfcheck"]
    project_dir: Path | None
    verbose: bool
    format: OutputFormatStr | None

    # analyze
    config_file: Path
    oracle: bool

    # corpus
    regenerate: bool

    # selfcheck
    max_order: int
    census_samples: int


### pyproject.toml Nested Config ###
#######################################

class BrauerPinchConfigDict(TypedDict, total=False):
    """Represents the `[tool.brauer-pinch]` section within pyproject.toml."""
    oracle_census_cap: int
    oracle_modulus_cap: int
    default_format: OutputFormatStr


# "brauer-pinch" is not an identifier, hence the functional form.
ToolConfigDict = TypedDict("ToolConfigDict", {"brauer-pinch": BrauerPinchConfigDict}, total=False)


class PyProjectConfigDict(TypedDict, total=False):
    """Represents the structure of the pyproject.toml configuration file (or at least for what we care about here)."""
    tool: ToolConfigDict


### Config document ###
#######################

class _DocumentModel(BaseModel):
    model_config = ConfigDict(
        alias_generator=to_camel,
        extra="forbid",
        frozen=True,
        populate_by_name=True,
        strict=True,
    )


class FieldRecord(_DocumentModel):
    kind: FieldKindStr
    p: PositiveInt = 1
    label: str = "k"


class CoverRecord(_DocumentModel):
    cover_kind: CoverKindStr = "general"
    class_order: PositiveInt | None = None
    amitsur_order: PositiveInt | None = None
    br_a_order: PositiveInt | None = None
    """Order of Br_a X~, taken as cyclic."""
    br1: Literal["base-brauer", "unknown"] | list[PositiveInt] | None = None
    """Br_1 X~: "base-brauer" for Br k, "unknown", or the cyclic orders of a finite group."""
    closed_point_degrees: list[PositiveInt] | None = Field(default=None, min_length=1)
    index: PositiveInt | None = None
    smooth_normalization: bool = False


class FiberRecord(_DocumentModel):
    degree: PositiveInt
    separable_degree: PositiveInt | None = None


class PointRecord(_DocumentModel):
    label: str
    residue_degree: PositiveInt
    residue_separable_degree: PositiveInt | None = None
    fibers: list[FiberRecord]


class ConfigDocument(_DocumentModel):
    """A pinching configuration as written by users (schemaVersion 1)."""
    schema_version: Literal[1]
    field: FieldRecord
    cover: CoverRecord
    points: list[PointRecord] = []

    def echo(self) -> dict[str, Any]:
        """The document as given, without defaults filled in."""
        return self.model_dump(by_alias=True, exclude_unset=True, mode="json")


### Report document ###
#######################

class AppliedTheorem(_DocumentModel):
    tag: TheoremTagStr
    citation: str


class IndexFactsRecord(_DocumentModel):
    cover_index: int | None = None
    locus_index: int | None = None
    constraint_divisor: int | None = None
    annihilator_bound: int | None = None
    rl_order: int | None = None


class ReportDocument(_DocumentModel):
    """The serialized BrauerReport; group descriptors are rendered in their canonical text form."""
    schema_version: Literal[1] = 1
    input_echo: dict[str, Any]
    intersection_product: str
    amitsur_pinched: str
    amitsur_quotient: str
    coker_injection: str
    ker_phi1: str
    ker_phi1_split: bool
    h2_mu: str
    coker_phi_a: str
    br1_pinched: str
    index_facts: IndexFactsRecord
    applied_theorems: list[AppliedTheorem]
    caveats: list[str]
    oracle_status: OracleStatusStr
    oracle_notes: list[str] = []
