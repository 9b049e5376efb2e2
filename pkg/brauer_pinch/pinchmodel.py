"""The pinching configuration: a cover X~ with Brauer data, the pinch locus Y and the fibers of Y~ -> Y.

Points only carry their residue extensions. Non-reduced fiber structure is recorded through its residue field, so a
dual-number fiber is a fiber of degree 1.
"""
from __future__ import annotations

from functools import reduce
from logging import getLogger
from math import gcd, lcm
from typing import TYPE_CHECKING, Annotated, Any

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator
from pydantic_core import PydanticCustomError

from brauer_pinch import qz
from brauer_pinch.errors import (
    IncompleteConfigurationError,
    InconsistentConfigurationError,
    InvalidArgumentError,
)
from brauer_pinch.fieldspec import LOCAL_KINDS, ExtensionSpec, FieldSpec, brauer_group, brauer_torsion, relative_brauer
from brauer_pinch.types import CoverKindStr  # noqa: TC001


if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from typing_extensions import Self  # noqa: UP035


logger = getLogger("brauer_pinch.pinchmodel")



class PinchPoint(BaseModel):
    """A closed point y of the pinch locus with its residue extension k(y)/k and the fibers k(y~)/k(y) above it."""
    model_config = ConfigDict(frozen=True, use_attribute_docstrings=True)

    label: str = "y"
    residue: ExtensionSpec
    """The residue extension k(y)/k."""
    fibers: tuple[ExtensionSpec, ...]
    """One extension k(y~)/k(y) per point of Y~ over y; each has k(y) as its base."""

    @classmethod
    def of(
        cls: type[Self],
        base: FieldSpec,
        residue_degree: int,
        fiber_degrees: Iterable[int | tuple[int, int]],
        *,
        label: str = "y",
        residue_separable_degree: int | None = None,
    ) -> Self:
        """Build a point from degrees; a fiber given as `(degree, separable_degree)` may be inseparable."""
        residue = ExtensionSpec.of(base, residue_degree, residue_separable_degree, label=f"k({label})")
        residue_field = residue.top_field()
        fibers = []
        for i, entry in enumerate(fiber_degrees):
            degree, separable = entry if isinstance(entry, tuple) else (entry, None)
            fibers.append(ExtensionSpec.of(residue_field, degree, separable, label=f"k({label}~{i})"))
        return cls(label=label, residue=residue, fibers=tuple(fibers))

    @property
    def residue_field(self) -> FieldSpec:
        return self.residue.top_field()

    @property
    def residue_degree(self) -> int:
        return self.residue.total_degree


_BR_A_TRIVIAL_KINDS: frozenset[str] = frozenset({"ch0-trivial", "severi-brauer"})


def _is_local_base(base: Any) -> bool:
    if isinstance(base, FieldSpec):
        return base.is_local
    return isinstance(base, dict) and base.get("kind") in LOCAL_KINDS


def _index_data(data: dict[str, Any]) -> int | None:
    degrees = data.get("closed_point_degrees")
    if degrees:
        return gcd(*degrees) if all(isinstance(d, int) and d > 0 for d in degrees) else None
    declared = data.get("declared_index")
    return declared if isinstance(declared, int) and declared > 0 else None


def _forced_amitsur(data: dict[str, Any]) -> qz.QmodZSubgroup | None:
    """B(X~/k) as forced by the cover kind and index; None when index data is present but malformed.

    Raises:
        PydanticCustomError: If the cover has no index data to bound B(X~/k) with.
    """
    kind = data.get("cover_kind", "general")
    if kind == "ch0-trivial":
        return qz.KnownCyclic(n=1)
    if kind == "severi-brauer":
        class_order = data.get("class_order")
        return qz.KnownCyclic(n=class_order if isinstance(class_order, int) and class_order > 0 else 1)

    if data.get("closed_point_degrees") is None and data.get("declared_index") is None:
        raise PydanticCustomError(
            "amitsur-undetermined",
            "give the Amitsur subgroup, or index data from which B(X~/k) can be bounded.",
        )
    index = _index_data(data)
    if index is None:
        return None
    smooth = kind == "smooth-curve" or bool(data.get("smooth_normalization"))
    if smooth and _is_local_base(data.get("base_field")):
        return qz.KnownCyclic(n=index)
    return qz.unknown_bounded(index, note="B(X~/k) is killed by the index")


class CoverData(BaseModel):
    """What is known about the cover X~: its Amitsur subgroup, Br_a, Br_1 and closed-point degrees.

    `amitsur` and `br_a` may be omitted. They are then filled with what the cover kind forces: B(X~/k) is trivial for
    CH0-trivial covers, cyclic of the class order for Severi-Brauer covers, cyclic of order I(X~) for smooth covers
    over local fields, and otherwise an unknown killed by I(X~). Br_a X~ is trivial for CH0-trivial and Severi-Brauer
    covers and unknown otherwise.
    """
    model_config = ConfigDict(frozen=True, use_attribute_docstrings=True)

    base_field: FieldSpec
    amitsur: qz.QmodZSubgroup
    """B(X~/k) = ker[Br k -> Br X~]."""
    br_a: qz.AbGroupDescriptor
    """Br_a X~ = coker[Br k -> Br_1 X~]."""
    br1: qz.AbGroupDescriptor | None = None
    """Br_1 X~; None when not supplied."""
    closed_point_degrees: Annotated[tuple[PositiveInt, ...], Field(min_length=1)] | None = None
    declared_index: PositiveInt | None = None
    cover_kind: CoverKindStr = "general"
    class_order: PositiveInt | None = None
    """Order of the Brauer class of a Severi-Brauer cover."""
    smooth_normalization: bool = False
    """Whether X~ is the smooth normalization of the pinched variety."""

    @model_validator(mode="before")
    @classmethod
    def _fill_forced_groups(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get("br_a") is None:
            if data.get("cover_kind", "general") in _BR_A_TRIVIAL_KINDS:
                data["br_a"] = qz.trivial()
            else:
                data["br_a"] = qz.unknown(note="Br_a X~")
        if data.get("amitsur") is None:
            amitsur = _forced_amitsur(data)
            if amitsur is None:
                data.pop("amitsur", None)
            else:
                data["amitsur"] = amitsur
        return data

    @property
    def index(self) -> int | None:
        """I(X~): the gcd of the closed-point degrees, else the declared index, else None."""
        if self.closed_point_degrees is not None:
            return index_from_degrees(self.closed_point_degrees)
        return self.declared_index

    @property
    def is_curve(self) -> bool:
        return self.cover_kind in ("smooth-curve", "regular-curve")


class PinchingConfig(BaseModel):
    """X is obtained by pinching the cover along the fibers over `points`; no points means X = X~."""
    model_config = ConfigDict(frozen=True)

    cover: CoverData
    points: tuple[PinchPoint, ...] = ()

    @property
    def is_universal_homeomorphism(self) -> bool:
        """Every point has a single fiber, purely inseparable over its residue field."""
        return all(len(p.fibers) == 1 and p.fibers[0].is_purely_inseparable for p in self.points)

    @property
    def is_residue_iso(self) -> bool:
        """A universal homeomorphism inducing isomorphisms on residue fields."""
        return self.is_universal_homeomorphism and all(p.fibers[0].is_trivial for p in self.points)


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    code: str
    message: str


### Index arithmetic ###
########################

def index_from_degrees(degrees: Sequence[int]) -> int:
    """I(X) as the gcd of the degrees of closed points.

    Raises:
        InvalidArgumentError: If no degree is given or some degree is not positive.
    """
    if not degrees:
        msg = "The index is undefined without closed-point degrees."
        raise InvalidArgumentError(msg)
    if any(d < 1 for d in degrees):
        msg = f"Closed-point degrees must be positive, got {list(degrees)}."
        raise InvalidArgumentError(msg)
    return gcd(*degrees)


def fiber_index(point: PinchPoint) -> int:
    """I(Y~_y), the gcd of the fiber degrees over the point."""
    return index_from_degrees([f.total_degree for f in point.fibers])


def locus_index(points: Sequence[PinchPoint]) -> int:
    """I(Y), the gcd of the residue degrees of the pinch points.

    Raises:
        InvalidArgumentError: If the locus is empty.
    """
    if not points:
        msg = "The index of an empty pinch locus is undefined."
        raise InvalidArgumentError(msg)
    return gcd(*(p.residue_degree for p in points))


def annihilator_bound(config: PinchingConfig) -> int:
    """m(Y~/Y), the lcm of the fiber indices; it kills the product of relative Brauer groups.

    Raises:
        InvalidArgumentError: If the locus is empty.
    """
    if not config.points:
        msg = "The annihilator bound needs a nonempty pinch locus."
        raise InvalidArgumentError(msg)
    return lcm(*(fiber_index(p) for p in config.points))


def pinched_index_constraint(config: PinchingConfig) -> int:
    """gcd(I(X~), I(Y)), a multiple of the index of the pinched variety.

    Raises:
        IncompleteConfigurationError: If the cover carries no index data.
        InvalidArgumentError: If the locus is empty.
    """
    cover_index = config.cover.index
    if cover_index is None:
        msg = "The cover needs closed-point degrees or a declared index."
        raise IncompleteConfigurationError(msg)
    return gcd(cover_index, locus_index(config.points))


### Brauer data read off the configuration ###
##############################################

def fiber_relative_brauer(fiber: ExtensionSpec) -> qz.QmodZSubgroup:
    """Br(k(y~)/k(y)); a purely inseparable fiber of degree p^n gives the torsion Br(k(y))_{p^n}."""
    if fiber.is_purely_inseparable and not fiber.is_trivial:
        return brauer_torsion(fiber.base, fiber.total_degree)
    return relative_brauer(fiber)


def fiber_intersection(point: PinchPoint) -> qz.QmodZSubgroup:
    """The intersection over the fibers of Br(k(y~)/k(y)), a subgroup of Br k(y)."""
    return reduce(qz.intersect, (fiber_relative_brauer(f) for f in point.fibers), qz.FullQmodZ())


def product_of_fiber_intersections(points: Iterable[PinchPoint]) -> qz.AbGroupDescriptor:
    return qz.product(qz.as_descriptor(fiber_intersection(p)) for p in points)


def amitsur_meet(config: PinchingConfig) -> qz.QmodZSubgroup:
    """B(X~/k) intersected with every Br(k(y)/k) inside Br k."""
    return reduce(qz.intersect, (relative_brauer(p.residue) for p in config.points), config.cover.amitsur)


def _amitsur_embeds(amitsur: qz.QmodZSubgroup, base_brauer: qz.AbGroupDescriptor) -> bool:
    if isinstance(base_brauer, qz.FullQmodZ) or base_brauer.order is None:
        return True
    if isinstance(amitsur, qz.KnownCyclic):
        return base_brauer.order % amitsur.n == 0
    return isinstance(amitsur, qz.UnknownBounded)


### Validation ###
##################

def _point_violations(config: PinchingConfig) -> Iterable[Violation]:
    base = config.cover.base_field
    for point in config.points:
        if point.residue.base != base:
            yield Violation(
                code="residue-base-mismatch",
                message=f"Point {point.label}: residue extension is over {point.residue.base}, not {base}.",
            )
        if not point.fibers:
            yield Violation(code="empty-fibers", message=f"Point {point.label} has no fibers.")
        residue_field = point.residue_field
        for i, fiber in enumerate(point.fibers):
            if fiber.base != residue_field:
                yield Violation(
                    code="fiber-base-mismatch",
                    message=f"Point {point.label}, fiber {i}: base {fiber.base} is not the residue field {residue_field}.",
                )


def _cover_violations(cover: CoverData) -> Iterable[Violation]:
    index = cover.index
    if cover.cover_kind == "ch0-trivial":
        if not cover.amitsur.is_trivial:
            yield Violation(
                code="ch0-trivial-amitsur-nontrivial",
                message=f"A CH0-trivial cover has trivial Amitsur subgroup, got {cover.amitsur}.",
            )
        if not cover.br_a.is_trivial:
            yield Violation(
                code="ch0-trivial-bra-nontrivial",
                message=f"A CH0-trivial cover has Br_a = 0, got {cover.br_a}.",
            )
        if index is not None and index != 1:
            yield Violation(code="ch0-trivial-index", message=f"A CH0-trivial cover has index 1, got {index}.")
        if cover.br1 is not None and qz.is_determined(cover.br1) and cover.br1 != brauer_group(cover.base_field):
            yield Violation(
                code="ch0-trivial-br1-mismatch",
                message=f"A CH0-trivial cover has Br_1 = Br k, got {cover.br1}.",
            )

    if cover.cover_kind == "severi-brauer":
        if cover.class_order is None:
            yield Violation(
                code="severi-brauer-class-order-missing",
                message="A Severi-Brauer cover needs the order of its Brauer class.",
            )
        elif cover.amitsur != qz.KnownCyclic(n=cover.class_order):
            yield Violation(
                code="severi-brauer-amitsur-mismatch",
                message=f"The Amitsur subgroup of a Severi-Brauer cover of class order {cover.class_order} is "
                f"Z/{cover.class_order}, got {cover.amitsur}.",
            )
        if not cover.br_a.is_trivial:
            yield Violation(
                code="severi-brauer-bra-nontrivial",
                message=f"A Severi-Brauer cover has Br_a = 0, got {cover.br_a}.",
            )

    if not _amitsur_embeds(cover.amitsur, brauer_group(cover.base_field)):
        yield Violation(
            code="amitsur-not-in-brauer-group",
            message=f"{cover.amitsur} is not a subgroup of Br({cover.base_field}).",
        )

    if cover.closed_point_degrees is not None and cover.declared_index is not None and index != cover.declared_index:
        yield Violation(
            code="index-mismatch",
            message=f"Declared index {cover.declared_index} differs from the gcd {index} of the closed-point degrees.",
        )

    if index is not None:
        if isinstance(cover.amitsur, qz.FullQmodZ) or (
            isinstance(cover.amitsur, qz.KnownCyclic) and index % cover.amitsur.n
        ):
            yield Violation(
                code="amitsur-exceeds-index",
                message=f"The Amitsur subgroup is killed by the index {index}, got {cover.amitsur}.",
            )
        smooth = cover.cover_kind == "smooth-curve" or cover.smooth_normalization
        if (
            smooth
            and cover.base_field.is_local
            and isinstance(cover.amitsur, qz.KnownCyclic)
            and cover.amitsur.n != index
        ):
            yield Violation(
                code="smooth-curve-amitsur-index-mismatch",
                message=f"A smooth curve over a local field has Amitsur subgroup of order equal to its index "
                f"{index}, got {cover.amitsur}.",
            )


def _injection_violations(config: PinchingConfig) -> Iterable[Violation]:
    """B(X~/k)/B(X/k) must embed into the product of the fiber intersections."""
    target = product_of_fiber_intersections(config.points)
    try:
        quotient = qz.quotient(config.cover.amitsur, amitsur_meet(config))
        qz.coker_of_injection(quotient, target)
    except InconsistentConfigurationError as e:
        yield Violation(
            code="amitsur-injection-violated",
            message=f"B(X~/k)/B(X/k) cannot embed into {target}: {e}",
        )


def validate(config: PinchingConfig) -> list[Violation]:
    """Check the structural invariants of a configuration; an empty list means it is well formed."""
    violations = [*_point_violations(config), *_cover_violations(config.cover)]
    # The injection check reads fibers and residues, so it only runs on structurally sound input.
    if not violations:
        violations.extend(_injection_violations(config))

    for v in violations:
        logger.debug("Violation %s: %s", v.code, v.message)
    return violations
