"""Formula engine: evaluates the Brauer-group structure results on a validated pinching configuration.

Every public operation validates its input first and raises `InconsistentConfigurationError` on any violation, so no
partial result is ever returned for a configuration describing no actual variety. `analyze` validates once and runs
the whole pipeline.
"""
from __future__ import annotations

from functools import reduce
from logging import getLogger
from math import gcd
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, PositiveInt

from brauer_pinch import qz
from brauer_pinch.errors import (
    IncompleteConfigurationError,
    InconsistentConfigurationError,
    InvalidChainError,
    TheoremNotApplicableError,
)
from brauer_pinch.fieldspec import brauer_group, relative_h3
from brauer_pinch.pinchmodel import (
    amitsur_meet,
    annihilator_bound,
    locus_index,
    pinched_index_constraint,
    product_of_fiber_intersections,
    validate,
)
from brauer_pinch.types import TheoremTagStr  # noqa: TC001


if TYPE_CHECKING:
    from collections.abc import Sequence

    from brauer_pinch.pinchmodel import CoverData, PinchingConfig, PinchPoint


logger = getLogger("brauer_pinch.theorems")


THEOREM_CITATIONS: dict[TheoremTagStr, str] = {
    "local-invariant": "invariant map of local class field theory: Br(K/k) = [K:k]^-1 Z/Z",
    "annihilator": "the product of relative Brauer groups is killed by m(Y~/Y), the lcm of the fiber indices",
    "amitsur-intersection": "intersection formula: B(X/k) = B(X~/k) meets every Br(k(y)/k)",
    "kernel-extension": "ker phi_1* extends the cokernel of B(X~/k)/B(X/k) -> prod Br(Y~/Y) by B(X~/k)/B(X/k)",
    "four-term-sequence": "0 -> ker phi_1* -> Br_1 X -> Br_1 X~ -> coker phi_a* -> 0, coker phi_a* inside H^2(k, mu)",
    "split-rational-cover": "CH0-trivial cover: Br_1 X = Br k + prod of the fiber intersections, split by the section",
    "universal-homeomorphism": "universal homeomorphism: H^2(k, mu) = 0 and Br(k(y~)/k(y)) = Br(k(y))_{p^n}",
    "seminormalization": "pinching inducing isomorphisms on residue fields leaves Br_1 unchanged",
    "index-order": "curves over local fields: B(X/k) has order gcd(I(X^N), I(Y)) = I(X)",
    "curve-brauer": "proper curves: Br X = Br_1 X",
}


class IndexFacts(BaseModel):
    model_config = ConfigDict(frozen=True)

    cover_index: PositiveInt | None = None
    locus_index: PositiveInt | None = None
    constraint_divisor: PositiveInt | None = None
    """gcd(I(X~), I(Y)); the index of X divides it."""
    annihilator_bound: PositiveInt | None = None
    rl_order: PositiveInt | None = None
    """Order of B(X/k) by the index formula, when it applies."""


class KernelPhi1(BaseModel):
    """ker[phi_1*: Br_1 X -> Br_1 X~] with the two groups it is assembled from."""
    model_config = ConfigDict(frozen=True)

    ker_phi1: qz.AbGroupDescriptor
    amitsur_quotient: qz.AbGroupDescriptor
    coker_injection: qz.AbGroupDescriptor
    split: bool
    """The kernel equals the fiber-intersection product outright (trivial Amitsur quotient)."""


class RoquetteLichtenbaumResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    order: PositiveInt
    equals_index: bool
    """Whether the order is identified with I(X); asserted for curve covers."""


class BrauerReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    intersection_product: qz.AbGroupDescriptor
    amitsur_pinched: qz.QmodZSubgroup
    amitsur_quotient: qz.AbGroupDescriptor
    coker_injection: qz.AbGroupDescriptor
    ker_phi1: qz.AbGroupDescriptor
    ker_phi1_split: bool
    h2_mu: qz.AbGroupDescriptor
    coker_phi_a: qz.AbGroupDescriptor
    br1_pinched: qz.AbGroupDescriptor
    index_facts: IndexFacts
    applied_theorems: tuple[TheoremTagStr, ...]
    caveats: tuple[str, ...]


class ChainReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    is_isomorphism: bool
    """Every step has trivial ker phi_1* and coker phi_a*, so Br_1 is unchanged along the chain."""
    steps: tuple[BrauerReport, ...]


def _require_valid(config: PinchingConfig) -> None:
    violations = validate(config)
    if violations:
        codes = ", ".join(v.code for v in violations)
        msg = f"Configuration describes no pinched variety ({codes}): {violations[0].message}"
        raise InconsistentConfigurationError(msg)


### Structure results ###
#########################

def intersection_product(config: PinchingConfig) -> qz.AbGroupDescriptor:
    """The product over y of the intersections of Br(k(y~)/k(y)), i.e. Br(Y~/Y)."""
    _require_valid(config)
    return product_of_fiber_intersections(config.points)


def amitsur_pinched(config: PinchingConfig) -> qz.QmodZSubgroup:
    """B(X/k) = B(X~/k) meeting Br(k(y)/k) for every pinch point y."""
    _require_valid(config)
    return amitsur_meet(config)


def _kernel_phi1(
    config: PinchingConfig,
    product: qz.AbGroupDescriptor,
    pinched: qz.QmodZSubgroup,
) -> KernelPhi1:
    quotient = qz.quotient(config.cover.amitsur, pinched)
    coker = qz.coker_of_injection(quotient, product)
    quotient_group = qz.as_descriptor(quotient)
    return KernelPhi1(
        ker_phi1=qz.extension(quotient_group, coker),
        amitsur_quotient=quotient_group,
        coker_injection=coker,
        split=quotient.is_trivial,
    )


def kernel_phi1(config: PinchingConfig) -> KernelPhi1:
    """ker phi_1* as an extension of coker[B(X~/k)/B(X/k) -> Br(Y~/Y)] by B(X~/k)/B(X/k).

    Raises:
        InconsistentConfigurationError: If the configuration fails validation, in particular when the Amitsur
            quotient cannot embed into the fiber-intersection product.
    """
    _require_valid(config)
    return _kernel_phi1(config, product_of_fiber_intersections(config.points), amitsur_meet(config))


def _restriction_is_onto(point: PinchPoint) -> bool:
    """Whether Br k(y) -> prod Br k(y~) is known to be onto."""
    if len(point.fibers) == 1 and (point.fibers[0].is_trivial or point.residue_field.is_local):
        return True
    return all(f.top_field().has_trivial_brauer for f in point.fibers)


def _h2_mu(config: PinchingConfig) -> qz.AbGroupDescriptor:
    if config.is_universal_homeomorphism:
        return qz.trivial()

    h3_part = qz.product(
        qz.as_descriptor(reduce(qz.intersect, (relative_h3(f) for f in p.fibers), qz.FullQmodZ()))
        for p in config.points
    )
    undetermined = [p.label for p in config.points if not _restriction_is_onto(p)]
    coker_part = (
        qz.unknown(note=f"coker[Br k(y) -> prod Br k(y~)] at {', '.join(undetermined)}")
        if undetermined
        else qz.trivial()
    )
    return qz.extension(coker_part, h3_part)


def h2_mu(config: PinchingConfig) -> qz.AbGroupDescriptor:
    """H^2(k, mu^{Y~/Y}), an extension of prod H^3(k(y~)/k(y)) by prod coker[Br k(y) -> prod Br k(y~)].

    Only triviality and exponent data are asserted; the extension is never split.
    """
    _require_valid(config)
    return _h2_mu(config)


def _coker_phia(config: PinchingConfig, h2: qz.AbGroupDescriptor) -> qz.AbGroupDescriptor:
    br_a = config.cover.br_a
    if h2.is_trivial or br_a.is_trivial:
        return qz.trivial()
    bounds = [b for b in (h2.exponent_bound, br_a.exponent_bound) if b is not None]
    return qz.unknown(
        exponent_divides=gcd(*bounds) if bounds else None,
        note="subgroup of H^2(k, mu) and quotient of Br_a X~",
    )


def coker_phia(config: PinchingConfig) -> qz.AbGroupDescriptor:
    """coker[phi_a*: Br_a X -> Br_a X~]; trivial when H^2(k, mu) or Br_a X~ is."""
    _require_valid(config)
    return _coker_phia(config, _h2_mu(config))


def cover_br1(cover: CoverData) -> qz.AbGroupDescriptor | None:
    """Br_1 X~ as supplied, or derived for CH0-trivial (Br k) and Severi-Brauer (Br k / <X~>) covers."""
    if cover.br1 is not None:
        return cover.br1
    base_brauer = brauer_group(cover.base_field)
    if cover.cover_kind == "ch0-trivial":
        return base_brauer
    if cover.cover_kind == "severi-brauer" and cover.class_order is not None:
        if isinstance(base_brauer, qz.FullQmodZ):
            return base_brauer
        if isinstance(base_brauer, qz.KnownGroup):
            return qz.known(base_brauer.order // cover.class_order)
        return qz.unknown(note=f"Br({cover.base_field})/<X~>")
    return None


def _br1_pinched(
    config: PinchingConfig,
    product: qz.AbGroupDescriptor,
    kernel: KernelPhi1,
    coker: qz.AbGroupDescriptor,
) -> qz.AbGroupDescriptor:
    cover = config.cover
    if cover.cover_kind == "ch0-trivial":
        return qz.product([brauer_group(cover.base_field), product])

    known_br1 = cover_br1(cover)
    if coker.is_trivial:
        quot = known_br1 if known_br1 is not None else qz.unknown(note="Br_1 X~")
    else:
        quot = qz.unknown(note="ker[Br_1 X~ -> coker phi_a*]")
    return qz.extension(kernel.ker_phi1, quot)


def br1_pinched(config: PinchingConfig) -> qz.AbGroupDescriptor:
    """Br_1 X, split for CH0-trivial covers and an extension of (part of) Br_1 X~ by ker phi_1* otherwise."""
    _require_valid(config)
    product = product_of_fiber_intersections(config.points)
    kernel = _kernel_phi1(config, product, amitsur_meet(config))
    return _br1_pinched(config, product, kernel, _coker_phia(config, _h2_mu(config)))


### Index results ###
#####################

def _roquette_lichtenbaum(config: PinchingConfig) -> RoquetteLichtenbaumResult:
    cover = config.cover
    cover_index = cover.index
    if cover_index is None:
        msg = "The index formula needs closed-point degrees or a declared index for the normalization."
        raise IncompleteConfigurationError(msg)

    order = pinched_index_constraint(config) if config.points else cover_index
    pinched = amitsur_meet(config)
    if isinstance(pinched, qz.KnownCyclic) and pinched.n != order:
        msg = f"B(X/k) has order {pinched.n} but the index formula gives {order}."
        raise InconsistentConfigurationError(msg, theorem="index-order")
    return RoquetteLichtenbaumResult(order=order, equals_index=cover.is_curve)


def roquette_lichtenbaum(config: PinchingConfig) -> RoquetteLichtenbaumResult:
    """Order of B(X/k) as gcd(I(X^N), I(Y)) for a pinching of a smooth cover over a local field.

    Raises:
        TheoremNotApplicableError: If the base is not local or the cover is not the smooth normalization.
        IncompleteConfigurationError: If the cover carries no index data.
        InconsistentConfigurationError: If the configuration fails validation or B(X/k) contradicts the formula.
    """
    cover = config.cover
    if not cover.base_field.is_local:
        msg = f"The index formula needs a non-archimedean local base field, got {cover.base_field.kind}."
        raise TheoremNotApplicableError(msg, theorem="index-order")
    if not cover.smooth_normalization:
        msg = "The index formula needs the cover to be the smooth normalization."
        raise TheoremNotApplicableError(msg, theorem="index-order")
    _require_valid(config)
    return _roquette_lichtenbaum(config)


def _index_facts(config: PinchingConfig) -> IndexFacts:
    cover = config.cover
    cover_index = cover.index
    points_index = locus_index(config.points) if config.points else None
    rl_order = None
    if cover.base_field.is_local and cover.smooth_normalization and cover_index is not None:
        rl_order = _roquette_lichtenbaum(config).order
    return IndexFacts(
        cover_index=cover_index,
        locus_index=points_index,
        constraint_divisor=pinched_index_constraint(config) if cover_index is not None and config.points else None,
        annihilator_bound=annihilator_bound(config) if config.points else None,
        rl_order=rl_order,
    )


### Orchestration ###
#####################

def _applied_theorems(config: PinchingConfig, index_facts: IndexFacts) -> tuple[TheoremTagStr, ...]:
    cover = config.cover
    tags: list[TheoremTagStr] = []
    if cover.base_field.is_local:
        tags.append("local-invariant")
    if config.points:
        tags.extend(("amitsur-intersection", "annihilator", "kernel-extension"))
        if config.is_universal_homeomorphism:
            tags.append("universal-homeomorphism")
            if config.is_residue_iso:
                tags.append("seminormalization")
        else:
            tags.append("four-term-sequence")
    if cover.cover_kind == "ch0-trivial":
        tags.append("split-rational-cover")
    if index_facts.rl_order is not None:
        tags.append("index-order")
    if cover.is_curve:
        tags.append("curve-brauer")
    return tuple(tags)


def _caveats(config: PinchingConfig, fields: dict[str, qz.AbGroupDescriptor | qz.QmodZSubgroup]) -> tuple[str, ...]:
    cover = config.cover
    caveats = [f"{name} is not fully determined: {group}" for name, group in fields.items() if not qz.is_determined(group)]
    if not config.is_universal_homeomorphism:
        caveats.append("H^2(k, mu) is an unsplit extension; only triviality and exponent data are asserted")
    if cover.base_field.kind == "real-closed":
        caveats.append("Br R = Z/2 and Br(C/R) = Z/2 are standard archimedean facts")
    if cover.br1 is None and cover.cover_kind == "severi-brauer":
        caveats.append("Br_1 X~ of the Severi-Brauer cover is taken as Br k/<X~>")
    if cover.is_curve:
        caveats.append("Br X = Br_1 X since the Brauer group of a curve over a separable closure vanishes")
    if cover.smooth_normalization and cover.base_field.is_local and not cover.is_curve:
        caveats.append("the index formula identifies gcd(I(X^N), I(Y)) with I(X) for curves only")
    return tuple(caveats)


def analyze(config: PinchingConfig) -> BrauerReport:
    """Compute the full Brauer report of the pinched variety.

    Raises:
        InconsistentConfigurationError: If the configuration fails validation or contradicts a structure result.
    """
    _require_valid(config)

    product = product_of_fiber_intersections(config.points)
    pinched = amitsur_meet(config)
    kernel = _kernel_phi1(config, product, pinched)
    h2 = _h2_mu(config)
    coker = _coker_phia(config, h2)
    br1 = _br1_pinched(config, product, kernel, coker)
    index_facts = _index_facts(config)

    applied = _applied_theorems(config, index_facts)
    for tag in applied:
        logger.debug("Applied %s: %s", tag, THEOREM_CITATIONS[tag])

    caveats = _caveats(
        config,
        {
            "intersection_product": product,
            "amitsur_pinched": pinched,
            "ker_phi1": kernel.ker_phi1,
            "h2_mu": h2,
            "coker_phi_a": coker,
            "br1_pinched": br1,
        },
    )
    for caveat in caveats:
        logger.info("Caveat: %s", caveat)

    return BrauerReport(
        intersection_product=product,
        amitsur_pinched=pinched,
        amitsur_quotient=kernel.amitsur_quotient,
        coker_injection=kernel.coker_injection,
        ker_phi1=kernel.ker_phi1,
        ker_phi1_split=kernel.split,
        h2_mu=h2,
        coker_phi_a=coker,
        br1_pinched=br1,
        index_facts=index_facts,
        applied_theorems=applied,
        caveats=caveats,
    )


def seminormalization_chain(steps: Sequence[PinchingConfig]) -> ChainReport:
    """Analyze X^SN = X_1 -> ... -> X_{n+1} = X, one residue-isomorphic pinching per step.

    Raises:
        InvalidChainError: If a step is not a single-point pinching inducing isomorphisms on residue fields, or its
            cover Br_1 disagrees with the Br_1 computed at the previous step.
    """
    reports: list[BrauerReport] = []
    for i, step in enumerate(steps):
        if len(step.points) != 1 or not step.is_residue_iso:
            msg = f"Step {i} is not a single-point pinching inducing an isomorphism on residue fields."
            raise InvalidChainError(msg, step=i)

        report = analyze(step)
        if reports and step.cover.br1 is not None:
            previous = reports[-1].br1_pinched
            if qz.is_determined(previous) and step.cover.br1 != previous:
                msg = f"Step {i} starts from Br_1 = {step.cover.br1}, but step {i - 1} produced {previous}."
                raise InvalidChainError(msg, step=i)
        reports.append(report)

    is_isomorphism = all(r.ker_phi1.is_trivial and r.coker_phi_a.is_trivial for r in reports)
    logger.debug("Seminormalization chain of %d steps; isomorphism: %s", len(reports), is_isomorphism)
    return ChainReport(is_isomorphism=is_isomorphism, steps=tuple(reports))
