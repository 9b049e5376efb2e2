"""Brute-force verification by explicit enumeration.

Subgroups of Q/Z are modelled as sets of residues a mod N standing for the fractions a/N, and finite abelian groups
through the census of their element orders. Nothing here goes through `brauer_pinch.qz`: only integer gcd/lcm and set
arithmetic are used, so an agreement between the two is an independent certificate.
"""
from __future__ import annotations

import os
from collections import Counter
from logging import getLogger
from math import gcd, lcm, prod
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator

from brauer_pinch.errors import (
    InvalidArgumentError,
    OracleNotApplicableError,
    OracleTooLargeError,
)
from brauer_pinch.types import OracleStatusStr  # noqa: TC001


if TYPE_CHECKING:
    from collections.abc import Callable, Mapping, Sequence

    from typing_extensions import Self  # noqa: UP035

    from brauer_pinch.pinchmodel import PinchingConfig
    from brauer_pinch.theorems import BrauerReport


logger = getLogger("brauer_pinch.oracle")


ORACLE_CAP_ENV_VAR = "BRAUER_PINCH_ORACLE_CAP"

DEFAULT_CENSUS_CAP = 10_000
DEFAULT_MODULUS_CAP = 1_000_000


class OracleCaps(BaseModel):
    """Enumeration limits; anything larger is refused with `OracleTooLargeError`, never silently passed."""
    model_config = ConfigDict(frozen=True)

    census_cap: PositiveInt = DEFAULT_CENSUS_CAP
    """Largest group order whose element-order census is enumerated."""
    modulus_cap: PositiveInt = DEFAULT_MODULUS_CAP
    """Largest ambient modulus N for subgroups of (1/N)Z/Z."""

    @classmethod
    def from_env(cls: type[Self], base: OracleCaps | None = None, environ: Mapping[str, str] | None = None) -> Self:
        """Apply `BRAUER_PINCH_ORACLE_CAP` ("N" for the census cap, "N:M" for both caps) on top of `base`.

        Raises:
            InvalidArgumentError: If the variable is set but malformed.
        """
        base = base or cls()
        raw = (os.environ if environ is None else environ).get(ORACLE_CAP_ENV_VAR)
        if raw is None or not raw.strip():
            return cls(census_cap=base.census_cap, modulus_cap=base.modulus_cap)

        census, _, modulus = raw.strip().partition(":")
        try:
            caps = cls(
                census_cap=int(census),
                modulus_cap=int(modulus) if modulus else base.modulus_cap,
            )
        except ValueError as e:
            msg = f"{ORACLE_CAP_ENV_VAR} must be 'N' or 'N:M' with positive integers, got {raw!r}."
            raise InvalidArgumentError(msg) from e

        logger.debug("Oracle caps from %s: %s", ORACLE_CAP_ENV_VAR, caps)
        return caps


class EnumeratedSubgroup(BaseModel):
    """A finite subgroup of Q/Z given by its elements a/N, stored as the residues a mod N."""
    model_config = ConfigDict(frozen=True)

    modulus: PositiveInt
    elements: frozenset[int]

    @model_validator(mode="after")
    def _check_subgroup(self) -> Self:
        n = self.modulus
        if 0 not in self.elements or any(not 0 <= a < n for a in self.elements):
            msg = f"Elements must be residues mod {n} containing 0."
            raise ValueError(msg)
        # A subset of Z/N is a subgroup iff it is the set of multiples of its gcd with N.
        generator = gcd(n, *self.elements)
        if len(self.elements) != n // generator or any(a % generator for a in self.elements):
            msg = f"Elements are not closed under addition mod {n}."
            raise ValueError(msg)
        return self

    @property
    def order(self) -> int:
        return len(self.elements)


class LatticeCounterexample(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    operation: str
    expected: int
    got: int


class LatticeCheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    pairs_checked: int
    counterexample: LatticeCounterexample | None = None


class Discrepancy(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: str
    expected: str
    reported: str


class OracleVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    status: OracleStatusStr
    discrepancies: tuple[Discrepancy, ...] = ()
    reason: str = ""


### Enumeration ###
###################

def enumerate_subgroup(n: int, ambient_modulus: int, caps: OracleCaps | None = None) -> EnumeratedSubgroup:
    """The order-n subgroup of (1/N)Z/Z as {k * N/n mod N : 0 <= k < n}.

    Raises:
        InvalidArgumentError: If n is not a positive divisor of N.
        OracleTooLargeError: If N exceeds the modulus cap.
    """
    caps = caps or OracleCaps()
    if n < 1 or ambient_modulus < 1 or ambient_modulus % n:
        msg = f"{n} is not a positive divisor of the modulus {ambient_modulus}."
        raise InvalidArgumentError(msg)
    if ambient_modulus > caps.modulus_cap:
        msg = f"Modulus {ambient_modulus} exceeds the oracle cap {caps.modulus_cap}."
        raise OracleTooLargeError(msg)

    step = ambient_modulus // n
    return EnumeratedSubgroup(modulus=ambient_modulus, elements=frozenset(k * step for k in range(n)))


def _set_intersection(a: EnumeratedSubgroup, b: EnumeratedSubgroup) -> EnumeratedSubgroup:
    return EnumeratedSubgroup(modulus=a.modulus, elements=a.elements & b.elements)


def _generated_order(a: EnumeratedSubgroup, b: EnumeratedSubgroup) -> int:
    """Order of the subgroup generated by the union: the multiples of the gcd of all elements with N."""
    generator = gcd(a.modulus, *a.elements, *b.elements)
    return a.modulus // generator


def _common_intersection(orders: Sequence[int], caps: OracleCaps) -> int:
    """Order of the intersection of the subgroups of the given orders, intersected pairwise as residue sets."""
    current = orders[0]
    for n in orders[1:]:
        modulus = lcm(current, n)
        current = _set_intersection(
            enumerate_subgroup(current, modulus, caps),
            enumerate_subgroup(n, modulus, caps),
        ).order
    return current


def check_lattice_laws(
    max_order: int,
    intersect_order: Callable[[int, int], int] | None = None,
    join_order: Callable[[int, int], int] | None = None,
    caps: OracleCaps | None = None,
) -> LatticeCheckResult:
    """Compare enumerated intersections and joins of (1/a)Z/Z and (1/b)Z/Z for all 1 <= a <= b <= max_order.

    By default the model under test is the gcd/lcm law; pass `intersect_order` / `join_order` to check another
    implementation, e.g. the orders of `qz.intersect` and `qz.join`.

    Raises:
        InvalidArgumentError: If max_order is not positive.
    """
    if max_order < 1:
        msg = f"max_order must be positive, got {max_order}."
        raise InvalidArgumentError(msg)
    caps = caps or OracleCaps()
    intersect_order = intersect_order or gcd
    join_order = join_order or lcm

    checked = 0
    for a in range(1, max_order + 1):
        for b in range(a, max_order + 1):
            modulus = lcm(a, b)
            sub_a = enumerate_subgroup(a, modulus, caps)
            sub_b = enumerate_subgroup(b, modulus, caps)
            # Validation of the intersection makes it the unique subgroup of its order, so orders suffice.
            outcomes = (
                ("intersect", _set_intersection(sub_a, sub_b).order, intersect_order(a, b)),
                ("join", _generated_order(sub_a, sub_b), join_order(a, b)),
            )
            for operation, expected, got in outcomes:
                if got != expected:
                    logger.warning("Lattice law fails for %s(%d, %d): expected %d, got %d", operation, a, b, expected, got)
                    return LatticeCheckResult(
                        passed=False,
                        pairs_checked=checked,
                        counterexample=LatticeCounterexample(a=a, b=b, operation=operation, expected=expected, got=got),
                    )
            checked += 1

    logger.debug("Lattice laws hold for %d pairs up to %d", checked, max_order)
    return LatticeCheckResult(passed=True, pairs_checked=checked)


def census_invariant_factors(factors: Sequence[int], caps: OracleCaps | None = None) -> Counter[int]:
    """Element-order census of Z/n_1 x ... x Z/n_r: how many elements have each order.

    Two finite abelian groups are isomorphic exactly when their censuses agree.

    Raises:
        InvalidArgumentError: If some factor is not positive.
        OracleTooLargeError: If the group order exceeds the census cap.
    """
    caps = caps or OracleCaps()
    if any(n < 1 for n in factors):
        msg = f"Cyclic orders must be positive, got {list(factors)}."
        raise InvalidArgumentError(msg)
    total = prod(factors)
    if total > caps.census_cap:
        msg = f"Group order {total} exceeds the oracle census cap {caps.census_cap}."
        raise OracleTooLargeError(msg)

    census: Counter[int] = Counter({1: 1})
    for n in factors:
        cyclic_census = Counter(n // gcd(k, n) for k in range(n))
        combined: Counter[int] = Counter()
        for order_a, count_a in census.items():
            for order_b, count_b in cyclic_census.items():
                combined[lcm(order_a, order_b)] += count_a * count_b
        census = combined
    return census


### Report verification ###
###########################

def _exact_regime(config: PinchingConfig) -> bool:
    return config.cover.base_field.kind in ("padic-local", "local-function-field", "finite")


def _expected_orders(config: PinchingConfig, caps: OracleCaps) -> tuple[dict[str, int], list[int]]:
    """Recompute the finite orders of the report by set arithmetic inside (1/N)Z/Z."""
    local = config.cover.base_field.kind != "finite"
    amitsur = config.cover.amitsur
    amitsur_order = getattr(amitsur, "n", None)
    if amitsur_order is None:
        msg = f"The oracle needs a known cover Amitsur subgroup, got {amitsur}."
        raise OracleNotApplicableError(msg)

    point_orders: list[int] = []
    for point in config.points:
        degrees = [f.total_degree for f in point.fibers] if local else [1]
        point_orders.append(_common_intersection(degrees, caps))

    residue_degrees = [p.residue_degree for p in config.points] if local else []
    pinched = _common_intersection([amitsur_order, *residue_degrees], caps)

    product_order = prod(point_orders)
    quotient = amitsur_order // pinched
    expected = {
        "intersection_product": product_order,
        "amitsur_pinched": pinched,
        "amitsur_quotient": quotient,
        "coker_injection": product_order // quotient,
        "ker_phi1": product_order,
    }
    return expected, point_orders


def verify_report(config: PinchingConfig, report: BrauerReport, caps: OracleCaps | None = None) -> OracleVerdict:
    """Recompute the finite part of a report by enumeration and compare orders and invariant factors.

    Raises:
        OracleNotApplicableError: If the base field is not local or finite.
        OracleTooLargeError: If an enumeration exceeds the caps.
    """
    caps = caps or OracleCaps()
    if not _exact_regime(config):
        msg = f"The oracle only covers local and finite base fields, got {config.cover.base_field.kind}."
        raise OracleNotApplicableError(msg)

    expected, point_orders = _expected_orders(config, caps)
    reported = {
        "intersection_product": report.intersection_product,
        "amitsur_pinched": report.amitsur_pinched,
        "amitsur_quotient": report.amitsur_quotient,
        "coker_injection": report.coker_injection,
        "ker_phi1": report.ker_phi1,
    }

    discrepancies: list[Discrepancy] = []
    for field, group in reported.items():
        if group.order != expected[field]:
            discrepancies.append(Discrepancy(field=field, expected=str(expected[field]), reported=str(group)))

    factors = getattr(report.intersection_product, "invariant_factors", None)
    if factors is not None and census_invariant_factors(factors, caps) != census_invariant_factors(point_orders, caps):
        discrepancies.append(
            Discrepancy(
                field="intersection_product",
                expected=" x ".join(f"Z/{n}" for n in point_orders) or "0",
                reported=str(report.intersection_product),
            )
        )

    if discrepancies:
        logger.warning("Oracle found %d discrepancies", len(discrepancies))
        return OracleVerdict(status="fail", discrepancies=tuple(discrepancies))
    return OracleVerdict(status="pass")
