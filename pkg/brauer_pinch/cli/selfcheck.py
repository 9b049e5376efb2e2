"""Cross-check the qz arithmetic against the enumeration oracle."""
from __future__ import annotations

import random
from logging import getLogger
from math import prod
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict

from brauer_pinch import qz
from brauer_pinch.oracle import LatticeCheckResult, census_invariant_factors, check_lattice_laws


if TYPE_CHECKING:
    from brauer_pinch.oracle import OracleCaps


logger = getLogger("brauer_pinch.cli.selfcheck")


DEFAULT_SEED = 0
MAX_RANDOM_FACTOR = 60
MAX_RANDOM_FACTORS = 5


class CensusMismatch(BaseModel):
    model_config = ConfigDict(frozen=True)

    factors: tuple[int, ...]
    canonical: tuple[int, ...]


class SelfcheckSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    lattice_model: LatticeCheckResult
    """The gcd/lcm law itself against enumeration."""
    lattice_qz: LatticeCheckResult
    """`qz.intersect` / `qz.join` against enumeration."""
    census_checked: int
    census_mismatches: tuple[CensusMismatch, ...] = ()

    @property
    def passed(self) -> bool:
        return self.lattice_model.passed and self.lattice_qz.passed and not self.census_mismatches


def _qz_intersect_order(a: int, b: int) -> int:
    return qz.intersect(qz.cyclic(a), qz.cyclic(b)).order or 0


def _qz_join_order(a: int, b: int) -> int:
    return qz.join(qz.cyclic(a), qz.cyclic(b)).order or 0


def random_factor_lists(count: int, cap: int, seed: int = DEFAULT_SEED) -> list[tuple[int, ...]]:
    """Reproducible lists of cyclic orders whose product stays within `cap`."""
    rng = random.Random(seed)  # noqa: S311
    lists: list[tuple[int, ...]] = []
    while len(lists) < count:
        factors: list[int] = []
        for _ in range(rng.randint(0, MAX_RANDOM_FACTORS)):
            n = rng.randint(1, MAX_RANDOM_FACTOR)
            if prod(factors) * n > cap:
                break
            factors.append(n)
        lists.append(tuple(factors))
    return lists


def check_census(factor_lists: list[tuple[int, ...]], caps: OracleCaps) -> list[CensusMismatch]:
    """Factor lists whose canonical `qz.product` form has a different element-order census."""
    mismatches = []
    for factors in factor_lists:
        canonical = qz.product(qz.known(n) for n in factors)
        canonical_factors = getattr(canonical, "invariant_factors", None)
        if canonical_factors is None or census_invariant_factors(canonical_factors, caps) != census_invariant_factors(
            factors, caps
        ):
            logger.warning("Census mismatch for %s: canonical form %s", list(factors), canonical)
            mismatches.append(CensusMismatch(factors=factors, canonical=tuple(canonical_factors or ())))
    return mismatches


def run_selfcheck(
    max_order: int,
    caps: OracleCaps,
    census_samples: int = 500,
    seed: int = DEFAULT_SEED,
) -> SelfcheckSummary:
    """Run the lattice suite up to `max_order` and the census suite on `census_samples` random factor lists.

    Raises:
        InvalidArgumentError: If max_order is not positive.
        OracleTooLargeError: If max_order pushes a modulus past the caps.
    """
    lattice_model = check_lattice_laws(max_order, caps=caps)
    lattice_qz = check_lattice_laws(max_order, _qz_intersect_order, _qz_join_order, caps)

    factor_lists = random_factor_lists(census_samples, caps.census_cap, seed)
    mismatches = check_census(factor_lists, caps)

    summary = SelfcheckSummary(
        lattice_model=lattice_model,
        lattice_qz=lattice_qz,
        census_checked=len(factor_lists),
        census_mismatches=tuple(mismatches),
    )
    logger.info(
        "Selfcheck: %d lattice pairs, %d census samples, %s",
        lattice_qz.pairs_checked,
        summary.census_checked,
        "passed" if summary.passed else "FAILED",
    )
    return summary
