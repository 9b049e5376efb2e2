from __future__ import annotations

from math import prod
from typing import TYPE_CHECKING

import pytest
from brauer_pinch import qz
from brauer_pinch.cli.selfcheck import check_census, random_factor_lists, run_selfcheck
from brauer_pinch.oracle import OracleCaps


if TYPE_CHECKING:
    from pytest_mock import MockerFixture


def test_random_factor_lists_are_reproducible_and_capped():
    lists = random_factor_lists(500, 10_000, seed=7)

    assert lists == random_factor_lists(500, 10_000, seed=7)
    assert len(lists) == 500
    assert all(prod(factors) <= 10_000 for factors in lists)


def test_canonical_products_match_the_census():
    """qz.product's invariant-factor form of 500 random factor lists is isomorphic to the plain direct sum."""
    caps = OracleCaps()
    assert check_census(random_factor_lists(500, caps.census_cap), caps) == []


def test_census_mismatch_is_reported(mocker: MockerFixture):
    mocker.patch.object(qz, "product", return_value=qz.known(4))

    mismatches = check_census([(2, 2)], OracleCaps())

    assert [(m.factors, m.canonical) for m in mismatches] == [((2, 2), (4,))]


@pytest.mark.slow
def test_run_selfcheck_passes():
    summary = run_selfcheck(60, OracleCaps(), census_samples=100)

    assert summary.passed
    assert summary.lattice_model.pairs_checked == 60 * 61 // 2
    assert summary.lattice_qz.pairs_checked == 60 * 61 // 2
    assert summary.census_checked == 100
    assert summary.census_mismatches == ()
