from __future__ import annotations

from math import gcd, lcm, prod
from typing import TYPE_CHECKING

import pytest
from brauer_pinch import qz
from brauer_pinch.errors import InconsistentConfigurationError, InvalidArgumentError
from hypothesis import given
from hypothesis import strategies as st
from pydantic import TypeAdapter, ValidationError
from sympy import factorint


if TYPE_CHECKING:
    from pytest_mock import MockerFixture


orders = st.integers(min_value=1, max_value=500)
subgroups = st.one_of(orders.map(qz.cyclic), st.just(qz.FullQmodZ()))


@pytest.mark.parametrize(
    ("group", "expected"),
    [
        (qz.cyclic(1), "0"),
        (qz.cyclic(6), "Z/6"),
        (qz.FullQmodZ(), "Q/Z"),
        (qz.trivial(), "0"),
        (qz.known(2, 6), "Z/2 + Z/6"),
        (qz.unknown_bounded(4), "unknown, exponent | 4"),
        (qz.unknown(), "unknown"),
        (qz.unknown(exponent_divides=4, order=16), "unknown, order 16, exponent | 4"),
        (qz.SymbolicBr(field_label="K", field_kind="abstract"), "Br(K)"),
        (qz.extension(qz.known(2), qz.known(3)), "ext(Z/2 ; Z/3) order 6 exponent | 6"),
        (qz.product([qz.FullQmodZ(), qz.known(4)]), "Q/Z (+) Z/4"),
        (qz.product([qz.FullQmodZ(), qz.known(2, 2)]), "Q/Z (+) (Z/2 + Z/2)"),
    ],
)
def test_canonical_text_form(group: qz.AbGroupDescriptor, expected: str):
    """Descriptors print in the canonical form used by reports."""
    assert str(group) == expected


def test_cyclic_rejects_non_positive_order():
    with pytest.raises(InvalidArgumentError):
        qz.cyclic(0)


@pytest.mark.parametrize(
    ("m", "n", "meet", "generated"),
    [
        (4, 6, 2, 12),
        (1, 7, 1, 7),
        (9, 9, 9, 9),
        (8, 12, 4, 24),
    ],
)
def test_intersect_and_join_of_cyclic_subgroups(m: int, n: int, meet: int, generated: int):
    assert qz.intersect(qz.cyclic(m), qz.cyclic(n)) == qz.cyclic(meet)
    assert qz.join(qz.cyclic(m), qz.cyclic(n)) == qz.cyclic(generated)


def test_full_group_is_neutral_for_intersection_and_absorbing_for_join():
    full = qz.FullQmodZ()
    assert qz.intersect(full, qz.cyclic(5)) == qz.cyclic(5)
    assert qz.intersect(qz.cyclic(5), full) == qz.cyclic(5)
    assert qz.join(qz.cyclic(5), full) == full


def test_intersect_with_bounded_unknown_keeps_only_the_bound():
    result = qz.intersect(qz.cyclic(6), qz.unknown_bounded(4))
    assert result == qz.unknown_bounded(2)
    assert qz.intersect(qz.cyclic(3), qz.unknown_bounded(4)) == qz.cyclic(1)


@given(a=subgroups, b=subgroups, c=subgroups)
def test_lattice_laws(a: qz.QmodZSubgroup, b: qz.QmodZSubgroup, c: qz.QmodZSubgroup):
    """Intersection and join form a lattice on the subgroups of Q/Z."""
    assert qz.intersect(a, b) == qz.intersect(b, a)
    assert qz.join(a, b) == qz.join(b, a)
    assert qz.intersect(a, qz.intersect(b, c)) == qz.intersect(qz.intersect(a, b), c)
    assert qz.join(a, qz.intersect(a, b)) == a
    assert qz.intersect(a, qz.join(a, b)) == a


@given(m=orders, n=orders)
def test_cyclic_meet_and_join_follow_gcd_and_lcm(m: int, n: int):
    assert qz.intersect(qz.cyclic(m), qz.cyclic(n)).order == gcd(m, n)
    assert qz.join(qz.cyclic(m), qz.cyclic(n)).order == lcm(m, n)


@pytest.mark.parametrize(
    ("group", "m", "expected"),
    [
        (qz.FullQmodZ(), 6, qz.cyclic(6)),
        (qz.cyclic(12), 8, qz.cyclic(4)),
        (qz.cyclic(5), 3, qz.cyclic(1)),
        (qz.unknown_bounded(12), 8, qz.unknown_bounded(4)),
    ],
)
def test_torsion(group: qz.QmodZSubgroup, m: int, expected: qz.QmodZSubgroup):
    assert qz.torsion(group, m) == expected


def test_torsion_rejects_non_positive_index():
    with pytest.raises(InvalidArgumentError):
        qz.torsion(qz.cyclic(4), 0)


@pytest.mark.parametrize(
    ("ambient", "sub", "expected"),
    [
        (qz.cyclic(12), qz.cyclic(4), qz.cyclic(3)),
        (qz.cyclic(12), qz.cyclic(1), qz.cyclic(12)),
        (qz.FullQmodZ(), qz.cyclic(7), qz.FullQmodZ()),
        (qz.FullQmodZ(), qz.FullQmodZ(), qz.cyclic(1)),
        (qz.cyclic(6), qz.unknown_bounded(2), qz.unknown_bounded(6)),
    ],
)
def test_quotient(ambient: qz.QmodZSubgroup, sub: qz.QmodZSubgroup, expected: qz.QmodZSubgroup):
    assert qz.quotient(ambient, sub) == expected


@pytest.mark.parametrize(
    ("ambient", "sub"),
    [
        (qz.cyclic(4), qz.cyclic(3)),
        (qz.cyclic(4), qz.FullQmodZ()),
    ],
)
def test_quotient_rejects_non_subgroups(ambient: qz.QmodZSubgroup, sub: qz.QmodZSubgroup):
    with pytest.raises(InconsistentConfigurationError):
        qz.quotient(ambient, sub)


@pytest.mark.parametrize(
    ("orders_", "expected"),
    [
        ([2, 3], (6,)),
        ([2, 2], (2, 2)),
        ([4, 6], (2, 12)),
        ([2, 4, 8, 3], (2, 4, 24)),
        ([1, 1], ()),
        ([], ()),
    ],
)
def test_invariant_factors(orders_: list[int], expected: tuple[int, ...]):
    assert qz.invariant_factors(orders_) == expected


def test_invariant_factors_reject_non_positive_orders():
    with pytest.raises(InvalidArgumentError):
        qz.invariant_factors([3, 0])


@given(st.lists(st.integers(min_value=1, max_value=200), max_size=6))
def test_invariant_factors_form_a_divisibility_chain(orders_: list[int]):
    factors = qz.invariant_factors(orders_)
    assert prod(factors) == prod(orders_)
    assert all(d >= 2 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


MERSENNE_89 = 2**89 - 1
MERSENNE_127 = 2**127 - 1
PRIME_POWERS = [q for q in range(2, 201) if len(factorint(q)) == 1]


@given(st.lists(st.integers(min_value=1, max_value=200), max_size=6))
def test_invariant_factors_keep_the_elementary_divisors(orders_: list[int]):
    """Z/p^k divides as many invariant factors as it divides orders."""
    factors = qz.invariant_factors(orders_)
    for q in PRIME_POWERS:
        assert sum(d % q == 0 for d in factors) == sum(n % q == 0 for n in orders_)


def test_invariant_factors_of_huge_orders_need_no_factoring(mocker: MockerFixture):
    spy = mocker.spy(qz, "factorint")
    assert qz.invariant_factors([MERSENNE_89 * MERSENNE_127, MERSENNE_89]) == (
        MERSENNE_89,
        MERSENNE_89 * MERSENNE_127,
    )
    spy.assert_not_called()


def test_coker_of_injection_with_a_large_squarefree_order():
    coker = qz.coker_of_injection(qz.cyclic(2), qz.known(2, 2 * MERSENNE_89))
    assert coker == qz.known(2 * MERSENNE_89)


def test_coker_of_injection_leaves_a_hard_squarefree_test_open():
    """Deciding whether the product of two large primes is squarefree would mean factoring it."""
    ambient = qz.known(MERSENNE_89, MERSENNE_89 * MERSENNE_127)
    coker = qz.coker_of_injection(qz.cyclic(MERSENNE_89), ambient)

    assert coker.order == MERSENNE_89 * MERSENNE_127
    assert not qz.is_determined(coker)


def test_coker_of_injection_sees_a_large_square():
    ambient = qz.known(MERSENNE_89, MERSENNE_89**2)
    coker = qz.coker_of_injection(qz.cyclic(MERSENNE_89), ambient)

    assert coker.order == MERSENNE_89**2
    assert not qz.is_determined(coker)


def test_known_group_rejects_a_broken_chain():
    with pytest.raises(ValidationError):
        qz.KnownGroup(invariant_factors=(2, 3))


def test_product_merges_known_parts_and_orders_summands():
    """Equal sums come out syntactically equal whatever the input order."""
    symbolic = qz.SymbolicBr(field_label="k", field_kind="abstract")
    first = qz.product([qz.known(2), symbolic, qz.FullQmodZ(), qz.known(3)])
    second = qz.product([qz.known(3), qz.FullQmodZ(), qz.known(2), symbolic])

    assert first == second
    assert str(first) == "Q/Z (+) Br(k) (+) Z/6"


def test_product_unwraps_single_summands():
    assert qz.product([]) == qz.trivial()
    assert qz.product([qz.FullQmodZ(), qz.trivial()]) == qz.FullQmodZ()
    assert qz.product([qz.known(4)]) == qz.known(4)


def test_extension_with_trivial_side_is_the_other_side():
    assert qz.extension(qz.trivial(), qz.known(5)) == qz.known(5)
    assert qz.extension(qz.known(5), qz.trivial()) == qz.known(5)


def test_extension_of_unknowns_keeps_no_order():
    group = qz.extension(qz.known(2), qz.unknown())
    assert group.order is None
    assert group.exponent_bound is None
    assert not qz.is_determined(group)


@pytest.mark.parametrize(
    ("sub", "ambient", "expected"),
    [
        (qz.cyclic(1), qz.known(2, 2), qz.known(2, 2)),
        (qz.cyclic(2), qz.known(2, 2), qz.known(2)),
        (qz.cyclic(2), qz.known(4), qz.known(2)),
        (qz.cyclic(3), qz.FullQmodZ(), qz.FullQmodZ()),
        (qz.cyclic(2), qz.known(2, 6), qz.known(6)),
    ],
)
def test_coker_of_injection(sub: qz.QmodZSubgroup, ambient: qz.AbGroupDescriptor, expected: qz.AbGroupDescriptor):
    assert qz.coker_of_injection(sub, ambient) == expected


def test_coker_of_injection_keeps_the_order_when_the_structure_is_open():
    """Z/2 + Z/4 modulo a cyclic subgroup of order 2 is Z/4 or Z/2 + Z/2 depending on the embedding."""
    coker = qz.coker_of_injection(qz.cyclic(2), qz.known(2, 4))
    assert coker.order == 4
    assert coker.exponent_bound == 4
    assert not qz.is_determined(coker)


@pytest.mark.parametrize(
    ("sub", "ambient"),
    [
        (qz.cyclic(4), qz.known(2, 2)),
        (qz.cyclic(3), qz.trivial()),
        (qz.FullQmodZ(), qz.known(6)),
    ],
)
def test_coker_of_injection_rejects_impossible_embeddings(sub: qz.QmodZSubgroup, ambient: qz.AbGroupDescriptor):
    with pytest.raises(InconsistentConfigurationError) as exc_info:
        qz.coker_of_injection(sub, ambient)
    assert exc_info.value.theorem == "kernel-extension"


@pytest.mark.parametrize(
    ("group", "determined"),
    [
        (qz.cyclic(3), True),
        (qz.FullQmodZ(), True),
        (qz.known(2, 4), True),
        (qz.SymbolicBr(field_label="k", field_kind="abstract"), True),
        (qz.product([qz.FullQmodZ(), qz.known(2)]), True),
        (qz.unknown_bounded(4), False),
        (qz.unknown(order=4), False),
        (qz.product([qz.FullQmodZ(), qz.unknown()]), False),
    ],
)
def test_is_determined(group: qz.AbGroupDescriptor, determined: bool):
    assert qz.is_determined(group) is determined


def test_descriptors_validate_through_their_discriminator():
    adapter = TypeAdapter(qz.AbGroupDescriptor)
    group = qz.product([qz.FullQmodZ(), qz.extension(qz.known(2), qz.unknown())])

    assert adapter.validate_python(group.model_dump()) == group
