"""Exact arithmetic for finite subgroups of Q/Z and for finite abelian groups.

Every finite subgroup of Q/Z is cyclic and is the only subgroup of its order, so a subgroup is stored by its order
alone and equality is integer comparison. Abelian group descriptors either carry an exact invariant-factor list or
record what is known about a group (order, exponent bound) when the structure results only determine an extension.

    >>> intersect(cyclic(4), cyclic(6))
    KnownCyclic(kind='cyclic', n=2)
    >>> str(product([known(2), known(3)]))
    'Z/6'
"""
from __future__ import annotations

from abc import ABC
from collections.abc import Iterable
from logging import getLogger
from math import gcd, lcm, prod
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, field_validator
from sympy import factorint, isprime

from brauer_pinch.errors import InconsistentConfigurationError, InvalidArgumentError


logger = getLogger("brauer_pinch.qz")



class GroupBase(BaseModel, ABC):
    model_config = ConfigDict(frozen=True, use_attribute_docstrings=True)

    kind: str
    """Name of the variant, used as the union discriminator."""

    @property
    def order(self) -> int | None:
        """Exact order when the group is finite and determined, otherwise None."""
        return None

    @property
    def exponent_bound(self) -> int | None:
        """A positive integer killing every element (the exact exponent for determined groups), otherwise None."""
        return None

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


### Subgroups of Q/Z ###
#########################

class KnownCyclic(GroupBase):
    kind: Literal["cyclic"] = "cyclic"
    n: PositiveInt
    """The subgroup is (1/n)Z/Z; n = 1 is the trivial subgroup."""

    @property
    def order(self) -> int:
        return self.n

    @property
    def exponent_bound(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "0" if self.n == 1 else f"Z/{self.n}"


class FullQmodZ(GroupBase):
    """Q/Z itself, e.g. the Brauer group of a non-archimedean local field."""
    kind: Literal["full"] = "full"

    def __str__(self) -> str:
        return "Q/Z"


class UnknownBounded(GroupBase):
    """A subgroup of Q/Z whose order is undetermined but whose elements all have order dividing `exponent_divides`."""
    kind: Literal["unknown-bounded"] = "unknown-bounded"
    exponent_divides: PositiveInt
    note: str = ""

    @property
    def exponent_bound(self) -> int:
        return self.exponent_divides

    def __str__(self) -> str:
        return f"unknown, exponent | {self.exponent_divides}"


### Abelian group descriptors ###
##################################

class KnownGroup(GroupBase):
    """Z/d_1 + ... + Z/d_r with d_1 | d_2 | ... | d_r, every d_i >= 2. The empty list is the trivial group."""
    kind: Literal["known"] = "known"
    invariant_factors: tuple[int, ...] = ()

    @field_validator("invariant_factors")
    @classmethod
    def _check_divisibility_chain(cls, factors: tuple[int, ...]) -> tuple[int, ...]:
        if any(d < 2 for d in factors):  # noqa: PLR2004
            msg = f"Invariant factors must all be at least 2, got {list(factors)}."
            raise ValueError(msg)
        if any(b % a for a, b in zip(factors, factors[1:])):
            msg = f"Invariant factors must form a divisibility chain, got {list(factors)}."
            raise ValueError(msg)
        return factors

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent_bound(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


class ExtensionOf(GroupBase):
    """A group E sitting in 0 -> sub -> E -> quot -> 0 whose extension class is not determined."""
    kind: Literal["extension"] = "extension"
    sub: AbGroupDescriptor
    quot: AbGroupDescriptor
    known_order: PositiveInt | None = None
    """|sub| * |quot| when both are finite and known."""
    exponent_divides: PositiveInt | None = None
    """exponent(sub) * exponent(quot) when both are bounded."""

    @property
    def order(self) -> int | None:
        return self.known_order

    @property
    def exponent_bound(self) -> int | None:
        return self.exponent_divides

    def __str__(self) -> str:
        text = f"ext({self.sub} ; {self.quot})"
        if self.known_order is not None:
            text += f" order {self.known_order}"
        if self.exponent_divides is not None:
            text += f" exponent | {self.exponent_divides}"
        return text


class DirectSum(GroupBase):
    """A direct sum keeping symbolic, divisible or undetermined summands apart from the finite part."""
    kind: Literal["sum"] = "sum"
    summands: tuple[AbGroupDescriptor, ...]

    @property
    def order(self) -> int | None:
        orders = [s.order for s in self.summands]
        if any(o is None for o in orders):
            return None
        return prod(o for o in orders if o is not None)

    @property
    def exponent_bound(self) -> int | None:
        exponents = [s.exponent_bound for s in self.summands]
        if any(e is None for e in exponents):
            return None
        return lcm(*(e for e in exponents if e is not None))

    def __str__(self) -> str:
        return " (+) ".join(_parenthesize(s) for s in self.summands)


class SymbolicBr(GroupBase):
    """Br k of a field for which no evaluation rule exists."""
    kind: Literal["symbolic-br"] = "symbolic-br"
    field_label: str
    field_kind: str

    def __str__(self) -> str:
        return f"Br({self.field_label})"


class UnknownGroup(GroupBase):
    kind: Literal["unknown"] = "unknown"
    known_order: PositiveInt | None = None
    exponent_divides: PositiveInt | None = None
    note: str = ""

    @property
    def order(self) -> int | None:
        return self.known_order

    @property
    def exponent_bound(self) -> int | None:
        return self.exponent_divides

    def __str__(self) -> str:
        text = "unknown"
        if self.known_order is not None:
            text += f", order {self.known_order}"
        if self.exponent_divides is not None:
            text += f", exponent | {self.exponent_divides}"
        return text


QmodZSubgroup = Annotated[
    Union[KnownCyclic, FullQmodZ, UnknownBounded],  # noqa: UP007
    Field(discriminator="kind"),
]

AbGroupDescriptor = Annotated[
    Union[KnownGroup, ExtensionOf, DirectSum, SymbolicBr, FullQmodZ, UnknownGroup],  # noqa: UP007
    Field(discriminator="kind"),
]

ExtensionOf.model_rebuild()
DirectSum.model_rebuild()


def _parenthesize(group: GroupBase) -> str:
    if isinstance(group, KnownGroup) and not group.is_cyclic:
        return f"({group})"
    return str(group)


### Constructors ###
####################

def cyclic(n: int) -> KnownCyclic:
    """The subgroup (1/n)Z/Z of Q/Z.

    Raises:
        InvalidArgumentError: If n is not a positive integer.
    """
    if n < 1:
        msg = f"A cyclic subgroup of Q/Z needs a positive order, got {n}."
        raise InvalidArgumentError(msg)
    return KnownCyclic(n=n)


def trivial() -> KnownGroup:
    return KnownGroup()


def known(*orders: int) -> KnownGroup:
    """The direct sum of the cyclic groups Z/n for the given orders, in invariant-factor form."""
    return KnownGroup(invariant_factors=invariant_factors(orders))


def unknown_bounded(exponent_divides: int, note: str = "") -> QmodZSubgroup:
    """An undetermined subgroup of Q/Z of bounded exponent; a bound of 1 forces the trivial subgroup."""
    if exponent_divides == 1:
        return KnownCyclic(n=1)
    return UnknownBounded(exponent_divides=exponent_divides, note=note)


def unknown(
    exponent_divides: int | None = None,
    note: str = "",
    order: int | None = None,
) -> AbGroupDescriptor:
    """An undetermined abelian group; order 1 or exponent bound 1 forces the trivial group."""
    if order == 1 or exponent_divides == 1:
        return trivial()
    return UnknownGroup(known_order=order, exponent_divides=exponent_divides, note=note)


def as_descriptor(group: QmodZSubgroup) -> AbGroupDescriptor:
    """View a subgroup of Q/Z as an abstract abelian group."""
    if isinstance(group, KnownCyclic):
        return known(group.n)
    if isinstance(group, UnknownBounded):
        return unknown(exponent_divides=group.exponent_divides, note=group.note)
    return group


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | ... | d_r of the direct sum of Z/n over `orders`.

    Z/a + Z/b is Z/gcd(a, b) + Z/lcm(a, b), so replacing every pair this way turns the orders into a divisibility
    chain without factoring them.

    Raises:
        InvalidArgumentError: If some order is not positive.
    """
    chain: list[int] = []
    for n in orders:
        if n < 1:
            msg = f"Cyclic orders must be positive, got {n}."
            raise InvalidArgumentError(msg)
        if n > 1:
            chain.append(n)

    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            chain[i], chain[j] = gcd(chain[i], chain[j]), lcm(chain[i], chain[j])
    return tuple(d for d in chain if d > 1)


### Lattice operations on subgroups of Q/Z ###
###############################################

def intersect(a: QmodZSubgroup, b: QmodZSubgroup) -> QmodZSubgroup:
    """Intersection of two subgroups of Q/Z; (1/m) meets (1/n) in (1/gcd(m, n))."""
    if isinstance(a, FullQmodZ):
        return b
    if isinstance(b, FullQmodZ):
        return a
    if isinstance(a, KnownCyclic) and isinstance(b, KnownCyclic):
        return KnownCyclic(n=gcd(a.n, b.n))

    bound = gcd(a.exponent_bound, b.exponent_bound)
    notes = "; ".join(g.note for g in (a, b) if isinstance(g, UnknownBounded) and g.note)
    return unknown_bounded(bound, note=notes)


def join(a: QmodZSubgroup, b: QmodZSubgroup) -> QmodZSubgroup:
    """Subgroup generated by two subgroups of Q/Z; (1/m) and (1/n) generate (1/lcm(m, n))."""
    if isinstance(a, FullQmodZ) or isinstance(b, FullQmodZ):
        return FullQmodZ()
    if isinstance(a, KnownCyclic) and isinstance(b, KnownCyclic):
        return KnownCyclic(n=lcm(a.n, b.n))
    return unknown_bounded(lcm(a.exponent_bound, b.exponent_bound))


def torsion(group: QmodZSubgroup, m: int) -> QmodZSubgroup:
    """The m-torsion subgroup of a subgroup of Q/Z.

    Raises:
        InvalidArgumentError: If m is not a positive integer.
    """
    if m < 1:
        msg = f"Torsion index must be positive, got {m}."
        raise InvalidArgumentError(msg)
    if isinstance(group, FullQmodZ):
        return KnownCyclic(n=m)
    if isinstance(group, KnownCyclic):
        return KnownCyclic(n=gcd(group.n, m))
    return unknown_bounded(gcd(group.exponent_divides, m), note=group.note)


def quotient(ambient: QmodZSubgroup, sub: QmodZSubgroup) -> QmodZSubgroup:
    """The quotient ambient/sub of two subgroups of Q/Z with sub contained in ambient.

    The quotient of a cyclic group is cyclic, and Q/Z modulo a finite subgroup is again Q/Z.

    Raises:
        InconsistentConfigurationError: If sub cannot be contained in ambient.
    """
    if sub.is_trivial:
        return ambient
    if isinstance(sub, FullQmodZ):
        if isinstance(ambient, FullQmodZ):
            return KnownCyclic(n=1)
        msg = f"Q/Z is not contained in {ambient}."
        raise InconsistentConfigurationError(msg)
    if isinstance(ambient, FullQmodZ):
        return ambient
    if isinstance(ambient, KnownCyclic):
        if isinstance(sub, KnownCyclic):
            if ambient.n % sub.n:
                msg = f"{sub} is not a subgroup of {ambient}."
                raise InconsistentConfigurationError(msg)
            return KnownCyclic(n=ambient.n // sub.n)
        return unknown_bounded(ambient.n)
    return unknown_bounded(ambient.exponent_divides, note=ambient.note)


### Abelian group bookkeeping ###
#################################

_SUMMAND_RANK = {"full": 0, "symbolic-br": 1, "unknown": 2, "extension": 3}


def _flatten(groups: Iterable[AbGroupDescriptor]) -> Iterable[AbGroupDescriptor]:
    for group in groups:
        if isinstance(group, DirectSum):
            yield from group.summands
        else:
            yield group


def product(groups: Iterable[AbGroupDescriptor]) -> AbGroupDescriptor:
    """Direct product of finitely many groups.

    Known summands are merged into one invariant-factor form. Any other summand is kept as is; summands are ordered
    divisible and symbolic first, then undetermined, then the finite part, so equal sums are syntactically equal.
    """
    cyclic_orders: list[int] = []
    others: list[AbGroupDescriptor] = []
    for group in _flatten(groups):
        if isinstance(group, KnownGroup):
            cyclic_orders.extend(group.invariant_factors)
        else:
            others.append(group)

    finite_part = known(*cyclic_orders)
    if not others:
        return finite_part

    summands = sorted(others, key=lambda g: (_SUMMAND_RANK[g.kind], str(g)))
    if not finite_part.is_trivial:
        summands.append(finite_part)
    if len(summands) == 1:
        return summands[0]
    return DirectSum(summands=tuple(summands))


def extension(sub: AbGroupDescriptor, quot: AbGroupDescriptor) -> AbGroupDescriptor:
    """A group E with 0 -> sub -> E -> quot -> 0.

    The extension is never split here: only order and exponent bookkeeping is recorded.
    """
    if quot.is_trivial:
        return sub
    if sub.is_trivial:
        return quot

    order = sub.order * quot.order if sub.order is not None and quot.order is not None else None
    exponent = (
        sub.exponent_bound * quot.exponent_bound
        if sub.exponent_bound is not None and quot.exponent_bound is not None
        else None
    )
    return ExtensionOf(sub=sub, quot=quot, known_order=order, exponent_divides=exponent)


_FACTOR_SEARCH_LIMIT = 2**16


def _is_squarefree(n: int) -> bool | None:
    """Whether n is squarefree; None when deciding it needs a composite without small factors to be factored."""
    factors = factorint(n, limit=_FACTOR_SEARCH_LIMIT)
    if any(e > 1 for e in factors.values()):
        return False
    if all(isprime(f) for f in factors):
        return True
    logger.debug("Squarefreeness of %d left undecided", n)
    return None


def coker_of_injection(sub: QmodZSubgroup, ambient: AbGroupDescriptor) -> AbGroupDescriptor:
    """Cokernel of an injection of a subgroup of Q/Z into `ambient`.

    Only orders are certain in general. The structure is determined when the ambient group is cyclic, when the
    injection is trivial or onto, or when the cokernel order is squarefree (every such group is cyclic).

    Raises:
        InconsistentConfigurationError: If the cyclic group `sub` cannot embed into `ambient`.
    """
    if sub.is_trivial:
        return ambient

    if not isinstance(sub, KnownCyclic):
        if isinstance(sub, FullQmodZ) and ambient.order is not None:
            msg = f"Q/Z cannot embed into the finite group {ambient}."
            raise InconsistentConfigurationError(msg, theorem="kernel-extension")
        return unknown(
            exponent_divides=ambient.exponent_bound,
            note=f"cokernel of {sub} -> {ambient}",
        )

    m = sub.n
    if isinstance(ambient, FullQmodZ):
        return ambient

    exponent = ambient.exponent_bound
    if exponent is not None and exponent % m:
        msg = f"A cyclic group of order {m} cannot embed into {ambient} (exponent divides {exponent})."
        raise InconsistentConfigurationError(msg, theorem="kernel-extension")

    total = ambient.order
    if total is None:
        return unknown(exponent_divides=exponent, note=f"cokernel of {sub} -> {ambient}")

    cokernel_order = total // m
    if isinstance(ambient, KnownGroup) and (
        ambient.is_cyclic or cokernel_order == 1 or _is_squarefree(cokernel_order) is True
    ):
        return known(cokernel_order)
    return unknown(
        exponent_divides=exponent,
        note=f"quotient of {ambient} by a cyclic subgroup of order {m}",
        order=cokernel_order,
    )


def is_determined(group: QmodZSubgroup | AbGroupDescriptor) -> bool:
    """Whether the descriptor names a group up to isomorphism, as opposed to recording bounds only."""
    if isinstance(group, DirectSum):
        return all(is_determined(s) for s in group.summands)
    return isinstance(group, (KnownCyclic, KnownGroup, FullQmodZ, SymbolicBr))
