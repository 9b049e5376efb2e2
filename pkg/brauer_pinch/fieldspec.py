"""Symbolic base fields and finite field extensions, with the rules that evaluate them into Brauer-group data.

Fields carry no elements: every formula downstream only reads the kind of a field, its characteristic exponent and
the degrees of extensions. Over a non-archimedean local field the invariant map identifies Br k with Q/Z and the
relative Brauer group of a degree-n extension with (1/n)Z/Z.
"""
from __future__ import annotations

from logging import getLogger
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, PositiveInt, model_validator
from pydantic_core import PydanticCustomError
from sympy import isprime

from brauer_pinch import qz
from brauer_pinch.errors import InvalidArgumentError
from brauer_pinch.types import FieldKindStr  # noqa: TC001


if TYPE_CHECKING:
    from typing_extensions import Self  # noqa: UP035


logger = getLogger("brauer_pinch.fieldspec")


LOCAL_KINDS: frozenset[FieldKindStr] = frozenset({"padic-local", "local-function-field"})
"""Non-archimedean local fields: finite extensions of Q_p or F_p((t))."""

BRAUER_TRIVIAL_KINDS: frozenset[FieldKindStr] = frozenset({"finite", "separably-closed", "algebraically-closed"})

PERFECT_KINDS: frozenset[FieldKindStr] = frozenset(
    {"finite", "real-closed", "algebraically-closed", "abstract-perfect"}
)

_PRIME_CHARACTERISTIC_KINDS: frozenset[FieldKindStr] = frozenset(
    {"padic-local", "local-function-field", "finite"}
)


def is_power_of(n: int, p: int) -> bool:
    """Whether n is p**e for some e >= 0 (only n = 1 when p = 1)."""
    if n < 1:
        return False
    if p < 2:  # noqa: PLR2004
        return n == 1
    while n % p == 0:
        n //= p
    return n == 1


class FieldSpec(BaseModel):
    """A base field described by its kind.

    `p` is the residue characteristic for p-adic fields, the characteristic for local function fields and finite
    fields, and the characteristic exponent (1 in characteristic 0) for every other kind.
    """
    model_config = ConfigDict(frozen=True, use_attribute_docstrings=True)

    kind: FieldKindStr
    p: PositiveInt = 1
    label: str = "k"
    """Display name of the field."""

    @model_validator(mode="after")
    def _check_characteristic(self) -> Self:
        if self.kind in _PRIME_CHARACTERISTIC_KINDS and not isprime(self.p):
            raise PydanticCustomError(
                "field-prime",
                "A {kind} field needs a prime p, got {p}.",
                {"kind": self.kind, "p": self.p},
            )
        if self.p != 1 and not isprime(self.p):
            raise PydanticCustomError(
                "field-characteristic-exponent",
                "The characteristic exponent must be 1 or a prime, got {p}.",
                {"p": self.p},
            )
        if self.kind == "real-closed" and self.p != 1:
            raise PydanticCustomError(
                "field-characteristic-exponent",
                "A real-closed field has characteristic 0, got characteristic exponent {p}.",
                {"p": self.p},
            )
        return self

    @property
    def characteristic_exponent(self) -> int:
        return 1 if self.kind == "padic-local" else self.p

    @property
    def is_local(self) -> bool:
        return self.kind in LOCAL_KINDS

    @property
    def is_perfect(self) -> bool:
        return self.kind in PERFECT_KINDS or self.characteristic_exponent == 1

    @property
    def has_trivial_brauer(self) -> bool:
        return self.kind in BRAUER_TRIVIAL_KINDS

    def __str__(self) -> str:
        return self.label


class ExtensionSpec(BaseModel):
    """A finite extension K/k recorded by its degrees, e.g. a residue extension k(y)/k or k(y~)/k(y)."""
    model_config = ConfigDict(frozen=True, use_attribute_docstrings=True)

    base: FieldSpec
    total_degree: PositiveInt
    separable_degree: PositiveInt
    inseparable_degree: PositiveInt
    label: str = ""
    """Display name of the top field K; derived from the base label when empty."""

    @classmethod
    def of(
        cls: type[Self],
        base: FieldSpec,
        degree: int,
        separable_degree: int | None = None,
        label: str = "",
    ) -> Self:
        """Build an extension from its degree; a missing separable degree means the extension is separable."""
        separable = degree if separable_degree is None else separable_degree
        return cls(
            base=base,
            total_degree=degree,
            separable_degree=separable,
            inseparable_degree=max(degree // separable, 1),
            label=label,
        )

    @model_validator(mode="after")
    def _check_degrees(self) -> Self:
        if self.total_degree != self.separable_degree * self.inseparable_degree:
            raise PydanticCustomError(
                "extension-degree-product",
                "Degree {total} is not separable degree {sep} times inseparable degree {insep}.",
                {"total": self.total_degree, "sep": self.separable_degree, "insep": self.inseparable_degree},
            )
        if self.base.is_perfect and self.inseparable_degree != 1:
            raise PydanticCustomError(
                "perfect-base-inseparable",
                "Extensions of the perfect field {base} are separable, got inseparable degree {insep}.",
                {"base": self.base.label, "insep": self.inseparable_degree},
            )
        if not is_power_of(self.inseparable_degree, self.base.characteristic_exponent):
            raise PydanticCustomError(
                "inseparable-degree-not-p-power",
                "Inseparable degree {insep} is not a power of the characteristic exponent {p}.",
                {"insep": self.inseparable_degree, "p": self.base.characteristic_exponent},
            )
        if self.base.kind == "real-closed" and self.total_degree > 2:  # noqa: PLR2004
            raise PydanticCustomError(
                "real-closed-degree",
                "A real-closed field only has extensions of degree 1 or 2, got {total}.",
                {"total": self.total_degree},
            )
        return self

    @property
    def is_trivial(self) -> bool:
        return self.total_degree == 1

    @property
    def is_purely_inseparable(self) -> bool:
        return self.separable_degree == 1

    def top_field(self) -> FieldSpec:
        """The field K as a base field in its own right; finite extensions keep the kind of k."""
        label = self.label or f"{self.base.label}_{self.total_degree}"
        if self.base.kind == "real-closed" and self.total_degree == 2:  # noqa: PLR2004
            return FieldSpec(kind="algebraically-closed", p=1, label=label)
        return FieldSpec(kind=self.base.kind, p=self.base.p, label=label)

    def __str__(self) -> str:
        return f"{self.top_field().label}/{self.base.label}"


### Evaluation rules ###
#########################

def brauer_group(field: FieldSpec) -> qz.AbGroupDescriptor:
    """Br k for the kinds that have an evaluation rule, SymbolicBr otherwise.

    Local fields give Q/Z through the invariant map; finite fields have trivial Brauer group (Wedderburn); Br R = Z/2.
    """
    if field.is_local:
        return qz.FullQmodZ()
    if field.has_trivial_brauer:
        return qz.trivial()
    if field.kind == "real-closed":
        return qz.known(2)
    return qz.SymbolicBr(field_label=field.label, field_kind=field.kind)


def relative_brauer(extension: ExtensionSpec) -> qz.QmodZSubgroup:
    """Br(K/k) = ker[Br k -> Br K] as a subgroup of Br k.

    Exact over local fields ([K:k]^-1 Z/Z) and over finite, closed and real-closed fields; for abstract bases only the
    bound [K:k] * Br(K/k) = 0 is known.
    """
    base = extension.base
    degree = extension.total_degree
    if extension.is_trivial:
        return qz.KnownCyclic(n=1)
    if base.is_local:
        return qz.KnownCyclic(n=degree)
    if base.has_trivial_brauer:
        return qz.KnownCyclic(n=1)
    if base.kind == "real-closed":
        return qz.KnownCyclic(n=degree)
    return qz.unknown_bounded(degree, note=f"Br({extension}) is killed by its degree {degree}")


def _strip_p_part(m: int, p: int) -> int:
    while p > 1 and m % p == 0:
        m //= p
    return m


def brauer_torsion(field: FieldSpec, m: int) -> qz.QmodZSubgroup:
    """The m-torsion subgroup Br(k)_m.

    The Brauer group of a perfect field of characteristic p > 1 has no p-torsion, so the p-part of m is dropped first.

    Raises:
        InvalidArgumentError: If m is not a positive integer.
    """
    if m < 1:
        msg = f"Torsion index must be positive, got {m}."
        raise InvalidArgumentError(msg)
    if field.is_perfect:
        m = _strip_p_part(m, field.characteristic_exponent)

    group = brauer_group(field)
    if isinstance(group, qz.FullQmodZ):
        return qz.torsion(group, m)
    if isinstance(group, qz.KnownGroup):
        return qz.torsion(qz.KnownCyclic(n=group.order), m)
    return qz.unknown_bounded(m, note=f"Br({field.label})_{m}")


def relative_h3(extension: ExtensionSpec) -> qz.QmodZSubgroup:
    """H^3(K/k) = ker[H^3(k, G_m) -> H^3(K, G_m)].

    Vanishes over local fields (cohomological dimension 2), over finite and closed fields, and over real-closed fields
    (2-periodic Tate cohomology and Hilbert 90). Otherwise only the bound [K:k] * H^3(K/k) = 0 is known.
    """
    base = extension.base
    if extension.is_trivial or base.is_local or base.has_trivial_brauer or base.kind == "real-closed":
        return qz.KnownCyclic(n=1)
    degree = extension.total_degree
    return qz.unknown_bounded(degree, note=f"H^3({extension}) is killed by its degree {degree}")
