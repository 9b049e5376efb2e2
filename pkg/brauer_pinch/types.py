from __future__ import annotations

from typing import Literal

from typing_extensions import TypeAlias  # noqa: UP035


FieldKindStr: TypeAlias = Literal[  # noqa: UP040
    "padic-local",
    "local-function-field",
    "finite",
    "real-closed",
    "separably-closed",
    "algebraically-closed",
    "abstract-perfect",
    "abstract",
]


CoverKindStr: TypeAlias = Literal[  # noqa: UP040
    "ch0-trivial",
    "severi-brauer",
    "smooth-curve",
    "regular-curve",
    "general",
]


TheoremTagStr: TypeAlias = Literal[  # noqa: UP040
    "local-invariant",
    "annihilator",
    "amitsur-intersection",
    "kernel-extension",
    "four-term-sequence",
    "split-rational-cover",
    "universal-homeomorphism",
    "seminormalization",
    "index-order",
    "curve-brauer",
]


OutputFormatStr: TypeAlias = Literal["json", "text"]  # noqa: UP040


OracleStatusStr: TypeAlias = Literal["pass", "fail", "skipped"]  # noqa: UP040
