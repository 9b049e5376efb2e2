from . import (
    errors,
    fieldspec,
    oracle,
    pinchmodel,
    qz,
    theorems,
    types,
    utils,
)


__all__ = [
    "errors",
    "fieldspec",
    "oracle",
    "pinchmodel",
    "qz",
    "theorems",
    "types",
    "utils",
]
