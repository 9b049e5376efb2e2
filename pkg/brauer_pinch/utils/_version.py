"""Package version, read by setuptools at build time and by `brauer-pinch --version`.

Release builds run on a tag push and take the version from the tag (`v1.2.0` -> `1.2.0`); any other build gets the
development fallback.
"""
from __future__ import annotations

import logging
import os


FALLBACK_VERSION = "0.1.0.dev0"


def get_version() -> str:
    """Derive the version from the `GITHUB_REF` of a tag build.

    Returns:
        str: The tag without its leading "v", or FALLBACK_VERSION outside a tag build.
    """
    ref = os.getenv("GITHUB_REF", "")
    if not ref.startswith("refs/tags/"):
        logging.getLogger("brauer_pinch").debug("Not a tag build; using version %s.", FALLBACK_VERSION)
        return FALLBACK_VERSION

    return ref.removeprefix("refs/tags/").lstrip("v")


MODULE_VERSION = get_version()
