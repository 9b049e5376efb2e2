from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterator
from math import gcd
from pathlib import Path

import platformdirs
import pytest
from brauer_pinch import qz
from brauer_pinch.fieldspec import FieldSpec
from brauer_pinch.pinchmodel import CoverData, PinchingConfig, PinchPoint, validate


DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def fake_user_log_dir(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Path:
    """Redirect `platformdirs.user_log_path` into the test's temporary directory so no test writes real log files.

    Returns:
        Path: The temporary path standing in for the user log directory.
    """
    monkeypatch.setattr(platformdirs, "user_log_path", value=(lambda appname: tmp_path / appname))
    return tmp_path


@pytest.fixture(autouse=True)
def reset_brauer_logger() -> Iterator[None]:
    """Drop the handlers the CLI attaches to the `brauer_pinch` logger, so every test configures it afresh."""
    yield
    logger = logging.getLogger("brauer_pinch")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def padic() -> FieldSpec:
    return FieldSpec(kind="padic-local", p=3)


@pytest.fixture
def lff2() -> FieldSpec:
    """A local function field of characteristic 2, e.g. F_2((t))."""
    return FieldSpec(kind="local-function-field", p=2)


@pytest.fixture
def imperfect2() -> FieldSpec:
    """An abstract imperfect field of characteristic 2, e.g. F_2(t1, t2)."""
    return FieldSpec(kind="abstract", p=2)


def _random_divisor(rng: random.Random, n: int) -> int:
    return rng.choice([d for d in range(1, n + 1) if n % d == 0])


def _random_local_config(
    rng: random.Random,
    *,
    smooth: bool = False,
    max_points: int = 4,
    max_degree: int = 30,
) -> PinchingConfig:
    field = FieldSpec(kind="padic-local", p=rng.choice([2, 3, 5, 7]))
    degrees = tuple(rng.randint(1, max_degree) for _ in range(rng.randint(1, 3)))
    index = gcd(*degrees)
    amitsur = index if smooth else _random_divisor(rng, index)
    cover = CoverData(
        base_field=field,
        amitsur=qz.KnownCyclic(n=amitsur),
        closed_point_degrees=degrees,
        cover_kind="smooth-curve" if smooth else "general",
        smooth_normalization=smooth,
    )

    points = tuple(
        PinchPoint.of(
            field,
            rng.randint(1, max_degree),
            [rng.randint(1, max_degree) for _ in range(rng.randint(1, 3))],
            label=f"y{i}",
        )
        for i in range(rng.randint(0, max_points))
    )
    return PinchingConfig(cover=cover, points=points)


@pytest.fixture
def random_local_configs() -> Callable[..., list[PinchingConfig]]:
    """Factory for reproducible, validate()-clean configurations over p-adic fields with known Amitsur subgroups."""

    def _build(count: int, *, seed: int = 0, smooth: bool = False, max_points: int = 4) -> list[PinchingConfig]:
        rng = random.Random(seed)
        configs: list[PinchingConfig] = []
        while len(configs) < count:
            config = _random_local_config(rng, smooth=smooth, max_points=max_points)
            if not validate(config):
                configs.append(config)
        return configs

    return _build
