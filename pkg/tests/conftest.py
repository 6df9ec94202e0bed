from __future__ import annotations

import numpy as np
import pytest

from proxregio.cli.generator import color_features
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Box, Region
from proxregio.geometry.scene import Scene
from proxregio.geometry.shapes import rectangle_region

BOX = Box(-5.0, -5.0, 15.0, 15.0)


def square(region_id: str, x: float = 0.0, y: float = 0.0, size: float = 1.0, color: str | None = None) -> Region:
    features = color_features(color) if color else None
    return rectangle_region(region_id, x, y, x + size, y + size, features=features)


def make_scene(*regions: Region, registry: ProbeRegistry | None = None, box: Box = BOX, **kwargs) -> Scene:
    return Scene(tuple(regions), box, registry=registry, **kwargs)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def unit_square() -> Region:
    return square("A")


@pytest.fixture
def colors() -> ProbeRegistry:
    return ProbeRegistry.from_kinds(("color_r", "color_g", "color_b"))


@pytest.fixture
def shapes() -> ProbeRegistry:
    return ProbeRegistry.from_kinds(("area", "perimeter", "diameter", "convexity", "curvature_proxy"))


@pytest.fixture
def area_only() -> ProbeRegistry:
    return ProbeRegistry.from_kinds(("area",))
