from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Mapping
from enum import Enum

import numpy as np

from proxregio.description.traits import ProbeTraits
from proxregio.geometry.measures import measure
from proxregio.geometry.primitives import Region


class ProbeKind(str, Enum):
    AREA = "area"
    PERIMETER = "perimeter"
    DIAMETER = "diameter"
    CONVEXITY = "convexity"
    HOLE_COUNT = "hole_count"
    COLOR_R = "color_r"
    COLOR_G = "color_g"
    COLOR_B = "color_b"
    CURVATURE_PROXY = "curvature_proxy"
    CUSTOM_CONSTANT = "custom_constant"


GEOMETRIC = ProbeTraits(congruence_invariant=True, translation_invariant=True)


class BaseProbe(ABC):
    """A probe function: region geometry plus a feature map in, one real out."""

    def __init__(self, name: str):
        self.name = name

    @property
    @abstractmethod
    def kind(self) -> ProbeKind:
        raise NotImplementedError

    @property
    @abstractmethod
    def traits(self) -> ProbeTraits:
        raise NotImplementedError

    @abstractmethod
    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def _key(self) -> tuple:
        return (type(self).__name__, self.name, tuple(sorted(self.params().items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BaseProbe) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"


class AreaProbe(BaseProbe):
    kind = ProbeKind.AREA
    traits = GEOMETRIC

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        return measure(region).area


class PerimeterProbe(BaseProbe):
    kind = ProbeKind.PERIMETER
    traits = GEOMETRIC

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        return measure(region).perimeter


class DiameterProbe(BaseProbe):
    kind = ProbeKind.DIAMETER
    traits = GEOMETRIC

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        return measure(region).diameter


class ConvexityProbe(BaseProbe):
    """Solidity: polygon area over convex hull area, 1.0 for convex regions."""

    kind = ProbeKind.CONVEXITY
    traits = GEOMETRIC

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        polygon = region.polygon
        return float(polygon.area / polygon.convex_hull.area)


class HoleCountProbe(BaseProbe):
    kind = ProbeKind.HOLE_COUNT
    traits = GEOMETRIC

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        return float(len(region.holes))


class ColorProbe(BaseProbe):
    traits = ProbeTraits(reads_features=True)

    def __init__(self, name: str, channel: str):
        super().__init__(name)
        self.channel = channel

    @property
    def kind(self) -> ProbeKind:
        return ProbeKind(f"color_{self.channel}")

    def params(self) -> dict:
        return {"channel": self.channel}

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        return float(features.get(self.kind.value, 0.0))


class CurvatureProxyProbe(BaseProbe):
    """Total absolute turning of the outer ring per unit perimeter."""

    kind = ProbeKind.CURVATURE_PROXY
    traits = GEOMETRIC

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        pts = np.array([p.as_tuple() for p in region.outer])
        edges = np.roll(pts, -1, axis=0) - pts
        headings = np.arctan2(edges[:, 1], edges[:, 0])
        turns = np.roll(headings, -1) - headings
        turns = (turns + math.pi) % (2.0 * math.pi) - math.pi
        perimeter = float(np.hypot(edges[:, 0], edges[:, 1]).sum())
        return float(np.abs(turns).sum() / perimeter)


class ConstantProbe(BaseProbe):
    kind = ProbeKind.CUSTOM_CONSTANT
    traits = GEOMETRIC

    def __init__(self, name: str, value: float = 0.0):
        super().__init__(name)
        self.value = float(value)

    def params(self) -> dict:
        return {"value": self.value}

    def evaluate(self, region: Region, features: Mapping[str, float]) -> float:
        return self.value
