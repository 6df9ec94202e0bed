from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from proxregio.core.errors import ConfigurationError
from proxregio.core.settings import FEATURE_TOLERANCE
from proxregio.description.factory import create_probe
from proxregio.description.probes import BaseProbe


@dataclass(frozen=True)
class FeatureVector:
    """Φ(re A): probe values laid out in registry order."""

    values: tuple[float, ...]
    layout: tuple[str, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if len(values) != len(self.layout):
            raise ConfigurationError(
                "layout", f"Feature vector has {len(values)} values for {len(self.layout)} probes"
            )
        if not all(math.isfinite(v) for v in values):
            raise ConfigurationError("values", f"Feature vector has non-finite entries: {values}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "layout", tuple(self.layout))

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def _check_layout(self, other: FeatureVector) -> None:
        if self.layout != other.layout:
            raise ConfigurationError(
                "layout", "Feature vectors from different registries are not comparable"
            )

    def distance(self, other: FeatureVector) -> float:
        self._check_layout(other)
        return float(np.linalg.norm(self.as_array() - other.as_array()))

    def matches(self, other: FeatureVector, tolerance: float = FEATURE_TOLERANCE) -> bool:
        self._check_layout(other)
        return bool(np.all(np.abs(self.as_array() - other.as_array()) <= tolerance))

    def to_dict(self) -> dict:
        return dict(zip(self.layout, self.values))


@dataclass(frozen=True)
class ProbeRegistry:
    probes: tuple[BaseProbe, ...]
    tolerance: float = FEATURE_TOLERANCE

    def __post_init__(self) -> None:
        probes = tuple(self.probes)
        if not probes:
            raise ConfigurationError("probes", "A probe registry needs at least one probe")
        names = [p.name for p in probes]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ConfigurationError("probes", f"Duplicate probe names: {', '.join(duplicates)}")
        if not (math.isfinite(self.tolerance) and self.tolerance >= 0):
            raise ConfigurationError("tolerance", f"Feature tolerance must be >= 0, got {self.tolerance}")
        object.__setattr__(self, "probes", probes)
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @classmethod
    def from_kinds(cls, kinds: Iterable[str], *, tolerance: float = FEATURE_TOLERANCE) -> ProbeRegistry:
        return cls(tuple(create_probe(kind) for kind in kinds), tolerance)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.probes)

    @property
    def congruence_invariant(self) -> bool:
        return all(p.traits.congruence_invariant for p in self.probes)

    def vector(self, values: Sequence[float]) -> FeatureVector:
        return FeatureVector(tuple(values), self.names)

    def __len__(self) -> int:
        return len(self.probes)
