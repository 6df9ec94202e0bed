from __future__ import annotations

import math

from proxregio.core.errors import ParameterError


def require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ParameterError(name, value, f"Parameter '{name}' must be finite, got {value!r}")


def require_positive(name: str, value: float) -> None:
    require_finite(name, value)
    if value <= 0:
        raise ParameterError(name, value, f"Parameter '{name}' must be > 0, got {value!r}")


def require_non_negative(name: str, value: float) -> None:
    require_finite(name, value)
    if value < 0:
        raise ParameterError(name, value, f"Parameter '{name}' must be >= 0, got {value!r}")


def require_unit_direction(direction: tuple[float, float]) -> tuple[float, float]:
    dx, dy = (float(v) for v in direction)
    norm = math.hypot(dx, dy)
    if not math.isfinite(norm) or norm == 0.0:
        raise ParameterError("direction", direction, "Direction must be a nonzero finite vector")
    return dx / norm, dy / norm
