from __future__ import annotations


class ProxregioError(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class InvalidRegionError(ProxregioError):
    def __init__(self, region_id: str, reason: str, axiom: str | None = None):
        self.region_id = region_id
        self.reason = reason
        self.axiom = axiom
        suffix = f" ({axiom})" if axiom else ""
        super().__init__(f"Region '{region_id}' is invalid: {reason}{suffix}")


class ParameterError(ProxregioError, ValueError):
    def __init__(self, name: str, value: object, message: str | None = None):
        self.name = name
        self.value = value
        super().__init__(message or f"Parameter '{name}' has an invalid value: {value!r}")


class RegionLookupError(ProxregioError, KeyError):
    def __init__(self, region_id: str):
        self.region_id = region_id
        super().__init__(f"Region '{region_id}' is not part of the scene")

    def __str__(self) -> str:
        return self.message


class ConfigurationError(ProxregioError, ValueError):
    def __init__(self, setting: str, message: str | None = None):
        self.setting = setting
        super().__init__(message or f"Unsupported configuration value '{setting}'")


class DegenerateHullError(ProxregioError):
    def __init__(self, point_count: int):
        self.point_count = point_count
        super().__init__(f"Convex hull of {point_count} points is degenerate (collinear input)")


class DimensionError(ProxregioError):
    def __init__(self, count: int, message: str | None = None):
        self.count = count
        super().__init__(message or f"A planar simplex has 1 to 3 vertices, got {count}")


class InvalidSpineError(ProxregioError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Invalid string spine: {reason}")


class CapacityError(ProxregioError):
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(
            f"Requested {requested} bridges but only {available} anchor pairs are available"
        )


class PreconditionError(ProxregioError):
    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: {reason}")


class ConsistencyError(ProxregioError):
    def __init__(self, check: str, message: str | None = None):
        self.check = check
        super().__init__(message or f"Internal consistency check '{check}' failed")


class SceneParseError(ProxregioError):
    def __init__(self, location: str, reason: str):
        self.location = location
        self.reason = reason
        super().__init__(f"{location}: {reason}")
