from __future__ import annotations

import math

from proxregio.core.errors import ConfigurationError
from proxregio.description.probes import (
    AreaProbe,
    BaseProbe,
    ColorProbe,
    ConstantProbe,
    ConvexityProbe,
    CurvatureProxyProbe,
    DiameterProbe,
    HoleCountProbe,
    PerimeterProbe,
    ProbeKind,
)

PROBE_KINDS = tuple(kind.value for kind in ProbeKind)


def create_probe(kind: str, *, name: str | None = None, value: float | None = None) -> BaseProbe:
    slug = (kind or "").strip().lower()
    name = name or slug

    if slug == ProbeKind.AREA:
        return AreaProbe(name)

    if slug == ProbeKind.PERIMETER:
        return PerimeterProbe(name)

    if slug == ProbeKind.DIAMETER:
        return DiameterProbe(name)

    if slug == ProbeKind.CONVEXITY:
        return ConvexityProbe(name)

    if slug == ProbeKind.HOLE_COUNT:
        return HoleCountProbe(name)

    if slug in (ProbeKind.COLOR_R, ProbeKind.COLOR_G, ProbeKind.COLOR_B):
        return ColorProbe(name, channel=slug[-1])

    if slug == ProbeKind.CURVATURE_PROXY:
        return CurvatureProxyProbe(name)

    if slug == ProbeKind.CUSTOM_CONSTANT:
        constant = 0.0 if value is None else float(value)
        if not math.isfinite(constant):
            raise ConfigurationError(name, f"Probe '{name}' needs a finite constant value")
        return ConstantProbe(name, constant)

    raise ConfigurationError(slug, f"Probe kind not implemented: '{slug}'")
