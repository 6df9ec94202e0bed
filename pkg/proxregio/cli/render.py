from __future__ import annotations

from itertools import combinations
from pathlib import Path

from jinja2 import Environment, FileSystemLoader

from proxregio.geometry.primitives import Point2, Region
from proxregio.geometry.scene import Scene
from proxregio.proximity.relations import near, strongly_far, strongly_near
from proxregio.proximity.verdicts import Relation

BASE_DIR = Path(__file__).resolve().parent.parent
TEMPLATES_DIR = BASE_DIR / "templates"

env = Environment(
    loader=FileSystemLoader(str(TEMPLATES_DIR)),
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
)

# stroke colour and dash pattern per overlay verdict
STROKES: dict[Relation, tuple[str, str]] = {
    Relation.STRONGLY_NEAR: ("#d62728", "none"),
    Relation.NEAR: ("#ff7f0e", "6 3"),
    Relation.FAR: ("#1f77b4", "2 3"),
    Relation.STRONGLY_FAR: ("#7f7f7f", "1 6"),
}

DEFAULT_FILL = "#cccccc"


def render_template(template_name: str, **kwargs) -> str:
    template = env.get_template(template_name)
    return template.render(**kwargs)


def strongest_relation(a: Region, b: Region, scene: Scene) -> Relation:
    if strongly_near(a, b, scene):
        return Relation.STRONGLY_NEAR
    if near(a, b, scene):
        return Relation.NEAR
    if strongly_far(a, b, scene):
        return Relation.STRONGLY_FAR
    return Relation.FAR


def _fmt(value: float) -> str:
    return f"{value:.6f}".rstrip("0").rstrip(".")


def _ring_path(points: tuple[Point2, ...]) -> str:
    head, *rest = points
    steps = " ".join(f"L {_fmt(p.x)} {_fmt(p.y)}" for p in rest)
    return f"M {_fmt(head.x)} {_fmt(head.y)} {steps} Z"


def region_path(region: Region) -> str:
    return " ".join(_ring_path(ring) for ring in (region.outer, *region.holes))


def fill_color(region: Region) -> str:
    channels = ("color_r", "color_g", "color_b")
    if not any(c in region.features for c in channels):
        return DEFAULT_FILL
    rgb = (round(255 * min(max(region.feature(c), 0.0), 1.0)) for c in channels)
    return "#" + "".join(f"{v:02x}" for v in rgb)


def render_svg(scene: Scene) -> str:
    regions = [
        {
            "id": r.id,
            "path": region_path(r),
            "fill": "none" if r.is_hole_region else fill_color(r),
        }
        for r in scene.regions
    ]
    strings = [{"id": s.id, "path": region_path(s.region)} for s in scene.strings]

    overlays = []
    for a, b in combinations(scene.regions, 2):
        relation = strongest_relation(a, b, scene)
        ca, cb = a.polygon.centroid, b.polygon.centroid
        stroke, dash = STROKES[relation]
        overlays.append(
            {
                "a": a.id,
                "b": b.id,
                "relation": relation.value,
                "x1": _fmt(ca.x),
                "y1": _fmt(ca.y),
                "x2": _fmt(cb.x),
                "y2": _fmt(cb.y),
                "stroke": stroke,
                "dash": dash,
            }
        )

    box = scene.box
    return render_template(
        "scene.svg.j2",
        box={
            "x": _fmt(box.min_x),
            "y": _fmt(box.min_y),
            "width": _fmt(box.max_x - box.min_x),
            "height": _fmt(box.max_y - box.min_y),
            "flip": _fmt(box.min_y + box.max_y),
            "stroke": _fmt(box.diagonal / 400.0),
        },
        regions=regions,
        strings=strings,
        overlays=overlays,
        legend=[{"relation": r.value, "stroke": s, "dash": d} for r, (s, d) in STROKES.items()],
    )
