from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from proxregio.bundles.antipodes import AntipodalGrid
from proxregio.core.errors import InvalidRegionError, ProxregioError, SceneParseError
from proxregio.core.settings import SCENE_FILE_VERSION
from proxregio.description.factory import create_probe
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.primitives import Box, FeaturePatch, Region
from proxregio.geometry.scene import Scene
from proxregio.schemas.scene_file import (
    GridFile,
    PatchFile,
    ProbeFile,
    ProbesFile,
    RegionFile,
    SceneFile,
    StringFile,
)
from proxregio.strings.worldsheets import PhysicalString

logger = logging.getLogger(__name__)


def _location(loc: Sequence[str | int]) -> str:
    return ".".join(str(part) for part in loc) or "scene"


def _build(location: str, factory):
    try:
        return factory()
    except ProxregioError as err:
        raise SceneParseError(location, err.message) from err


def _registry(doc: ProbesFile | None) -> ProbeRegistry | None:
    if doc is None:
        return None
    probes = tuple(
        _build(f"probes.items.{n}", lambda item=item: create_probe(item.kind, name=item.name, value=item.value))
        for n, item in enumerate(doc.items)
    )
    return _build("probes", lambda: ProbeRegistry(probes, doc.tolerance))


def _region(doc: RegionFile) -> Region:
    patches = tuple(FeaturePatch(p.outer, tuple(p.holes), p.features) for p in doc.patches)
    return Region(
        id=doc.id,
        outer=tuple(doc.outer),
        holes=tuple(tuple(h) for h in doc.holes),
        is_hole_region=doc.is_hole,
        features=doc.features,
        patches=patches,
    )


def _grid(doc: GridFile) -> AntipodalGrid:
    return AntipodalGrid(
        doc.id,
        doc.topology,
        tuple(doc.resolution),
        tuple(tuple(row) for row in doc.field),
        tuple(doc.layout),
        doc.tolerance,
    )


def build_scene(doc: SceneFile) -> Scene:
    registry = _registry(doc.probes)
    regions = tuple(_build(f"regions.{n}", lambda r=r: _region(r)) for n, r in enumerate(doc.regions))
    strings = tuple(
        _build(f"strings.{n}", lambda s=s: PhysicalString(s.id, tuple(s.spine), s.width, s.closed))
        for n, s in enumerate(doc.strings)
    )
    grids = tuple(_build(f"grids.{n}", lambda g=g: _grid(g)) for n, g in enumerate(doc.grids))
    box = _build("box", lambda: Box(*doc.box))

    try:
        return Scene(regions, box, doc.epsilon, doc.cell_size, registry, strings, grids)
    except InvalidRegionError as err:
        raise SceneParseError(_owner_location(doc, err.region_id), err.message) from err
    except ProxregioError as err:
        raise SceneParseError(getattr(err, "name", "scene"), err.message) from err


def _owner_location(doc: SceneFile, owner: str) -> str:
    # the last entry with the id is the one a duplicate check trips over
    for label, items in (("regions", doc.regions), ("strings", doc.strings)):
        for n in reversed(range(len(items))):
            if items[n].id == owner:
                return f"{label}.{n}"
    return "scene"


def parse_scene(text: str) -> Scene:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise SceneParseError(f"line {err.lineno}, column {err.colno}", err.msg) from err

    try:
        doc = SceneFile.model_validate(raw)
    except ValidationError as err:
        first = err.errors()[0]
        raise SceneParseError(_location(first["loc"]), first["msg"]) from err

    scene = build_scene(doc)
    logger.debug("Parsed scene with %d regions, %d strings, %d grids",
                 len(scene.regions), len(scene.strings), len(scene.grids))
    return scene


def scene_document(scene: Scene) -> SceneFile:
    probes = None
    if scene.registry is not None:
        probes = ProbesFile(
            tolerance=scene.registry.tolerance,
            items=[
                ProbeFile(kind=p.kind.value, name=p.name, value=p.params().get("value"))
                for p in scene.registry.probes
            ],
        )

    def ring(points) -> list[tuple[float, float]]:
        return [p.as_tuple() for p in points]

    return SceneFile(
        version=SCENE_FILE_VERSION,
        box=scene.box.bounds,
        epsilon=scene.epsilon,
        cell_size=scene.cell_size,
        probes=probes,
        regions=[
            RegionFile(
                id=r.id,
                outer=ring(r.outer),
                holes=[ring(h) for h in r.holes],
                is_hole=r.is_hole_region,
                features=dict(r.features),
                patches=[
                    PatchFile(outer=ring(p.outer), holes=[ring(h) for h in p.holes], features=dict(p.features))
                    for p in r.patches
                ],
            )
            for r in scene.regions
        ],
        strings=[
            StringFile(id=s.id, spine=ring(s.spine), width=s.width, closed=s.closed)
            for s in scene.strings
        ],
        grids=[
            GridFile(
                id=g.id,
                topology=g.topology.value,
                resolution=list(g.shape),
                layout=list(g.layout),
                field=[list(row) for row in g.values],
                tolerance=g.tolerance,
            )
            for g in scene.grids
        ],
    )


def serialize_scene(scene: Scene) -> str:
    payload = scene_document(scene).model_dump(mode="json", exclude_none=True)
    return json.dumps(payload, indent=2) + "\n"


def load_scene(path: str | Path) -> Scene:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise SceneParseError(str(path), err.strerror or "cannot read file") from err
    return parse_scene(text)
