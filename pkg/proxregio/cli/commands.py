from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from proxregio.bundles.antipodes import find_antipodal_match, find_strong_antipodal_match
from proxregio.bundles.fibre import build_fibre_space, bundles_parallel, is_sheaf
from proxregio.bundles.sewn import sewn_fibre_space
from proxregio.cli.axioms import run_axioms
from proxregio.cli.render import render_svg, render_template
from proxregio.core.errors import ParameterError, PreconditionError, ProxregioError
from proxregio.core.guards import require_positive, require_unit_direction
from proxregio.core.settings import DEFAULT_SEED
from proxregio.description.classes import class_of_regions
from proxregio.description.descriptive import resolve_registry
from proxregio.description.registry import ProbeRegistry
from proxregio.geometry.scene import Scene
from proxregio.parallelism.lines import PhysicalLine
from proxregio.parallelism.predicates import (
    ParallelVerdict,
    classes_parallel,
    descriptively_parallel,
    locally_parallel,
    parallel_regions,
    proximal_parallel,
)
from proxregio.proximity.relator import SPATIAL_RELATIONS, ProximalRelator, relator_eval
from proxregio.proximity.verdicts import Relation
from proxregio.simplicial.complex import validate_complex
from proxregio.simplicial.paths import complex_connected, is_cycle, path_connected
from proxregio.simplicial.sew import sew

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2

COMMANDS = ("check-axioms", "relate", "sew", "classify", "parallel", "bundle", "antipodal", "render")
PARALLEL_KINDS = ("local", "proximal", "regions", "descriptive", "classes")
DEFAULT_TRIALS = 100
DEFAULT_DIRECTION = (1.0, 0.0)


@dataclass(frozen=True)
class CommandResult:
    text: str
    exit_code: int


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value) if value else "none"
    if value is None:
        return "none"
    return str(value)


def report(pairs: list[tuple[str, Any]]) -> str:
    return "".join(f"{key}: {format_value(value)}\n" for key, value in pairs)


def usage() -> str:
    return f"usage: proxregio {{{','.join(COMMANDS)}}} [--scene FILE] [--seed N] [--trials N] [--out FILE] [--tol X]\n"


def parse_direction(raw: str | tuple[float, float] | None) -> tuple[float, float]:
    if raw is None:
        return DEFAULT_DIRECTION
    if isinstance(raw, str):
        parts = raw.split(",")
        if len(parts) != 2:
            raise ParameterError("direction", raw, f"Direction must look like DX,DY, got '{raw}'")
        try:
            raw = (float(parts[0]), float(parts[1]))
        except ValueError:
            raise ParameterError("direction", raw, f"Direction must look like DX,DY, got '{raw}'") from None
    return require_unit_direction(raw)


def parse_scales(raw: str | None) -> tuple[float, ...]:
    if not raw:
        return ()
    try:
        scales = tuple(float(part) for part in raw.split(","))
    except ValueError:
        raise ParameterError("scales", raw, f"Scales must look like S1,S2,..., got '{raw}'") from None
    for value in scales:
        require_positive("scales", value)
    return scales


def _require(flags: Mapping[str, Any], *names: str) -> list[Any]:
    values = []
    for name in names:
        value = flags.get(name)
        if value is None:
            raise ParameterError(name, None, f"Flag --{name} is required")
        values.append(value)
    return values


def _seed(flags: Mapping[str, Any]) -> int:
    seed = flags.get("seed")
    if seed is None:
        seed = DEFAULT_SEED if DEFAULT_SEED is not None else 0
    return int(seed)


def _relate(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    a_id, b_id = _require(flags, "a", "b")
    a, b = scene.region(a_id), scene.region(b_id)
    asked = Relation(flags.get("relation") or Relation.NEAR)

    relations = SPATIAL_RELATIONS
    if scene.registry is not None:
        relations += (Relation.DESCRIPTIVELY_NEAR, Relation.DESCRIPTIVELY_STRONGLY_NEAR)
    elif asked not in relations:
        resolve_registry(scene, None)
    evaluation = relator_eval(ProximalRelator(relations), a, b, scene)

    pairs: list[tuple[str, Any]] = [("command", "relate"), ("a", a.id), ("b", b.id)]
    pairs += [(v.relation.value, v.holds) for v in evaluation.verdicts]
    pairs += [(f"{v.relation.value}.witness", v.witness_text()) for v in evaluation.verdicts]
    pairs += [("violations", list(evaluation.violations)), ("relation", asked.value)]
    holds = evaluation.holds(asked)
    pairs.append(("holds", holds))
    return CommandResult(report(pairs), EXIT_OK if holds else EXIT_FALSE)


def _sew(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    a_id, b_id = _require(flags, "a", "b")
    a, b = scene.region(a_id), scene.region(b_id)
    k = int(flags.get("k") or 1)
    result = sew(a, b, k, scene)
    validation = validate_complex(result.complex)
    chain = path_connected(a, b, result.scene)
    joined = complex_connected(result.complex)

    pairs: list[tuple[str, Any]] = [
        ("command", "sew"),
        ("a", a.id),
        ("b", b.id),
        ("k", k),
        ("vertices", len(result.complex.vertices)),
        ("edges", len(result.complex.edges)),
        ("valid", bool(validation)),
        ("violations", list(validation.violations)),
        ("connected", chain is not None),
        ("path", chain or []),
        ("skeleton_connected", joined),
        ("cycle", is_cycle(result.complex)),
        ("rectangle", result.rectangle),
    ]
    for n, bridge in enumerate(result.bridges):
        info = bridge.to_dict()
        pairs.append((f"bridge.{n}", f"{info['anchor_a']} -> {info['anchor_b']} length={bridge.length:.12g}"))
    ok = bool(validation) and chain is not None and joined

    scales = parse_scales(flags.get("scales"))
    if scales:
        sewn = sewn_fibre_space(result, scales)
        pairs += [
            ("sewn.members", list(sewn.fibres.total.sorted_members)),
            ("sewn.fibres", len(sewn.fibres.base)),
            ("sewn.sheaf", is_sheaf(sewn.fibres)),
        ]
    return CommandResult(report(pairs), EXIT_OK if ok else EXIT_FALSE)


def _classify(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    (rep_id,) = _require(flags, "rep")
    region_class = class_of_regions(scene, scene.region(rep_id))
    pairs = [
        ("command", "classify"),
        ("representative", region_class.representative),
        ("size", len(region_class.members)),
        ("members", list(region_class.sorted_members)),
    ]
    return CommandResult(report(pairs), EXIT_OK)


def _line(scene: Scene, string_id: str) -> PhysicalLine:
    string = scene.string(string_id)
    if string.closed or len(string.spine) != 2:
        raise PreconditionError("parallel", f"string '{string_id}' is not a straight two-point line")
    start, end = string.spine
    return PhysicalLine(string.id, start, end, string.width)


def _parallel_verdict(scene: Scene, flags: Mapping[str, Any]) -> ParallelVerdict:
    a_id, b_id = _require(flags, "a", "b")
    kind = flags.get("kind") or "regions"
    if kind not in PARALLEL_KINDS:
        raise ParameterError("kind", kind, f"Unknown parallel kind '{kind}'")

    if kind == "local":
        return locally_parallel(_line(scene, a_id), _line(scene, b_id))
    if kind == "proximal":
        return proximal_parallel(_line(scene, a_id), _line(scene, b_id), scene)

    direction = parse_direction(flags.get("direction"))
    a, b = scene.region(a_id), scene.region(b_id)
    if kind == "regions":
        return parallel_regions(a, b, scene, direction)
    if kind == "descriptive":
        return descriptively_parallel(a, b, scene, None, direction)
    registry = resolve_registry(scene, None)
    return classes_parallel(
        class_of_regions(scene, a, registry),
        class_of_regions(scene, b, registry),
        scene,
        registry,
        direction,
        descriptive=bool(flags.get("descriptive")),
    )


def _parallel(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    verdict = _parallel_verdict(scene, flags)
    pairs = [
        ("command", "parallel"),
        ("kind", verdict.kind.value),
        ("a", verdict.a),
        ("b", verdict.b),
        ("holds", verdict.holds),
        ("evidence", verdict.evidence_text()),
        ("conservative", verdict.conservative),
    ]
    return CommandResult(report(pairs), EXIT_OK if verdict.holds else EXIT_FALSE)


def _bundle(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    a_id, b_id = _require(flags, "a", "b")
    registry = resolve_registry(scene, None)
    direction = parse_direction(flags.get("direction"))
    fa = build_fibre_space(class_of_regions(scene, scene.region(a_id), registry), registry, scene)
    fb = build_fibre_space(class_of_regions(scene, scene.region(b_id), registry), registry, scene)

    pairs: list[tuple[str, Any]] = [("command", "bundle"), ("a", a_id), ("b", b_id)]
    for label, fs in (("a", fa), ("b", fb)):
        pairs += [
            (f"{label}.members", list(fs.total.sorted_members)),
            (f"{label}.fibres", len(fs.base)),
            (f"{label}.sheaf", is_sheaf(fs)),
        ]
    verdict = bundles_parallel(fa, fb, scene, direction, bool(flags.get("descriptive")))
    pairs += [
        ("holds", verdict.holds),
        ("evidence", verdict.evidence_text()),
        ("conservative", verdict.conservative),
    ]
    return CommandResult(report(pairs), EXIT_OK if verdict.holds else EXIT_FALSE)


def _antipodal(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    (grid_id,) = _require(flags, "grid")
    grid = scene.grid(grid_id)
    strong = bool(flags.get("strong"))
    if strong:
        match = find_strong_antipodal_match(grid, epsilon=scene.epsilon)
    else:
        match = find_antipodal_match(grid)
    pairs: list[tuple[str, Any]] = [
        ("command", "antipodal"),
        ("grid", grid.id),
        ("topology", grid.topology.value),
        ("cells", len(grid.cells)),
        ("relation", "dsnear" if strong else "field"),
        ("found", match is not None),
    ]
    if match is not None:
        pairs += [
            ("cell", list(match.cell)),
            ("antipode", list(match.antipode)),
            ("value", list(match.value.values)),
            ("antipode_value", list(match.antipode_value.values)),
        ]
    return CommandResult(report(pairs), EXIT_OK if match is not None else EXIT_FALSE)


def _render(scene: Scene, flags: Mapping[str, Any]) -> CommandResult:
    svg = render_svg(scene)
    out = flags.get("out")
    if not out:
        return CommandResult(svg, EXIT_OK)
    Path(out).write_text(svg, encoding="utf-8")
    pairs = [("command", "render"), ("out", str(out)), ("regions", len(scene.regions))]
    return CommandResult(report(pairs), EXIT_OK)


def _check_axioms(scene: Scene | None, flags: Mapping[str, Any]) -> CommandResult:
    trials = int(flags.get("trials") or DEFAULT_TRIALS)
    if trials < 1:
        raise ParameterError("trials", trials, "Flag --trials must be >= 1")
    result = run_axioms(trials, _seed(flags))
    return CommandResult(
        render_template("axiom_report.txt.j2", report=result),
        EXIT_OK if result.passed else EXIT_FALSE,
    )


Handler = Callable[[Any, Mapping[str, Any]], CommandResult]

HANDLERS: dict[str, Handler] = {
    "check-axioms": _check_axioms,
    "relate": _relate,
    "sew": _sew,
    "classify": _classify,
    "parallel": _parallel,
    "bundle": _bundle,
    "antipodal": _antipodal,
    "render": _render,
}


def _with_tolerance(scene: Scene, tol: float | None) -> Scene:
    if tol is None or scene.registry is None:
        return scene
    return scene.replace(registry=ProbeRegistry(scene.registry.probes, tol))


def run_command(cmd: str, scene: Scene | None, flags: Mapping[str, Any]) -> CommandResult:
    handler = HANDLERS.get(cmd)
    if handler is None:
        return CommandResult(f"error: unknown command '{cmd}'\n{usage()}", EXIT_USAGE)
    if scene is None and cmd != "check-axioms":
        return CommandResult(f"error: command '{cmd}' needs --scene FILE\n{usage()}", EXIT_USAGE)

    try:
        if scene is not None:
            scene = _with_tolerance(scene, flags.get("tol"))
        return handler(scene, flags)
    except ProxregioError as err:
        logger.debug("Command %s failed: %s", cmd, err.message)
        return CommandResult(f"error: {err.message}\n", EXIT_USAGE)
