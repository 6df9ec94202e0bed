from __future__ import annotations

import importlib
import math

import numpy as np
import pytest

from proxregio.bundles import (
    AntipodalGrid,
    GridTopology,
    WiredFriendTracker,
    antipode_of,
    antisymmetric_field,
    build_fibre_space,
    bundles_parallel,
    described_grid,
    fibre,
    fibre_union,
    find_antipodal_match,
    find_strong_antipodal_match,
    is_sheaf,
    sewn_fibre_space,
    sewn_shape,
    similar_copies,
    symmetric_field,
    wired_friend_map,
)
from proxregio.cli.generator import color_features
from proxregio.core.errors import ParameterError, PreconditionError
from proxregio.description import ProbeRegistry, RegionClass, describe
from proxregio.geometry import (
    Box,
    FeaturePatch,
    Region,
    measure,
    rectangle_region,
    rotate_region,
    scale_region,
    translate_region,
)
from proxregio.simplicial import sew
from tests.conftest import make_scene, square

HORIZONTAL = (1.0, 0.0)


def members(*ids: str) -> frozenset[str]:
    return frozenset(ids)


def tagged_strip(region_id: str, y: float, shade: float) -> Region:
    """Strip with its own region-level colour and a red left half."""
    patch = FeaturePatch(((0.0, y), (3.0, y), (3.0, y + 1.0), (0.0, y + 1.0)), features=color_features("red"))
    features = {"color_r": shade, "color_g": 0.5, "color_b": 0.5}
    return rectangle_region(region_id, 0.0, y, 6.0, y + 1.0, features=features, patches=(patch,))


def test_distinct_areas_give_a_full_base(area_only):
    regions = [square(f"S{i}", 3.0 * i, size=1.0 + i) for i in range(3)]
    scene = make_scene(*regions)
    fs = build_fibre_space(RegionClass("S0", members("S0", "S1", "S2"), area_only), area_only, scene)
    assert len(fs.base) == 3
    assert [v.values[0] for v in fs.base] == pytest.approx([1.0, 4.0, 9.0])
    assert is_sheaf(fs)
    assert all(len(fibre(fs, v)) == 1 for v in fs.base)


def test_identical_squares_collapse_to_one_vector(area_only):
    regions = [square(f"S{i}", 2.0 * i) for i in range(3)]
    scene = make_scene(*regions)
    fs = build_fibre_space(RegionClass("S0", members("S0", "S1", "S2"), area_only), area_only, scene)
    assert len(fs.base) == 1
    assert fibre(fs, fs.base[0]) == {"S0", "S1", "S2"}
    assert not is_sheaf(fs)


def test_mixed_class_base_matches_dedup(area_only):
    sizes = [1.0, 1.0, 2.0, 2.0, 3.0]
    regions = [square(f"S{i}", 4.0 * (i % 3), 4.0 * (i // 3), size) for i, size in enumerate(sizes)]
    scene = make_scene(*regions)
    fs = build_fibre_space(RegionClass("S0", members(*(r.id for r in regions)), area_only), area_only, scene)
    assert len(fs.base) == len(set(sizes))
    assert fibre(fs, fs.projection["S2"]) == {"S2", "S3"}
    assert fibre(fs, describe(square("Z", size=0.5), area_only)) is None


def test_union_of_fibres_is_the_class(area_only, rng):
    for _ in range(10):
        count = int(rng.integers(1, 7))
        sizes = rng.choice([0.5, 1.0, 1.5], size=count)
        regions = [square(f"S{i}", 2.0 * i, 0.0, float(s)) for i, s in enumerate(sizes)]
        scene = make_scene(*regions)
        ids = members(*(r.id for r in regions))
        fs = build_fibre_space(RegionClass("S0", ids, area_only), area_only, scene)
        union = frozenset().union(*(fibre(fs, v) for v in fs.base))
        assert union == ids
        assert len(fs.base) == len({float(s) for s in sizes})


def test_empty_class_is_rejected(area_only):
    with pytest.raises(PreconditionError):
        RegionClass("A", frozenset(), area_only)


def _strip_bundles(colors, extra: Region | None = None):
    strips = [tagged_strip(f"T{i}", 2.0 * i, 0.1 * (i + 1)) for i in range(4)]
    regions = strips + ([extra] if extra else [])
    scene = make_scene(*regions, registry=colors)
    fa = build_fibre_space(RegionClass("T0", members("T0", "T1"), colors), colors, scene)
    b_ids = {"T2", "T3"} | ({extra.id} if extra else set())
    fb = build_fibre_space(RegionClass("T2", frozenset(b_ids), colors), colors, scene)
    return scene, fa, fb


def test_parallel_strip_bundles(colors):
    scene, fa, fb = _strip_bundles(colors)
    assert is_sheaf(fa) and is_sheaf(fb)
    assert bundles_parallel(fa, fb, scene, HORIZONTAL)


def test_descriptive_strip_bundles(colors):
    scene, fa, fb = _strip_bundles(colors)
    assert bundles_parallel(fa, fb, scene, HORIZONTAL, descriptive=True)


def test_intersecting_member_breaks_bundle_parallelism(colors):
    crossing = rectangle_region("X", 8.0, 0.5, 9.0, 8.0, features={"color_r": 0.9, "color_g": 0.5, "color_b": 0.5})
    scene, fa, fb = _strip_bundles(colors, crossing)
    verdict = bundles_parallel(fa, fb, scene, HORIZONTAL)
    assert not verdict
    assert verdict.evidence == ("T0", "X")


def test_bundles_need_sheaves(area_only):
    regions = [square(f"S{i}", 2.0 * i) for i in range(2)] + [square("Q", 0.0, 6.0, 2.0)]
    scene = make_scene(*regions)
    fa = build_fibre_space(RegionClass("S0", members("S0", "S1"), area_only), area_only, scene)
    fb = build_fibre_space(RegionClass("Q", members("Q"), area_only), area_only, scene)
    with pytest.raises(PreconditionError):
        bundles_parallel(fa, fb, scene, HORIZONTAL)


@pytest.mark.parametrize(
    "topology, shape",
    [(GridTopology.CIRCLE, (8,)), (GridTopology.TORUS, (4, 6)), (GridTopology.SPHERE_LATLONG, (5, 8))],
)
def test_antipode_is_a_fixed_point_free_involution(topology, shape):
    grid = antisymmetric_field("g", topology, shape)
    for cell in grid.cells:
        other = grid.antipode(cell)
        assert other != cell
        assert grid.antipode(other) == cell


def test_sphere_antipode_mirrors_latitude():
    assert antipode_of(GridTopology.SPHERE_LATLONG, (4, 6), (0, 1)) == (3, 4)


@pytest.mark.parametrize(
    "topology, shape",
    [(GridTopology.CIRCLE, (7,)), (GridTopology.TORUS, (3, 4)), (GridTopology.SPHERE_LATLONG, (4, 5)), (GridTopology.TORUS, (4,))],
)
def test_grid_shape_checks(topology, shape):
    with pytest.raises(ParameterError):
        antisymmetric_field("g", topology, shape)


def test_uniform_torus_matches_everywhere():
    registry = ProbeRegistry.from_kinds(("area", "color_r", "color_g", "color_b"))
    grid = described_grid("t", "torus", (4, 4), registry, lambda cell: color_features("red"))
    match = find_antipodal_match(grid)
    assert match is not None
    assert (match.cell, match.antipode) == ((0, 0), (2, 2))
    assert match.value.values == pytest.approx((1.0, 1.0, 0.0, 0.0))
    assert all(grid.field(c).matches(grid.field(grid.antipode(c))) for c in grid.cells)


@pytest.mark.parametrize("topology, shape", [("circle", (10,)), ("torus", (4, 4)), ("sphere_latlong", (6, 8))])
def test_antisymmetric_field_has_no_match(topology, shape):
    assert find_antipodal_match(antisymmetric_field("g", topology, shape)) is None


def test_symmetric_random_field_match_is_verified(rng):
    for topology, shape in (("circle", (12,)), ("torus", (6, 4)), ("sphere_latlong", (3, 6))):
        cells = math.prod(shape)
        grid = symmetric_field("g", topology, shape, rng.normal(size=(cells, 2)), ("u", "v"))
        match = find_antipodal_match(grid)
        assert match is not None
        assert match.cell == grid.cells[0]
        assert np.allclose(grid.field(match.cell).values, grid.field(grid.antipode(match.cell)).values)


def test_custom_match_predicate():
    grid = antisymmetric_field("g", "circle", (6,))
    match = find_antipodal_match(grid, lambda x, y: abs(x.values[0] + y.values[0]) < 1e-9)
    assert match is not None and match.cell == (0,)


def test_grid_rejects_wrong_row_count():
    with pytest.raises(ParameterError):
        AntipodalGrid("g", GridTopology.CIRCLE, (4,), ((0.0,),) * 3, ("f",))


def test_translate_keeps_the_wired_friend(shapes):
    a = rectangle_region("A", 0.0, 0.0, 2.0, 1.0)
    first = wired_friend_map(a, shapes, 1e-6)
    moved = wired_friend_map(translate_region(a, 4.0, 3.0), shapes, 1e-9, first.vector)
    assert first.in_ball
    assert moved.in_ball
    assert moved.vector.values == pytest.approx(first.vector.values)


def test_tracker_follows_rotations_and_spots_new_shapes(shapes):
    tracker = WiredFriendTracker(shapes, 1e-6)
    a = rectangle_region("A", 0.0, 0.0, 2.0, 1.0)
    assert tracker.observe("slab", a).in_ball
    assert tracker.observe("slab", rotate_region(a, 0.7)).in_ball
    assert not tracker.observe("slab", rectangle_region("B", 0.0, 0.0, 3.0, 1.0)).in_ball
    assert set(tracker.first) == {"slab"}


def test_wired_friend_needs_invariant_probes(colors):
    with pytest.raises(PreconditionError):
        wired_friend_map(square("A", color="red"), colors, 1e-6)


def test_bundle_parallelism_asks_the_class_question_once(colors, monkeypatch):
    fibre_module = importlib.import_module("proxregio.bundles.fibre")
    calls = []
    real = fibre_module.classes_parallel

    def counting(*args, **kwargs):
        calls.append(args[:2])
        return real(*args, **kwargs)

    monkeypatch.setattr(fibre_module, "classes_parallel", counting)
    scene, fa, fb = _strip_bundles(colors)
    assert bundles_parallel(fa, fb, scene, HORIZONTAL)
    assert len(calls) == 1
    assert fibre_union(fa) == fa.total.members
    assert fibre_union(fb) == fb.total.members


def test_strong_search_agrees_with_field_search(rng):
    for topology, shape in (("circle", (8,)), ("torus", (4, 4)), ("sphere_latlong", (3, 4))):
        cells = math.prod(shape)
        grid = symmetric_field("g", topology, shape, rng.normal(size=(cells, 2)), ("u", "v"))
        strong = find_strong_antipodal_match(grid)
        assert strong is not None
        assert strong.cell == find_antipodal_match(grid).cell
        assert strong.value.matches(strong.antipode_value, grid.tolerance)


def test_strong_search_skips_unmatched_cells():
    grid = AntipodalGrid("g", GridTopology.CIRCLE, (4,), ((1.0,), (2.0,), (5.0,), (2.0,)), ("f",))
    match = find_strong_antipodal_match(grid)
    assert match is not None
    assert (match.cell, match.antipode) == ((1,), (3,))


@pytest.mark.parametrize("topology, shape", [("circle", (6,)), ("torus", (2, 4))])
def test_strong_search_on_antisymmetric_field(topology, shape):
    assert find_strong_antipodal_match(antisymmetric_field("g", topology, shape)) is None


def test_strong_search_needs_interior_cells():
    with pytest.raises(ParameterError):
        find_strong_antipodal_match(antisymmetric_field("g", "circle", (4,)), cell_size=0.5)


@pytest.fixture
def sewn_pair():
    a, b = square("A", 0.0, 0.0, 2.0, "red"), square("B", 4.0, 0.0, 2.0, "red")
    return sew(a, b, 2, make_scene(a, b))


def test_sewn_shape_keeps_the_hole_between_bridges(sewn_pair):
    shape = sewn_shape(sewn_pair, "W", bridge_width=0.1)
    assert len(shape.holes) == 1
    assert measure(shape).area == pytest.approx(8.0 + 2 * 0.1 * 2.0, abs=0.02)
    assert shape.features["color_r"] == 1.0

    single = sew(*(sewn_pair.scene.region(r) for r in ("A", "B")), 1, sewn_pair.scene)
    assert sewn_shape(single, "V").holes == ()


def test_sewn_similar_copies_form_a_sheaf(sewn_pair):
    sewn = sewn_fibre_space(sewn_pair, (1.0, 1.5, 2.0))
    assert sewn.fibres.total.sorted_members == ("S0", "S1", "S2")
    assert is_sheaf(sewn.fibres)
    areas = [sewn.fibres.projection[m].values[0] for m in ("S0", "S1", "S2")]
    assert areas[1] == pytest.approx(areas[0] * 2.25)
    assert areas[2] == pytest.approx(areas[0] * 4.0)
    assert all(sewn.fibres.projection[m].values[2] == 1.0 for m in ("S0", "S1", "S2"))


def test_equal_scales_collapse_the_sewn_fibres(sewn_pair):
    sewn = sewn_fibre_space(sewn_pair, (1.0, 1.0))
    assert len(sewn.fibres.base) == 1
    assert not is_sheaf(sewn.fibres)


def test_rows_of_sewn_copies_are_parallel_bundles(sewn_pair, shapes):
    base = make_scene(box=Box(-1.0, -1.0, 40.0, 20.0), registry=shapes)
    low = sewn_fibre_space(sewn_pair, (1.0, 1.5, 2.0), shapes, prefix="S", scene=base)
    high = sewn_fibre_space(sewn_pair, (1.0, 2.0), shapes, prefix="T", scene=low.scene, y=6.0)
    verdict = bundles_parallel(low.fibres, high.fibres, high.scene, HORIZONTAL)
    assert verdict
    assert verdict.conservative

    close = sewn_fibre_space(sewn_pair, (1.0, 2.0), shapes, prefix="U", scene=low.scene, y=3.0)
    assert not bundles_parallel(low.fibres, close.fibres, close.scene, HORIZONTAL)


def test_sewn_shape_keeps_its_wired_friend_under_rotation(sewn_pair, shapes):
    shape = sewn_shape(sewn_pair, "W")
    tracker = WiredFriendTracker(shapes, 1e-6)
    assert tracker.observe("sewn", shape).in_ball
    for angle in (0.3, 1.2, math.pi):
        assert tracker.observe("sewn", rotate_region(shape, angle)).in_ball
    assert tracker.observe("sewn", translate_region(shape, 5.0, 1.0)).in_ball
    assert not tracker.observe("sewn", scale_region(shape, 1.5)).in_ball


def test_similar_copies_sit_side_by_side(sewn_pair):
    shape = sewn_shape(sewn_pair, "W")
    copies = similar_copies(shape, (1.0, 0.5), prefix="C", x=2.0, y=1.0, gap=0.5)
    assert [c.id for c in copies] == ["C0", "C1"]
    first, second = (c.polygon.bounds for c in copies)
    assert first[:2] == pytest.approx((2.0, 1.0))
    assert second[0] == pytest.approx(first[2] + 0.5)
    assert second[1] == pytest.approx(1.0)
    with pytest.raises(PreconditionError):
        similar_copies(shape, (), prefix="C")
