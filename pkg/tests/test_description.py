from __future__ import annotations

import math

import numpy as np
import pytest

from proxregio.cli.generator import color_features
from proxregio.core.errors import ConfigurationError, ParameterError
from proxregio.description import (
    ProbeRegistry,
    cell_matches_region,
    cells_dnear,
    class_of_regions,
    create_probe,
    describe,
    describe_cell,
    descriptive_intersection,
    descriptively_congruent,
    dnear,
    dnear_sets,
    dsnear,
    dsnear_sets,
    phi_bounded,
    phi_bounded_set,
    phi_closure,
    shape_dnear,
)
from proxregio.geometry import (
    FeaturePatch,
    Region,
    closure_region,
    rectangle_region,
    rotate_region,
    subregion_grid,
    translate_region,
)
from proxregio.proximity import strongly_near
from tests.conftest import make_scene, square


def painted(region_id: str, x: float, base: str, centre: str) -> Region:
    """A 2x2 square of one colour with a differently coloured 1x1 centre."""
    patch = FeaturePatch(
        ((x + 0.5, 0.5), (x + 1.5, 0.5), (x + 1.5, 1.5), (x + 0.5, 1.5)),
        features=color_features(centre),
    )
    return rectangle_region(region_id, x, 0.0, x + 2.0, 2.0, features=color_features(base), patches=(patch,))


def test_describe_unit_square():
    registry = ProbeRegistry.from_kinds(("area", "perimeter"))
    vector = describe(square("A"), registry)
    assert vector.values == pytest.approx((1.0, 4.0))
    assert vector.to_dict() == pytest.approx({"area": 1.0, "perimeter": 4.0})


def test_translation_keeps_geometric_description(shapes):
    a = rectangle_region("A", 0.0, 0.0, 2.0, 1.0)
    moved = translate_region(a, 3.5, -1.25, region_id="B")
    assert describe(a, shapes).matches(describe(moved, shapes))


def test_hole_region_reports_boundary_length(area_only):
    ring = Region("H", ((0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)), is_hole_region=True)
    assert describe(ring, area_only).values[0] == pytest.approx(6.0)


def test_stored_feature_overrides_probe(area_only):
    a = rectangle_region("A", 0.0, 0.0, 1.0, 1.0, features={"area": 7.0})
    assert describe(a, area_only).values == (7.0,)


def test_closure_keeps_description(shapes):
    a = rectangle_region("A", 0.0, 0.0, 2.0, 1.0)
    assert describe(closure_region(a), shapes).matches(describe(a, shapes))


def test_unknown_probe_kind():
    with pytest.raises(ConfigurationError):
        create_probe("texture")


def test_registry_rejects_duplicates():
    with pytest.raises(ConfigurationError):
        ProbeRegistry.from_kinds(("area", "area"))


def test_vectors_from_different_registries_do_not_compare(area_only, colors):
    a = square("A", color="red")
    with pytest.raises(ConfigurationError):
        describe(a, area_only).matches(describe(a, colors))


def test_describe_cell_checks_owner(colors):
    a, b = square("A", color="red"), square("B", 3.0, color="red")
    cell = subregion_grid(a, 0.5)[0]
    with pytest.raises(ParameterError):
        describe_cell(cell, b, colors)


def test_uniform_twins_share_every_cell(colors):
    a, b = square("A", color="red"), square("B", 3.0, color="red")
    scene = make_scene(a, b, registry=colors)
    cells = descriptive_intersection(a, b, scene)
    assert len(cells) == 8
    assert {c.owner for c in cells} == {"A", "B"}


def test_different_colours_share_nothing(colors):
    a, b = square("A", color="red"), square("B", 3.0, color="blue")
    scene = make_scene(a, b, registry=colors)
    assert descriptive_intersection(a, b, scene) == ()
    assert not dnear(a, b, scene)


def test_piecewise_pair_matches_exhaustive_scan(colors):
    a = painted("A", 0.0, "red", "blue")
    b = painted("B", 4.0, "green", "red")
    scene = make_scene(a, b, registry=colors)

    cells_a, cells_b = subregion_grid(a, 0.5), subregion_grid(b, 0.5)
    expected = set()
    for x in cells_a:
        for y in cells_b:
            if cells_dnear(x, a, y, b, colors):
                expected.update((x.key, y.key))

    found = {c.key for c in descriptive_intersection(a, b, scene)}
    assert found == expected
    # red ring of A against the red centre of B
    assert len(found) == 12 + 4


def test_dnear_twins_far_apart(colors):
    a, b = square("A", color="green"), square("B", 10.0, 10.0, color="green")
    assert dnear(a, b, make_scene(a, b, registry=colors))


def test_dnear_empty_family(colors):
    a = square("A", color="red")
    scene = make_scene(a, registry=colors)
    assert not dnear_sets((), (a,), scene)
    assert not dsnear_sets((a,), (), scene)


def test_dnear_needs_a_registry():
    a, b = square("A"), square("B", 3.0)
    with pytest.raises(ConfigurationError):
        dnear(a, b, make_scene(a, b))


def test_dnear_is_symmetric(colors):
    a = painted("A", 0.0, "red", "blue")
    b = painted("B", 4.0, "blue", "green")
    scene = make_scene(a, b, registry=colors)
    assert dnear(a, b, scene).holds == dnear(b, a, scene).holds is True


def test_dsnear_matching_interiors(colors):
    a = painted("A", 0.0, "red", "blue")
    b = painted("B", 4.0, "green", "blue")
    assert dsnear(a, b, make_scene(a, b, registry=colors))


def test_dsnear_false_when_only_boundary_cells_match(colors):
    a = painted("A", 0.0, "red", "blue")
    b = painted("B", 4.0, "red", "green")
    scene = make_scene(a, b, registry=colors)
    assert all(
        c.features["color_b"] == 1.0 for c in subregion_grid(a, scene.cell_size) if c.interior_cell
    )
    assert dnear(a, b, scene)
    assert not dsnear(a, b, scene)


def test_universe_is_dsnear_everything(colors):
    a = square("A", color="red")
    scene = make_scene(a, registry=colors)
    assert dsnear_sets((scene.universe,), (a,), scene)
    assert dnear_sets((a,), (scene.universe,), scene)


def test_strongly_near_pair_is_dnear_whatever_the_colours(colors):
    a = rectangle_region("A", 0.0, 0.0, 2.0, 2.0, features=color_features("red"))
    b = rectangle_region("B", 1.0, 0.0, 3.0, 2.0, features=color_features("blue"))
    scene = make_scene(a, b, registry=colors)
    assert strongly_near(a, b, scene)
    assert dnear(a, b, scene)
    assert dsnear(a, b, scene)


def test_edge_sharing_pair_is_dnear_but_not_dsnear(colors):
    a = rectangle_region("A", 0.0, 0.0, 2.0, 2.0, features=color_features("red"))
    b = rectangle_region("B", 2.0, 0.0, 4.0, 2.0, features=color_features("blue"))
    scene = make_scene(a, b, registry=colors)
    assert dnear(a, b, scene)
    assert not dsnear(a, b, scene)


def test_cell_matches_region(colors):
    a = painted("A", 0.0, "red", "blue")
    b = square("B", 5.0, color="blue")
    scene = make_scene(a, b, registry=colors)
    centre = next(c for c in subregion_grid(a, scene.cell_size) if c.interior_cell)
    corner = subregion_grid(a, scene.cell_size)[0]
    assert cell_matches_region(centre, a, b, scene)
    assert not cell_matches_region(corner, a, b, scene)
    # B has no interior cells at this pitch
    assert not cell_matches_region(centre, a, b, scene, interior_only=True)


def test_class_of_red_squares(colors):
    reds = [square(f"R{i}", 2.0 * i, color="red") for i in range(3)]
    blues = [square(f"B{i}", 6.0 + 2.0 * i, color="blue") for i in range(2)]
    scene = make_scene(*reds, *blues, registry=colors)
    cls = class_of_regions(scene, reds[1])
    assert cls.sorted_members == ("R0", "R1", "R2")
    assert cls.to_dict() == {"representative": "R1", "members": ["R0", "R1", "R2"]}


def test_class_of_singleton_scene(colors):
    a = square("A", color="red")
    assert class_of_regions(make_scene(a, registry=colors), a).members == {"A"}


def test_class_of_identical_scene(area_only):
    regions = [square(f"S{i}", 2.0 * i) for i in range(4)]
    scene = make_scene(*regions, registry=area_only)
    assert class_of_regions(scene, regions[2]).members == {r.id for r in regions}


def test_phi_bounded(area_only):
    twins = [square("A"), square("B", 3.0)]
    assert phi_bounded(twins, twins[0], 1e-3, area_only)

    wide = rectangle_region("W", 0.0, 3.0, 1.5, 4.0)
    assert not phi_bounded([twins[0], wide], twins[0], 0.1, area_only)

    with pytest.raises(ParameterError):
        phi_bounded(twins, twins[0], 0.0, area_only)


def test_closure_of_bounded_family_is_the_family(area_only):
    family = [square("A"), square("B", 3.0)]
    universe = family + [rectangle_region("W", 0.0, 3.0, 1.5, 4.0)]
    ids = phi_bounded_set(universe, family[0], 1e-3, area_only)
    assert ids == {"A", "B"}
    assert phi_closure(family, universe, area_only) == ids


def test_shape_dnear_by_perimeter_and_area():
    a = square("A")
    b = rectangle_region("B", 3.0, 0.0, 3.5, 1.5)
    assert shape_dnear(a, b, by="perimeter")
    verdict = shape_dnear(a, b, by="area")
    assert not verdict
    assert verdict.witness == pytest.approx(0.25)


def test_rigid_copy_is_descriptively_congruent(shapes):
    a = rectangle_region("A", 0.0, 0.0, 2.0, 1.0)
    b = rotate_region(translate_region(a, 5.0, 5.0), math.pi / 3, region_id="B")
    assert descriptively_congruent(a, b, shapes)
    assert not descriptively_congruent(a, square("C"), shapes)


def test_congruence_matches_vector_comparison(shapes, rng):
    base = rectangle_region("A", 0.0, 0.0, 1.0, 1.0)
    for index in range(20):
        w, h = rng.uniform(0.5, 2.0, size=2)
        other = rectangle_region(f"R{index}", 0.0, 0.0, float(w), float(h))
        vectors_match = bool(
            np.all(np.abs(describe(base, shapes).as_array() - describe(other, shapes).as_array()) <= 1e-6)
        )
        assert descriptively_congruent(base, other, shapes) == vectors_match
