from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from proxregio.cli import COMMANDS, parse_scene, run_command, serialize_scene
from proxregio.cli import axioms as axiom_checks
from proxregio.cli.axioms import AXIOM_IDS, CHECKS, run_axioms
from proxregio.cli.commands import EXIT_FALSE, EXIT_OK, EXIT_USAGE
from proxregio.cli.generator import generate_trial
from proxregio.cli.scene_io import load_scene
from proxregio.core.errors import SceneParseError
from proxregio.description import ProbeRegistry, describe
from proxregio.geometry import dilate
from proxregio.main import main

SVG = "{http://www.w3.org/2000/svg}"


def square_doc(region_id: str, x: float, y: float = 0.0, size: float = 1.0, color: str = "red") -> dict:
    rgb = {"red": (1.0, 0.0, 0.0), "blue": (0.0, 0.0, 1.0)}[color]
    return {
        "id": region_id,
        "outer": [[x, y], [x + size, y], [x + size, y + size], [x, y + size]],
        "features": dict(zip(("color_r", "color_g", "color_b"), rgb)),
    }


def scene_doc(*regions: dict, **extra) -> dict:
    doc = {
        "version": 1,
        "box": [-5.0, -5.0, 15.0, 15.0],
        "probes": {"items": [{"kind": "color_r"}, {"kind": "color_g"}, {"kind": "color_b"}]},
        "regions": list(regions),
    }
    doc.update(extra)
    return doc


@pytest.fixture
def overlapping():
    return parse_scene(json.dumps(scene_doc(square_doc("A", 0.0), square_doc("B", 0.5, color="blue"))))


@pytest.fixture
def full_scene():
    doc = scene_doc(
        square_doc("A", 0.0, size=2.0),
        square_doc("B", 4.0, size=2.0),
        square_doc("C", 0.0, 4.0, 2.0, "blue"),
        strings=[
            {"id": "s1", "spine": [[0.0, 8.0], [6.0, 8.0]], "width": 0.2},
            {"id": "s2", "spine": [[0.0, 10.0], [6.0, 10.0]], "width": 0.2},
        ],
        grids=[
            {
                "id": "g",
                "topology": "circle",
                "resolution": [4],
                "layout": ["f"],
                "field": [[1.0], [2.0], [1.0], [3.0]],
            }
        ],
    )
    return parse_scene(json.dumps(doc))


def strip_doc(region_id: str, y: float, shade: float, patch: str) -> dict:
    """Strip with its own region-level colour and a coloured left half."""
    rgb = {"green": (0.0, 1.0, 0.0), "blue": (0.0, 0.0, 1.0)}[patch]
    return {
        "id": region_id,
        "outer": [[0.0, y], [6.0, y], [6.0, y + 1.0], [0.0, y + 1.0]],
        "features": {"color_r": shade, "color_g": 0.5, "color_b": 0.5},
        "patches": [
            {
                "outer": [[0.0, y], [3.0, y], [3.0, y + 1.0], [0.0, y + 1.0]],
                "features": dict(zip(("color_r", "color_g", "color_b"), rgb)),
            }
        ],
    }


@pytest.fixture
def bundled():
    doc = scene_doc(
        strip_doc("T0", 0.0, 0.1, "green"),
        strip_doc("T1", 2.0, 0.2, "green"),
        strip_doc("T2", 4.0, 0.3, "blue"),
        strip_doc("T3", 6.0, 0.4, "blue"),
    )
    return parse_scene(json.dumps(doc))


SCENES = ("overlapping", "full_scene", "bundled")


def lines(text: str) -> dict[str, str]:
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_minimal_scene(overlapping):
    assert overlapping.region_ids == ("A", "B")
    assert overlapping.registry.names == ("color_r", "color_g", "color_b")


def test_two_vertex_region_cites_the_ring_rule():
    doc = scene_doc({"id": "A", "outer": [[0, 0], [1, 0]]})
    with pytest.raises(SceneParseError) as raised:
        parse_scene(json.dumps(doc))
    assert raised.value.location == "regions.0"
    assert "PG.2" in raised.value.reason


def test_syntax_error_reports_position():
    with pytest.raises(SceneParseError) as raised:
        parse_scene('{"version": 1,\n "box": [0, 0, 1, 1,]}')
    assert raised.value.location.startswith("line 2, column")


def test_unknown_fields_are_rejected():
    doc = scene_doc(square_doc("A", 0.0), colour="red")
    with pytest.raises(SceneParseError) as raised:
        parse_scene(json.dumps(doc))
    assert raised.value.location == "colour"


def test_version_mismatch():
    doc = scene_doc(square_doc("A", 0.0))
    doc["version"] = 2
    with pytest.raises(SceneParseError) as raised:
        parse_scene(json.dumps(doc))
    assert raised.value.location == "version"


def test_duplicate_region_ids_point_at_the_second_entry():
    doc = scene_doc(square_doc("A", 0.0), square_doc("A", 3.0))
    with pytest.raises(SceneParseError) as raised:
        parse_scene(json.dumps(doc))
    assert raised.value.location == "regions.1"


def test_bad_cell_size_names_the_field():
    doc = scene_doc(square_doc("A", 0.0), cell_size=100.0)
    with pytest.raises(SceneParseError) as raised:
        parse_scene(json.dumps(doc))
    assert raised.value.location == "cell_size"


@pytest.mark.parametrize("name", SCENES)
def test_round_trip(name, request):
    scene = request.getfixturevalue(name)
    text = serialize_scene(scene)
    again = parse_scene(text)
    assert again == scene
    assert serialize_scene(again) == text


def test_load_missing_file(tmp_path):
    with pytest.raises(SceneParseError):
        load_scene(tmp_path / "missing.json")


def test_relate_overlapping_pair(overlapping):
    result = run_command("relate", overlapping, {"a": "A", "b": "B"})
    report = lines(result.text)
    assert result.exit_code == EXIT_OK
    assert report["near"] == "true"
    assert report["strongly_near"] == "true"
    assert report["strongly_far"] == "false"
    assert report["dnear"] == "true"
    assert report["violations"] == "none"
    assert report["holds"] == "true"


def test_relate_reports_false_with_exit_one(full_scene):
    result = run_command("relate", full_scene, {"a": "A", "b": "B", "relation": "strongly_near"})
    assert result.exit_code == EXIT_FALSE
    assert lines(result.text)["strongly_far"] == "true"


def test_unknown_region_is_a_usage_error(overlapping):
    result = run_command("relate", overlapping, {"a": "A", "b": "Z"})
    assert result.exit_code == EXIT_USAGE
    assert result.text.startswith("error: Region 'Z'")


def test_unknown_command(overlapping):
    result = run_command("teleport", overlapping, {})
    assert result.exit_code == EXIT_USAGE
    assert "usage: proxregio" in result.text


def test_query_commands_need_a_scene():
    assert run_command("relate", None, {"a": "A", "b": "B"}).exit_code == EXIT_USAGE


def test_sew_command(full_scene):
    result = run_command("sew", full_scene, {"a": "A", "b": "B", "k": 2})
    report = lines(result.text)
    assert result.exit_code == EXIT_OK
    assert report["valid"] == "true"
    assert report["connected"] == "true"
    assert report["edges"] == "4"
    assert report["skeleton_connected"] == "true"
    assert report["cycle"] == "true"
    assert report["rectangle"] == "true"
    assert "bridge.1" in report


def test_classify_command(full_scene):
    report = lines(run_command("classify", full_scene, {"rep": "A"}).text)
    assert report["members"] == "A, B"


def test_parallel_lines(full_scene):
    result = run_command("parallel", full_scene, {"a": "s1", "b": "s2", "kind": "proximal"})
    assert result.exit_code == EXIT_OK
    assert lines(result.text)["evidence"] == "gap=1.8"


def test_parallel_regions_with_direction(full_scene):
    result = run_command("parallel", full_scene, {"a": "A", "b": "C", "kind": "regions", "direction": "1,0"})
    assert result.exit_code == EXIT_OK
    result = run_command("parallel", full_scene, {"a": "A", "b": "B", "kind": "regions", "direction": "1,0"})
    assert result.exit_code == EXIT_FALSE


def test_bad_direction(full_scene):
    result = run_command("parallel", full_scene, {"a": "A", "b": "C", "direction": "sideways"})
    assert result.exit_code == EXIT_USAGE


def test_antipodal_command(full_scene):
    result = run_command("antipodal", full_scene, {"grid": "g"})
    report = lines(result.text)
    assert result.exit_code == EXIT_OK
    assert (report["cell"], report["antipode"]) == ("0", "2")


def test_render_svg_structure(full_scene, tmp_path):
    out = tmp_path / "scene.svg"
    result = run_command("render", full_scene, {"out": str(out)})
    assert result.exit_code == EXIT_OK

    root = ET.fromstring(out.read_bytes())
    assert root.tag == f"{SVG}svg"
    regions = root.findall(f".//{SVG}path[@class='region']")
    assert [p.get("id") for p in regions] == ["A", "B", "C"]
    assert len(root.findall(f".//{SVG}path[@class='string']")) == 2

    overlays = root.findall(f".//{SVG}line")
    assert len(overlays) == 3
    strokes = {line.get("class"): line.get("stroke") for line in overlays}
    assert len(set(strokes.values())) == len(strokes)


@pytest.mark.parametrize("name", SCENES)
def test_render_is_deterministic(name, request):
    scene = request.getfixturevalue(name)
    first = run_command("render", scene, {})
    assert first.text == run_command("render", scene, {}).text
    assert first.text.startswith("<?xml")


@pytest.mark.parametrize("name", SCENES)
def test_queries_are_deterministic(name, request):
    scene = request.getfixturevalue(name)
    a, b = scene.region_ids[:2]
    for cmd, flags in (("relate", {"a": a, "b": b}), ("classify", {"rep": a})):
        first = run_command(cmd, scene, flags)
        again = run_command(cmd, parse_scene(serialize_scene(scene)), flags)
        assert (first.text, first.exit_code) == (again.text, again.exit_code)


def test_bundle_command(bundled):
    result = run_command("bundle", bundled, {"a": "T0", "b": "T2", "direction": "1,0"})
    report = lines(result.text)
    assert result.exit_code == EXIT_OK
    assert report["a.members"] == "T0, T1"
    assert report["b.members"] == "T2, T3"
    assert (report["a.fibres"], report["b.fibres"]) == ("2", "2")
    assert (report["a.sheaf"], report["b.sheaf"]) == ("true", "true")
    assert report["holds"] == "true"

    vertical = run_command("bundle", bundled, {"a": "T0", "b": "T2", "direction": "0,1"})
    assert vertical.exit_code == EXIT_FALSE
    assert lines(vertical.text)["holds"] == "false"


def test_bundle_command_needs_sheaves(full_scene):
    result = run_command("bundle", full_scene, {"a": "A", "b": "C"})
    assert result.exit_code == EXIT_USAGE
    assert "not a sheaf" in result.text


def test_sew_command_builds_the_sewn_class(full_scene):
    result = run_command("sew", full_scene, {"a": "A", "b": "B", "k": 2, "scales": "1,2"})
    report = lines(result.text)
    assert result.exit_code == EXIT_OK
    assert report["sewn.members"] == "S0, S1"
    assert report["sewn.fibres"] == "2"
    assert report["sewn.sheaf"] == "true"

    bad = run_command("sew", full_scene, {"a": "A", "b": "B", "k": 2, "scales": "1,big"})
    assert bad.exit_code == EXIT_USAGE


def test_antipodal_command_through_strong_nearness(full_scene):
    result = run_command("antipodal", full_scene, {"grid": "g", "strong": True})
    report = lines(result.text)
    assert result.exit_code == EXIT_OK
    assert report["relation"] == "dsnear"
    assert (report["cell"], report["antipode"]) == ("0", "2")


def test_every_command_has_a_handler():
    assert set(COMMANDS) == {
        "check-axioms", "relate", "sew", "classify", "parallel", "bundle", "antipodal", "render",
    }


@pytest.fixture(scope="module")
def axiom_report():
    return run_axioms(40, 7)


def test_axiom_suite_passes(axiom_report):
    assert axiom_report.missing == ()
    assert axiom_report.failures == 0, axiom_report.to_dict()
    assert axiom_report.passed
    assert [e.axiom for e in axiom_report.entries] == list(AXIOM_IDS)
    assert not axiom_report.entry("P5").applicable
    assert all(e.counterexample is None for e in axiom_report.entries)


def test_axiom_suite_exercises_each_arrangement(axiom_report):
    # Prop2.2 and EF only count trials where their premise holds
    assert axiom_report.entry("Prop2.2").trials > 0
    assert axiom_report.entry("EF").trials > 0
    assert axiom_report.entry("P0").trials == 40


@pytest.fixture(scope="module")
def trials():
    rng = np.random.default_rng(5)
    return [generate_trial(rng, n) for n in range(8)]


@pytest.mark.parametrize("axiom_id", ["PG.6", "d.2", "d.3"])
def test_reworked_checks_hold_on_generated_trials(trials, axiom_id):
    for n, trial in enumerate(trials):
        assert CHECKS[axiom_id](trial, np.random.default_rng([3, n])), (axiom_id, n)


def test_closure_check_notices_a_growing_closure(trials, monkeypatch):
    monkeypatch.setattr(axiom_checks, "closure_region", lambda region: dilate(region, 0.1))
    assert not CHECKS["PG.6"](trials[0], np.random.default_rng(0))


def test_description_check_needs_size_sensitive_probes(trials, monkeypatch):
    monkeypatch.setattr(axiom_checks, "GEOMETRY_REGISTRY", ProbeRegistry.from_kinds(("convexity", "hole_count")))
    assert not CHECKS["d.2"](trials[0], np.random.default_rng(0))


def test_polytope_check_notices_reordered_members(trials, monkeypatch):
    def reversed_polytope(vertices, registry):
        return tuple(describe(v, registry) for v in reversed(vertices))

    monkeypatch.setattr(axiom_checks, "describe_polytope", reversed_polytope)
    assert not CHECKS["d.3"](trials[0], np.random.default_rng(0))


def test_check_axioms_is_deterministic():
    first = run_command("check-axioms", None, {"trials": 4, "seed": 11})
    second = run_command("check-axioms", None, {"trials": 4, "seed": 11})
    assert first.exit_code == EXIT_OK
    assert first.text == second.text
    assert lines(first.text)["missing"] == "none"


def test_main_round_trip(tmp_path, capsys):
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(scene_doc(square_doc("A", 0.0), square_doc("B", 3.0))), encoding="utf-8")
    assert main(["relate", "--scene", str(path), "--a", "A", "--b", "B"]) == EXIT_FALSE
    assert "near: false" in capsys.readouterr().out

    path.write_text("{", encoding="utf-8")
    assert main(["relate", "--scene", str(path), "--a", "A", "--b", "B"]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")
