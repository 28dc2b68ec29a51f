"""Scene schema validation and the CLI exit-code contract."""

import json
import math

import pytest

from lmcanal.cli import main
from lmcanal.scene import (SceneError, bundled_scene, bundled_scene_names,
                           parse_scene)


def minimal_doc():
    return {
        "version": 1,
        "curve": {"builtin": "pseudo-null-example"},
        "family": {"variant": "C1", "branch": 1},
        "radius": "s/2",
        "shape": {"f": "w", "g": "t"},
        "grid": {"s": [0.3, 0.9, 4], "t": [0.7, 1.4, 4], "w": [0.5, 2.5, 4]},
    }


def test_parse_minimal_scene():
    scene = parse_scene(minimal_doc())
    assert scene.family.variant.value == "C1"
    assert scene.oracle_step == 1e-3
    assert scene.projection == "x1x3x4"


def test_schema_error_paths():
    doc = minimal_doc()
    del doc["radius"]
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert err.value.path == "$.radius"

    doc = minimal_doc()
    doc["family"]["variant"] = "C9"
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert err.value.path == "$.family.variant"

    doc = minimal_doc()
    doc["shape"]["f"] = "sin("
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert err.value.path == "$.shape.f"

    doc = minimal_doc()
    doc["shape"]["f"] = "s"  # wrong variable for a shape function
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert err.value.path == "$.shape.f"

    doc = minimal_doc()
    doc["version"] = 2
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert err.value.path == "$.version"


def test_family_class_compatibility_checked():
    doc = minimal_doc()
    doc["family"]["variant"] = "NullC1"
    with pytest.raises(SceneError):
        parse_scene(doc)


def test_null_scene_requires_coefficients():
    doc = minimal_doc()
    doc["curve"] = {"builtin": "null-example"}
    doc["family"] = {"variant": "NullC1"}
    del doc["shape"]
    with pytest.raises(SceneError) as err:
        parse_scene(doc)
    assert err.value.path == "$.null_coefficients"
    doc["null_coefficients"] = {"a1": "t", "theta": "w"}
    scene = parse_scene(doc)
    assert scene.nc is not None


def test_custom_curve_components():
    doc = minimal_doc()
    doc["curve"] = {
        "class": "pseudo-null",
        "components": ["cosh(2*s)/(2*sqrt(2))", "sinh(2*s)/(2*sqrt(2))",
                       "sin(2*s)/(2*sqrt(2))", "-cos(2*s)/(2*sqrt(2))"],
    }
    scene = parse_scene(doc)
    p = scene.point_fn()(0.5, 1.0, 1.0)
    assert all(math.isfinite(c) for c in p.components())


def test_bundled_scenes_all_parse():
    names = bundled_scene_names()
    assert len(names) == 24
    for name in names:
        scene = bundled_scene(name)
        assert scene.name == name


def test_cli_usage_errors_exit_1(capsys):
    assert main([]) == 1
    assert main(["frames"]) == 1  # missing --curve/--scene
    assert main(["verify"]) == 1  # missing --scene
    assert main(["verify", "--scene", "no-such-scene"]) == 1
    capsys.readouterr()


def test_cli_frames_pass(capsys):
    code = main(["frames", "--curve", "pseudo-null-example",
                 "--s-min", "-1", "--s-max", "1", "-n", "11"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip().endswith("PASS")


def test_cli_frames_null_curve_reports_arclength(capsys):
    code = main(["frames", "--curve", "null-example", "-n", "7"])
    out = capsys.readouterr().out
    assert code == 0
    assert "normalization=" in out


def test_cli_verify_scene_pass(capsys):
    code = main(["verify", "--scene", "partially-null-c1",
                 "--envelope-points", "50", "--min-points", "100"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out


def test_cli_verify_failure_exits_2(capsys, tmp_path):
    # an intentionally mis-tolerated run: rel tolerance far below what the
    # finite-difference oracle can deliver
    code = main(["verify", "--scene", "partially-null-c1",
                 "--rel-tol", "1e-14", "--abs-tol", "1e-14",
                 "--envelope-points", "5"])
    capsys.readouterr()
    assert code == 2


def test_cli_verify_regime_violation_exits_1(capsys, tmp_path):
    doc = minimal_doc()
    doc["radius"] = "2*s"  # r'^2 = 4 >= 1 violates the C1 side condition
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code = main(["verify", "--scene", str(path)])
    err = capsys.readouterr().err
    assert code == 1
    assert "r'^2 < 1" in err


def test_cli_frames_accepts_scene(capsys):
    code = main(["frames", "--scene", "partially-null-c1", "-n", "5",
                 "--s-min", "0.2", "--s-max", "0.5"])
    capsys.readouterr()
    assert code == 0


def test_cli_mesh_writes_files(capsys, tmp_path):
    obj = tmp_path / "fig.obj"
    field = tmp_path / "fig.csv"
    code = main(["mesh", "--scene", "pseudo-null-c1-figure",
                 "--out", str(obj), "--field", str(field)])
    out = capsys.readouterr().out
    assert code == 0
    assert obj.exists() and field.exists()
    assert "vertices" in out and "singular" in out


def test_cli_mesh_bad_output_dir(capsys, tmp_path):
    code = main(["mesh", "--scene", "pseudo-null-c1-figure",
                 "--out", str(tmp_path / "missing" / "fig.obj")])
    capsys.readouterr()
    assert code == 1


def test_cli_mesh_field_values_match_verify_path(tmp_path, capsys):
    # the curvature channel is the same closed-form code path cmd_verify uses
    obj = tmp_path / "m.obj"
    field = tmp_path / "m.csv"
    code = main(["mesh", "--scene", "pseudo-null-c1",
                 "--out", str(obj), "--field", str(field)])
    capsys.readouterr()
    assert code == 0
    scene = bundled_scene("pseudo-null-c1")
    rows = field.read_text().splitlines()[1:]
    checked = 0
    for row in rows[:20]:
        cells = row.split(",")
        s, t, w = float(cells[0]), float(cells[1]), float(cells[2])
        if cells[7] == "":
            continue
        pair = scene.closed_pair(s, t, w)
        assert float(cells[7]) == pytest.approx(pair.K, rel=1e-12)
        assert float(cells[8]) == pytest.approx(pair.H, rel=1e-12)
        checked += 1
    assert checked > 0
