"""CLI surface: parsing, outputs, exit-status contract, rendering."""

from __future__ import annotations

import json

import pytest

from hnbundles import parse_bundle, render_svg
from hnbundles.bundle import PreconditionError
from hnbundles.cli import run

B = parse_bundle


def test_check_sub_true_false(capsys):
    assert run(["check-sub", "0:1", "1,-1"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert run(["check-sub", "1", "0:1"]) == 1
    assert capsys.readouterr().out.strip() == "false"


def test_check_sub_json(capsys):
    assert run(["check-sub", "0:1", "1,-1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"result": True}


def test_check_dominate_argument_order(capsys):
    assert run(["check-dominate", "1,-1", "0,-2"]) == 0
    assert run(["check-dominate", "0,-2", "1,-1"]) == 1
    capsys.readouterr()


def test_check_quotient(capsys):
    assert run(["check-quotient", "-1", "0,-2"]) == 0
    assert run(["check-quotient", "1:2", "1"]) == 1
    capsys.readouterr()


def test_c_command(capsys):
    assert run(["c", "0,-2", "1,-1", "-1"]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert run(["c", "0,-2", "1,-1", "-1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"c": 2}


def test_dims_command(capsys):
    assert run(["dims", "0,-2", "1,-1"]) == 0
    assert capsys.readouterr().out.strip() == "hom 5"
    assert run(["dims", "0,-2", "1,-1", "-1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"hom": 5, "stratum": 3, "c": 2}


def test_trace_json(capsys):
    assert run(["trace", "0,-2", "1,-1", "-1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["chain"] == ["0,-2", "-2", "-1"]
    assert payload["c"] == [2, 1, 0]
    assert len(payload["steps"]) == 2


def test_trace_text(capsys):
    assert run(["trace", "0,-2", "1,-1", "-1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("step 0: E=0,-2 c=2")


def test_trace_precondition_exit_and_named_condition(capsys):
    assert run(["trace", "0,-1", "1,-1", "0:1"]) == 3
    err = capsys.readouterr().err
    assert "(iv)" in err


def test_parse_error_exit(capsys):
    assert run(["check-sub", "garbage", "1"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_usage_error_exit(capsys):
    assert run([]) == 2
    assert run(["no-such-command"]) == 2
    capsys.readouterr()


def test_negative_bundle_tokens_parse_as_positionals(capsys):
    assert run(["check-dominate", "-1", "-1/2,-3/2"]) in (0, 1)
    assert run(["c", "-1,-2", "0:1", "-2"]) == 0
    capsys.readouterr()


def test_images_default_pool(capsys):
    assert run(["images", "0,-2", "1,-1", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    by_image = {row["image"]: row for row in rows}
    assert by_image["0,-2"]["stratum_dim"] == 5
    assert by_image["-1"]["stratum_dim"] == 3
    assert by_image["0"]["stratum_dim"] == 0
    assert rows[0]["stratum_dim"] == 5  # sorted, top stratum first
    assert all(row["c"] + row["stratum_dim"] == 5 for row in rows)


def test_images_zero_source(capsys):
    assert run(["images", "0", "1,-1", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows == [{"image": "0", "stratum_dim": 0, "c": 0}]


def test_enumerate_command(capsys):
    assert run(["enumerate", "--max-rank", "1", "--slope-min", "0",
                "--slope-max", "0", "--max-den", "1"]) == 0
    assert capsys.readouterr().out.strip() == "0:1"
    assert run(["enumerate", "--max-rank", "2", "--slope-min", "-1",
                "--slope-max", "1", "--max-den", "1", "--zero",
                "--format", "json"]) == 0
    listed = json.loads(capsys.readouterr().out)
    assert len(listed) == 10 and "0" in listed
    assert all(parse_bundle(text) is not None for text in listed)


def test_verify_command_pass_and_json(capsys):
    argv = ["verify", "--check", "equivalence", "--max-rank", "2",
            "--slope-min", "-1", "--slope-max", "1", "--max-den", "1"]
    assert run(argv) == 0
    assert "PASS equivalence" in capsys.readouterr().out
    assert run(argv + ["--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["property"] == "equivalence" and payload[0]["passed"]


def test_render_writes_deterministic_svg(tmp_path, capsys):
    target = tmp_path / "poly.svg"
    assert run(["render", str(target), "1,-1", "0,-2"]) == 0
    first = target.read_bytes()
    assert run(["render", str(target), "1,-1", "0,-2"]) == 0
    assert target.read_bytes() == first
    assert b"<svg" in first and b"polyline" in first
    capsys.readouterr()


def test_render_unwritable_path(capsys):
    assert run(["render", "/nonexistent-dir/poly.svg", "1"]) == 2
    capsys.readouterr()


def test_render_too_many_bundles(capsys):
    bundles = ["1"] * 9
    assert run(["render", "/tmp/too-many.svg", *bundles]) == 3
    capsys.readouterr()


# ----------------------------------------------------------------------
# renderer internals via the library surface

def test_render_svg_vertices_and_legend():
    document = render_svg([B("1,-1")])
    # scale 48, margin 40, y_max = 1: (0,0)->(40,88); (1,1)->(88,40); (2,0)->(136,88)
    assert 'points="40,88 88,40 136,88"' in document
    assert "1,-1" in document


def test_render_svg_overlay_and_empty():
    document = render_svg([B("0,-2"), B("1,-1")])
    assert document.count("<polyline") == 2
    empty = render_svg([])
    assert "<svg" in empty and "<polyline" not in empty
    with pytest.raises(PreconditionError):
        render_svg([B("1")] * 9)


def test_render_overlay_preserves_dominance_shape():
    # dominated polygon must sit below the dominating one at every shared
    # integer x; SVG y grows downward, so its pixel rows are >= the other's
    import re

    document = render_svg([B("0,-2"), B("1,-1")])
    polylines = re.findall(r'points="([^"]+)"', document)
    rows = [
        {int(pair.split(",")[0]): int(pair.split(",")[1]) for pair in line.split()}
        for line in polylines
    ]
    lower, upper = rows
    assert all(lower[x] >= upper[x] for x in lower)
