import json

import numpy as np
import pytest
from scipy.stats import spearmanr

from peacock.cli import main


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "g.json"
    code = main(
        [
            "gen", "--style", "ordered", "--groups", "6", "--edges", "6",
            "--reverse-last", "--out", str(path),
        ]
    )
    assert code == 0
    return path


def test_color_happy_path(tmp_path, fixture_file):
    svg = tmp_path / "g.svg"
    code = main(["color", "--input", str(fixture_file), "--out-svg", str(svg)])
    assert code == 0
    assert svg.read_text().startswith("<?xml")


def test_epsilon_out_of_range_is_usage_error(tmp_path, fixture_file, capsys):
    code = main(["color", "--input", str(fixture_file), "--epsilon", "2"])
    assert code == 2
    assert "[0.0, 1.0]" in capsys.readouterr().err


def test_missing_input_is_validation_error(tmp_path, capsys):
    code = main(["color", "--input", str(tmp_path / "nope.json")])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("peacock: error") and err.count("\n") == 1


def test_gen_color_rank_correlation(tmp_path, fixture_file):
    truth = json.loads((tmp_path / "g.truth.json").read_text())
    colors = tmp_path / "colors.json"
    code = main(["color", "--input", str(fixture_file), "--out-colors", str(colors)])
    assert code == 0
    doc = json.loads(colors.read_text())
    assert doc["q"] == 1
    col = np.array(doc["colors"])[:, 0]
    for ids, order in zip(truth["bundles"], truth["order"]):
        rho = spearmanr(col[ids], order).statistic
        assert abs(rho) >= 0.9


def test_determinism_byte_identical(tmp_path, fixture_file):
    outs = []
    for tag in ("a", "b"):
        svg = tmp_path / f"{tag}.svg"
        colors = tmp_path / f"{tag}.colors.json"
        assert main(
            ["color", "--input", str(fixture_file),
             "--out-svg", str(svg), "--out-colors", str(colors)]
        ) == 0
        outs.append((svg.read_bytes(), colors.read_bytes()))
    assert outs[0] == outs[1]


def test_baseline_method(tmp_path, fixture_file):
    colors = tmp_path / "base.json"
    code = main(
        ["color", "--input", str(fixture_file), "--method", "baseline",
         "--out-colors", str(colors)]
    )
    assert code == 0
    doc = json.loads(colors.read_text())
    assert doc["q"] == 3
    assert doc["stress"] is None and doc["iters"] == 0


def test_dump_bundles(tmp_path, fixture_file):
    dump = tmp_path / "bundles.json"
    assert main(
        ["color", "--input", str(fixture_file), "--dump-bundles", str(dump)]
    ) == 0
    pairs = json.loads(dump.read_text())
    assert pairs and all(set(p) == {"i", "j"} for p in pairs)
    keys = [(p["i"], p["j"]) for p in pairs]
    assert keys == sorted(keys)


def test_render_subcommand(tmp_path, fixture_file):
    colors = tmp_path / "colors.json"
    svg = tmp_path / "direct.svg"
    svg2 = tmp_path / "rendered.svg"
    assert main(
        ["color", "--input", str(fixture_file),
         "--out-colors", str(colors), "--out-svg", str(svg)]
    ) == 0
    assert main(
        ["render", "--input", str(fixture_file), "--colors", str(colors),
         "--out", str(svg2)]
    ) == 0
    assert svg.read_bytes() == svg2.read_bytes()


def test_fans_only(tmp_path, fixture_file):
    svg = tmp_path / "fans.svg"
    assert main(
        ["color", "--input", str(fixture_file), "--fans-only", "--out-svg", str(svg)]
    ) == 0
    assert "circle" in svg.read_text()


def test_crossing_gen(tmp_path):
    path = tmp_path / "x.json"
    assert main(
        ["gen", "--style", "crossing", "--bundles", "3", "--edges", "4",
         "--out", str(path)]
    ) == 0
    doc = json.loads(path.read_text())
    assert len(doc["edges"]) == 12
