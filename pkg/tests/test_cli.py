"""End-to-end tests of the command line interface."""

import csv
import json

import pytest
from click.testing import CliRunner

from pairspec.cli import main
from pairspec.model import default_config_dict, save_config

SMALL_1D = ["--omega-min", "19000", "--omega-max", "21000", "--grid-step", "40"]


@pytest.fixture()
def runner():
    return CliRunner()


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def test_help_screens_render(runner):
    assert runner.invoke(main, ["--help"]).exit_code == 0
    for sub in ("scan1d", "scan2d", "residue-map", "distance-sweep", "oracle-check", "presets"):
        result = runner.invoke(main, [sub, "--help"])
        assert result.exit_code == 0, result.output


def test_scan1d_emits_a_complete_bundle(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["scan1d", "--out", str(out), *SMALL_1D])
    assert result.exit_code == 0, result.output
    for name in ("scan1d.csv", "scan1d.svg", "summary.json", "manifest.json"):
        assert (out / name).exists()
    manifest = read_json(out / "manifest.json")
    assert manifest["subcommand"] == "scan1d"
    assert manifest["config_path"] is None
    assert manifest["normalize"] is False
    assert manifest["artifacts"] == ["scan1d.csv", "scan1d.svg", "summary.json"]
    assert manifest["parameters"]["omega_min"] == 19000.0
    summary = read_json(out / "summary.json")
    assert summary["command"] == "scan1d"
    assert summary["extrema"]
    top = max(summary["extrema"], key=lambda feat: feat["prominence"])
    assert top["kind"] == "peak"
    assert top["omega"] == pytest.approx(20004.0, abs=25.0)


def test_scan1d_reruns_byte_identically(runner, tmp_path):
    out = tmp_path / "out"
    args = ["scan1d", "--out", str(out), *SMALL_1D]
    assert runner.invoke(main, args).exit_code == 0
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    assert runner.invoke(main, args).exit_code == 0
    second = {p.name: p.read_bytes() for p in out.iterdir()}
    assert first == second


def test_scan1d_normalization_caps_the_bundle_at_one(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["scan1d", "--out", str(out), "--normalize", *SMALL_1D])
    assert result.exit_code == 0, result.output
    summary = read_json(out / "summary.json")
    assert summary["normalization"] > 0.0
    rows = read_rows(out / "scan1d.csv")
    peak = max(
        abs(float(row[field])) for row in rows for field in ("s_i", "s_ii", "s_total")
    )
    assert peak == pytest.approx(1.0, rel=1e-12)


def test_scan1d_accepts_a_configuration_file(runner, tmp_path):
    config = tmp_path / "pair.json"
    data = default_config_dict()
    data["pulse"]["xi"] = 0.3
    config.write_text(json.dumps(data), encoding="utf-8")
    out = tmp_path / "out"
    result = runner.invoke(main, ["scan1d", "--config", str(config), "--out", str(out), *SMALL_1D])
    assert result.exit_code == 0, result.output
    assert read_json(out / "manifest.json")["config_path"] == str(config)


def test_missing_configuration_file_is_a_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["scan1d", "--config", str(tmp_path / "nope.json")])
    assert result.exit_code == 2


def test_malformed_configuration_is_reported(runner, tmp_path):
    config = tmp_path / "broken.json"
    config.write_text("{not json", encoding="utf-8")
    result = runner.invoke(main, ["scan1d", "--config", str(config), "--out", str(tmp_path / "o")])
    assert result.exit_code == 1
    assert "not valid JSON" in result.output


def test_scan2d_emits_map_and_ridges(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["scan2d", "--out", str(out), "--window", "tpa", "--grid-step", "100"]
    )
    assert result.exit_code == 0, result.output
    manifest = read_json(out / "manifest.json")
    assert manifest["artifacts"] == [
        "ridges.csv",
        "scan2d.csv",
        "scan2d.svg",
        "scan2d_sum.svg",
        "summary.json",
    ]
    summary = read_json(out / "summary.json")
    kinds = {r["kind"] for r in summary["ridges"]}
    assert "horizontal" in kinds


def test_residue_map_emits_the_difference_view(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["residue-map", "--out", str(out), "--window", "raman", "--grid-step", "100"]
    )
    assert result.exit_code == 0, result.output
    manifest = read_json(out / "manifest.json")
    assert "residue_map_difference.svg" in manifest["artifacts"]
    assert manifest["parameters"]["c2"] == 5e-9
    rows = read_rows(out / "residue_map.csv")
    assert set(rows[0]) == {"omega", "omega_p", "value"}


def test_residue_map_rejects_a_step_too_coarse_for_ridges(runner, tmp_path):
    result = runner.invoke(
        main, ["residue-map", "--out", str(tmp_path / "o"), "--grid-step", "300"]
    )
    assert result.exit_code == 1
    assert "Error" in result.output


def test_distance_sweep_reports_monotone_decay(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        ["distance-sweep", "--out", str(out), "--ratios", "0.01,0.1", "--grid-step", "40"],
    )
    assert result.exit_code == 0, result.output
    manifest = read_json(out / "manifest.json")
    assert "sweep_r0p01.csv" in manifest["artifacts"]
    assert "sweep_r0p1.csv" in manifest["artifacts"]
    assert "sweep_summary.csv" in manifest["artifacts"]
    summary = read_json(out / "summary.json")
    assert summary["strictly_decreasing"] is True
    assert summary["max_abs"][0] > summary["max_abs"][1]


def test_distance_sweep_rejects_unparseable_ratios(runner, tmp_path):
    result = runner.invoke(
        main, ["distance-sweep", "--out", str(tmp_path / "o"), "--ratios", "0.01,abc"]
    )
    assert result.exit_code == 1
    assert "cannot parse" in result.output


def test_distance_sweep_rejects_an_empty_ratio_list(runner, tmp_path):
    result = runner.invoke(
        main, ["distance-sweep", "--out", str(tmp_path / "o"), "--ratios", ","]
    )
    assert result.exit_code == 1
    assert "at least one" in result.output


def test_oracle_check_passes_at_the_default_tolerance(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["oracle-check", "--out", str(out), "--points", "4"])
    assert result.exit_code == 0, result.output
    summary = read_json(out / "summary.json")
    for pipeline in ("S_I", "S_II"):
        assert summary["results"][pipeline]["passed"] is True
        assert summary["results"][pipeline]["scaled_max_diff"] <= 1e-4
    assert (out / "oracle_s_i.csv").exists()
    assert (out / "oracle_s_ii.csv").exists()


def test_oracle_check_fails_loudly_when_forced(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        ["oracle-check", "--out", str(out), "--points", "2", "--tolerance", "1e-30"],
    )
    assert result.exit_code == 1
    assert "exceeded tolerance" in result.output


def test_preset_fig6_sweeps_the_reference_ratios(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["presets", "fig6", "--out", str(out), "--grid-step", "40"]
    )
    assert result.exit_code == 0, result.output
    manifest = read_json(out / "manifest.json")
    for tag in ("0p001", "0p005", "0p01", "0p1"):
        assert f"fig6_r{tag}.csv" in manifest["artifacts"]
    summary = read_json(out / "summary.json")
    assert summary["strictly_decreasing"] is True


def test_preset_phase_family_emits_four_panels(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["presets", "fig4-row1", "--out", str(out), "--grid-step", "40"]
    )
    assert result.exit_code == 0, result.output
    summary = read_json(out / "summary.json")
    tags = [panel["tag"] for panel in summary["panels"]]
    assert tags == ["dphi_0", "dphi_pi_over_2", "dphi_pi", "dphi_3pi_over_2"]
    for panel in summary["panels"]:
        assert (out / panel["csv"]).exists()


def test_preset_map_family_emits_seven_maps(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        ["presets", "fig5", "--out", str(out), "--grid-step", "100", "--jobs", "2"],
    )
    assert result.exit_code == 0, result.output
    summary = read_json(out / "summary.json")
    labels = {(m["window"], m["tag"]) for m in summary["maps"]}
    assert labels == {
        ("tpa", "ab"),
        ("tpa", "ab_mean_field_only"),
        ("tpa", "aa"),
        ("tpa", "bb"),
        ("raman", "ab"),
        ("raman", "aa"),
        ("raman", "bb"),
    }
    for entry in summary["maps"]:
        assert (out / entry["csv"]).exists()


def test_unknown_preset_is_rejected(runner, tmp_path):
    result = runner.invoke(main, ["presets", "fig7", "--out", str(tmp_path / "o")])
    assert result.exit_code == 2


def test_saved_configuration_round_trips_through_the_cli(runner, tmp_path):
    from pairspec.model import default_config

    config = tmp_path / "pair.json"
    save_config(config, *default_config())
    out = tmp_path / "out"
    result = runner.invoke(main, ["scan1d", "--config", str(config), "--out", str(out), *SMALL_1D])
    assert result.exit_code == 0, result.output
