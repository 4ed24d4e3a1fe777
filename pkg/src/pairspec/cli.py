"""Command-line front end: scans, maps, sweeps, oracle checks, presets.

Every subcommand writes its artifacts plus two JSON records: a manifest
(inputs, flags, artifact list) and a summary (detected extrema or ridges and
the defaults that filled gaps in the configuration).  Nothing in the output
depends on wall-clock time or worker count, so rerunning a command produces
byte-identical files.

CSV layouts: 1-D scans are (omega, s_i, s_ii, s_total); maps are long-format
(omega, omega_p, value); ridge reports are (kind, intercept, strength).
Numbers carry 17 significant digits with a '.' decimal separator.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import replace
from pathlib import Path

import click
import numpy as np

from .model import (
    ConfigurationError,
    GridError,
    PhaseProfile,
    PoleProximityError,
    default_config,
    load_config,
)
from .oracle import (
    QuadratureError,
    run_comparison,
    scaled_max_diff,
    write_comparison_csv,
)
from .render import svg_heatmap, svg_line_plot, write_csv, write_svg
from .scan import (
    ScanGrid,
    component_matrix,
    default_1d_axis,
    distance_sweep,
    find_extrema,
    ridge_detect,
    scan_1d,
    scan_2d,
    sheared_view,
    twin_system,
    value_matrix,
)
from .signal import INCLUDE_CHOICES

CONTEXT_SETTINGS = {"auto_envvar_prefix": "PAIRSPEC", "help_option_names": ["-h", "--help"]}

_INCLUDE_TO_MODE = {"both": "total", "S_I": "s_i_only", "S_II": "s_ii_only"}
_WINDOWS = ("tpa", "raman", "full")
_PRESET_NAMES = ("fig4-row1", "fig4-row2", "fig4-row3", "fig5", "fig6")
_DEFAULT_RATIOS = (0.001, 0.005, 0.01, 0.1)
_DEFAULT_C2 = 5e-9
_RIDGE_THRESHOLD = 0.1
_PROMINENCE_FRACTION = 0.01


def _fail(message: str) -> None:
    raise click.ClickException(message)


def _structured(f):
    """Map model/numerics errors onto structured nonzero-exit CLI errors."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except click.ClickException:
            raise
        except (ConfigurationError, GridError, PoleProximityError, QuadratureError, ValueError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _load(config_path):
    if config_path is None:
        return default_config()
    try:
        return load_config(config_path)
    except json.JSONDecodeError as exc:
        _fail(f"configuration is not valid JSON: {exc}")
    except OSError as exc:
        _fail(f"cannot read configuration: {exc}")


def _ensure_out(out_dir: str) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _gamma_min(system) -> float:
    return min(system.atom_a.gamma, system.atom_b.gamma)


def _write_json(path: Path, data: dict) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _emit_records(out, subcommand, config_path, out_dir, normalize, parameters, artifacts, summary):
    summary_payload = {"command": subcommand, **summary}
    _write_json(out / "summary.json", summary_payload)
    manifest = {
        "subcommand": subcommand,
        "config_path": config_path,
        "output_dir": out_dir,
        "normalize": bool(normalize),
        "parameters": parameters,
        "artifacts": sorted(artifacts) + ["summary.json"],
    }
    _write_json(out / "manifest.json", manifest)


def _joint_factor(normalize: bool, *arrays) -> float:
    if not normalize:
        return 1.0
    vmax = 0.0
    for arr in arrays:
        arr = np.asarray(arr, dtype=float)
        finite = arr[np.isfinite(arr)]
        if finite.size:
            vmax = max(vmax, float(np.max(np.abs(finite))))
    return vmax if vmax > 0.0 else 1.0


def _write_samples_csv(path: Path, samples, factor: float) -> None:
    write_csv(
        path,
        ["omega", "s_i", "s_ii", "s_total"],
        [(s.omega, s.s_i / factor, s.s_ii / factor, s.s_total / factor) for s in samples],
    )


def _write_matrix_csv(path: Path, grid: ScanGrid, values: np.ndarray, factor: float) -> None:
    rows = []
    for i, wp in enumerate(grid.omega_p_axis):
        for j, w in enumerate(grid.omega_axis):
            rows.append((w, wp, values[i, j] / factor))
    write_csv(path, ["omega", "omega_p", "value"], rows)


def _write_ridges_csv(path: Path, report, factor: float) -> None:
    write_csv(
        path,
        ["kind", "intercept", "strength"],
        [(r.kind, r.intercept, r.strength / factor) for r in report.ridges],
    )


def _ridge_summary(report) -> list[dict]:
    return [
        {"kind": r.kind, "intercept": r.intercept, "strength": r.strength} for r in report.ridges
    ]


def _axis_from_step(lo: float, hi: float, step: float) -> tuple[float, ...]:
    return tuple(np.arange(lo, hi + 0.5 * step, step))


def _window_grid(window: str, mode: str, c2: float, step: float) -> ScanGrid:
    bounds = {
        "tpa": (15000.0, 27000.0, 1000.0, 13000.0),
        "raman": (1000.0, 13000.0, 1000.0, 13000.0),
        "full": (1000.0, 27000.0, 1000.0, 13000.0),
    }
    lo_w, hi_w, lo_p, hi_p = bounds[window]
    return ScanGrid(
        omega_axis=_axis_from_step(lo_w, hi_w, step),
        omega_p_axis=_axis_from_step(lo_p, hi_p, step),
        mode=mode,
        c2=c2,
    )


def _sheared_svg(grid: ScanGrid, values: np.ndarray, coordinate: str, factor: float, title: str) -> str:
    key_axis, wp_axis, sheared = sheared_view(grid, values / factor, coordinate)
    label = "omega+omega_p (cm^-1)" if coordinate == "sum" else "omega-omega_p (cm^-1)"
    return svg_heatmap(
        wp_axis,
        key_axis,
        sheared.T,
        xlabel="omega_p (cm^-1)",
        ylabel=label,
        title=title,
    )


@click.group(context_settings=CONTEXT_SETTINGS)
def main():
    """Frequency-dispersed transmission of a shaped pulse through a coupled
    pair of two-level emitters."""


def _common(f):
    opts = [
        click.option(
            "--config",
            "config_path",
            type=click.Path(exists=True, dir_okay=False),
            default=None,
            help="JSON configuration file; omitted means the built-in reference pair.",
        ),
        click.option(
            "--out",
            "out_dir",
            type=click.Path(file_okay=False),
            default="out",
            show_default=True,
            help="Directory receiving all artifacts.",
        ),
        click.option(
            "--normalize",
            is_flag=True,
            default=False,
            help="Rescale exported values so the bundle peaks at magnitude 1.",
        ),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


# ---------------------------------------------------------------------------
# scan1d


@main.command("scan1d")
@_common
@click.option(
    "--include",
    type=click.Choice(INCLUDE_CHOICES),
    default="both",
    show_default=True,
    help="Signal part used for feature detection; the CSV carries all parts.",
)
@click.option("--omega-min", type=float, default=1000.0, show_default=True)
@click.option("--omega-max", type=float, default=27000.0, show_default=True)
@click.option("--grid-step", type=float, default=5.0, show_default=True, help="Step in cm^-1.")
@_structured
def scan1d_cmd(config_path, out_dir, normalize, include, omega_min, omega_max, grid_step):
    """Sweep the detection wavenumber at the configured carrier."""
    system, pulse = _load(config_path)
    out = _ensure_out(out_dir)
    axis = default_1d_axis(omega_min, omega_max, grid_step)
    grid = ScanGrid(axis, (pulse.omega_p,), mode=_INCLUDE_TO_MODE[include])
    samples = scan_1d(grid, system, pulse)
    field = grid.value_field()
    factor = _joint_factor(normalize, [getattr(s, f) for s in samples for f in ("s_i", "s_ii", "s_total")])
    _write_samples_csv(out / "scan1d.csv", samples, factor)
    x = np.asarray(axis)
    series = {
        name: np.array([getattr(s, attr) for s in samples]) / factor
        for name, attr in (("S_I", "s_i"), ("S_II", "s_ii"), ("S_total", "s_total"))
    }
    write_svg(out / "scan1d.svg", svg_line_plot(x, series, title="dispersed transmission"))
    extrema = find_extrema(samples, None, _gamma_min(system), field)
    _emit_records(
        out,
        "scan1d",
        config_path,
        out_dir,
        normalize,
        {
            "include": include,
            "omega_min": omega_min,
            "omega_max": omega_max,
            "grid_step": grid_step,
        },
        ["scan1d.csv", "scan1d.svg"],
        {
            "defaults": {
                "grid_step": grid_step,
                "prominence_fraction": _PROMINENCE_FRACTION,
                "omega_p": pulse.omega_p,
            },
            "normalization": factor,
            "extrema": extrema,
        },
    )


# ---------------------------------------------------------------------------
# scan2d and residue-map


def _map_command(out, normalize, system, pulse, grid, jobs, window, stem):
    matrix = scan_2d(grid, system, pulse, jobs=jobs)
    values = value_matrix(grid, matrix)
    factor = _joint_factor(normalize, values)
    _write_matrix_csv(out / f"{stem}.csv", grid, values, factor)
    write_svg(
        out / f"{stem}.svg",
        svg_heatmap(
            np.asarray(grid.omega_axis),
            np.asarray(grid.omega_p_axis),
            values / factor,
            title=stem.replace("_", " "),
        ),
    )
    artifacts = [f"{stem}.csv", f"{stem}.svg"]
    if window in ("tpa", "full"):
        write_svg(out / f"{stem}_sum.svg", _sheared_svg(grid, values, "sum", factor, f"{stem} sum view"))
        artifacts.append(f"{stem}_sum.svg")
    if window in ("raman", "full"):
        write_svg(
            out / f"{stem}_difference.svg",
            _sheared_svg(grid, values, "difference", factor, f"{stem} difference view"),
        )
        artifacts.append(f"{stem}_difference.svg")
    report = ridge_detect(grid, values, _RIDGE_THRESHOLD, _gamma_min(system))
    _write_ridges_csv(out / "ridges.csv", report, factor)
    artifacts.append("ridges.csv")
    return values, factor, report, artifacts


@main.command("scan2d")
@_common
@click.option("--window", type=click.Choice(_WINDOWS), default="tpa", show_default=True)
@click.option(
    "--mode",
    type=click.Choice(("total", "s_i_only", "s_ii_only")),
    default="total",
    show_default=True,
)
@click.option("--grid-step", type=float, default=40.0, show_default=True, help="Step in cm^-1, both axes.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes across rows.")
@_structured
def scan2d_cmd(config_path, out_dir, normalize, window, mode, grid_step, jobs):
    """Map the signal over the detection/carrier plane."""
    system, pulse = _load(config_path)
    out = _ensure_out(out_dir)
    grid = _window_grid(window, mode, 0.0, grid_step)
    _, factor, report, artifacts = _map_command(out, normalize, system, pulse, grid, jobs, window, "scan2d")
    _emit_records(
        out,
        "scan2d",
        config_path,
        out_dir,
        normalize,
        {"window": window, "mode": mode, "grid_step": grid_step, "jobs": jobs},
        artifacts,
        {
            "defaults": {"grid_step": grid_step, "ridge_threshold": _RIDGE_THRESHOLD},
            "normalization": factor,
            "ridges": _ridge_summary(report),
        },
    )


@main.command("residue-map")
@_common
@click.option("--window", type=click.Choice(_WINDOWS), default="tpa", show_default=True)
@click.option("--c2", type=float, default=_DEFAULT_C2, show_default=True, help="Chirp magnitude in (cm^-1)^-2.")
@click.option("--grid-step", type=float, default=40.0, show_default=True, help="Step in cm^-1, both axes.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes across rows.")
@_structured
def residue_map_cmd(config_path, out_dir, normalize, window, c2, grid_step, jobs):
    """Map the chirp-residue signal (opposite-chirp difference)."""
    system, pulse = _load(config_path)
    out = _ensure_out(out_dir)
    grid = _window_grid(window, "residue", c2, grid_step)
    _, factor, report, artifacts = _map_command(out, normalize, system, pulse, grid, jobs, window, "residue_map")
    _emit_records(
        out,
        "residue-map",
        config_path,
        out_dir,
        normalize,
        {"window": window, "c2": c2, "grid_step": grid_step, "jobs": jobs},
        artifacts,
        {
            "defaults": {"grid_step": grid_step, "ridge_threshold": _RIDGE_THRESHOLD, "c2": c2},
            "normalization": factor,
            "ridges": _ridge_summary(report),
        },
    )


# ---------------------------------------------------------------------------
# distance-sweep


def _ratio_tag(ratio: float) -> str:
    return ("%g" % ratio).replace(".", "p").replace("-", "m")


@main.command("distance-sweep")
@_common
@click.option(
    "--ratios",
    default=",".join("%g" % r for r in _DEFAULT_RATIOS),
    show_default=True,
    help="Comma-separated separations as fractions of the reference wavelength.",
)
@click.option("--include", type=click.Choice(INCLUDE_CHOICES), default="S_II", show_default=True)
@click.option(
    "--omega-min",
    type=float,
    default=15000.0,
    show_default=True,
    help="Window holding the collective two-photon lines; near the "
    "single-photon lines the vacuum part is not monotone in separation.",
)
@click.option("--omega-max", type=float, default=27000.0, show_default=True)
@click.option("--grid-step", type=float, default=5.0, show_default=True, help="Step in cm^-1.")
@_structured
def distance_sweep_cmd(
    config_path, out_dir, normalize, ratios, include, omega_min, omega_max, grid_step
):
    """Repeat the 1-D scan while stepping the emitter separation."""
    system, pulse = _load(config_path)
    out = _ensure_out(out_dir)
    try:
        ratio_values = tuple(float(tok) for tok in ratios.split(",") if tok.strip())
    except ValueError:
        _fail(f"cannot parse --ratios {ratios!r}; expected comma-separated numbers")
    if not ratio_values:
        _fail("--ratios must name at least one separation")
    grid = ScanGrid(
        default_1d_axis(omega_min, omega_max, grid_step),
        (pulse.omega_p,),
        mode=_INCLUDE_TO_MODE[include],
    )
    results = distance_sweep(system, pulse, ratio_values, grid)
    field = grid.value_field()
    factor = _joint_factor(
        normalize, *[[getattr(s, field) for s in entry["samples"]] for entry in results]
    )
    artifacts = []
    series = {}
    for entry in results:
        tag = _ratio_tag(entry["ratio"])
        name = f"sweep_r{tag}.csv"
        _write_samples_csv(out / name, entry["samples"], factor)
        artifacts.append(name)
        series[f"r/lambda={entry['ratio']:g}"] = (
            np.array([getattr(s, field) for s in entry["samples"]]) / factor
        )
    write_csv(
        out / "sweep_summary.csv",
        ["ratio", "r_cm", "max_abs"],
        [(e["ratio"], e["r_cm"], e["max_abs"] / factor) for e in results],
    )
    artifacts.append("sweep_summary.csv")
    write_svg(
        out / "distance_sweep.svg",
        svg_line_plot(np.asarray(grid.omega_axis), series, title="separation sweep"),
    )
    artifacts.append("distance_sweep.svg")
    maxima = [e["max_abs"] for e in results]
    _emit_records(
        out,
        "distance-sweep",
        config_path,
        out_dir,
        normalize,
        {
            "ratios": list(ratio_values),
            "include": include,
            "omega_min": omega_min,
            "omega_max": omega_max,
            "grid_step": grid_step,
        },
        artifacts,
        {
            "defaults": {"grid_step": grid_step},
            "normalization": factor,
            "max_abs": maxima,
            "strictly_decreasing": bool(all(a > b for a, b in zip(maxima, maxima[1:]))),
        },
    )


# ---------------------------------------------------------------------------
# oracle-check


@main.command("oracle-check")
@_common
@click.option("--points", type=int, default=50, show_default=True, help="Comparison points per pipeline.")
@click.option("--tolerance", type=float, default=1e-4, show_default=True, help="Scaled max-difference bound.")
@click.option("--include", type=click.Choice(INCLUDE_CHOICES), default="both", show_default=True)
@_structured
def oracle_check_cmd(config_path, out_dir, normalize, points, tolerance, include):
    """Compare closed-form signals against brute-force contour quadrature."""
    system, pulse = _load(config_path)
    out = _ensure_out(out_dir)
    pipelines = ("S_I", "S_II") if include == "both" else (include,)
    artifacts = []
    results = {}
    for pipeline in pipelines:
        rows = run_comparison(system, pulse, count=points, include=pipeline)
        name = f"oracle_{pipeline.lower()}.csv"
        write_comparison_csv(out / name, rows)
        artifacts.append(name)
        diff = scaled_max_diff(rows)
        results[pipeline] = {"scaled_max_diff": diff, "passed": bool(diff <= tolerance)}
    _emit_records(
        out,
        "oracle-check",
        config_path,
        out_dir,
        normalize,
        {"points": points, "tolerance": tolerance, "include": include},
        artifacts,
        {"tolerance": tolerance, "results": results},
    )
    failed = [p for p, r in results.items() if not r["passed"]]
    if failed:
        detail = ", ".join(f"{p}: {results[p]['scaled_max_diff']:.3e}" for p in failed)
        _fail(f"quadrature check exceeded tolerance {tolerance:g} ({detail})")


# ---------------------------------------------------------------------------
# presets


def _preset_fig4_row(system, pulse, out, normalize, grid_step, variants, stem):
    """Shared shape of the three 1-D preset families."""
    step = grid_step if grid_step is not None else 5.0
    axis = default_1d_axis(step=step)
    grid = ScanGrid(axis, (pulse.omega_p,), mode="total")
    runs = []
    for tag, pulse_variant in variants:
        samples = scan_1d(grid, system, pulse_variant)
        runs.append((tag, samples))
    factor = _joint_factor(
        normalize, *[[s.s_total for s in samples] for _, samples in runs]
    )
    artifacts = []
    series = {}
    panels = []
    gamma = _gamma_min(system)
    for tag, samples in runs:
        name = f"{stem}_{tag}.csv"
        _write_samples_csv(out / name, samples, factor)
        artifacts.append(name)
        series[tag] = np.array([s.s_total for s in samples]) / factor
        panels.append(
            {"tag": tag, "csv": name, "extrema": find_extrema(samples, None, gamma, "s_total")}
        )
    svg_name = f"{stem}.svg"
    write_svg(out / svg_name, svg_line_plot(np.asarray(axis), series, title=stem.replace("_", " ")))
    artifacts.append(svg_name)
    summary = {
        "defaults": {"grid_step": step, "prominence_fraction": _PROMINENCE_FRACTION},
        "normalization": factor,
        "panels": panels,
    }
    return {"grid_step": step}, artifacts, summary


def _preset_row1(system, pulse, out, normalize, grid_step, jobs):
    del jobs
    ref = pulse.phase.reference
    variants = []
    for tag, num, den in (("dphi_0", 0, 1), ("dphi_pi_over_2", 1, 2), ("dphi_pi", 1, 1), ("dphi_3pi_over_2", 3, 2)):
        dphi = math.pi * num / den
        variants.append((tag, replace(pulse, phase=PhaseProfile.constant(pulse.xi + dphi, ref))))
    return _preset_fig4_row(system, pulse, out, normalize, grid_step, variants, "fig4_row1")


def _preset_row2(system, pulse, out, normalize, grid_step, jobs):
    del jobs
    ref = pulse.phase.reference
    variants = [
        (f"delay_{t:g}fs", replace(pulse, phase=PhaseProfile.delay(t, ref)))
        for t in (17.0, 33.0, 330.0, 3300.0)
    ]
    return _preset_fig4_row(system, pulse, out, normalize, grid_step, variants, "fig4_row2")


def _preset_row3(system, pulse, out, normalize, grid_step, jobs):
    # the source material quotes the chirp with inconsistent sign, so both
    # signs are emitted side by side
    del jobs
    ref = pulse.phase.reference
    variants = [
        ("chirp_plus5e-08", replace(pulse, phase=PhaseProfile.chirp(+5e-8, ref))),
        ("chirp_minus5e-08", replace(pulse, phase=PhaseProfile.chirp(-5e-8, ref))),
    ]
    return _preset_fig4_row(system, pulse, out, normalize, grid_step, variants, "fig4_row3")


def _preset_fig5(system, pulse, out, normalize, grid_step, jobs):
    step = grid_step if grid_step is not None else 40.0
    systems = {"ab": system, "aa": twin_system(system, "aa"), "bb": twin_system(system, "bb")}
    artifacts = []
    maps_summary = []
    gamma = _gamma_min(system)

    def emit(tag, window, values, grid, coordinate):
        factor = _joint_factor(normalize, values)
        csv_name = f"fig5_{window}_{tag}.csv"
        svg_name = f"fig5_{window}_{tag}.svg"
        _write_matrix_csv(out / csv_name, grid, values, factor)
        write_svg(out / svg_name, _sheared_svg(grid, values, coordinate, factor, f"{window} {tag}"))
        report = ridge_detect(grid, values, _RIDGE_THRESHOLD, gamma)
        artifacts.extend([csv_name, svg_name])
        maps_summary.append(
            {
                "tag": tag,
                "window": window,
                "csv": csv_name,
                "normalization": factor,
                "ridges": _ridge_summary(report),
            }
        )

    for window, coordinate in (("tpa", "sum"), ("raman", "difference")):
        for tag, sysv in systems.items():
            grid = _window_grid(window, "residue", _DEFAULT_C2, step)
            matrix = scan_2d(grid, sysv, pulse, jobs=jobs)
            emit(tag, window, value_matrix(grid, matrix), grid, coordinate)
            if window == "tpa" and tag == "ab":
                emit("ab_mean_field_only", window, component_matrix(matrix, "s_i"), grid, coordinate)
    summary = {
        "defaults": {"grid_step": step, "c2": _DEFAULT_C2, "ridge_threshold": _RIDGE_THRESHOLD},
        "maps": maps_summary,
    }
    return {"grid_step": step, "c2": _DEFAULT_C2}, artifacts, summary


def _preset_fig6(system, pulse, out, normalize, grid_step, jobs):
    del jobs
    step = grid_step if grid_step is not None else 5.0
    grid = ScanGrid(
        default_1d_axis(15000.0, 27000.0, step), (pulse.omega_p,), mode="s_ii_only"
    )
    results = distance_sweep(system, pulse, _DEFAULT_RATIOS, grid)
    factor = _joint_factor(normalize, *[[s.s_ii for s in e["samples"]] for e in results])
    artifacts = []
    series = {}
    for entry in results:
        tag = _ratio_tag(entry["ratio"])
        name = f"fig6_r{tag}.csv"
        _write_samples_csv(out / name, entry["samples"], factor)
        artifacts.append(name)
        series[f"r/lambda={entry['ratio']:g}"] = (
            np.array([s.s_ii for s in entry["samples"]]) / factor
        )
    write_svg(out / "fig6.svg", svg_line_plot(np.asarray(grid.omega_axis), series, title="fig6"))
    artifacts.append("fig6.svg")
    maxima = [e["max_abs"] for e in results]
    summary = {
        "defaults": {"grid_step": step, "ratios": list(_DEFAULT_RATIOS)},
        "normalization": factor,
        "max_abs": maxima,
        "strictly_decreasing": bool(all(a > b for a, b in zip(maxima, maxima[1:]))),
    }
    return {"grid_step": step, "ratios": list(_DEFAULT_RATIOS)}, artifacts, summary


_PRESET_RUNNERS = {
    "fig4-row1": _preset_row1,
    "fig4-row2": _preset_row2,
    "fig4-row3": _preset_row3,
    "fig5": _preset_fig5,
    "fig6": _preset_fig6,
}


@main.command("presets")
@click.argument("name", type=click.Choice(_PRESET_NAMES))
@_common
@click.option("--grid-step", type=float, default=None, help="Override the preset's native step (cm^-1).")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes for map presets.")
@_structured
def presets_cmd(name, config_path, out_dir, normalize, grid_step, jobs):
    """Emit a canned experiment family as a CSV/SVG bundle.

    fig4-row1: constant phase offsets 0, pi/2, pi, 3pi/2.  fig4-row2: pulse
    delays 17, 33, 330, 3300 fs.  fig4-row3: chirps of both signs at 5e-8.
    fig5: chirp-residue maps for the hetero pair, both homo pairs, and the
    mean-field-only variant.  fig6: separation sweep of the vacuum part over
    the collective two-photon window.
    """
    system, pulse = _load(config_path)
    out = _ensure_out(out_dir)
    parameters, artifacts, summary = _PRESET_RUNNERS[name](
        system, pulse, out, normalize, grid_step, jobs
    )
    parameters = {"preset": name, "jobs": jobs, **parameters}
    _emit_records(out, "presets", config_path, out_dir, normalize, parameters, artifacts, summary)


if __name__ == "__main__":
    main()
