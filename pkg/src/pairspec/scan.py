"""Grid evaluation, extremum detection, and ridge classification.

1-D scans sweep the detection wavenumber at a fixed narrowband carrier; 2-D
scans sweep both.  Ridge classification integrates |S| along four line
families of the (omega, omega_p) plane: constant omega + omega_p
("horizontal", the two-photon lines), constant omega ("vertical"), constant
omega_p ("diagonal"), and constant omega - omega_p ("antidiagonal", the
difference/Raman lines).

Evaluation is vectorized along the omega axis; 2-D scans parallelize over
rows with an index-ordered reduction, so the output is independent of the
worker count.  A propagator pole landing exactly on a grid node flags that
sample with NaN instead of aborting the scan.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.ndimage import gaussian_filter1d
from scipy.optimize import least_squares
from scipy.signal import find_peaks, hilbert

from .coefficients import CoefficientOptions
from .model import (
    GridError,
    PairSystem,
    PoleProximityError,
    PulseConfig,
    SignalSample,
)
from .signal import evaluate_parts, residue_parts

MODES = ("total", "s_i_only", "s_ii_only", "residue")

# which SignalSample field each mode ranks/detects on
_MODE_FIELD = {
    "total": "s_total",
    "s_i_only": "s_i",
    "s_ii_only": "s_ii",
    "residue": "s_total",
}


@dataclass(frozen=True)
class ScanGrid:
    """Evaluation grid; 1-D when the narrowband axis has one entry.

    In residue mode every sample holds the difference of the two opposite-
    chirp measurements (componentwise), with chirp magnitude ``c2``.
    """

    omega_axis: tuple[float, ...]
    omega_p_axis: tuple[float, ...]
    mode: str = "total"
    c2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "omega_axis", tuple(float(w) for w in self.omega_axis))
        object.__setattr__(self, "omega_p_axis", tuple(float(w) for w in self.omega_p_axis))
        if self.mode not in MODES:
            raise GridError(f"mode must be one of {MODES}, got {self.mode!r}")
        for name, axis in (("omega", self.omega_axis), ("omega_p", self.omega_p_axis)):
            if not axis:
                raise GridError(f"{name} axis is empty")
            diffs = np.diff(axis)
            if len(axis) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
                raise GridError(f"{name} axis must be strictly monotonic")

    @property
    def is_1d(self) -> bool:
        return len(self.omega_p_axis) == 1

    def value_field(self) -> str:
        return _MODE_FIELD[self.mode]


def uniform_step(axis, name: str = "axis") -> float:
    """Spacing of a uniform ascending axis; GridError otherwise."""
    arr = np.asarray(axis, dtype=float)
    if arr.size < 2:
        raise GridError(f"{name} needs at least two points")
    diffs = np.diff(arr)
    step = float(diffs[0])
    if step <= 0:
        raise GridError(f"{name} must be ascending for detection")
    if np.max(np.abs(diffs - step)) > 1e-6 * abs(step):
        raise GridError(f"{name} must be uniform for detection")
    return step


# ---------------------------------------------------------------------------
# evaluation


def _row_samples(
    system: PairSystem,
    pulse: PulseConfig,
    grid: ScanGrid,
    omega_p: float,
    options: CoefficientOptions | None,
) -> list[SignalSample]:
    omegas = np.asarray(grid.omega_axis, dtype=float)
    pulse_row = replace(pulse, omega_p=float(omega_p))

    def parts(w):
        if grid.mode == "residue":
            return residue_parts(system, pulse_row, w, grid.c2, options)
        return evaluate_parts(system, pulse_row, w, options)

    try:
        s_i, s_ii = parts(omegas)
    except PoleProximityError:
        # a node sits on a pole: evaluate pointwise, flag offenders with NaN
        s_i = np.empty(omegas.size)
        s_ii = np.empty(omegas.size)
        for idx, w in enumerate(omegas):
            try:
                a, b = parts(np.asarray([w]))
                s_i[idx], s_ii[idx] = float(a[0]), float(b[0])
            except PoleProximityError:
                s_i[idx] = np.nan
                s_ii[idx] = np.nan
    return [
        SignalSample(omega=float(w), s_i=float(a), s_ii=float(b), s_total=float(a + b))
        for w, a, b in zip(omegas, s_i, s_ii)
    ]


def scan_1d(
    grid: ScanGrid,
    system: PairSystem,
    pulse: PulseConfig,
    options: CoefficientOptions | None = None,
) -> list[SignalSample]:
    if not grid.is_1d:
        raise GridError("scan_1d requires a single-entry omega_p axis")
    return _row_samples(system, pulse, grid, grid.omega_p_axis[0], options)


def _row_worker(args) -> list[SignalSample]:
    system, pulse, grid, omega_p, options = args
    return _row_samples(system, pulse, grid, omega_p, options)


def scan_2d(
    grid: ScanGrid,
    system: PairSystem,
    pulse: PulseConfig,
    options: CoefficientOptions | None = None,
    jobs: int = 1,
) -> list[list[SignalSample]]:
    """Row-major matrix: rows follow omega_p_axis, columns omega_axis.

    Identical to stacking scan_1d per row; parallel rows reduce in index
    order so the result does not depend on the worker count.
    """
    tasks = [(system, pulse, grid, wp, options) for wp in grid.omega_p_axis]
    if jobs <= 1 or len(tasks) <= 1:
        return [_row_worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row_worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def value_matrix(grid: ScanGrid, matrix: list[list[SignalSample]]) -> np.ndarray:
    field = grid.value_field()
    return np.array([[getattr(s, field) for s in row] for row in matrix], dtype=float)


# ---------------------------------------------------------------------------
# extremum detection


def _as_xy(samples, value_field: str) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(samples, tuple) and len(samples) == 2:
        x = np.asarray(samples[0], dtype=float)
        y = np.asarray(samples[1], dtype=float)
        return x, y
    x = np.asarray([s.omega for s in samples], dtype=float)
    y = np.asarray([getattr(s, value_field) for s in samples], dtype=float)
    return x, y


def _refine_center(
    x: np.ndarray, y: np.ndarray, w_lo: float, w_hi: float, seed: float
) -> float:
    """Resonance center of a phase-rotated line.

    Fits a complex-amplitude Lorentzian plus a linear background over
    [w_lo, w_hi].  A dispersive (or mixed-phase) line places its extrema and
    its zero crossing off the pole by a phase-dependent fraction of the
    linewidth, so neither is a faithful position estimate; the fitted pole
    location is.  Returns ``seed`` when the fit does not converge inside the
    window.
    """
    mask = (x >= w_lo) & (x <= w_hi) & np.isfinite(y)
    xs, ys = x[mask], y[mask]
    if xs.size < 8:
        return seed
    xc = float(xs.mean())
    scale = float(np.max(np.abs(ys)))
    if scale == 0.0:
        return seed
    g0 = 0.25 * (w_hi - w_lo)

    def resid(p):
        a, b, w0, g, d0, d1 = p
        lor = 1j / (xs - w0 + 1j * g)
        return (np.real((a + 1j * b) * lor) + d0 + d1 * (xs - xc) - ys) / scale

    try:
        sol = least_squares(
            resid,
            [0.0, scale * g0, seed, g0, 0.0, 0.0],
            bounds=(
                [-np.inf, -np.inf, w_lo, 0.05 * g0, -np.inf, -np.inf],
                [np.inf, np.inf, w_hi, w_hi - w_lo, np.inf, np.inf],
            ),
        )
    except ValueError:
        return seed
    if not sol.success:
        return seed
    return float(sol.x[2])


def _envelope_features(
    x: np.ndarray,
    y: np.ndarray,
    threshold: float | None,
    gamma_min: float,
) -> list[dict]:
    """Features of the analytic-signal envelope |y + i H[y]|.

    A resonance of any line phase (absorptive, dispersive, or mixed) shows
    up as one symmetric envelope bump centered on its pole, so thresholding
    the envelope sees the whole feature where the signed series splits it
    into weak lobes.  FFT wrap-around of the Hilbert transform only rings
    near the grid edges; no detrending, since the transform of a global ramp
    would smear structure across the whole window.
    """
    if x.size < 4:
        return []
    env = np.abs(hilbert(y))
    emax = float(env.max())
    if emax == 0.0:
        return []
    prominence = float(threshold) if threshold is not None else 0.01 * emax
    idx, props = find_peaks(env, prominence=prominence)
    out = []
    for i, prom in zip(idx, props["prominences"]):
        phase_cos = float(y[i] / env[i]) if env[i] > 0 else 1.0
        out.append(
            {
                "omega": float(x[i]),
                "phase_cos": phase_cos,
                "value": float(y[i]),
                "prominence": float(prom),
                "_i": int(i),
            }
        )
    return out


def find_extrema(
    samples,
    min_prominence: float | None = None,
    gamma_min: float | None = None,
    value_field: str = "s_total",
) -> list[dict]:
    """Prominence-filtered local extrema with peak/dip/asymmetric taxonomy.

    ``samples`` is a list of SignalSample or an (omega, value) pair of
    arrays.  Detection runs in two passes.  The signed pass takes local
    extrema of the series; an adjacent peak/dip pair of comparable size that
    brackets a sign change within three collective linewidths (pair features
    have width gamma_a + gamma_b, at least 2*gamma_min) merges into one
    asymmetric feature at the fitted resonance center.  The envelope pass
    scans the analytic-signal magnitude, which catches phase-rotated lines
    whose individual lobes fall below the signed prominence cut; an envelope
    bump with no symmetric counterpart nearby is reported as asymmetric at
    its fitted center.  Both passes need ``gamma_min``; without it only the
    signed pass runs, unmerged.  Passing ``gamma_min`` also enforces the
    step <= gamma_min/4 sampling precondition.
    """
    x, y = _as_xy(samples, value_field)
    step = uniform_step(x, "omega axis")
    if gamma_min is not None and step > gamma_min / 4.0 + 1e-12:
        raise GridError(
            f"grid step {step:g} too coarse for feature detection (need <= {gamma_min / 4.0:g})"
        )
    finite = np.isfinite(y)
    if not np.all(finite):
        y = np.where(finite, y, 0.0)
    vmax = float(np.max(np.abs(y))) if y.size else 0.0
    if vmax == 0.0:
        return []
    prominence = float(min_prominence) if min_prominence is not None else 0.01 * vmax

    found: list[dict] = []
    for series, kind in ((y, "peak"), (-y, "dip")):
        idx, props = find_peaks(series, prominence=prominence)
        for i, prom in zip(idx, props["prominences"]):
            found.append(
                {"omega": float(x[i]), "kind": kind, "value": float(y[i]), "prominence": float(prom), "_i": int(i)}
            )
    found.sort(key=lambda f: f["_i"])

    if gamma_min is not None:
        merged: list[dict] = []
        skip = False
        for this, after in zip(found, found[1:] + [None]):
            if skip:
                skip = False
                continue
            balanced = (
                after is not None
                and max(abs(this["value"]), abs(after["value"]))
                <= 10.0 * min(abs(this["value"]), abs(after["value"]))
            )
            if (
                after is not None
                and this["kind"] != after["kind"]
                and after["omega"] - this["omega"] <= 6.0 * gamma_min
                and this["value"] * after["value"] < 0.0
                and balanced
            ):
                i0, i1 = this["_i"], after["_i"]
                crossings = np.nonzero(np.diff(np.signbit(y[i0 : i1 + 1])))[0]
                if crossings.size:
                    k = i0 + int(crossings[0])
                    frac = y[k] / (y[k] - y[k + 1])
                    crossing = float(x[k] + frac * step)
                else:
                    crossing = 0.5 * (this["omega"] + after["omega"])
                pad = 0.3 * (x[i1] - x[i0])
                merged.append(
                    {
                        "omega": _refine_center(x, y, x[i0] - pad, x[i1] + pad, crossing),
                        "kind": "asymmetric",
                        "value": float(max(abs(this["value"]), abs(after["value"]))),
                        "prominence": float(max(this["prominence"], after["prominence"])),
                    }
                )
                skip = True
            else:
                merged.append(this)
        found = merged

        # Envelope pass: a phase-rotated line whose lobes individually miss
        # the signed prominence cut still shows one full-height envelope
        # bump.  Keep the signed result where it already tells the same
        # story (a fitted asymmetric feature, or a genuinely symmetric
        # extremum); otherwise the envelope wins and displaces lone lobes.
        radius = 3.0 * gamma_min
        for bump in _envelope_features(x, y, min_prominence, gamma_min):
            near = [f for f in found if abs(f["omega"] - bump["omega"]) <= radius]
            symmetric = abs(bump["phase_cos"]) >= np.cos(np.pi / 4.0)
            if near and (symmetric or any(f["kind"] == "asymmetric" for f in near)):
                continue
            if symmetric:
                if near:
                    continue
                kind = "peak" if bump["value"] >= 0.0 else "dip"
                found.append(
                    {
                        "omega": bump["omega"],
                        "kind": kind,
                        "value": bump["value"],
                        "prominence": bump["prominence"],
                    }
                )
                continue
            for f in near:
                found.remove(f)
            core = (x >= bump["omega"] - radius) & (x <= bump["omega"] + radius)
            lobes = y[core & np.isfinite(y)]
            value = float(lobes[np.argmax(np.abs(lobes))]) if lobes.size else bump["value"]
            found.append(
                {
                    "omega": _refine_center(
                        x, y, bump["omega"] - radius, bump["omega"] + radius, bump["omega"]
                    ),
                    "kind": "asymmetric",
                    "value": value,
                    "prominence": bump["prominence"],
                }
            )
        found.sort(key=lambda f: f["omega"])

    for f in found:
        f.pop("_i", None)
    return found


# ---------------------------------------------------------------------------
# ridge classification


RIDGE_KINDS = ("horizontal", "vertical", "diagonal", "antidiagonal")


@dataclass(frozen=True)
class Ridge:
    kind: str  # horizontal: const omega+omega_p; vertical: const omega;
    # diagonal: const omega_p; antidiagonal: const omega-omega_p
    intercept: float
    strength: float


@dataclass(frozen=True)
class RidgeReport:
    ridges: tuple[Ridge, ...]
    threshold: float

    def of_kind(self, kind: str) -> list[Ridge]:
        return [r for r in self.ridges if r.kind == kind]

    def intercepts(self, kind: str) -> list[float]:
        return [r.intercept for r in self.of_kind(kind)]


def _binned_profile(
    keys: np.ndarray, weights: np.ndarray, step: float
) -> tuple[np.ndarray, np.ndarray]:
    """Median weight per key bin of width equal to the grid step.

    The median, unlike the mean, ignores the one-or-two hot cells that a
    transversal line family leaves in each bin, so only structure
    concentrated along the binned coordinate survives.  Bins touched by too
    few grid lines (extreme corners of the sheared coordinate) are dropped:
    they hold a handful of cells and would otherwise mimic ridges.
    """
    kmin = float(np.min(keys))
    idx = np.round((keys - kmin) / step).astype(int).ravel()
    vals = weights.ravel()
    count = np.bincount(idx)
    order = np.argsort(idx, kind="stable")
    sorted_vals = vals[order]
    bounds = np.searchsorted(idx[order], np.arange(count.size + 1))
    medians = np.array(
        [
            np.median(sorted_vals[bounds[k] : bounds[k + 1]]) if count[k] else 0.0
            for k in range(count.size)
        ]
    )
    keep = count >= max(1, int(0.25 * count.max()))
    centers = kmin + np.arange(count.size) * step
    return centers[keep], medians[keep]


def _parabolic_vertex(centers: np.ndarray, profile: np.ndarray, j: int, step: float) -> float:
    """Sub-bin extremum position through a three-point parabola."""
    c = float(centers[j])
    if 0 < j < len(profile) - 1:
        denom = profile[j - 1] - 2.0 * profile[j] + profile[j + 1]
        if denom != 0.0:
            offset = 0.5 * step * (profile[j - 1] - profile[j + 1]) / denom
            if abs(offset) <= step:
                c += offset
    return c


def _line_intercept(
    centers: np.ndarray, p_abs: np.ndarray, i: int, radius: float, step: float
) -> float:
    """Intercept of a detected line from its |S| cross-section profile.

    A line whose signal keeps one sign across it peaks in |S| on the line; a
    line whose signal flips sign leaves two humps with a notch on the line.
    The notch, when present and genuine (both humps comparable to the local
    top, valley well below them), is the faithful position; otherwise the
    tallest hump is.
    """
    window = np.flatnonzero(np.abs(centers - centers[i]) <= radius)
    lo, hi = int(window[0]), int(window[-1])
    seg = p_abs[lo : hi + 1]
    if seg.size < 3:
        return float(centers[i])
    cwin = centers[lo : hi + 1]
    interior = np.arange(1, seg.size - 1)
    is_max = (seg[interior] >= seg[interior - 1]) & (seg[interior] >= seg[interior + 1])
    maxima = interior[is_max]
    # one hump can carry several micro-tops from binning noise; keep only
    # the tallest representative per quarter-radius neighborhood (humps of a
    # genuine pair sit a full linewidth or more apart)
    distinct: list[int] = []
    for m in maxima[np.argsort(seg[maxima])][::-1]:
        if all(abs(cwin[m] - cwin[s]) > 0.25 * radius for s in distinct):
            distinct.append(int(m))
    if len(distinct) >= 2:
        top, second = distinct[0], distinct[1]
        a, b = sorted((top, second))
        valley = a + int(np.argmin(seg[a : b + 1]))
        if seg[second] >= 0.1 * seg[top] and seg[valley] <= 0.5 * seg[second]:
            return _parabolic_vertex(cwin, -seg, valley, step)
    top = int(np.argmax(seg))
    return _parabolic_vertex(cwin, seg, top, step)


def ridge_detect(
    grid: ScanGrid,
    values: np.ndarray,
    threshold: float = 0.1,
    gamma_min: float | None = None,
    kinds: tuple[str, ...] = RIDGE_KINDS,
) -> RidgeReport:
    """Line-localized ridge report over the four line families.

    Each family profiles an envelope field |S| + 2*gamma_min*|dS/dn| where
    n is the across-line direction: a line whose signal changes sign across
    it (notched |S| cross-section) peaks in the gradient part, an absorptive
    line peaks in |S|, so the field tops out on the line for any phase.
    ``threshold`` is the peak-prominence fraction of each family's smoothed
    profile range.  Requires an ascending uniform grid with at least 3
    points per axis; with ``gamma_min`` also enforces step <= gamma_min/2.
    """
    values = np.asarray(values, dtype=float)
    if len(grid.omega_axis) < 3 or len(grid.omega_p_axis) < 3:
        raise GridError("ridge detection needs at least a 3x3 grid")
    if values.shape != (len(grid.omega_p_axis), len(grid.omega_axis)):
        raise GridError(
            f"value matrix shape {values.shape} does not match grid "
            f"({len(grid.omega_p_axis)}, {len(grid.omega_axis)})"
        )
    step_w = uniform_step(grid.omega_axis, "omega axis")
    step_p = uniform_step(grid.omega_p_axis, "omega_p axis")
    if gamma_min is not None and max(step_w, step_p) > gamma_min / 2.0 + 1e-12:
        raise GridError(
            f"grid step {max(step_w, step_p):g} too coarse for ridge detection "
            f"(need <= {gamma_min / 2.0:g})"
        )
    finite = np.where(np.isfinite(values), values, 0.0)
    absval = np.abs(finite)
    grad_scale = 2.0 * gamma_min if gamma_min is not None else 0.0
    if grad_scale > 0.0:
        grad_w = np.gradient(finite, step_w, axis=1)
        grad_p = np.gradient(finite, step_p, axis=0)
    else:
        grad_w = grad_p = np.zeros_like(finite)
    w = np.asarray(grid.omega_axis)
    wp = np.asarray(grid.omega_p_axis)
    w_grid, wp_grid = np.meshgrid(w, wp)

    # per family: bin centers, plain |S| profile, across-line gradient
    # profile, and the bin step
    profiles: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray, float]] = {}
    if "vertical" in kinds:
        g = grad_scale * np.abs(grad_w)
        profiles["vertical"] = (w, np.median(absval, axis=0), np.median(g, axis=0), step_w)
    if "diagonal" in kinds:
        g = grad_scale * np.abs(grad_p)
        profiles["diagonal"] = (wp, np.median(absval, axis=1), np.median(g, axis=1), step_p)
    if "horizontal" in kinds:
        g = grad_scale * np.abs(0.5 * (grad_w + grad_p))
        keys = w_grid + wp_grid
        centers, p_abs = _binned_profile(keys, absval, step_w)
        profiles["horizontal"] = (centers, p_abs, _binned_profile(keys, g, step_w)[1], step_w)
    if "antidiagonal" in kinds:
        g = grad_scale * np.abs(0.5 * (grad_w - grad_p))
        keys = w_grid - wp_grid
        centers, p_abs = _binned_profile(keys, absval, step_w)
        profiles["antidiagonal"] = (centers, p_abs, _binned_profile(keys, g, step_w)[1], step_w)

    spans = {
        kind: float(np.max(p_abs + p_grad) - np.min(p_abs + p_grad))
        for kind, (_, p_abs, p_grad, _) in profiles.items()
    }
    global_span = max(spans.values(), default=0.0)
    ridges: list[Ridge] = []
    for kind, (centers, p_abs, p_grad, step) in profiles.items():
        # a family whose whole profile is negligible against the dominant
        # one only carries binning residue of transversal structure
        if spans[kind] <= 0.0 or spans[kind] < 0.05 * global_span:
            continue
        envelope = p_abs + p_grad
        smooth = envelope
        spacing = 1
        if gamma_min is not None:
            smooth = gaussian_filter1d(envelope, sigma=gamma_min / step, mode="nearest")
            spacing = max(1, int(round((2.0 * gamma_min) / step)))
        span = float(np.max(smooth) - np.min(smooth))
        if span <= 0.0:
            continue
        idx, _ = find_peaks(smooth, prominence=threshold * span, distance=spacing)
        for i in idx:
            if gamma_min is not None:
                intercept = _line_intercept(centers, p_abs, int(i), 4.0 * gamma_min, step)
                window = np.abs(centers - centers[i]) <= 4.0 * gamma_min
                strength = float(np.max(envelope[window]))
            else:
                intercept = _parabolic_vertex(centers, envelope, int(i), step)
                strength = float(envelope[i])
            ridges.append(Ridge(kind=kind, intercept=intercept, strength=strength))
    return RidgeReport(ridges=tuple(ridges), threshold=threshold)


# ---------------------------------------------------------------------------
# distance sweeps and standard windows


def system_at_distance(system: PairSystem, r_cm: float) -> PairSystem:
    """Same pair, separation r along x (perpendicular to the default k0)."""
    atom_a = replace(system.atom_a, position=(0.0, 0.0, 0.0))
    atom_b = replace(system.atom_b, position=(float(r_cm), 0.0, 0.0))
    return replace(system, atom_a=atom_a, atom_b=atom_b)


def twin_system(system: PairSystem, which: str) -> PairSystem:
    """Homo-pair variant: both emitters copy atom a ("aa") or atom b ("bb"),
    each keeping its own position."""
    if which == "aa":
        return replace(system, atom_b=replace(system.atom_a, position=system.atom_b.position))
    if which == "bb":
        return replace(system, atom_a=replace(system.atom_b, position=system.atom_a.position))
    raise ValueError(f"which must be 'aa' or 'bb', got {which!r}")


def component_matrix(matrix: list[list[SignalSample]], field: str) -> np.ndarray:
    """Extract one sample component ("s_i", "s_ii", "s_total") as an array."""
    if field not in ("s_i", "s_ii", "s_total"):
        raise ValueError(f"unknown sample component {field!r}")
    return np.array([[getattr(s, field) for s in row] for row in matrix], dtype=float)


def distance_sweep(
    system: PairSystem,
    pulse: PulseConfig,
    ratios: tuple[float, ...],
    grid: ScanGrid,
    options: CoefficientOptions | None = None,
) -> list[dict]:
    """Scan the 1-D grid at separations given as fractions of the reference
    wavelength 1/omega_a; reports the peak |value| per separation.

    The interesting grid is the collective two-photon window: there the
    vacuum part rides on couplings that fall off with separation, so its
    peak shrinks monotonically.  Near the single-photon lines the
    separation-independent exchange terms interfere with the decaying
    near-field ones and the peak is not monotone.
    """
    lambda_a = 1.0 / system.atom_a.omega
    out = []
    for ratio in ratios:
        moved = system_at_distance(system, ratio * lambda_a)
        samples = scan_1d(grid, moved, pulse, options)
        values = np.asarray([getattr(s, grid.value_field()) for s in samples])
        finite = values[np.isfinite(values)]
        out.append(
            {
                "ratio": float(ratio),
                "r_cm": float(ratio * lambda_a),
                "max_abs": float(np.max(np.abs(finite))) if finite.size else 0.0,
                "samples": samples,
            }
        )
    return out


def sheared_view(
    grid: ScanGrid, values: np.ndarray, coordinate: str = "sum"
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Re-index a map so one axis is omega+omega_p (or omega-omega_p).

    Returns (key_axis, omega_p_axis, matrix) where matrix[i, k] is the value
    at omega_p_axis[i] and key_axis[k]; cells outside the scanned rectangle
    are NaN.  Needs equal steps on both axes so sheared keys land on exact
    nodes.  Collective two-photon lines become horizontal bands of the sum
    view, difference (Raman) lines horizontal bands of the difference view.
    """
    values = np.asarray(values, dtype=float)
    step_w = uniform_step(grid.omega_axis, "omega axis")
    step_p = uniform_step(grid.omega_p_axis, "omega_p axis")
    if abs(step_w - step_p) > 1e-6 * step_w:
        raise GridError("sheared view needs equal steps on both axes")
    n_w, n_p = len(grid.omega_axis), len(grid.omega_p_axis)
    if values.shape != (n_p, n_w):
        raise GridError(f"value matrix shape {values.shape} does not match grid ({n_p}, {n_w})")
    w0, p0 = grid.omega_axis[0], grid.omega_p_axis[0]
    n_k = n_w + n_p - 1
    sheared = np.full((n_p, n_k), np.nan)
    if coordinate == "sum":
        key0 = w0 + p0
        for i in range(n_p):
            sheared[i, i : i + n_w] = values[i]
    elif coordinate == "difference":
        key0 = w0 - (p0 + (n_p - 1) * step_p)
        for i in range(n_p):
            off = n_p - 1 - i
            sheared[i, off : off + n_w] = values[i]
    else:
        raise GridError(f"coordinate must be 'sum' or 'difference', got {coordinate!r}")
    key_axis = key0 + step_w * np.arange(n_k)
    return key_axis, np.asarray(grid.omega_p_axis), sheared


def default_1d_axis(start: float = 1000.0, stop: float = 27000.0, step: float = 5.0) -> tuple[float, ...]:
    return tuple(np.arange(start, stop + 0.5 * step, step))


def _linspace_axis(start: float, stop: float, n: int) -> tuple[float, ...]:
    return tuple(np.linspace(start, stop, n))


def tpa_window_grid(mode: str = "residue", c2: float = 5e-9, n: int = 300) -> ScanGrid:
    """Two-photon view: sum coordinate spans all collective lines.

    The narrowband axis stops short of the single-photon resonances so the
    Raman lines (which would clip the high-omega_p corner) stay out of the
    sum-coordinate bins.
    """
    return ScanGrid(
        omega_axis=_linspace_axis(15000.0, 27000.0, n),
        omega_p_axis=_linspace_axis(1000.0, 12500.0, n),
        mode=mode,
        c2=c2,
    )


def raman_window_grid(mode: str = "residue", c2: float = 5e-9, n: int = 300) -> ScanGrid:
    """Difference view: both axes over the low-frequency window."""
    return ScanGrid(
        omega_axis=_linspace_axis(1000.0, 13000.0, n),
        omega_p_axis=_linspace_axis(1000.0, 13000.0, n),
        mode=mode,
        c2=c2,
    )
