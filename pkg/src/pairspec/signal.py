"""Assembly of the frequency-dispersed transmission signal.

The detected change of the broadband transmission at wavenumber omega splits
into a mean-field part (S_I, expressible through effective pair couplings)
and a vacuum-correction part (S_II).  Both are imaginary parts of slot-
weighted coefficient sums; the field amplitudes enter as amp_broad^3 *
amp_narrow for the group carrying one narrowband interaction and
amp_broad^2 * amp_narrow^2 for the group carrying two.  The amp_broad^4
group carries no collective resonance and is omitted from the model.

Chirp-residue signal: difference of the transmission at opposite chirp
signs; every phase-independent term cancels exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .coefficients import CoefficientOptions, slot_bundle
from .model import ConfigurationError, PairSystem, PhaseProfile, PulseConfig, SignalSample

INCLUDE_CHOICES = ("both", "S_I", "S_II")


@dataclass(frozen=True)
class SignalRequest:
    """One dispersed-transmission evaluation: who, how driven, where sampled."""

    system: PairSystem
    pulse: PulseConfig
    omega: object  # wavenumber(s) in cm^-1, scalar or 1-D array-like
    include: str = "both"
    options: CoefficientOptions | None = None

    def __post_init__(self):
        if self.include not in INCLUDE_CHOICES:
            raise ConfigurationError(
                f"include must be one of {INCLUDE_CHOICES}, got {self.include!r}"
            )
        if np.any(np.asarray(self.omega, dtype=float) <= 0.0):
            raise ConfigurationError("detection wavenumbers must be positive")


def signal_scale(system: PairSystem, pulse: PulseConfig) -> float:
    """Overall real prefactor: pair count times the four classical dipole
    moments (two per emitter) in units of the reference dipole."""
    del pulse  # amplitudes enter per term group, not globally
    return system.n_pairs * system.atom_a.mu_rel**2 * system.atom_b.mu_rel**2


def evaluate_parts(
    system: PairSystem,
    pulse: PulseConfig,
    omega,
    options: CoefficientOptions | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(S_I, S_II) arrays on the given wavenumber grid."""
    bundle = slot_bundle(system, pulse, omega, pulse.omega_p, options)
    e1 = pulse.amp_narrow
    e2 = pulse.amp_broad
    scale = signal_scale(system, pulse)
    linear_i = e2**3 * e1 * bundle.si_broad + e2**2 * e1**2 * bundle.si_mixed
    linear_ii = e2**3 * e1 * bundle.sii_broad + e2**2 * e1**2 * bundle.sii_mixed
    s_i = np.imag(1j * scale * linear_i)
    s_ii = np.imag(1j * scale * linear_ii)
    return np.atleast_1d(s_i), np.atleast_1d(s_ii)


def _scalar_or_array(values: np.ndarray, omega):
    if np.ndim(omega) == 0:
        return float(values[0])
    return values


def signal_SI(req: SignalRequest):
    s_i, _ = evaluate_parts(req.system, req.pulse, req.omega, req.options)
    return _scalar_or_array(s_i, req.omega)


def signal_SII(req: SignalRequest):
    _, s_ii = evaluate_parts(req.system, req.pulse, req.omega, req.options)
    return _scalar_or_array(s_ii, req.omega)


def signal_total(req: SignalRequest):
    """SignalSample for scalar omega, list of SignalSample for a grid."""
    s_i, s_ii = evaluate_parts(req.system, req.pulse, req.omega, req.options)
    grid = np.atleast_1d(np.asarray(req.omega, dtype=float))
    samples = [
        SignalSample(omega=float(w), s_i=float(a), s_ii=float(b), s_total=float(a + b))
        for w, a, b in zip(grid, s_i, s_ii)
    ]
    if np.ndim(req.omega) == 0:
        return samples[0]
    return samples


def _select(include: str, s_i: np.ndarray, s_ii: np.ndarray) -> np.ndarray:
    if include == "S_I":
        return s_i
    if include == "S_II":
        return s_ii
    return s_i + s_ii


def selected_signal(req: SignalRequest) -> np.ndarray:
    """The include-filtered signal as a plain array (scan entry point)."""
    s_i, s_ii = evaluate_parts(req.system, req.pulse, req.omega, req.options)
    return _select(req.include, s_i, s_ii)


def _chirp_phase(phase: PhaseProfile, c2: float) -> PhaseProfile:
    """Replace the quadratic coefficient, keeping reference and constant."""
    coeffs = phase.coeffs + (0.0,) * max(0, 3 - len(phase.coeffs))
    if any(c != 0.0 for c in coeffs[3:]) or coeffs[1] != 0.0:
        raise ConfigurationError(
            "chirp-residue signal requires a quadratic-chirp phase profile "
            "(no linear or higher-order terms)"
        )
    return replace(phase, coeffs=(coeffs[0], 0.0, float(c2)))


def residue_parts(
    system: PairSystem,
    pulse: PulseConfig,
    omega,
    c2: float,
    options: CoefficientOptions | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Componentwise chirp residue: parts at +c2 minus parts at -c2."""
    plus = replace(pulse, phase=_chirp_phase(pulse.phase, +c2))
    minus = replace(pulse, phase=_chirp_phase(pulse.phase, -c2))
    si_p, sii_p = evaluate_parts(system, plus, omega, options)
    si_m, sii_m = evaluate_parts(system, minus, omega, options)
    return si_p - si_m, sii_p - sii_m


def residue_signal(req: SignalRequest, c2: float):
    """S at chirp +c2 minus S at chirp -c2, include-filtered."""
    d_i, d_ii = residue_parts(req.system, req.pulse, req.omega, c2, req.options)
    diff = _select(req.include, d_i, d_ii)
    return _scalar_or_array(diff, req.omega)
