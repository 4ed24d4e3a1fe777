"""Tests for the core data model: emitters, geometry, phase profiles, config I/O."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pairspec.model import (
    SPEED_OF_LIGHT_CM_FS,
    ConfigurationError,
    PairSystem,
    PhaseProfile,
    PulseConfig,
    TwoLevelAtom,
    complement,
    config_from_dict,
    config_to_dict,
    default_config,
    default_config_dict,
    load_config,
    save_config,
    validate,
)

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# atoms and the pair


def test_atom_rejects_nonpositive_frequency():
    with pytest.raises(ConfigurationError):
        TwoLevelAtom(omega=0.0, gamma=200.0)


def test_atom_rejects_nonpositive_width():
    with pytest.raises(ConfigurationError):
        TwoLevelAtom(omega=13000.0, gamma=-1.0)


def test_atom_rejects_nonpositive_dipole():
    with pytest.raises(ConfigurationError):
        TwoLevelAtom(omega=13000.0, gamma=200.0, mu_rel=0.0)


def test_atom_rejects_malformed_position():
    with pytest.raises(ConfigurationError):
        TwoLevelAtom(omega=13000.0, gamma=200.0, position=(1.0, 2.0))
    with pytest.raises(ConfigurationError):
        TwoLevelAtom(omega=13000.0, gamma=200.0, position=(math.inf, 0.0, 0.0))


def test_atom_pole_sits_in_the_lower_half_plane():
    atom = TwoLevelAtom(omega=13000.0, gamma=200.0)
    assert atom.pole == complex(13000.0, -200.0)


def test_complement_swaps_the_two_indices():
    assert complement(0) == 1
    assert complement(1) == 0
    with pytest.raises(ConfigurationError):
        complement(2)


def test_pair_normalizes_the_carrier_direction(system):
    tilted = PairSystem(atom_a=system.atom_a, atom_b=system.atom_b, k0_direction=(0.0, 0.0, 5.0))
    assert tilted.k0_direction == (0.0, 0.0, 1.0)


def test_pair_rejects_zero_direction(system):
    with pytest.raises(ConfigurationError):
        PairSystem(atom_a=system.atom_a, atom_b=system.atom_b, k0_direction=(0.0, 0.0, 0.0))


def test_pair_rejects_nonpositive_pair_count(system):
    with pytest.raises(ConfigurationError):
        PairSystem(atom_a=system.atom_a, atom_b=system.atom_b, n_pairs=0.0)


def test_pair_rejects_unknown_scale_keyword(system):
    with pytest.raises(ConfigurationError):
        PairSystem(atom_a=system.atom_a, atom_b=system.atom_b, coupling_scale="huge")


def test_auto_coupling_scale_matches_the_calibration(system):
    a = system.atom_a
    assert system.g0 == pytest.approx(a.gamma / (a.mu_rel**2 * a.omega**3), rel=1e-15)


def test_auto_carrier_magnitude_is_the_mean_transition(system):
    expected = TWO_PI * 0.5 * (system.atom_a.omega + system.atom_b.omega)
    assert np.linalg.norm(system.k0) == pytest.approx(expected, rel=1e-15)


def test_default_separation_is_a_hundredth_wavelength(system):
    assert system.separation == pytest.approx(0.01 / 13000.0, rel=1e-12)


def test_geometry_phase_has_unit_modulus_and_swap_inverse(system):
    for alpha in (0, 1):
        for beta in (0, 1):
            phase = system.geometry_phase(alpha, beta)
            assert abs(phase) == pytest.approx(1.0, abs=1e-14)
            assert phase * system.geometry_phase(beta, alpha) == pytest.approx(1.0)


@given(
    rx=st.floats(-1e-5, 1e-5, allow_nan=False),
    rz=st.floats(-1e-5, 1e-5, allow_nan=False),
)
def test_geometry_phase_swap_inverse_for_any_offset(rx, rz):
    """The index-swapped factor is always the exact inverse."""
    atom_a = TwoLevelAtom(omega=13000.0, gamma=200.0)
    atom_b = TwoLevelAtom(omega=11000.0, gamma=200.0, position=(rx, 0.0, rz))
    pair = PairSystem(atom_a=atom_a, atom_b=atom_b)
    product = pair.geometry_phase(0, 1) * pair.geometry_phase(1, 0)
    assert product.real == pytest.approx(1.0, abs=1e-12)
    assert product.imag == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# phase profiles


def test_constant_profile_is_flat():
    profile = PhaseProfile.constant(0.7, 12000.0)
    assert profile.value(9000.0) == pytest.approx(0.7)
    assert profile.slope(9000.0) == 0.0
    assert profile.dominant_order() == 0


def test_delay_profile_is_linear_through_the_origin():
    t_fs = 33.0
    profile = PhaseProfile.delay(t_fs, 12000.0)
    c1 = TWO_PI * SPEED_OF_LIGHT_CM_FS * t_fs
    for omega in (4000.0, 12000.0, 26000.0):
        assert profile.value(omega) == pytest.approx(c1 * omega, rel=1e-12)
    assert profile.slope(5000.0) == pytest.approx(c1, rel=1e-12)
    assert profile.dominant_order() == 1


def test_chirp_profile_is_quadratic_about_the_reference():
    profile = PhaseProfile.chirp(5e-9, 12000.0)
    assert profile.value(12000.0) == 0.0
    assert profile.value(13000.0) == pytest.approx(5e-9 * 1000.0**2, rel=1e-12)
    assert profile.dominant_order() == 2


def test_profile_accepts_complex_argument():
    profile = PhaseProfile(reference=12000.0, coeffs=(0.1, 2e-5, 5e-9))
    z = complex(13000.0, -200.0)
    x = z - 12000.0
    assert profile.value(z) == pytest.approx(0.1 + 2e-5 * x + 5e-9 * x * x, rel=1e-12)


def test_with_shifted_constant_only_moves_the_offset():
    profile = PhaseProfile(reference=12000.0, coeffs=(0.1, 2e-5))
    shifted = profile.with_shifted_constant(0.4)
    assert shifted.coeffs == (0.5, 2e-5)
    assert shifted.reference == profile.reference


@given(
    c0=st.floats(-3.0, 3.0),
    c1=st.floats(-1e-3, 1e-3),
    c2=st.floats(-1e-7, 1e-7),
    omega=st.floats(2000.0, 26000.0),
)
def test_profile_slope_matches_a_central_difference(c0, c1, c2, omega):
    profile = PhaseProfile(reference=12000.0, coeffs=(c0, c1, c2))
    h = 1e-3
    numeric = (profile.value(omega + h) - profile.value(omega - h)) / (2.0 * h)
    assert profile.slope(omega).real == pytest.approx(numeric.real, rel=1e-6, abs=1e-12)


def test_pulse_rejects_nonpositive_carrier():
    with pytest.raises(ConfigurationError):
        PulseConfig(omega_p=-4000.0)


# ---------------------------------------------------------------------------
# validation and configuration files


def test_validate_flags_overlapping_emitters(system, pulse):
    merged = PairSystem(
        atom_a=system.atom_a,
        atom_b=TwoLevelAtom(omega=11000.0, gamma=200.0, position=(0.0, 0.0, 0.0)),
    )
    problems = validate(merged, pulse)
    assert any("separation" in p for p in problems)


def test_validate_flags_implausible_width(system, pulse):
    wide = PairSystem(
        atom_a=TwoLevelAtom(omega=1000.0, gamma=900.0),
        atom_b=system.atom_b,
    )
    assert any("implausibly large" in p for p in validate(wide, pulse))


def test_validate_flags_negative_amplitudes(system):
    pulse = PulseConfig(amp_narrow=-1.0)
    assert any("nonnegative" in p for p in validate(system, pulse))


def test_default_config_round_trips_through_the_dict_layout():
    system, pulse = default_config()
    rebuilt_system, rebuilt_pulse = config_from_dict(config_to_dict(system, pulse))
    assert rebuilt_system == system
    assert rebuilt_pulse == pulse


def test_save_and_load_reproduce_the_model(tmp_path):
    system, pulse = default_config()
    path = tmp_path / "config.json"
    save_config(path, system, pulse)
    loaded_system, loaded_pulse = load_config(path)
    assert loaded_system == system
    assert loaded_pulse == pulse


def test_config_requires_exactly_two_atoms():
    data = default_config_dict()
    data["atoms"] = data["atoms"][:1]
    with pytest.raises(ConfigurationError):
        config_from_dict(data)


def test_config_requires_atom_fields():
    data = default_config_dict()
    del data["atoms"][0]["omega"]
    with pytest.raises(ConfigurationError):
        config_from_dict(data)


def test_config_rejects_unknown_phase_model():
    data = default_config_dict()
    data["pulse"]["phase"] = {"model": "cubic_spline", "params": {}}
    with pytest.raises(ConfigurationError):
        config_from_dict(data)


def test_delay_phase_model_builds_a_linear_profile():
    data = default_config_dict()
    data["pulse"]["phase"] = {"model": "delay", "params": {"t_fs": 33.0}, "reference": "auto"}
    _, pulse = config_from_dict(data)
    assert pulse.phase.dominant_order() == 1
    assert pulse.phase.reference == 12000.0


def test_chirp_phase_model_builds_a_quadratic_profile():
    data = default_config_dict()
    data["pulse"]["phase"] = {"model": "chirp", "params": {"c2": 5e-9}, "reference": 11500.0}
    _, pulse = config_from_dict(data)
    assert pulse.phase.coeffs == (0.0, 0.0, 5e-9)
    assert pulse.phase.reference == 11500.0


def test_config_rejects_invalid_geometry():
    data = default_config_dict()
    data["atoms"][1]["position"] = (0.0, 0.0, 0.0)
    with pytest.raises(ConfigurationError):
        config_from_dict(data)
