"""Tests for the signal assembly layer."""

import numpy as np
import pytest
from dataclasses import replace
from hypothesis import given
from hypothesis import strategies as st

from pairspec.model import ConfigurationError, PhaseProfile, SignalSample, default_config
from pairspec.signal import (
    SignalRequest,
    evaluate_parts,
    residue_parts,
    residue_signal,
    signal_SI,
    signal_SII,
    signal_scale,
    signal_total,
)

OMEGA = np.array([3000.0, 12000.0, 20500.0, 24500.0])

SYSTEM, PULSE = default_config()


def test_request_rejects_unknown_include(system, pulse):
    with pytest.raises(ConfigurationError):
        SignalRequest(system, pulse, 12000.0, include="S_III")


def test_request_rejects_nonpositive_wavenumbers(system, pulse):
    with pytest.raises(ConfigurationError):
        SignalRequest(system, pulse, np.array([12000.0, -1.0]))


def test_scalar_request_returns_one_sample(system, pulse):
    sample = signal_total(SignalRequest(system, pulse, 12000.0))
    assert isinstance(sample, SignalSample)
    assert sample.omega == 12000.0
    assert sample.s_total == sample.s_i + sample.s_ii


def test_grid_request_returns_a_sample_list(system, pulse):
    samples = signal_total(SignalRequest(system, pulse, OMEGA))
    assert [s.omega for s in samples] == list(OMEGA)
    for s in samples:
        assert s.s_total == s.s_i + s.s_ii


def test_parts_match_the_include_filters(system, pulse):
    s_i, s_ii = evaluate_parts(system, pulse, OMEGA)
    assert np.array_equal(signal_SI(SignalRequest(system, pulse, OMEGA)), s_i)
    assert np.array_equal(signal_SII(SignalRequest(system, pulse, OMEGA)), s_ii)


def test_scale_counts_pairs_and_dipoles(system, pulse):
    expected = system.n_pairs * system.atom_a.mu_rel**2 * system.atom_b.mu_rel**2
    assert signal_scale(system, pulse) == pytest.approx(expected, rel=1e-15)


@given(n_pairs=st.floats(0.5, 50.0))
def test_signal_is_linear_in_the_pair_count(n_pairs):
    base_i, base_ii = evaluate_parts(SYSTEM, PULSE, OMEGA)
    many = replace(SYSTEM, n_pairs=n_pairs)
    many_i, many_ii = evaluate_parts(many, PULSE, OMEGA)
    assert np.allclose(many_i, n_pairs * base_i, rtol=1e-12)
    assert np.allclose(many_ii, n_pairs * base_ii, rtol=1e-12)


def test_zero_broadband_amplitude_silences_everything(system, pulse):
    s_i, s_ii = evaluate_parts(system, replace(pulse, amp_broad=0.0), OMEGA)
    assert np.all(s_i == 0.0)
    assert np.all(s_ii == 0.0)


def test_zero_narrowband_amplitude_silences_everything(system, pulse):
    s_i, s_ii = evaluate_parts(system, replace(pulse, amp_narrow=0.0), OMEGA)
    assert np.all(s_i == 0.0)
    assert np.all(s_ii == 0.0)


def test_vacuum_part_vanishes_without_coupling(system, pulse):
    """S_II is carried entirely by the pair couplings."""
    uncoupled = replace(system, coupling_scale=0.0)
    _, s_ii = evaluate_parts(uncoupled, pulse, OMEGA)
    assert np.max(np.abs(s_ii)) == 0.0


def test_amplitude_groups_carry_exponents_one_and_two(system, pulse):
    """Annihilating combinations isolate the linear and quadratic groups."""
    values = {}
    for a in (1.0, 2.0, 4.0):
        s_i, s_ii = evaluate_parts(system, replace(pulse, amp_narrow=a), OMEGA)
        values[a] = s_i + s_ii
    quad_lo = values[2.0] - 2.0 * values[1.0]
    quad_hi = values[4.0] - 2.0 * values[2.0]
    lin_lo = 4.0 * values[1.0] - values[2.0]
    lin_hi = 4.0 * values[2.0] - values[4.0]
    assert np.allclose(np.log2(np.abs(quad_hi / quad_lo)), 2.0, atol=1e-9)
    assert np.allclose(np.log2(np.abs(lin_hi / lin_lo)), 1.0, atol=1e-9)


# ---------------------------------------------------------------------------
# chirp residue


def test_residue_vanishes_at_zero_chirp(system, pulse):
    req = SignalRequest(system, pulse, OMEGA)
    assert np.max(np.abs(residue_signal(req, 0.0))) == 0.0


@given(c2=st.floats(1e-10, 1e-7))
def test_residue_is_odd_in_the_chirp(c2):
    req = SignalRequest(SYSTEM, PULSE, OMEGA)
    forward = residue_signal(req, c2)
    backward = residue_signal(req, -c2)
    assert np.array_equal(forward, -backward)


def test_residue_parts_are_the_evaluated_difference(system, pulse):
    c2 = 5e-9
    ref = pulse.phase.reference
    plus = replace(pulse, phase=PhaseProfile.chirp(+c2, ref))
    minus = replace(pulse, phase=PhaseProfile.chirp(-c2, ref))
    expect_i = evaluate_parts(system, plus, OMEGA)[0] - evaluate_parts(system, minus, OMEGA)[0]
    got_i, _ = residue_parts(system, pulse, OMEGA, c2)
    assert np.allclose(got_i, expect_i, rtol=0, atol=0)


def test_residue_requires_a_chirp_style_profile(system, pulse):
    delayed = replace(pulse, phase=PhaseProfile.delay(33.0, pulse.phase.reference))
    with pytest.raises(ConfigurationError):
        residue_parts(system, delayed, OMEGA, 5e-9)


def test_residue_keeps_the_constant_phase_offset(system, pulse):
    """Only the quadratic coefficient is swapped; the offset survives."""
    offset = replace(pulse, phase=PhaseProfile.constant(0.9, pulse.phase.reference))
    with_offset = residue_parts(system, offset, OMEGA, 5e-9)
    plain = residue_parts(system, pulse, OMEGA, 5e-9)
    assert not np.allclose(with_offset[0], plain[0])
