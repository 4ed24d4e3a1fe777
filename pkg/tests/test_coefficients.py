"""Tests for the closed-form pulse coefficients and their slot assembly."""

import numpy as np
import pytest
from dataclasses import replace

from pairspec.coefficients import (
    CoefficientOptions,
    CoefficientTable,
    cache_clear,
    cache_info,
    coeff_A,
    coeff_B,
    slot_bundle,
)
from pairspec.model import PhaseProfile, default_config
from pairspec.propagators import g_raman

OMEGA = np.array([3000.0, 7500.0, 16500.0, 21000.0, 25000.0])


def test_options_reject_unknown_closure():
    with pytest.raises(ValueError):
        CoefficientOptions(closure="sideways")


def test_coefficient_index_is_checked(system, pulse):
    with pytest.raises(ValueError):
        coeff_A(system, pulse, 0, (), OMEGA, pulse.omega_p)
    with pytest.raises(ValueError):
        coeff_B(system, pulse, 10, (), OMEGA, pulse.omega_p)


def test_superscripted_members_take_their_indices(system, pulse):
    """A4 sums nothing internally over its three printed atom indices."""
    values = coeff_A(system, pulse, 4, (0, 1, 1), OMEGA, pulse.omega_p)
    assert np.all(np.isfinite(values))
    other = coeff_A(system, pulse, 4, (1, 0, 0), OMEGA, pulse.omega_p)
    assert not np.allclose(values, other)


def test_triple_sum_option_doubles_the_single_pole_slot(system, pulse):
    """The dangling-index reading adds the same slot contribution once more."""
    base = slot_bundle(system, pulse, OMEGA, pulse.omega_p)
    doubled = slot_bundle(
        system, pulse, OMEGA, pulse.omega_p, CoefficientOptions(a3_triple_sum=True)
    )
    slot = np.zeros_like(base.si_broad)
    for alpha in (0, 1):
        a3 = coeff_A(system, pulse, 3, (alpha,), OMEGA, pulse.omega_p)
        for beta in (0, 1):
            slot = slot + g_raman(system, beta, alpha, OMEGA - pulse.omega_p) * a3
    assert np.allclose(doubled.si_broad - base.si_broad, slot, rtol=1e-12)
    assert np.allclose(doubled.si_mixed, base.si_mixed, rtol=0, atol=0)


def test_auto_closure_follows_the_chirp_sign(system, pulse):
    ref = pulse.phase.reference
    for c2, direction in ((5e-9, "down"), (-5e-9, "up")):
        chirped = replace(pulse, phase=PhaseProfile.chirp(c2, ref))
        auto = slot_bundle(system, chirped, OMEGA, pulse.omega_p)
        forced = slot_bundle(
            system, chirped, OMEGA, pulse.omega_p, CoefficientOptions(closure=direction)
        )
        assert np.array_equal(auto.si_broad, forced.si_broad)
        assert np.array_equal(auto.sii_broad, forced.sii_broad)


def test_closure_direction_changes_the_dangling_integral(system, pulse):
    down = slot_bundle(system, pulse, OMEGA, pulse.omega_p, CoefficientOptions(closure="down"))
    up = slot_bundle(system, pulse, OMEGA, pulse.omega_p, CoefficientOptions(closure="up"))
    assert not np.allclose(down.si_broad, up.si_broad)


def test_large_delay_phases_stay_finite(system, pulse):
    """Forming the full exponent before exponentiating avoids overflow."""
    slow = replace(pulse, phase=PhaseProfile.delay(3300.0, pulse.phase.reference))
    bundle = slot_bundle(system, slow, OMEGA, slow.omega_p)
    for part in (bundle.si_broad, bundle.si_mixed, bundle.sii_broad, bundle.sii_mixed):
        assert np.all(np.isfinite(part))


def test_doubling_the_widths_halves_a_single_propagator_peak(pulse):
    """Peak heights of A2 and B4 near a narrow transition scale as 1/gamma.

    The coupling prefactor is pinned so only the propagator widths change,
    and the lines are made narrow so off-resonant tails stay below the
    tolerance.
    """
    system, _ = default_config()
    narrow = replace(
        system,
        atom_a=replace(system.atom_a, gamma=20.0),
        atom_b=replace(system.atom_b, gamma=20.0),
    )
    narrow = replace(narrow, coupling_scale=narrow.g0)
    doubled = replace(
        narrow,
        atom_a=replace(narrow.atom_a, gamma=40.0),
        atom_b=replace(narrow.atom_b, gamma=40.0),
    )
    grid = np.linspace(12992.0, 13008.0, 321)
    for fn, j in ((coeff_A, 2), (coeff_B, 4)):
        base = float(np.max(np.abs(fn(narrow, pulse, j, (), grid, pulse.omega_p))))
        half = float(np.max(np.abs(fn(doubled, pulse, j, (), grid, pulse.omega_p))))
        assert half / base == pytest.approx(0.5, rel=0.01)


def test_table_phase_factor_wraps_the_printed_exponent(system, pulse):
    table = CoefficientTable(system, pulse)
    w, wp, z = 20000.0, 4000.0, complex(13000.0, -200.0)
    phi = pulse.phase.value
    expected = np.exp(1j * (phi(w + wp - z) + phi(z) - phi(w) - pulse.xi))
    assert table.phi1(w, wp, z) == pytest.approx(expected, rel=1e-12)


# ---------------------------------------------------------------------------
# memoization


def test_bundle_cache_returns_the_same_object(system, pulse):
    cache_clear()
    first = slot_bundle(system, pulse, OMEGA, pulse.omega_p)
    second = slot_bundle(system, pulse, OMEGA, pulse.omega_p)
    assert second is first
    assert cache_info()["entries"] == 1


def test_bundle_cache_keys_on_exact_input_bits(system, pulse):
    cache_clear()
    slot_bundle(system, pulse, OMEGA, pulse.omega_p)
    slot_bundle(system, pulse, OMEGA + 1e-9, pulse.omega_p)
    assert cache_info()["entries"] == 2


def test_bundle_cache_distinguishes_options(system, pulse):
    cache_clear()
    a = slot_bundle(system, pulse, OMEGA, pulse.omega_p)
    b = slot_bundle(system, pulse, OMEGA, pulse.omega_p, CoefficientOptions(a3_triple_sum=True))
    assert a is not b
    assert cache_info()["entries"] == 2
    cache_clear()
    assert cache_info()["entries"] == 0
