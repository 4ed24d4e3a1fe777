"""Tests for the vacuum-mediated coupling kernels."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pairspec.couplings import CouplingContext, dd_tensor_avg
from pairspec.model import ConfigurationError, PairSystem, TwoLevelAtom, default_config
from pairspec.scan import system_at_distance


CTX = CouplingContext(default_config()[0])


@pytest.fixture()
def ctx(system):
    return CouplingContext(system)


def test_kernel_rejects_nonpositive_distance():
    with pytest.raises(ConfigurationError):
        dd_tensor_avg(13000.0, 0.0)


def test_kernel_reduces_to_the_cubic_at_zero_argument():
    """sinc -> 1 for r much smaller than the wavelength."""
    z = 13000.0
    close = dd_tensor_avg(z, 1e-12)
    assert close == pytest.approx(z**3, rel=1e-9)


def test_context_rejects_overlapping_emitters(system):
    merged = PairSystem(
        atom_a=system.atom_a,
        atom_b=TwoLevelAtom(omega=11000.0, gamma=200.0, position=(0.0, 0.0, 0.0)),
    )
    with pytest.raises(ConfigurationError):
        CouplingContext(merged)


def test_auto_calibration_pins_the_diagonal_rate(ctx, system):
    """L_aa at the emitter's own transition equals the configured width."""
    assert ctx.coupling_L(0, 0, system.atom_a.omega) == pytest.approx(
        system.atom_a.gamma, rel=1e-12
    )


def test_diagonal_coupling_ignores_the_separation(system):
    """The r-independent diagonal form holds over six decades of distance."""
    omega = 12345.0
    reference = None
    for exponent in range(3, 9):
        moved = system_at_distance(system, 10.0**-exponent)
        value = CouplingContext(moved).coupling_L(1, 1, omega)
        if reference is None:
            reference = value
        assert value == pytest.approx(reference, rel=1e-12)


@given(omega=st.floats(2000.0, 26000.0))
def test_complex_coupling_real_part_is_half_the_rate(omega):
    for alpha, beta in ((0, 1), (1, 0)):
        m = CTX.coupling_M(alpha, beta, omega)
        ell = CTX.coupling_L(alpha, beta, omega)
        assert m.real == pytest.approx(0.5 * ell.real, rel=1e-12)


def test_complex_coupling_equals_its_exponential_half(ctx):
    """The closed sine-half identity holds at complex argument too."""
    for z in (9000.0, complex(13000.0, -200.0), complex(24000.0, 400.0)):
        assert ctx.coupling_M(0, 1, z) == pytest.approx(ctx.half_down(0, 1, z), rel=1e-12)


def test_half_up_completes_the_rate(ctx):
    z = complex(11000.0, -150.0)
    total = ctx.half_down(0, 1, z) + ctx.half_up(0, 1, z)
    assert total == pytest.approx(ctx.coupling_L(0, 1, z), rel=1e-12)


def test_tilde_couplings_carry_the_dipole_ratio(ctx, system):
    ratio = (system.atom_b.mu_rel / system.atom_a.mu_rel) ** 2
    omega = 12000.0
    assert ctx.coupling_L_tilde(0, 1, omega) == pytest.approx(
        ratio * ctx.coupling_L(0, 1, omega), rel=1e-14
    )
    assert ctx.coupling_M_tilde(0, 1, omega) == pytest.approx(
        ratio * ctx.coupling_M(0, 1, omega), rel=1e-14
    )


def test_diag_kernel_slope_is_the_derivative(ctx):
    z = 9000.0
    h = 1e-3
    numeric = (ctx.diag_kernel(0, z + h) - ctx.diag_kernel(0, z - h)) / (2.0 * h)
    assert ctx.diag_kernel_slope(0, z) == pytest.approx(numeric, rel=1e-8)


def test_summed_coupling_is_the_residue_definition(ctx, system):
    omega_sum = 24000.0
    expected = 0j
    for alpha, partner in ((0, system.atom_b), (1, system.atom_a)):
        expected += ctx.diag_kernel(alpha, omega_sum - partner.omega + 1j * partner.gamma)
    assert ctx.coupling_Ls(omega_sum) == pytest.approx(expected, rel=1e-14)


def test_off_diagonal_coupling_decays_with_distance(system):
    """|M| falls roughly as 1/r once the separation passes a wavelength."""
    omega = 13000.0
    wavelength = 1.0 / omega
    near = abs(CouplingContext(system_at_distance(system, 0.01 * wavelength)).coupling_M(0, 1, omega))
    far = abs(CouplingContext(system_at_distance(system, 1.0 * wavelength)).coupling_M(0, 1, omega))
    assert far < 0.02 * near
