"""Vacuum-mediated coupling kernels for an emitter pair.

In scaled units the orientation-averaged dipole-dipole channel reduces to the
kernel z^3 * sinc(x) with x = 2*pi*z*r (z in cm^-1, r in cm), multiplied by the
calibrated prefactor g0 and the relative dipole magnitudes.  The cooperative
decay L uses that kernel directly (diagonal case: the r-independent cubic
z^3); the complex coupling M is its retarded half,

    M = (g0 mu mu z^3 / 2) * [i*cos(x) + sin(x)] / x
      = i * g0 mu mu z^2 * exp(-i*x) / (4*pi*r),

whose real part is exactly L/2 on the real axis.  The exponential-half forms
are exposed because contour closures split the sine kernel into its up- and
down-decaying halves.  The two-photon coupling L_s is defined by residue
evaluation (the literal integral diverges with the cubic kernel):
L_s(W) = sum_alpha L_alpha_alpha(W - omega_alphabar + i*gamma_alphabar).
"""

from __future__ import annotations

import numpy as np

from .model import ConfigurationError, PairSystem, complement

MIN_SEPARATION_CM = 1e-9


def _sinc(x):
    """sin(x)/x, elementwise, valid at complex argument."""
    return np.sinc(np.asarray(x, dtype=complex) / np.pi)


def dd_tensor_avg(omega, r: float):
    """Orientation-averaged coupling kernel z^3 * sinc(2*pi*z*r).

    This is the single geometric building block: the cooperative decay is
    g0*mu*mu times this kernel, and the complex coupling is built from its
    exponential halves.  Amplitude falls off as 1/r once x >> 1.
    """
    if r <= 0:
        raise ConfigurationError(f"kernel distance must be positive, got {r}")
    z = np.asarray(omega, dtype=complex)
    value = z**3 * _sinc(2.0 * np.pi * z * r)
    if np.ndim(omega) == 0:
        return complex(value)
    return value


class CouplingContext:
    """Couplings of a concrete pair, closed over its geometry and dipoles."""

    def __init__(self, system: PairSystem):
        self.system = system
        self.r_ab = system.separation
        if self.r_ab < MIN_SEPARATION_CM:
            raise ConfigurationError(
                f"interatomic separation {self.r_ab:g} cm is below the {MIN_SEPARATION_CM:g} cm guard"
            )
        self.g0 = system.g0
        self._mu = (system.atom_a.mu_rel, system.atom_b.mu_rel)

    # -- dipole bookkeeping -------------------------------------------------

    def _weight(self, alpha: int, beta: int) -> float:
        return self.g0 * self._mu[alpha] * self._mu[beta]

    def tilde_ratio(self, alpha: int, beta: int) -> float:
        """|mu_beta|^2 / |mu_alpha|^2, the tilde rescaling."""
        if self._mu[alpha] == 0:
            raise ConfigurationError("tilde rescaling undefined for zero dipole")
        return (self._mu[beta] / self._mu[alpha]) ** 2

    # -- kernels ------------------------------------------------------------

    def coupling_L(self, alpha: int, beta: int, omega):
        """Cooperative decay kernel; diagonal case is r-independent."""
        z = np.asarray(omega, dtype=complex)
        if alpha == beta:
            value = self._weight(alpha, beta) * z**3
        else:
            value = self._weight(alpha, beta) * dd_tensor_avg(z, self.r_ab)
        if np.ndim(omega) == 0:
            return complex(value)
        return value

    def coupling_M(self, alpha: int, beta: int, omega):
        """Complex coupling (g0 mu mu z^3/2)[i cos x + sin x]/x at the pair distance.

        A repeated index only repeats the dipole magnitude; the photon still
        crosses the pair gap, so the kernel distance is always r_ab.
        """
        z = np.asarray(omega, dtype=complex)
        x = 2.0 * np.pi * z * self.r_ab
        value = self._weight(alpha, beta) * 0.5 * z**3 * (1j * np.cos(x) + np.sin(x)) / x
        if np.ndim(omega) == 0:
            return complex(value)
        return value

    def half_down(self, alpha: int, beta: int, omega):
        """Down-decaying exponential half of the sine kernel: i g0 mu mu z^2 e^{-ix}/(4 pi r).

        Equals coupling_M identically; kept as the contour-closure form.
        """
        z = np.asarray(omega, dtype=complex)
        x = 2.0 * np.pi * z * self.r_ab
        value = 1j * self._weight(alpha, beta) * z**2 * np.exp(-1j * x) / (4.0 * np.pi * self.r_ab)
        if np.ndim(omega) == 0:
            return complex(value)
        return value

    def half_up(self, alpha: int, beta: int, omega):
        """Up-decaying half: -i g0 mu mu z^2 e^{+ix}/(4 pi r); equals L - M."""
        z = np.asarray(omega, dtype=complex)
        x = 2.0 * np.pi * z * self.r_ab
        value = -1j * self._weight(alpha, beta) * z**2 * np.exp(1j * x) / (4.0 * np.pi * self.r_ab)
        if np.ndim(omega) == 0:
            return complex(value)
        return value

    def coupling_L_tilde(self, alpha: int, beta: int, omega):
        return self.tilde_ratio(alpha, beta) * self.coupling_L(alpha, beta, omega)

    def coupling_M_tilde(self, alpha: int, beta: int, omega):
        return self.tilde_ratio(alpha, beta) * self.coupling_M(alpha, beta, omega)

    def diag_kernel(self, alpha: int, omega):
        """g0 mu_alpha^2 z^3: the analytic diagonal kernel (no geometry)."""
        z = np.asarray(omega, dtype=complex)
        value = self._weight(alpha, alpha) * z**3
        if np.ndim(omega) == 0:
            return complex(value)
        return value

    def diag_kernel_slope(self, alpha: int, omega):
        """d/dz of diag_kernel, needed by derivative residues."""
        z = np.asarray(omega, dtype=complex)
        value = 3.0 * self._weight(alpha, alpha) * z**2
        if np.ndim(omega) == 0:
            return complex(value)
        return value

    def coupling_Ls(self, omega_sum):
        """Two-photon coupling by residue evaluation at the partner pole."""
        z = np.asarray(omega_sum, dtype=complex)
        atoms = self.system.atoms
        total = np.zeros_like(z)
        for alpha in (0, 1):
            partner = atoms[complement(alpha)]
            total = total + self.diag_kernel(alpha, z - partner.omega + 1j * partner.gamma)
        if np.ndim(omega_sum) == 0:
            return complex(total)
        return total
