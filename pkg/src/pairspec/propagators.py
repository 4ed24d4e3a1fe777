"""Complex Lorentzian response functions for one and two emitters.

Retarded forms are i/(omega - omega0 + i*gamma0); daggered forms are the
advanced counterparts -i/(omega - omega0 - i*gamma0), equal to the complex
conjugate at real argument.  Collective kinds shift the pole to
omega_a + omega_b (two-photon) or omega_a - omega_b (Raman) with the summed
width gamma_a + gamma_b.  Complex arguments are allowed everywhere; the
closed-form pulse coefficients evaluate these at points like
omega_alpha - i*gamma_alpha.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PairSystem, PoleProximityError, TwoLevelAtom

_POLE_GUARD = 1e-12  # relative to the kind's width


def _lorentzian(omega, center: float, width: float, retarded: bool):
    z = np.asarray(omega, dtype=complex)
    pole = complex(center, -width) if retarded else complex(center, width)
    dist = np.abs(z - pole)
    if np.any(dist < _POLE_GUARD * width):
        raise PoleProximityError(
            f"response evaluated within {_POLE_GUARD * width:g} cm^-1 of its pole at {pole}"
        )
    sign = 1j if retarded else -1j
    value = sign / (z - pole)
    if np.ndim(omega) == 0:
        return complex(value)
    return value


def g_single(atom: TwoLevelAtom, omega):
    """i / (omega - omega_atom + i*gamma_atom)."""
    return _lorentzian(omega, atom.omega, atom.gamma, retarded=True)


def g_single_dag(atom: TwoLevelAtom, omega):
    """-i / (omega - omega_atom - i*gamma_atom); conj of g_single on the real axis."""
    return _lorentzian(omega, atom.omega, atom.gamma, retarded=False)


def g_sum(system: PairSystem, omega):
    """Sum of the two single-emitter responses."""
    return g_single(system.atom_a, omega) + g_single(system.atom_b, omega)


def g_sum_dag(system: PairSystem, omega):
    return g_single_dag(system.atom_a, omega) + g_single_dag(system.atom_b, omega)


def _pair(system: PairSystem, alpha: int, beta: int) -> tuple[TwoLevelAtom, TwoLevelAtom]:
    atoms = system.atoms
    return atoms[alpha], atoms[beta]


def g_tpa(system: PairSystem, alpha: int, beta: int, omega):
    """Two-photon response: pole at omega_alpha + omega_beta, width summed."""
    a, b = _pair(system, alpha, beta)
    return _lorentzian(omega, a.omega + b.omega, a.gamma + b.gamma, retarded=True)


def g_tpa_dag(system: PairSystem, alpha: int, beta: int, omega):
    a, b = _pair(system, alpha, beta)
    return _lorentzian(omega, a.omega + b.omega, a.gamma + b.gamma, retarded=False)


def g_raman(system: PairSystem, alpha: int, beta: int, omega):
    """Raman response: pole at omega_alpha - omega_beta, width summed.

    Swapping the indices and negating a real argument conjugates the value.
    """
    a, b = _pair(system, alpha, beta)
    return _lorentzian(omega, a.omega - b.omega, a.gamma + b.gamma, retarded=True)


def g_raman_dag(system: PairSystem, alpha: int, beta: int, omega):
    a, b = _pair(system, alpha, beta)
    return _lorentzian(omega, a.omega - b.omega, a.gamma + b.gamma, retarded=False)


@dataclass(frozen=True)
class GreenKind:
    """A named response kind with its resolved pole position and width."""

    tag: str
    center: float  # pole real part, cm^-1
    width: float  # pole imaginary magnitude, cm^-1

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"composite width must be positive, got {self.width}")

    @classmethod
    def single(cls, system: PairSystem, alpha: int, dagger: bool = False) -> "GreenKind":
        atom = system.atoms[alpha]
        tag = f"single_dag({alpha})" if dagger else f"single({alpha})"
        return cls(tag, atom.omega, atom.gamma)

    @classmethod
    def tpa(cls, system: PairSystem, alpha: int, beta: int, dagger: bool = False) -> "GreenKind":
        a, b = _pair(system, alpha, beta)
        tag = f"tpa_dag({alpha},{beta})" if dagger else f"tpa({alpha},{beta})"
        return cls(tag, a.omega + b.omega, a.gamma + b.gamma)

    @classmethod
    def raman(cls, system: PairSystem, alpha: int, beta: int, dagger: bool = False) -> "GreenKind":
        a, b = _pair(system, alpha, beta)
        tag = f"raman_dag({alpha},{beta})" if dagger else f"raman({alpha},{beta})"
        return cls(tag, a.omega - b.omega, a.gamma + b.gamma)

    @property
    def dagger(self) -> bool:
        return "_dag" in self.tag

    @property
    def pole(self) -> complex:
        return complex(self.center, self.width if self.dagger else -self.width)

    def evaluate(self, omega):
        return _lorentzian(omega, self.center, self.width, retarded=not self.dagger)
