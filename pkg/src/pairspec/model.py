"""Core data model: emitters, pair geometry, pulse shaping, configuration I/O.

All frequencies and decay rates are wavenumbers in cm^-1, positions are in cm,
delays in fs.  Phase profiles are Taylor polynomials about a reference
wavenumber and can be evaluated at complex argument.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * math.pi

# speed of light in cm/fs; converts a delay in fs to a linear phase
# coefficient 2*pi*c*T in (cm^-1)^-1
SPEED_OF_LIGHT_CM_FS = 2.99792458e-5


class ConfigurationError(ValueError):
    """Raised when a system or pulse description is unusable."""


class PoleProximityError(ValueError):
    """Raised when a response function is evaluated on top of its pole."""


class GridError(ValueError):
    """Raised when a scan grid violates a precondition (e.g. too coarse)."""


def _as_position(value) -> tuple[float, float, float]:
    pos = tuple(float(v) for v in value)
    if len(pos) != 3:
        raise ConfigurationError(f"position must have 3 components, got {len(pos)}")
    if not all(math.isfinite(v) for v in pos):
        raise ConfigurationError(f"position must be finite, got {pos}")
    return pos


@dataclass(frozen=True)
class TwoLevelAtom:
    """A single two-level emitter."""

    omega: float  # transition wavenumber, cm^-1
    gamma: float  # homogeneous half width, cm^-1
    mu_rel: float = 1.0  # dipole magnitude relative to the reference atom
    position: tuple[float, float, float] = (0.0, 0.0, 0.0)  # cm

    def __post_init__(self):
        object.__setattr__(self, "position", _as_position(self.position))
        if self.omega <= 0:
            raise ConfigurationError(f"transition wavenumber must be positive, got {self.omega}")
        if self.gamma <= 0:
            raise ConfigurationError(f"line width must be positive, got {self.gamma}")
        if self.mu_rel <= 0:
            raise ConfigurationError(f"relative dipole must be positive, got {self.mu_rel}")

    @property
    def pole(self) -> complex:
        """Lower half-plane pole omega - i*gamma of the retarded response."""
        return complex(self.omega, -self.gamma)


def complement(index: int) -> int:
    """Index of the partner atom: 0 <-> 1."""
    if index not in (0, 1):
        raise ConfigurationError(f"atom index must be 0 or 1, got {index}")
    return 1 - index


@dataclass(frozen=True)
class PairSystem:
    """Two emitters coupled through the vacuum, plus bookkeeping constants.

    ``coupling_scale`` is the prefactor g0 of the dipole-dipole kernels.  The
    string ``"auto"`` calibrates it so the diagonal coupling of atom A at its
    own transition equals gamma_a, i.e. g0 = gamma_a / (mu_a^2 * omega_a^3).
    ``k0_magnitude`` is the carrier wavevector magnitude in rad/cm; ``"auto"``
    resolves to 2*pi times the mean transition wavenumber.
    """

    atom_a: TwoLevelAtom
    atom_b: TwoLevelAtom
    n_pairs: float = 1.0
    coupling_scale: float | str = "auto"
    k0_direction: tuple[float, float, float] = (0.0, 0.0, 1.0)
    k0_magnitude: float | str = "auto"

    def __post_init__(self):
        direction = np.asarray(self.k0_direction, dtype=float)
        norm = float(np.linalg.norm(direction))
        if norm == 0.0 or not np.isfinite(norm):
            raise ConfigurationError("k0_direction must be a nonzero finite vector")
        object.__setattr__(self, "k0_direction", tuple(direction / norm))
        if self.n_pairs <= 0:
            raise ConfigurationError(f"n_pairs must be positive, got {self.n_pairs}")
        if isinstance(self.coupling_scale, str):
            if self.coupling_scale != "auto":
                raise ConfigurationError(f"coupling_scale must be a number or 'auto', got {self.coupling_scale!r}")
        elif self.coupling_scale < 0:
            raise ConfigurationError("coupling_scale must be nonnegative")
        if isinstance(self.k0_magnitude, str) and self.k0_magnitude != "auto":
            raise ConfigurationError(f"k0_magnitude must be a number or 'auto', got {self.k0_magnitude!r}")

    @property
    def atoms(self) -> tuple[TwoLevelAtom, TwoLevelAtom]:
        return (self.atom_a, self.atom_b)

    @property
    def g0(self) -> float:
        """Resolved coupling prefactor."""
        if self.coupling_scale == "auto":
            a = self.atom_a
            return a.gamma / (a.mu_rel**2 * a.omega**3)
        return float(self.coupling_scale)

    @property
    def k0(self) -> np.ndarray:
        """Carrier wavevector in rad/cm."""
        if self.k0_magnitude == "auto":
            magnitude = TWO_PI * 0.5 * (self.atom_a.omega + self.atom_b.omega)
        else:
            magnitude = float(self.k0_magnitude)
        return magnitude * np.asarray(self.k0_direction)

    @property
    def separation(self) -> float:
        """Interatomic distance in cm."""
        ra = np.asarray(self.atom_a.position)
        rb = np.asarray(self.atom_b.position)
        return float(np.linalg.norm(ra - rb))

    def geometry_phase(self, alpha: int, beta: int) -> complex:
        """Unit-modulus factor exp(-i k0 . (r_alpha - r_beta)).

        The product with the index-swapped factor is exactly 1.
        """
        ra = np.asarray(self.atoms[alpha].position)
        rb = np.asarray(self.atoms[beta].position)
        return complex(np.exp(-1j * float(np.dot(self.k0, ra - rb))))

    def key(self) -> tuple:
        """Hashable identity used by coefficient memoization."""
        return (
            self.atom_a,
            self.atom_b,
            self.n_pairs,
            self.coupling_scale,
            self.k0_direction,
            self.k0_magnitude,
        )


@dataclass(frozen=True)
class PhaseProfile:
    """Spectral phase phi(omega) = sum_n coeffs[n] * (omega - reference)^n.

    ``reference`` is the expansion wavenumber (cm^-1); ``coeffs[n]`` has units
    (cm^-1)^-n.  The profile is a polynomial and therefore well defined at
    complex argument, which the closed-form coefficients rely on.
    """

    reference: float
    coeffs: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (0.0,)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, value: float, reference: float) -> "PhaseProfile":
        return cls(reference=reference, coeffs=(float(value),))

    @classmethod
    def delay(cls, t_fs: float, reference: float) -> "PhaseProfile":
        """phi(omega) = 2*pi*c*T*omega for a delay T in fs."""
        c1 = TWO_PI * SPEED_OF_LIGHT_CM_FS * float(t_fs)
        return cls(reference=reference, coeffs=(c1 * reference, c1))

    @classmethod
    def chirp(cls, c2: float, reference: float) -> "PhaseProfile":
        """phi(omega) = C2*(omega - reference)^2 with C2 in (cm^-1)^-2."""
        return cls(reference=reference, coeffs=(0.0, 0.0, float(c2)))

    def value(self, omega):
        """Evaluate the phase at (possibly complex, possibly array) argument."""
        x = np.asarray(omega, dtype=complex) - self.reference
        total = np.zeros_like(x)
        for c in reversed(self.coeffs):
            total = total * x + c
        if np.ndim(omega) == 0:
            return complex(total)
        return total

    def slope(self, omega):
        """d phi / d omega at (possibly complex) argument."""
        x = np.asarray(omega, dtype=complex) - self.reference
        total = np.zeros_like(x)
        for n in range(len(self.coeffs) - 1, 0, -1):
            total = total * x + n * self.coeffs[n]
        if np.ndim(omega) == 0:
            return complex(total)
        return total

    def dominant_order(self) -> int:
        """Highest n >= 1 with a nonzero coefficient; 0 if the phase is flat."""
        for n in range(len(self.coeffs) - 1, 0, -1):
            if self.coeffs[n] != 0.0:
                return n
        return 0

    def with_shifted_constant(self, delta: float) -> "PhaseProfile":
        coeffs = (self.coeffs[0] + delta,) + self.coeffs[1:]
        return replace(self, coeffs=coeffs)

    def key(self) -> tuple:
        return (self.reference, self.coeffs)


@dataclass(frozen=True)
class PulseConfig:
    """Shaped two-component pulse: narrow line at omega_p plus broadband wing."""

    amp_narrow: float = 1.0  # narrowband field amplitude (arbitrary units)
    amp_broad: float = 1.0  # broadband field amplitude (arbitrary units)
    omega_p: float = 4000.0  # narrowband carrier, cm^-1
    xi: float = 0.0  # narrowband phase, rad
    phase: PhaseProfile = field(default_factory=lambda: PhaseProfile(12000.0))

    def __post_init__(self):
        if self.omega_p <= 0:
            raise ConfigurationError(f"omega_p must be positive, got {self.omega_p}")

    def key(self) -> tuple:
        return (self.amp_narrow, self.amp_broad, self.omega_p, self.xi, self.phase.key())


@dataclass(frozen=True)
class SignalSample:
    """One frequency sample of the dispersed transmission change."""

    omega: float  # detection wavenumber, cm^-1
    s_i: float  # semiclassical part
    s_ii: float  # vacuum-correction part
    s_total: float  # s_i + s_ii


def validate(system: PairSystem, pulse: PulseConfig | None = None) -> list[str]:
    """Collect human-readable problems; an empty list means usable."""
    problems: list[str] = []
    if system.separation < 1e-9:
        problems.append(
            f"interatomic separation {system.separation:g} cm is below the 1e-9 cm guard"
        )
    for name, atom in (("a", system.atom_a), ("b", system.atom_b)):
        if atom.gamma > 0.25 * atom.omega:
            problems.append(f"atom {name} width {atom.gamma} is implausibly large vs omega {atom.omega}")
    if pulse is not None:
        if pulse.amp_narrow < 0 or pulse.amp_broad < 0:
            problems.append("field amplitudes must be nonnegative")
        if pulse.phase.reference <= 0:
            problems.append(f"phase reference must be positive, got {pulse.phase.reference}")
    return problems


# ---------------------------------------------------------------------------
# configuration files


_PHASE_MODELS = ("constant", "delay", "chirp", "poly")


def _phase_from_config(block: dict, xi: float, default_reference: float) -> PhaseProfile:
    model = block.get("model", "constant")
    params = dict(block.get("params", {}))
    reference = block.get("reference", "auto")
    ref = default_reference if reference == "auto" else float(reference)
    if model == "constant":
        return PhaseProfile.constant(xi + float(params.get("delta_phi", 0.0)), ref)
    if model == "delay":
        return PhaseProfile.delay(float(params["t_fs"]), ref)
    if model == "chirp":
        return PhaseProfile.chirp(float(params["c2"]), ref)
    if model == "poly":
        return PhaseProfile(reference=ref, coeffs=tuple(float(c) for c in params["coeffs"]))
    raise ConfigurationError(f"unknown phase model {model!r}; expected one of {_PHASE_MODELS}")


def config_from_dict(data: dict) -> tuple[PairSystem, PulseConfig]:
    """Build the in-memory model from a plain configuration dictionary."""
    try:
        atoms = [
            TwoLevelAtom(
                omega=float(entry["omega"]),
                gamma=float(entry["gamma"]),
                mu_rel=float(entry.get("mu_rel", 1.0)),
                position=entry.get("position", (0.0, 0.0, 0.0)),
            )
            for entry in data["atoms"]
        ]
    except KeyError as exc:
        raise ConfigurationError(f"atom entry missing required field {exc}") from exc
    if len(atoms) != 2:
        raise ConfigurationError(f"exactly two atoms are required, got {len(atoms)}")
    k0_block = data.get("k0", {})
    system = PairSystem(
        atom_a=atoms[0],
        atom_b=atoms[1],
        n_pairs=float(data.get("n_pairs", 1.0)),
        coupling_scale=data.get("coupling_scale", "auto"),
        k0_direction=tuple(k0_block.get("direction", (0.0, 0.0, 1.0))),
        k0_magnitude=k0_block.get("magnitude", "auto"),
    )
    pulse_block = data.get("pulse", {})
    xi = float(pulse_block.get("xi", 0.0))
    default_reference = 0.5 * (atoms[0].omega + atoms[1].omega)
    pulse = PulseConfig(
        amp_narrow=float(pulse_block.get("amp_narrow", 1.0)),
        amp_broad=float(pulse_block.get("amp_broad", 1.0)),
        omega_p=float(pulse_block.get("omega_p", 4000.0)),
        xi=xi,
        phase=_phase_from_config(pulse_block.get("phase", {}), xi, default_reference),
    )
    problems = validate(system, pulse)
    if problems:
        raise ConfigurationError("; ".join(problems))
    return system, pulse


def config_to_dict(system: PairSystem, pulse: PulseConfig) -> dict:
    """Serialize to the canonical dictionary layout.

    The phase block is always emitted in explicit polynomial form so that a
    load -> dump -> load round trip reproduces the identical in-memory model.
    """
    return {
        "atoms": [
            {
                "omega": atom.omega,
                "gamma": atom.gamma,
                "mu_rel": atom.mu_rel,
                "position": list(atom.position),
            }
            for atom in system.atoms
        ],
        "n_pairs": system.n_pairs,
        "coupling_scale": system.coupling_scale,
        "k0": {
            "direction": list(system.k0_direction),
            "magnitude": system.k0_magnitude,
        },
        "pulse": {
            "amp_narrow": pulse.amp_narrow,
            "amp_broad": pulse.amp_broad,
            "omega_p": pulse.omega_p,
            "xi": pulse.xi,
            "phase": {
                "model": "poly",
                "reference": pulse.phase.reference,
                "params": {"coeffs": list(pulse.phase.coeffs)},
            },
        },
    }


def default_config_dict() -> dict:
    """Reference pair: 13000/11000 cm^-1 emitters, width 200 cm^-1, second
    dipole at 0.99 of the first, separated by 0.01 reference wavelengths."""
    separation = 0.01 / 13000.0
    return {
        "atoms": [
            {"omega": 13000.0, "gamma": 200.0, "mu_rel": 1.0, "position": (0.0, 0.0, 0.0)},
            {"omega": 11000.0, "gamma": 200.0, "mu_rel": 0.99, "position": (separation, 0.0, 0.0)},
        ],
        "n_pairs": 1.0,
        "coupling_scale": "auto",
        "k0": {"direction": (0.0, 0.0, 1.0), "magnitude": "auto"},
        "pulse": {
            "amp_narrow": 1.0,
            "amp_broad": 1.0,
            "omega_p": 4000.0,
            "xi": 0.0,
            "phase": {"model": "constant", "params": {"delta_phi": 0.0}, "reference": "auto"},
        },
    }


def default_config() -> tuple[PairSystem, PulseConfig]:
    return config_from_dict(default_config_dict())


def load_config(path: str | Path) -> tuple[PairSystem, PulseConfig]:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    return config_from_dict(data)


def save_config(path: str | Path, system: PairSystem, pulse: PulseConfig) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(config_to_dict(system, pulse), handle, indent=2, sort_keys=True)
        handle.write("\n")
