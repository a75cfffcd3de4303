"""Constants, unit conversions, and relativistic beam kinematics.

Everything internal runs in natural units (hbar = c = 1): energies, momenta,
and wavenumbers in keV, lengths in keV^-1.  Conversions to nm/pm happen only
at I/O boundaries, through the helpers below.  Functions that take or return
nm say so in their names or docstrings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy import optimize, special

from .errors import EvanescentBeamError, ValidationError

# Rest energy of the electron, keV.  Kept at the round value so headline
# numbers from acceptance runs stay recognizable; pass mass= to the kinematics
# factory for other fermions.
ELECTRON_MASS_KEV = 511.0

# Rest energy of the neutron, keV (CODATA, rounded to 10 eV).
NEUTRON_MASS_KEV = 939565.42

# hbar*c in keV nm: the single bridge between keV wavenumbers and nm lengths.
HBARC_KEV_NM = 0.1973269804

# Two-decimal rounded constant in k_perp ~ const / R (R in nm, k_perp in keV).
# The exact value is j'_{1,1} * hbar c = 0.3633 keV nm, where j'_{1,1} locates
# the first maximum of J_1^2; see kperp_from_vortex_radius.
KPERP_RADIUS_CONSTANT_KEV_NM = 0.37

# Relative slack used when validating float identities on construction.
_REL_TOL = 1e-9


def nm_to_natural(length_nm: float) -> float:
    """Length in nm -> length in keV^-1."""
    return length_nm / HBARC_KEV_NM


def natural_to_nm(length_natural: float) -> float:
    """Length in keV^-1 -> length in nm."""
    return length_natural * HBARC_KEV_NM


def natural_to_pm(length_natural: float) -> float:
    """Length in keV^-1 -> length in pm."""
    return length_natural * HBARC_KEV_NM * 1e3


def nm_to_pm(length_nm: float) -> float:
    return length_nm * 1e3


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of scale constants.

    bohr_magneton only labels the effective-field map recovered from a matrix
    mask (B_eff = a_vec / bohr_magneton); it never enters beam numerics, so
    the default symbolic value 1.0 leaves the map in raw amplitude units.
    """

    electron_mass: float = ELECTRON_MASS_KEV   # keV
    hbar_c: float = HBARC_KEV_NM               # keV nm
    bohr_magneton: float = 1.0                 # symbolic scale

    def __post_init__(self) -> None:
        if self.electron_mass <= 0 or self.hbar_c <= 0 or self.bohr_magneton <= 0:
            raise ValidationError("physical constants must be strictly positive")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class BeamKinematics:
    """Relativistic kinematics of a monochromatic Bessel-type beam.

    All members in keV.  total_energy includes the rest mass:
    E = m + T,  E^2 = k^2 + m^2,  k^2 = k_z^2 + k_perp^2.
    """

    mass: float
    kinetic_energy: float
    total_energy: float
    k: float
    k_z: float
    k_perp: float

    def __post_init__(self) -> None:
        if self.mass <= 0:
            raise ValidationError("mass must be positive")
        if self.kinetic_energy < 0:
            raise ValidationError("kinetic energy must be nonnegative")
        if self.k_perp < 0 or self.k_z < 0:
            raise ValidationError("momentum components must be nonnegative")
        e_scale = max(self.total_energy, 1.0)
        if abs(self.total_energy - (self.mass + self.kinetic_energy)) > _REL_TOL * e_scale:
            raise ValidationError("total energy inconsistent with mass + kinetic energy")
        if abs(self.total_energy**2 - (self.k**2 + self.mass**2)) > _REL_TOL * e_scale**2:
            raise ValidationError("energy-momentum relation violated")
        if abs(self.k**2 - (self.k_z**2 + self.k_perp**2)) > _REL_TOL * max(self.k, 1.0) ** 2:
            raise ValidationError("momentum decomposition violated")
        if not self.paraxiality < 1.0:
            raise ValidationError("k_perp/(E+m) must stay below 1")

    @property
    def paraxiality(self) -> float:
        """k_perp / (E + m); small for paraxial beams."""
        return self.k_perp / (self.total_energy + self.mass)

    def with_k_perp(self, k_perp: float) -> "BeamKinematics":
        """Same particle and acceleration, different transverse momentum."""
        return kinematics_from_voltage(self.kinetic_energy, k_perp, mass=self.mass)


def kinematics_from_voltage(
    kinetic_energy: float,
    k_perp: float = 0.0,
    mass: float = ELECTRON_MASS_KEV,
) -> BeamKinematics:
    """Build BeamKinematics from accelerating energy and transverse momentum.

    Parameters are in keV; kinetic_energy is the electron-gun energy (e.g.
    200.0 for a 200 kV microscope).  Raises EvanescentBeamError when k_perp'
    exceeds the total momentum sqrt(T(T+2m)).
    """
    if mass <= 0:
        raise ValidationError("mass must be positive")
    if kinetic_energy < 0:
        raise ValidationError("kinetic energy must be nonnegative")
    if k_perp < 0:
        raise ValidationError("k_perp must be nonnegative")
    total_energy = mass + kinetic_energy
    # sqrt(T(T+2m)) is better conditioned than sqrt(E^2-m^2) for small T
    k = math.sqrt(kinetic_energy * (kinetic_energy + 2.0 * mass))
    if k_perp > k:
        raise EvanescentBeamError(
            f"k_perp={k_perp} keV exceeds total momentum k={k:.6g} keV"
        )
    k_z = math.sqrt((k - k_perp) * (k + k_perp))
    return BeamKinematics(
        mass=mass,
        kinetic_energy=kinetic_energy,
        total_energy=total_energy,
        k=k,
        k_z=k_z,
        k_perp=k_perp,
    )


def angle_parametrization(theta0: float, k: float) -> tuple[float, float]:
    """Split total momentum by polar angle: (k_z, k_perp) = k (cos, sin)theta0."""
    if not 0.0 <= theta0 < math.pi / 2:
        raise ValidationError("theta0 must lie in [0, pi/2)")
    if k <= 0:
        raise ValidationError("k must be positive")
    return k * math.cos(theta0), k * math.sin(theta0)


@lru_cache(maxsize=1)
def first_maximum_of_j1_squared() -> float:
    """Position of the first maximum of J_1(x)^2, located numerically.

    Agrees with the first zero of J_1' at 1.8411837813... to the optimizer
    tolerance.
    """
    result = optimize.minimize_scalar(
        lambda x: -special.j1(x) ** 2,
        bounds=(0.5, 3.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(result.x)


def kperp_from_vortex_radius(radius_nm: float, mode: str = "rounded_constant") -> float:
    """Transverse momentum (keV) that puts the first ring maximum at radius_nm.

    mode "rounded_constant" uses the two-decimal estimate 0.37/R; mode
    "exact_maximum" uses x*/R with x* the numerically located first maximum
    of J_1^2 (x* hbar c = 0.3633 keV nm).
    """
    if radius_nm <= 0:
        raise ValidationError("vortex radius must be positive")
    if mode == "rounded_constant":
        return KPERP_RADIUS_CONSTANT_KEV_NM / radius_nm
    if mode == "exact_maximum":
        return first_maximum_of_j1_squared() * HBARC_KEV_NM / radius_nm
    raise ValidationError(f"unknown mode {mode!r}; use 'rounded_constant' or 'exact_maximum'")
