"""Complex scalar and spinor fields on centered grids, plus the core operators:
unitary Fourier transform, midpoint-rule norms, spectral angular momentum, and
winding-number (topological charge) measurement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import ndimage, special

from .errors import (
    AmbiguousChargeError,
    DegenerateFieldError,
    GridMismatchError,
    ValidationError,
)
from .grids import GridSpec, smooth_disk_window

ArrayC = np.ndarray  # complex128, shape (ny, nx)

# Loop samples fall below this fraction of the global peak -> charge ambiguous.
CHARGE_AMPLITUDE_FLOOR = 1e-6


def _freeze(values: np.ndarray) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.complex128)
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class ComplexField:
    """One complex component sampled on a GridSpec.  Immutable."""

    grid: GridSpec
    values: ArrayC

    def __post_init__(self) -> None:
        if self.values.shape != self.grid.shape:
            raise ValidationError(
                f"values shape {self.values.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.values.view(float))):
            raise ValidationError("field values must be finite")
        object.__setattr__(self, "values", _freeze(self.values))

    def density(self) -> np.ndarray:
        rho = np.abs(self.values) ** 2
        assert np.all(rho >= 0.0)
        return rho

    def __add__(self, other: "ComplexField") -> "ComplexField":
        _require_same_grid(self.grid, other.grid)
        return ComplexField(self.grid, self.values + other.values)

    def __sub__(self, other: "ComplexField") -> "ComplexField":
        _require_same_grid(self.grid, other.grid)
        return ComplexField(self.grid, self.values - other.values)

    def __mul__(self, other: Union["ComplexField", complex, float, np.ndarray]):
        if isinstance(other, ComplexField):
            _require_same_grid(self.grid, other.grid)
            return ComplexField(self.grid, self.values * other.values)
        return ComplexField(self.grid, self.values * other)

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexField":
        return ComplexField(self.grid, np.conj(self.values))


@dataclass(frozen=True)
class Spinor2Field:
    """Two-component (Pauli) field; both components share one grid."""

    up: ComplexField
    down: ComplexField

    def __post_init__(self) -> None:
        _require_same_grid(self.up.grid, self.down.grid)

    @property
    def grid(self) -> GridSpec:
        return self.up.grid

    @property
    def components(self) -> tuple[ComplexField, ComplexField]:
        return (self.up, self.down)

    def density(self) -> np.ndarray:
        rho = self.up.density() + self.down.density()
        assert np.all(rho >= 0.0)
        return rho

    def __add__(self, other: "Spinor2Field") -> "Spinor2Field":
        return Spinor2Field(self.up + other.up, self.down + other.down)

    def __mul__(self, scale) -> "Spinor2Field":
        return Spinor2Field(self.up * scale, self.down * scale)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Spinor4Field:
    """Four-component (Dirac) field; all components share one grid."""

    components: tuple[ComplexField, ComplexField, ComplexField, ComplexField]

    def __post_init__(self) -> None:
        if len(self.components) != 4:
            raise ValidationError("a Dirac field has exactly 4 components")
        for c in self.components[1:]:
            _require_same_grid(self.components[0].grid, c.grid)

    @property
    def grid(self) -> GridSpec:
        return self.components[0].grid

    def stack(self) -> np.ndarray:
        """(4, ny, nx) read-only view of the component values."""
        return np.stack([c.values for c in self.components])

    def density(self) -> np.ndarray:
        rho = sum(c.density() for c in self.components)
        assert np.all(rho >= 0.0)
        return rho

    def __add__(self, other: "Spinor4Field") -> "Spinor4Field":
        return Spinor4Field(tuple(a + b for a, b in zip(self.components, other.components)))

    def __mul__(self, scale) -> "Spinor4Field":
        return Spinor4Field(tuple(c * scale for c in self.components))

    __rmul__ = __mul__


AnyField = Union[ComplexField, Spinor2Field, Spinor4Field]


def _require_same_grid(a: GridSpec, b: GridSpec) -> None:
    if a != b:
        raise GridMismatchError(f"grids differ: {a} vs {b}")


def _component_list(field: AnyField) -> list[ComplexField]:
    if isinstance(field, ComplexField):
        return [field]
    if isinstance(field, Spinor2Field):
        return [field.up, field.down]
    return list(field.components)


def _rewrap(field: AnyField, comps: list[ComplexField]) -> AnyField:
    if isinstance(field, ComplexField):
        return comps[0]
    if isinstance(field, Spinor2Field):
        return Spinor2Field(*comps)
    return Spinor4Field(tuple(comps))


@dataclass(frozen=True)
class RadialProfile:
    """Radial samples; radii strictly increasing, starting at 0."""

    radii: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.radii.ndim != 1 or self.radii.shape != self.values.shape:
            raise ValidationError("radii and values must be matching 1D arrays")
        if self.radii[0] != 0.0 or np.any(np.diff(self.radii) <= 0):
            raise ValidationError("radii must start at 0 and increase strictly")


# ---------------------------------------------------------------------------
# radial amplitude descriptors

@dataclass(frozen=True)
class BesselProfile:
    """J_order(k_perp r); the transverse profile of a diffraction-free mode."""

    k_perp: float
    order: int

    def __post_init__(self) -> None:
        if self.k_perp < 0:
            raise ValidationError("k_perp must be nonnegative")
        if not isinstance(self.order, (int, np.integer)):
            raise ValidationError("Bessel order must be an integer")

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return special.jv(self.order, self.k_perp * r)


@dataclass(frozen=True)
class GaussianProfile:
    """exp(-r^2/waist^2) amplitude."""

    waist: float

    def __post_init__(self) -> None:
        if self.waist <= 0:
            raise ValidationError("waist must be positive")

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return np.exp(-((r / self.waist) ** 2))


@dataclass(frozen=True)
class DiskProfile:
    """Unit amplitude inside radius, zero outside (hard aperture)."""

    radius: float

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValidationError("disk radius must be positive")

    def __call__(self, r: np.ndarray) -> np.ndarray:
        return (r <= self.radius).astype(float)


RadialDescriptor = Callable[[np.ndarray], np.ndarray]


def make_scalar_vortex(grid: GridSpec, m: int, radial: RadialDescriptor) -> ComplexField:
    """Phase vortex exp(i m phi) times a radial amplitude.

    The central pixel gets phase 0 (atan2 convention) and whatever amplitude
    the radial descriptor returns at r=0; for a Bessel profile of order m != 0
    that amplitude is 0.
    """
    if not isinstance(m, (int, np.integer)):
        raise ValidationError("vortex order m must be an integer")
    values = radial(grid.rr) * np.exp(1j * m * grid.phi)
    return ComplexField(grid, values)


def plane_wave(grid: GridSpec, kx: float, ky: float = 0.0, amplitude: complex = 1.0) -> ComplexField:
    """Tilted unit plane wave exp(i(kx x + ky y))."""
    return ComplexField(grid, amplitude * np.exp(1j * (kx * grid.xx + ky * grid.yy)))


def apply_aperture(
    field: AnyField,
    radius: float | None = None,
    edge_width: float | None = None,
) -> AnyField:
    """Multiply every component by a smooth disk window (see smooth_disk_window)."""
    window = smooth_disk_window(_component_list(field)[0].grid, radius, edge_width)
    comps = [ComplexField(c.grid, c.values * window) for c in _component_list(field)]
    return _rewrap(field, comps)


# ---------------------------------------------------------------------------
# quadrature and normalization

def quadrature_norm(field: AnyField) -> float:
    """Midpoint-rule integral of the total density over the grid."""
    total = 0.0
    for c in _component_list(field):
        total += float(np.sum(c.density()))
    return total * _component_list(field)[0].grid.cell_area


def normalize(field: AnyField) -> AnyField:
    """Scale so the quadrature norm is 1; refuses zero-weight fields."""
    n = quadrature_norm(field)
    if n <= 0.0 or not math.isfinite(n):
        raise DegenerateFieldError("cannot normalize a field with zero weight")
    return field * (1.0 / math.sqrt(n))


def inner_product(a: AnyField, b: AnyField) -> complex:
    """<a|b> = integral conj(a) . b dA, summed over components."""
    ca, cb = _component_list(a), _component_list(b)
    if len(ca) != len(cb):
        raise ValidationError("cannot take inner product across field kinds")
    _require_same_grid(ca[0].grid, cb[0].grid)
    acc = 0.0 + 0.0j
    for fa, fb in zip(ca, cb):
        acc += np.vdot(fa.values, fb.values)
    return complex(acc * ca[0].grid.cell_area)


def overlap(a: AnyField, b: AnyField) -> float:
    """Normalized overlap |<a|b>| / (|a| |b|), in [0, 1]."""
    na, nb = quadrature_norm(a), quadrature_norm(b)
    if na <= 0.0 or nb <= 0.0:
        raise DegenerateFieldError("overlap with a zero-weight field is undefined")
    return abs(inner_product(a, b)) / math.sqrt(na * nb)


# ---------------------------------------------------------------------------
# Fourier transform (unitary, DC-centered)

def fourier_transform(field: ComplexField, direction: str = "forward") -> ComplexField:
    """Unitary DFT with the origin at the central pixel in both domains.

    Continuum convention F(k) = (2 pi)^-1 integral f(r) exp(-i k.r) d2r, so
    Parseval holds in quadrature measure: sum |F|^2 dk^2 = sum |f|^2 dx^2.
    The result lives on the dual grid (spacing 2 pi / (n d)); forward then
    inverse reproduces the input to roundoff.
    """
    g = field.grid
    if direction == "forward":
        scale = g.dx * g.dy / (2.0 * np.pi)
        out = scale * np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(field.values)))
    elif direction == "inverse":
        scale = g.nx * g.ny * g.dx * g.dy / (2.0 * np.pi)
        out = scale * np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(field.values)))
    else:
        raise ValidationError("direction must be 'forward' or 'inverse'")
    return ComplexField(field.grid.fourier_dual(), out)


def _spectral_derivative(values: np.ndarray, grid: GridSpec, axis_name: str) -> np.ndarray:
    kx, ky = grid.k_axes()
    if axis_name == "x":
        return np.fft.ifft(1j * kx[np.newaxis, :] * np.fft.fft(values, axis=1), axis=1)
    return np.fft.ifft(1j * ky[:, np.newaxis] * np.fft.fft(values, axis=0), axis=0)


def apply_Lz(field: ComplexField) -> ComplexField:
    """Orbital angular momentum about z: -i (x d/dy - y d/dx), spectral derivatives.

    Exactly Hermitian on the discrete grid (coordinate factors commute with the
    opposite-axis derivative), and spectrally accurate for fields that decay
    before the grid edge.
    """
    dpsi_dx = _spectral_derivative(field.values, field.grid, "x")
    dpsi_dy = _spectral_derivative(field.values, field.grid, "y")
    out = -1j * (field.grid.xx * dpsi_dy - field.grid.yy * dpsi_dx)
    return ComplexField(field.grid, out)


def lz_expectation(field: ComplexField) -> float:
    """<L_z> = Re <psi|L_z psi> / <psi|psi>."""
    n = quadrature_norm(field)
    if n <= 0.0:
        raise DegenerateFieldError("expectation value of a zero-weight field")
    num = inner_product(field, apply_Lz(field))
    return num.real / n


def lz_eigen_residual(field: ComplexField, eigenvalue: float) -> float:
    """|| (L_z - eigenvalue) psi || / || psi || in the quadrature L2 norm."""
    n = quadrature_norm(field)
    if n <= 0.0:
        raise DegenerateFieldError("residual of a zero-weight field")
    mismatch = apply_Lz(field) - field * eigenvalue
    return math.sqrt(quadrature_norm(mismatch) / n)


# ---------------------------------------------------------------------------
# topological charge

@dataclass(frozen=True)
class ChargeMeasurement:
    charge: int
    residual: float       # winding - charge, dimensionless fraction of 2 pi
    loop_radius: float
    n_samples: int


def topological_charge(
    field: ComplexField,
    loop_radius: float,
    n_samples: int | None = None,
    amplitude_floor: float = CHARGE_AMPLITUDE_FLOOR,
) -> ChargeMeasurement:
    """Winding number of the phase around a centered circular loop.

    Sums wrapped phase steps between consecutive bilinear samples on the loop
    and divides by 2 pi.  Raises AmbiguousChargeError when any loop sample has
    amplitude below amplitude_floor times the global peak (phase undefined).
    """
    grid = field.grid
    if loop_radius <= 0:
        raise ValidationError("loop radius must be positive")
    if loop_radius >= grid.half_width:
        raise ValidationError("charge loop must fit inside the grid")
    if n_samples is None:
        n_samples = max(256, 8 * int(math.ceil(2.0 * math.pi * loop_radius / min(grid.dx, grid.dy))))
    angles = np.linspace(0.0, 2.0 * math.pi, n_samples, endpoint=False)
    px = loop_radius * np.cos(angles)
    py = loop_radius * np.sin(angles)
    rows = py / grid.dy + grid.ny // 2
    cols = px / grid.dx + grid.nx // 2
    coords = np.vstack([rows, cols])
    samples = (
        ndimage.map_coordinates(field.values.real, coords, order=1, mode="nearest")
        + 1j * ndimage.map_coordinates(field.values.imag, coords, order=1, mode="nearest")
    )
    peak = float(np.max(np.abs(field.values)))
    if peak == 0.0:
        raise AmbiguousChargeError("field is identically zero")
    weak = np.abs(samples) < amplitude_floor * peak
    if np.any(weak):
        raise AmbiguousChargeError(
            f"{int(np.sum(weak))}/{n_samples} loop samples below "
            f"{amplitude_floor:g} of the peak amplitude; winding undefined"
        )
    steps = np.angle(np.roll(samples, -1) * np.conj(samples))
    winding = float(np.sum(steps)) / (2.0 * math.pi)
    charge = int(round(winding))
    return ChargeMeasurement(
        charge=charge,
        residual=winding - charge,
        loop_radius=loop_radius,
        n_samples=n_samples,
    )


# ---------------------------------------------------------------------------
# radial averaging

def radial_average(field: AnyField, nbins: int, r_max: float | None = None) -> RadialProfile:
    """Azimuthal average of the total density in annular bins.

    Bin j is centered on radius j*dr (bin 0 on the axis); empty bins yield 0.
    """
    if nbins < 8:
        raise ValidationError("use at least 8 radial bins")
    grid = _component_list(field)[0].grid
    if r_max is None:
        r_max = grid.half_width
    if r_max <= 0:
        raise ValidationError("r_max must be positive")
    dr = r_max / nbins
    rho = field.density()
    idx = np.floor(grid.rr / dr + 0.5).astype(int)
    keep = idx < nbins
    counts = np.bincount(idx[keep], minlength=nbins)
    sums = np.bincount(idx[keep], weights=rho[keep], minlength=nbins)
    values = np.divide(sums, counts, out=np.zeros(nbins), where=counts > 0)
    radii = np.arange(nbins) * dr
    return RadialProfile(radii=radii, values=values)
