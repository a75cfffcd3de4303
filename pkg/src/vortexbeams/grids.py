"""Square sampling grids and aperture windows.

Grids are centered: pixel (ny//2, nx//2) sits exactly at the origin, and
coordinates are pixel-center values (i - n//2) * d.  Spacings are in natural
units (keV^-1) for real-space grids and keV for Fourier-space grids; the
GridSpec itself is unit-agnostic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special

from .errors import ApertureError, SamplingError, ValidationError

# Refuse transverse wavenumbers above a quarter of the Nyquist limit pi/dx.
SAMPLING_MARGIN = 4.0

# Default aperture radius as a fraction of the grid half-width.
DEFAULT_APERTURE_FRACTION = 0.45

# Default ratio of aperture radius to the erfc edge width sigma.
DEFAULT_EDGE_RATIO = 16.0


@dataclass(frozen=True)
class GridSpec:
    """Uniform 2D sampling lattice, origin at the central pixel."""

    nx: int
    ny: int
    dx: float
    dy: float

    def __post_init__(self) -> None:
        if self.nx < 16 or self.ny < 16:
            raise ValidationError("grids below 16x16 are refused")
        if self.dx <= 0 or self.dy <= 0:
            raise ValidationError("grid spacings must be positive")

    @classmethod
    def square(cls, n: int, d: float) -> "GridSpec":
        return cls(nx=n, ny=n, dx=d, dy=d)

    @cached_property
    def x(self) -> np.ndarray:
        return (np.arange(self.nx) - self.nx // 2) * self.dx

    @cached_property
    def y(self) -> np.ndarray:
        return (np.arange(self.ny) - self.ny // 2) * self.dy

    @cached_property
    def xx(self) -> np.ndarray:
        return np.broadcast_to(self.x[np.newaxis, :], (self.ny, self.nx))

    @cached_property
    def yy(self) -> np.ndarray:
        return np.broadcast_to(self.y[:, np.newaxis], (self.ny, self.nx))

    @cached_property
    def rr(self) -> np.ndarray:
        return np.hypot(self.xx, self.yy)

    @cached_property
    def phi(self) -> np.ndarray:
        # atan2(0, 0) = 0, so the central pixel carries phase 0 by convention
        return np.arctan2(self.yy, self.xx)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def half_width(self) -> float:
        """Half of the smaller grid extent."""
        return 0.5 * min(self.nx * self.dx, self.ny * self.dy)

    def k_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Angular wavenumber axes in FFT (unshifted) order."""
        kx = 2.0 * np.pi * np.fft.fftfreq(self.nx, d=self.dx)
        ky = 2.0 * np.pi * np.fft.fftfreq(self.ny, d=self.dy)
        return kx, ky

    def fourier_dual(self) -> "GridSpec":
        """Grid of the DC-centered discrete Fourier transform."""
        return GridSpec(
            nx=self.nx,
            ny=self.ny,
            dx=2.0 * np.pi / (self.nx * self.dx),
            dy=2.0 * np.pi / (self.ny * self.dy),
        )


def ensure_sampling(grid: GridSpec, k_perp: float) -> None:
    """Refuse wavenumbers too close to the grid Nyquist limit."""
    limit = math.pi / (SAMPLING_MARGIN * max(grid.dx, grid.dy))
    if k_perp >= limit:
        raise SamplingError(
            f"k_perp={k_perp:.6g} needs k_perp*dx < pi/{SAMPLING_MARGIN:g}; "
            f"limit here is {limit:.6g}"
        )


def default_aperture_radius(grid: GridSpec) -> float:
    return DEFAULT_APERTURE_FRACTION * grid.half_width


def smooth_disk_window(
    grid: GridSpec,
    radius: float | None = None,
    edge_width: float | None = None,
) -> np.ndarray:
    """Radially symmetric window: 1 inside radius, 0 outside, erfc edge.

    edge_width is the Gaussian sigma of the edge profile
    0.5*erfc((r - radius)/(sqrt 2 sigma)); edge_width=0 gives a hard disk.
    Defaults: radius 0.45*half_width, edge_width radius/16.
    """
    if radius is None:
        radius = default_aperture_radius(grid)
    if radius <= 0:
        raise ApertureError("aperture radius must be positive")
    if radius > grid.half_width:
        raise ApertureError(
            f"aperture radius {radius:.6g} exceeds grid half-width {grid.half_width:.6g}"
        )
    if edge_width is None:
        edge_width = radius / DEFAULT_EDGE_RATIO
    if edge_width < 0:
        raise ApertureError("edge width must be nonnegative")
    if edge_width == 0.0:
        return (grid.rr <= radius).astype(float)
    return 0.5 * special.erfc((grid.rr - radius) / (math.sqrt(2.0) * edge_width))
