"""Fork holograms, scalar and matrix-valued, with far-field order analysis.

A scalar mask records the interference of a tilted plane reference with a
unit-amplitude phase vortex inside a circular aperture.  Illuminating the
mask with the same tilted reference and Fourier transforming produces three
lobes, displaced by 0, k_x and 2 k_x: the target vortex, the reference, and
the conjugate vortex.  Binarizing the fringes at their median keeps the fork
dislocations (and hence the measured charges) intact while adding odd
harmonic orders.

The matrix-valued generalization transmits a 2-spinor through a per-pixel
2x2 matrix M chosen so that M psi_R = C1 psi_R + C2 psi_T + C3 conj(psi_T)
holds identically.  With two equations and four unknowns per pixel the
diagonal solution is used throughout; it exists wherever the reference has
both components nonzero.  The C_i accept per-pixel arrays: in particular
C3 = exp(2 i k_x x) rides the conjugate out to the 2 k_x lobe, which keeps
the target lobe clean exactly as in the scalar case.  pauli_decompose splits
M into identity and Pauli parts, the map an aperture would need as an
effective magnetic-coupling profile, and reports how far M is from Hermitian
(realizable) form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy import ndimage

from .errors import (
    ApertureError,
    MaskSingularityError,
    OrderOverlapError,
    ValidationError,
)
from .fields import (
    ChargeMeasurement,
    ComplexField,
    Spinor2Field,
    fourier_transform,
    overlap,
    topological_charge,
)
from .grids import GridSpec

_TILT_MARGIN = 4  # fringes need the same headroom as vortex phase ramps

PixelValue = Union[complex, float, np.ndarray]


def _check_tilt(grid: GridSpec, tilt_kx: float) -> None:
    if tilt_kx <= 0.0:
        raise ValidationError("tilt must be positive")
    if tilt_kx * grid.dx >= math.pi / _TILT_MARGIN:
        raise ValidationError(
            f"tilt {tilt_kx:.4g} gives under-resolved fringes on dx={grid.dx:.4g} "
            f"(need tilt*dx < pi/{_TILT_MARGIN})"
        )


def _check_aperture(grid: GridSpec, radius: float) -> None:
    if not 0.0 < radius <= grid.half_width:
        raise ApertureError(
            f"aperture radius {radius:.4g} outside (0, {grid.half_width:.4g}]"
        )


@dataclass(frozen=True)
class HologramMask:
    """Scalar transmission pattern plus the parameters that shaped it."""

    grid: GridSpec
    transmission: np.ndarray
    tilt_kx: float
    target_n: int
    aperture_radius: float
    binarized: bool

    def __post_init__(self) -> None:
        t = np.asarray(self.transmission, dtype=float)
        if t.shape != self.grid.shape:
            raise ValidationError("transmission shape does not match grid")
        if np.any(t < 0.0):
            raise ValidationError("transmission must be nonnegative")
        if self.binarized:
            if not np.all((t == 0.0) | (t == 1.0)):
                raise ValidationError("binarized mask must be 0/1 valued")
        t.setflags(write=False)
        object.__setattr__(self, "transmission", t)


def synthesize_scalar_mask(
    target_n: int,
    tilt_kx: float,
    aperture_radius: float,
    grid: GridSpec,
    binarize: bool = True,
) -> HologramMask:
    """Fork mask for a charge-n target: |e^{i k_x x} + e^{i n phi}|^2 in a disk.

    Raw masks keep the cosine fringes; binarize thresholds at the median
    value inside the aperture for a ~50% duty cycle.
    """
    if target_n != int(target_n):
        raise ValidationError("target charge must be an integer")
    _check_tilt(grid, tilt_kx)
    _check_aperture(grid, aperture_radius)
    inside = grid.rr <= aperture_radius
    raw = 2.0 + 2.0 * np.cos(tilt_kx * grid.xx - target_n * grid.phi)
    if binarize:
        t = (raw > np.median(raw[inside])).astype(float)
    else:
        t = raw
    return HologramMask(
        grid=grid,
        transmission=t * inside,
        tilt_kx=tilt_kx,
        target_n=int(target_n),
        aperture_radius=aperture_radius,
        binarized=binarize,
    )


def binarize_mask(mask: HologramMask) -> HologramMask:
    """Threshold a raw mask at its in-aperture median."""
    if mask.binarized:
        return mask
    inside = mask.grid.rr <= mask.aperture_radius
    t = (mask.transmission > np.median(mask.transmission[inside])).astype(float)
    return HologramMask(
        grid=mask.grid,
        transmission=t * inside,
        tilt_kx=mask.tilt_kx,
        target_n=mask.target_n,
        aperture_radius=mask.aperture_radius,
        binarized=True,
    )


def reconstruct_far_field(mask: HologramMask, illumination: ComplexField) -> ComplexField:
    """Far field of the illuminated mask: FFT(transmission x illumination)."""
    if illumination.grid != mask.grid:
        raise ValidationError("illumination grid does not match the mask")
    return fourier_transform(illumination * mask.transmission, "forward")


# --- far-field order bookkeeping --------------------------------------------


@dataclass(frozen=True)
class ExtractedOrder:
    """One diffraction lobe, re-centered, with its measured charge."""

    index: int
    offset_px: int
    field: ComplexField
    charge: ChargeMeasurement


def measure_vortex_charge(
    field: ComplexField,
    loop_radius: float | None = None,
) -> ChargeMeasurement:
    """Winding number on an auto-selected loop.

    Without an explicit radius, candidate loops are scored by their weakest
    amplitude sample and the strongest-weakest-point loop wins.  That keeps
    the loop on a vortex ring and away from diffraction nulls, where phase is
    leakage-dominated and windings come out wrong.
    """
    if loop_radius is None:
        grid = field.grid
        d = max(grid.dx, grid.dy)
        radii = np.linspace(2.0 * d, 0.9 * grid.half_width, 48)
        angles = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        rows = radii[:, None] * np.sin(angles)[None, :] / grid.dy + grid.ny // 2
        cols = radii[:, None] * np.cos(angles)[None, :] / grid.dx + grid.nx // 2
        amp = ndimage.map_coordinates(
            np.abs(field.values), np.stack([rows, cols]), order=1, mode="nearest"
        )
        loop_radius = float(radii[int(np.argmax(amp.min(axis=1)))])
    return topological_charge(field, loop_radius)


def extract_order(
    farfield: ComplexField,
    order: int,
    carrier: float,
    window_radius_px: int,
) -> ExtractedOrder:
    """Cut a circular window around lobe `order` (center order*carrier on the
    k_x axis), re-center it, and measure its charge.

    carrier is the reference tilt in the far-field's frequency units; the
    window must stay clear of the neighboring lobes.
    """
    grid = farfield.grid
    if window_radius_px < 2:
        raise ValidationError("window radius must be at least 2 px")
    step_px = carrier / grid.dx
    if step_px <= 0.0:
        raise ValidationError("carrier must be positive")
    if window_radius_px >= 0.5 * step_px:
        raise OrderOverlapError(
            f"window of {window_radius_px} px reaches into the neighboring order "
            f"({step_px:.1f} px away)"
        )
    offset_px = int(round(order * step_px))
    if abs(offset_px) + window_radius_px >= grid.nx // 2:
        raise ValidationError(f"order {order} center falls outside the grid")

    centered = np.roll(farfield.values, -offset_px, axis=1)
    keep = grid.rr <= window_radius_px * grid.dx
    lobe = ComplexField(grid, centered * keep)
    return ExtractedOrder(
        index=order,
        offset_px=offset_px,
        field=lobe,
        charge=measure_vortex_charge(lobe),
    )


def order_report(
    farfield: ComplexField,
    carrier: float,
    orders: Sequence[int],
    window_radius_px: int,
    analytic_reference: Optional[ComplexField] = None,
) -> dict:
    """JSON-ready summary of the requested lobes.

    When analytic_reference is given (the ideal target far field), the
    normalized overlap of the order-0 lobe against it is included.
    """
    rows = []
    overlap_value = None
    for idx in orders:
        ext = extract_order(farfield, idx, carrier, window_radius_px)
        rows.append(
            {
                "index": ext.index,
                "offset_px": ext.offset_px,
                "charge": ext.charge.charge,
                "residual": ext.charge.residual,
            }
        )
        if idx == 0 and analytic_reference is not None:
            overlap_value = overlap(ext.field, analytic_reference)
    return {
        "schema_version": 1,
        "orders": rows,
        "overlap_with_analytic": overlap_value,
    }


# --- spinor targets and matrix masks ----------------------------------------


def make_disk_vortex(grid: GridSpec, n: int, aperture_radius: float) -> ComplexField:
    """Unit-amplitude charge-n phase vortex inside a hard disk."""
    _check_aperture(grid, aperture_radius)
    inside = grid.rr <= aperture_radius
    return ComplexField(grid, np.exp(1j * n * grid.phi) * inside)


def make_jz_disk_target(
    n: int,
    grid: GridSpec,
    aperture_radius: float,
    h_perp: int = +1,
) -> Spinor2Field:
    """Disk-bounded spinor with component vortices (n, n+1), equal weights.

    The holographic counterpart of the equal-weight (n, n+1) beam: component
    charges n and n+1, total angular momentum label n + 1/2.
    """
    if h_perp not in (+1, -1):
        raise ValidationError("h_perp must be +1 or -1")
    amp = 1.0 / math.sqrt(2.0)
    up = make_disk_vortex(grid, n, aperture_radius) * amp
    down = make_disk_vortex(grid, n + 1, aperture_radius) * (h_perp * amp)
    return Spinor2Field(up, down)


def spinor_plane_reference(grid: GridSpec, tilt_kx: float) -> Spinor2Field:
    """Tilted plane wave with equal amplitude in both components."""
    _check_tilt(grid, tilt_kx)
    amp = 1.0 / math.sqrt(2.0)
    vals = amp * np.exp(1j * tilt_kx * grid.xx)
    return Spinor2Field(ComplexField(grid, vals), ComplexField(grid, vals.copy()))


@dataclass(frozen=True)
class MatrixMask:
    """Per-pixel 2x2 complex transmission matrix (a b; c d)."""

    a: ComplexField
    b: ComplexField
    c: ComplexField
    d: ComplexField

    def __post_init__(self) -> None:
        g = self.a.grid
        for entry in (self.b, self.c, self.d):
            if entry.grid != g:
                raise ValidationError("matrix entries must share one grid")

    @property
    def grid(self) -> GridSpec:
        return self.a.grid

    def entries(self) -> tuple[ComplexField, ComplexField, ComplexField, ComplexField]:
        return (self.a, self.b, self.c, self.d)


def apply_matrix_mask(mask: MatrixMask, field: Spinor2Field) -> Spinor2Field:
    """(a b; c d) acting on (up; down) per pixel."""
    if field.grid != mask.grid:
        raise ValidationError("field grid does not match the mask")
    up = mask.a.values * field.up.values + mask.b.values * field.down.values
    down = mask.c.values * field.up.values + mask.d.values * field.down.values
    g = mask.grid
    return Spinor2Field(ComplexField(g, up), ComplexField(g, down))


def synthesize_matrix_mask(
    target: Spinor2Field,
    reference: Spinor2Field,
    c1: PixelValue = 1.0,
    c2: PixelValue = 1.0,
    c3: PixelValue = 1.0,
    swap_conjugate: bool = False,
) -> MatrixMask:
    """Diagonal matrix mask with M psi_R = c1 psi_R + c2 psi_T + c3 conj(psi_T).

    The c_i may be scalars or per-pixel arrays.  A per-pixel c3 carrying a
    2 k_x phase ramp moves the conjugate term onto its own far-field lobe.
    swap_conjugate exchanges the up/down components of conj(psi_T) before the
    solve, the alternative coupling the matrix form permits.
    """
    if target.grid != reference.grid:
        raise ValidationError("target and reference grids differ")
    grid = target.grid
    ref_up, ref_down = reference.up.values, reference.down.values
    floor = 1e-9 * max(np.abs(ref_up).max(), np.abs(ref_down).max())
    if min(np.abs(ref_up).min(), np.abs(ref_down).min()) <= floor:
        raise MaskSingularityError(
            "reference amplitude vanishes somewhere; the diagonal solve divides by it"
        )
    conj_up = np.conj(target.up.values)
    conj_down = np.conj(target.down.values)
    if swap_conjugate:
        conj_up, conj_down = conj_down, conj_up
    a = (c1 * ref_up + c2 * target.up.values + c3 * conj_up) / ref_up
    d = (c1 * ref_down + c2 * target.down.values + c3 * conj_down) / ref_down
    zero = ComplexField(grid, np.zeros(grid.shape, dtype=np.complex128))
    return MatrixMask(a=ComplexField(grid, a), b=zero, c=zero, d=ComplexField(grid, d))


def synthesize_spinor_fork_mask(
    n: int,
    tilt_kx: float,
    aperture_radius: float,
    grid: GridSpec,
    h_perp: int = +1,
) -> tuple[MatrixMask, Spinor2Field]:
    """Matrix mask whose order-0 lobe carries the (n, n+1) spinor vortex.

    Returns the mask together with the tilted reference it was built for.
    The conjugate coefficient rides a 2 k_x carrier so the three lobes
    separate exactly as in the scalar reconstruction.
    """
    target = make_jz_disk_target(n, grid, aperture_radius, h_perp)
    reference = spinor_plane_reference(grid, tilt_kx)
    c3 = np.exp(2j * tilt_kx * grid.xx)
    mask = synthesize_matrix_mask(target, reference, c3=c3)
    return mask, reference


def spinor_far_field(mask: MatrixMask, illumination: Spinor2Field) -> Spinor2Field:
    """Component-wise far field of the matrix-masked illumination."""
    out = apply_matrix_mask(mask, illumination)
    return Spinor2Field(
        fourier_transform(out.up, "forward"),
        fourier_transform(out.down, "forward"),
    )


@dataclass(frozen=True)
class PauliDecomposition:
    """M = a0 1 + ax sx + ay sy + az sz per pixel, plus a Hermiticity map.

    hermiticity_defect is ||M - M^dagger||_F / ||M||_F pixel by pixel (zero
    where M vanishes).  Where the defect is zero the coefficient maps are
    real and, scaled by the magnetic coupling, read as an effective field
    map an aperture would need to realize M.
    """

    a0: ComplexField
    ax: ComplexField
    ay: ComplexField
    az: ComplexField
    hermiticity_defect: np.ndarray


def pauli_decompose(mask: MatrixMask) -> PauliDecomposition:
    grid = mask.grid
    a, b, c, d = (e.values for e in mask.entries())
    a0 = 0.5 * (a + d)
    ax = 0.5 * (b + c)
    ay = 0.5j * (b - c)
    az = 0.5 * (a - d)

    norm_sq = (np.abs(a) ** 2 + np.abs(b) ** 2 + np.abs(c) ** 2 + np.abs(d) ** 2)
    dev_sq = (
        np.abs(a - np.conj(a)) ** 2
        + np.abs(b - np.conj(c)) ** 2
        + np.abs(c - np.conj(b)) ** 2
        + np.abs(d - np.conj(d)) ** 2
    )
    with np.errstate(invalid="ignore", divide="ignore"):
        defect = np.sqrt(dev_sq / norm_sq)
    defect = np.where(norm_sq > 0.0, defect, 0.0)
    defect.setflags(write=False)
    return PauliDecomposition(
        a0=ComplexField(grid, a0),
        ax=ComplexField(grid, ax),
        ay=ComplexField(grid, ay),
        az=ComplexField(grid, az),
        hermiticity_defect=defect,
    )


def pauli_recompose(dec: PauliDecomposition) -> MatrixMask:
    """Inverse of pauli_decompose; roundtrips to the original mask."""
    a0, ax, ay, az = (f.values for f in (dec.a0, dec.ax, dec.ay, dec.az))
    grid = dec.a0.grid
    return MatrixMask(
        a=ComplexField(grid, a0 + az),
        b=ComplexField(grid, ax - 1j * ay),
        c=ComplexField(grid, ax + 1j * ay),
        d=ComplexField(grid, a0 - az),
    )
