"""File formats: binary field dumps, PGM masks, PNG renders, CSV, JSON.

The field dump (VFLD) is a little-endian binary container:

    bytes 0..3   magic "VFLD"
    u32          nx
    u32          ny
    f64          dx
    f64          dy
    u32          ncomponents (1, 2 or 4)
    then per component, row-major, interleaved (re, im) f64 pairs

Every writer here is deterministic: identical inputs give bit-identical
files.  Images carry no timestamps; JSON is sorted and indented; CSV floats
use repr-faithful formatting.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image

from .errors import ValidationError
from .fields import AnyField, ComplexField, Spinor2Field, Spinor4Field, _component_list
from .grids import GridSpec

VFLD_MAGIC = b"VFLD"
_HEADER = struct.Struct("<IIddI")


def write_field(path: Union[str, Path], field: AnyField) -> None:
    """Dump a 1-, 2- or 4-component field in the VFLD container."""
    comps = _component_list(field)
    grid = comps[0].grid
    with open(path, "wb") as fh:
        fh.write(VFLD_MAGIC)
        fh.write(_HEADER.pack(grid.nx, grid.ny, grid.dx, grid.dy, len(comps)))
        for comp in comps:
            planar = np.empty(grid.shape + (2,), dtype="<f8")
            planar[..., 0] = comp.values.real
            planar[..., 1] = comp.values.imag
            fh.write(planar.tobytes())


def read_field(path: Union[str, Path]) -> AnyField:
    """Load a VFLD file back into the matching field type."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ValidationError(f"cannot read field file {path}: {exc}") from exc
    if raw[:4] != VFLD_MAGIC:
        raise ValidationError(f"{path}: not a field dump (bad magic)")
    nx, ny, dx, dy, ncomp = _HEADER.unpack_from(raw, 4)
    if ncomp not in (1, 2, 4):
        raise ValidationError(f"{path}: unsupported component count {ncomp}")
    grid = GridSpec(nx=nx, ny=ny, dx=dx, dy=dy)
    expect = 4 + _HEADER.size + ncomp * nx * ny * 16
    if len(raw) != expect:
        raise ValidationError(f"{path}: truncated (got {len(raw)} bytes, expected {expect})")
    comps = []
    offset = 4 + _HEADER.size
    count = nx * ny * 2
    for _ in range(ncomp):
        flat = np.frombuffer(raw, dtype="<f8", count=count, offset=offset)
        offset += count * 8
        planar = flat.reshape(ny, nx, 2)
        comps.append(ComplexField(grid, planar[..., 0] + 1j * planar[..., 1]))
    if ncomp == 1:
        return comps[0]
    if ncomp == 2:
        return Spinor2Field(*comps)
    return Spinor4Field(tuple(comps))


def write_pgm(path: Union[str, Path], transmission: np.ndarray) -> None:
    """8-bit binary PGM; pixel 255 corresponds to transmission 1."""
    t = np.asarray(transmission, dtype=float)
    if t.ndim != 2:
        raise ValidationError("PGM export needs a 2D transmission map")
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise ValidationError("transmission must lie in [0, 1] for PGM export")
    pixels = np.round(t * 255.0).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{t.shape[1]} {t.shape[0]}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())


def read_pgm(path: Union[str, Path]) -> np.ndarray:
    """Read back an 8-bit binary PGM as transmission in [0, 1]."""
    raw = Path(path).read_bytes()
    parts = raw.split(maxsplit=4)
    if parts[0] != b"P5" or parts[3] != b"255":
        raise ValidationError(f"{path}: expected an 8-bit binary PGM")
    w, hgt = int(parts[1]), int(parts[2])
    pixels = np.frombuffer(parts[4][: w * hgt], dtype=np.uint8).reshape(hgt, w)
    return pixels.astype(float) / 255.0


# --- image renders -----------------------------------------------------------


def to_grayscale(values: np.ndarray) -> np.ndarray:
    """Normalize a nonnegative map to uint8 (max -> 255; zero map stays 0)."""
    v = np.asarray(values, dtype=float)
    peak = v.max()
    if peak <= 0.0:
        return np.zeros(v.shape, dtype=np.uint8)
    return np.round(np.clip(v / peak, 0.0, 1.0) * 255.0).astype(np.uint8)


def _hsv_to_rgb(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorized HSV -> RGB, all channels in [0, 1]."""
    h6 = (h % 1.0) * 6.0
    i = np.floor(h6).astype(int) % 6
    f = h6 - np.floor(h6)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    choices = [
        (v, t, p),
        (q, v, p),
        (p, v, t),
        (p, q, v),
        (t, p, v),
        (v, p, q),
    ]
    rgb = np.zeros(h.shape + (3,), dtype=float)
    for idx, (r_, g_, b_) in enumerate(choices):
        sel = i == idx
        rgb[sel, 0] = r_[sel]
        rgb[sel, 1] = g_[sel]
        rgb[sel, 2] = b_[sel]
    return rgb


def render_intensity(field: AnyField) -> np.ndarray:
    """uint8 grayscale of the total density."""
    return to_grayscale(field.density())


def render_phase(field: ComplexField) -> np.ndarray:
    """uint8 RGB: hue is the phase over 2 pi, brightness the amplitude."""
    amp = np.abs(field.values)
    peak = amp.max()
    value = amp / peak if peak > 0 else amp
    hue = (np.angle(field.values) / (2.0 * np.pi)) % 1.0
    rgb = _hsv_to_rgb(hue, np.ones_like(hue), value)
    return np.round(rgb * 255.0).astype(np.uint8)


def save_png(path: Union[str, Path], image: np.ndarray) -> None:
    """Write a uint8 grayscale or RGB array as PNG (no metadata)."""
    if image.dtype != np.uint8:
        raise ValidationError("save_png expects a uint8 image")
    Image.fromarray(image).save(str(path), format="PNG")


# --- tabular / structured ----------------------------------------------------


def write_density_csv(path: Union[str, Path], rows) -> None:
    """Rows of (r_pm, rho_full, rho_first_term) to CSV."""
    with open(path, "w", newline="\n") as fh:
        fh.write("r_pm,rho_full,rho_first_term\n")
        for r_pm, full, first in rows:
            fh.write(f"{r_pm:.17g},{full:.17g},{first:.17g}\n")


def write_json(path: Union[str, Path], payload: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_json(payload))


def dumps_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
