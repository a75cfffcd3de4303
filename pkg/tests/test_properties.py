"""Property-based invariants: unitarity, charge algebra, decompositions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vortexbeams import (
    BesselProfile,
    ComplexField,
    GridSpec,
    MatrixMask,
    fourier_transform,
    kinematics_from_voltage,
    make_scalar_vortex,
    pauli_decompose,
    pauli_recompose,
    plane_wave,
    quadrature_norm,
    reconstruct_far_field,
    synthesize_scalar_mask,
    topological_charge,
)
from vortexbeams.pauli import PauliBeamSpec, angular_momentum_closed_form

GRID64 = GridSpec.square(64, 0.8)

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, width=32)


def _field_from_draw(grid, re, im):
    vals = np.outer(np.linspace(1, 2, grid.ny), np.linspace(1, 2, grid.nx))
    return ComplexField(grid, re * vals + 1j * im * np.flipud(vals) + 0.1)


@given(re=finite, im=finite, seed=st.integers(0, 2**31 - 1))
@settings(max_examples=60, deadline=None)
def test_fft_unitary_for_arbitrary_fields(re, im, seed):
    rng = np.random.default_rng(seed)
    noise = rng.normal(size=GRID64.shape) + 1j * rng.normal(size=GRID64.shape)
    f = ComplexField(GRID64, _field_from_draw(GRID64, re, im).values + 0.3 * noise)
    ff = fourier_transform(f)
    assert quadrature_norm(ff) == pytest.approx(quadrature_norm(f), rel=1e-10)
    back = fourier_transform(ff, direction="inverse")
    assert np.allclose(back.values, f.values, atol=1e-10 * (1 + np.abs(f.values).max()))


@given(m1=st.integers(-4, 4), m2=st.integers(-4, 4))
@settings(max_examples=30, deadline=None)
def test_charge_additivity_on_products(m1, m2):
    g = GridSpec.square(128, 0.5)
    a = make_scalar_vortex(g, m1, BesselProfile(0.9, abs(m1)))
    b = make_scalar_vortex(g, m2, BesselProfile(1.3, abs(m2)))
    prod = ComplexField(g, a.values * b.values + 0.0)
    loop = 6 * g.dx
    assert topological_charge(prod, loop_radius=loop).charge == m1 + m2


@given(n=st.integers(-3, 3))
@settings(max_examples=7, deadline=None)
def test_binarization_preserves_measured_charge(n):
    g = GridSpec.square(256, 1.0)
    tilt = 2 * np.pi / 10.0
    radius = 0.4 * g.half_width
    charges = []
    for binarize in (False, True):
        mask = synthesize_scalar_mask(n, tilt, radius, g, binarize=binarize)
        ff = reconstruct_far_field(mask, plane_wave(g, tilt))
        charges.append(topological_charge(ff, loop_radius=4 * ff.grid.dx).charge)
    assert charges[0] == charges[1] == n


@given(
    re=st.lists(finite, min_size=8, max_size=8),
    im=st.lists(finite, min_size=8, max_size=8),
)
@settings(max_examples=60, deadline=None)
def test_pauli_decomposition_roundtrip_property(re, im):
    g = GridSpec.square(16, 1.0)
    planes = [
        ComplexField(g, np.full(g.shape, re[2 * i] + 1j * im[2 * i])
                     + np.linspace(0, re[2 * i + 1], g.nx)
                     + 1j * g.yy * im[2 * i + 1] / 10.0)
        for i in range(4)
    ]
    mask = MatrixMask(a=planes[0], b=planes[1], c=planes[2], d=planes[3])
    back = pauli_recompose(pauli_decompose(mask))
    scale = max(np.abs(p.values).max() for p in planes) + 1.0
    for x, y in zip(mask.entries(), back.entries()):
        assert np.allclose(x.values, y.values, atol=1e-12 * scale)


@given(
    n=st.integers(-5, 5),
    n_prime=st.integers(-5, 5),
    alpha=st.floats(min_value=0.0, max_value=8.0, allow_nan=False),
)
@settings(max_examples=100, deadline=None)
def test_jz_is_always_lz_plus_sz(n, n_prime, alpha):
    kin = kinematics_from_voltage(200.0, 7.4)
    rep = angular_momentum_closed_form(PauliBeamSpec(n=n, n_prime=n_prime, alpha=alpha, kinematics=kin))
    assert rep.jz == pytest.approx(rep.lz + rep.sz, abs=1e-12)


@given(ke=st.floats(min_value=1.0, max_value=3000.0, allow_nan=False),
       frac=st.floats(min_value=0.0, max_value=0.99, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_kinematics_closure_property(ke, frac):
    base = kinematics_from_voltage(ke)
    kin = kinematics_from_voltage(ke, frac * base.k)
    assert kin.k_z**2 + kin.k_perp**2 == pytest.approx(kin.k**2, rel=1e-12)
    assert kin.total_energy**2 == pytest.approx(kin.k**2 + kin.mass**2, rel=1e-12)
    assert 0 <= kin.paraxiality < 1
