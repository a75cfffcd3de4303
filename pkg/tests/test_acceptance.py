"""End-to-end acceptance checks.

Each test prints one [PASS]/[FAIL] line on the real stdout so the summary
survives pytest's capture. Frozen tolerances; independent oracles inline.
"""

import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
from scipy.special import j0, j1

from vortexbeams import (
    DiracBeamSpec,
    GridSpec,
    PauliBeamSpec,
    angular_momentum_closed_form,
    angular_momentum_numeric,
    apply_Jz_4,
    apply_transverse_helicity,
    central_density_fraction,
    combination_state_for_branch,
    critical_radius,
    density_analysis,
    density_terms,
    default_aperture_radius,
    dirac_residual,
    fourier_transform,
    kinematics_from_voltage,
    kperp_from_vortex_radius,
    lz_expectation_4,
    make_disk_vortex,
    make_dirac_spinor,
    make_general,
    make_approx_Lz_state,
    nm_to_natural,
    order_report,
    plane_wave,
    quadrature_norm,
    reconstruct_far_field,
    spinor_far_field,
    synthesize_scalar_mask,
    synthesize_spinor_fork_mask,
)
from vortexbeams.cli import main as cli_main
from vortexbeams.units import HBARC_KEV_NM

KIN74 = kinematics_from_voltage(200.0, 7.4)


@contextmanager
def _criterion(num, label):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {num}: {label}", file=sys.__stdout__, flush=True)
        raise
    dt = time.perf_counter() - t0
    print(f"[PASS] criterion {num}: {label} ({dt:.2f}s)", file=sys.__stdout__, flush=True)


def test_criterion_1_transverse_momentum_inversion():
    with _criterion(1, "k_perp from vortex radius, both modes"):
        t0 = time.perf_counter()
        rounded = kperp_from_vortex_radius(0.05, "rounded_constant")
        exact = kperp_from_vortex_radius(0.05, "exact_maximum")
        elapsed = time.perf_counter() - t0
        assert abs(rounded - 7.4) <= 0.01 * 7.4
        assert abs(exact - 7.27) <= 0.005 * 7.27
        # brute-force oracle: dense scan of J1(x)^2 on [1, 3]
        xs = np.linspace(1.0, 3.0, 2_000_001)
        x_star = xs[np.argmax(j1(xs) ** 2)]
        oracle = x_star * HBARC_KEV_NM / 0.05
        assert abs(exact - oracle) <= 1e-4 * oracle
        assert elapsed < 1.0


def test_criterion_2_central_density_fraction():
    with _criterion(2, "central density fraction k_perp^2/(E+m)^2"):
        t0 = time.perf_counter()
        cf = central_density_fraction(KIN74)
        elapsed = time.perf_counter() - t0
        assert abs(cf - 3.7e-5) <= 0.03 * 3.7e-5
        assert elapsed < 1.0


def test_criterion_3_critical_radius_both_methods():
    with _criterion(3, "critical radius, closed form vs numeric crossing"):
        t0 = time.perf_counter()
        closed_pm = critical_radius(KIN74, 0.05, "closed_form") * 1000.0
        crossing_pm = critical_radius(KIN74, 0.05, "numeric_crossing") * 1000.0
        elapsed = time.perf_counter() - t0

        assert abs(closed_pm - 1.8) <= 0.05 * 1.8
        assert abs(crossing_pm - 0.30) <= 0.05 * 0.30
        assert 5.0 < closed_pm / crossing_pm < 7.0
        assert elapsed < 1.0

        # independent oracle: fine-mesh sign change of the term difference
        kp, kz, e, m = KIN74.k_perp, KIN74.k_z, KIN74.total_energy, KIN74.mass
        beta2 = (kz / (e + m)) ** 2
        cf = (kp / (e + m)) ** 2
        r = np.linspace(1e-9, nm_to_natural(0.002), 2_000_001)
        g = (1.0 + beta2) * j1(kp * r) ** 2 - cf * j0(kp * r) ** 2
        i = int(np.argmax(g > 0.0))
        # linear interpolation inside the bracketing mesh cell
        r_star = r[i - 1] + (r[i] - r[i - 1]) * (-g[i - 1]) / (g[i] - g[i - 1])
        oracle_pm = r_star / nm_to_natural(1.0) * 1000.0
        assert abs(crossing_pm - oracle_pm) <= 1e-6 * oracle_pm


def test_criterion_4_fork_mask_reconstruction():
    grid = GridSpec.square(512, 1.0)
    tilt = 2 * np.pi / 10.0
    radius = 0.4 * grid.half_width
    with _criterion(4, "fork masks n=1,2 and spinor Jz=3/2 far fields"):
        for n in (1, 2):
            t0 = time.perf_counter()
            mask = synthesize_scalar_mask(n, tilt, radius, grid)
            ff = reconstruct_far_field(mask, plane_wave(grid, tilt))
            rep = order_report(
                ff,
                tilt,
                [0],
                window_radius_px=24,
                analytic_reference=fourier_transform(make_disk_vortex(grid, n, radius)),
            )
            assert rep["orders"][0]["charge"] == n
            assert rep["overlap_with_analytic"] > 0.90
            assert time.perf_counter() - t0 < 10.0

        t0 = time.perf_counter()
        mask2, reference = synthesize_spinor_fork_mask(1, tilt, radius, grid)
        sff = spinor_far_field(mask2, reference)
        for comp, n_comp in ((sff.up, 1), (sff.down, 2)):
            rep = order_report(
                comp,
                tilt,
                [0],
                window_radius_px=24,
                analytic_reference=fourier_transform(make_disk_vortex(grid, n_comp, radius)),
            )
            assert rep["orders"][0]["charge"] == n_comp
            assert rep["overlap_with_analytic"] > 0.90
        assert time.perf_counter() - t0 < 10.0


def test_criterion_5_radial_density_curves():
    with _criterion(5, "density curves: r=0 identity and component-sum oracle"):
        analysis = density_analysis(-1, KIN74, r_max=nm_to_natural(0.25), nbins=512)
        cf = central_density_fraction(KIN74)
        rows = list(analysis.rows())
        assert abs((rows[0][1] - rows[0][2]) - cf) < 1e-12

        # curves must reproduce |Psi|^2 of the actual 4-component states
        g = GridSpec.square(256, 0.4 / KIN74.k_perp)
        for branch in (-1, +1):
            state = combination_state_for_branch(branch, KIN74, g, apodize=False)
            rho = sum(np.abs(c.values) ** 2 for c in state.components)
            ring, central = density_terms(KIN74, g.rr)
            assert np.max(np.abs(rho - (ring + central))) < 1e-12 * rho.max()


def test_criterion_6_angular_momentum_suite():
    kin = kinematics_from_voltage(200.0, 30.0)
    kp = kin.k_perp
    rng = np.random.default_rng(7)

    def numeric_at(spec, lam):
        r_max = lam / kp
        nx = 384
        grid = GridSpec.square(nx, 0.65 / kp)
        assert grid.half_width > r_max
        field = make_general(spec, grid, aperture_radius=r_max, edge_width=r_max / 128.0)
        return angular_momentum_numeric(field)

    with _criterion(6, "closed form vs quadrature, 20 random modes"):
        for _ in range(20):
            n = int(rng.integers(-4, 6))
            n_prime = n + int(rng.choice([-3, -2, -1, 1, 2, 3]))
            alpha = float(np.exp(rng.uniform(np.log(0.25), np.log(4.0))))
            spec = PauliBeamSpec(n=n, n_prime=n_prime, alpha=alpha, kinematics=kin)
            closed = angular_momentum_closed_form(spec)

            errs = []
            for lam in (40.0, 60.0, 80.0):
                num = numeric_at(spec, lam)
                errs.append(
                    max(abs(num.lz - closed.lz), abs(num.sz - closed.sz), abs(num.jz - closed.jz))
                )
                assert abs(num.jz - (num.lz + num.sz)) < 1e-12
            assert errs[0] < 1e-3
            assert errs[0] > errs[1] > errs[2]

        g_eigen = GridSpec.square(512, 0.35 / kp)  # smooth default window
        for alpha in (0.25, 0.5, 1.0, 2.0, 4.0):
            spec = PauliBeamSpec(n=2, n_prime=3, alpha=alpha, kinematics=kin)
            num = angular_momentum_numeric(make_general(spec, g_eigen))
            assert num.jz_eigen == Fraction(5, 2)  # flag set iff residual < 1e-6


def test_criterion_7_dirac_verification_suite():
    kin = kinematics_from_voltage(200.0, 30.0)
    kp = kin.k_perp
    suite_start = time.perf_counter()

    with _criterion(7, "Dirac residual, Jz, helicity, paraxial coupling"):
        # second-order residual convergence for every mode in the band
        dx = 0.7 / kp
        for n in range(-2, 3):
            for s in (+1, -1):
                spec = DiracBeamSpec(n=n, s=s, kinematics=kin)
                res = [
                    dirac_residual(make_dirac_spinor(spec, GridSpec.square(npix, d), apodize=False), kin)
                    for npix, d in ((192, dx), (384, dx / 2))
                ]
                assert 3.5 < res[0] / res[1] < 4.5

        # half-integer total angular momentum
        g_jz = GridSpec.square(512, 0.35 / kp)
        for n in range(-2, 3):
            for s in (+1, -1):
                f = make_dirac_spinor(DiracBeamSpec(n=n, s=s, kinematics=kin), g_jz)
                _, residual, expect = apply_Jz_4(f)
                assert abs(expect - (n + 0.5)) < 1e-9
                assert residual < 1e-6

        # transverse helicity eigenvalues on a wide, well-resolved aperture
        g_hel = GridSpec.square(2048, 0.7 / kp)
        r_hel = default_aperture_radius(g_hel)
        for n in (0, -1):
            for s in (+1, -1):
                f = make_dirac_spinor(
                    DiracBeamSpec(n=n, s=s, kinematics=kin),
                    g_hel,
                    aperture_radius=r_hel,
                    edge_width=r_hel / 8.0,
                )
                _, residual, expect = apply_transverse_helicity(f)
                assert abs(expect - s) < 1e-6
                assert residual < 1e-5

        # paraxial <Lz> deviation tracks (k_perp/(E+m))^2 over three decades
        devs = []
        couplings = (1e-1, 1e-2, 1e-3)
        for kappa in couplings:
            kin_k = kinematics_from_voltage(200.0, kappa * (711.0 + 511.0))
            g = GridSpec.square(512, 0.5 / kin_k.k_perp)
            f = make_approx_Lz_state(1, "+", kin_k, g)
            devs.append(lz_expectation_4(f) - 1.0)
        for i in (0, 1):
            want = (couplings[i] / couplings[i + 1]) ** 2
            assert want / 1.5 < devs[i] / devs[i + 1] < want * 1.5

        assert time.perf_counter() - suite_start < 120.0


def test_criterion_8_properties_and_determinism(tmp_path):
    with _criterion(8, "unitarity, charge algebra, roundtrips, CLI determinism"):
        rng = np.random.default_rng(11)

        # FFT unitarity
        g = GridSpec.square(128, 0.6)
        from vortexbeams import ComplexField, topological_charge

        f = ComplexField(g, rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape))
        ff = fourier_transform(f)
        assert abs(quadrature_norm(ff) / quadrature_norm(f) - 1.0) < 1e-10

        # charge additivity on products
        from vortexbeams import BesselProfile, make_scalar_vortex

        for m1, m2 in ((1, 2), (-2, 3), (0, -1)):
            a = make_scalar_vortex(g, m1, BesselProfile(0.9, abs(m1)))
            b = make_scalar_vortex(g, m2, BesselProfile(1.3, abs(m2)))
            prod = ComplexField(g, a.values * b.values)
            assert topological_charge(prod, loop_radius=6 * g.dx).charge == m1 + m2

        # binarization leaves the measured target charge unchanged
        g512 = GridSpec.square(512, 1.0)
        tilt = 2 * np.pi / 10.0
        radius = 0.4 * g512.half_width
        for n in (1, 2):
            got = []
            for binarize in (False, True):
                mask = synthesize_scalar_mask(n, tilt, radius, g512, binarize=binarize)
                ff_n = reconstruct_far_field(mask, plane_wave(g512, tilt))
                rep = order_report(ff_n, tilt, [0], window_radius_px=24)
                got.append(rep["orders"][0]["charge"])
            assert got[0] == got[1] == n

        # Pauli-decomposition roundtrip
        from vortexbeams import MatrixMask, pauli_decompose, pauli_recompose

        planes = [
            ComplexField(g, rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape))
            for _ in range(4)
        ]
        mask = MatrixMask(a=planes[0], b=planes[1], c=planes[2], d=planes[3])
        back = pauli_recompose(pauli_decompose(mask))
        for x, y in zip(mask.entries(), back.entries()):
            assert np.max(np.abs(x.values - y.values)) < 1e-12 * np.abs(x.values).max()

        # CLI determinism across repeated runs
        outs = []
        for tag in ("r1", "r2"):
            d = tmp_path / tag
            d.mkdir()
            cli_main(["mask", "--n", "2", "--size", "256", "--outdir", str(d), "--prefix", "m"])
            cli_main(["farfield", "--mask-prefix", str(d / "m"), "--outdir", str(d), "--prefix", "ff"])
            cli_main(["dirac-density", "--outdir", str(d), "--prefix", "den"])
            cli_main(["angmom", "--size", "256", "--out", str(d / "am.json")])
            outs.append(d)
        for rel in ("m.vfld", "m.pgm", "m.json", "ff.json", "den.csv", "den.json", "am.json"):
            assert (outs[0] / rel).read_bytes() == (outs[1] / rel).read_bytes(), rel
