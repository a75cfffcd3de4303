"""Command-line front end: mask synthesis, far fields, reports, profiles.

Subcommands
    mask           write a fork hologram (PGM + VFLD + JSON metadata)
    farfield       reconstruct and analyze the far field of a mask
    angmom         angular-momentum report for an (n, n', alpha) beam
    dirac-density  radial density profile, central fraction, crossing radii
    charge         topological charge of a field stored in a VFLD file

Every flag can instead be supplied in a config file of flat `key = value`
lines (keys match the long flag names, '#' starts a comment); command-line
flags override the file.  Exit codes: 0 success, 2 invalid parameters,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .dirac import density_analysis
from .errors import NumericalError, ValidationError
from .fields import ComplexField, fourier_transform, plane_wave
from .grids import GridSpec
from .holography import (
    HologramMask,
    make_disk_vortex,
    measure_vortex_charge,
    order_report,
    reconstruct_far_field,
    spinor_far_field,
    synthesize_scalar_mask,
    synthesize_spinor_fork_mask,
)
from .io import (
    dumps_json,
    read_field,
    render_intensity,
    render_phase,
    save_png,
    to_grayscale,
    write_density_csv,
    write_field,
    write_json,
    write_pgm,
)
from .pauli import (
    PauliBeamSpec,
    angular_momentum_closed_form,
    angular_momentum_numeric,
    make_general,
)
from .units import (
    ELECTRON_MASS_KEV,
    kinematics_from_voltage,
    kperp_from_vortex_radius,
    nm_to_natural,
)


def _bool_flag(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ValidationError(f"{path}:{lineno}: expected key = value")
        key, value = body.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(subparser: argparse.ArgumentParser, cfg: dict[str, str]) -> None:
    known = {}
    for action in subparser._actions:
        if action.dest in (argparse.SUPPRESS, "help"):
            continue
        known[action.dest] = action
    unknown = sorted(set(cfg) - set(known))
    if unknown:
        raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
    defaults = {}
    for key, raw in cfg.items():
        action = known[key]
        convert = action.type if callable(action.type) else str
        try:
            defaults[key] = convert(raw)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise ValidationError(f"config key {key}: {exc}") from exc
    subparser.set_defaults(**defaults)


# --- shared flag groups ------------------------------------------------------


def _add_grid_flags(p: argparse.ArgumentParser, aperture_frac: float) -> None:
    p.add_argument("--size", type=int, default=512, help="grid points per side")
    p.add_argument("--dx", type=float, default=1.0, help="grid step (inverse momentum units)")
    p.add_argument(
        "--aperture-frac",
        type=float,
        default=aperture_frac,
        help="aperture radius as a fraction of the grid half-width",
    )


def _add_mask_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=1, help="target vortex charge")
    p.add_argument(
        "--tilt-fringes",
        type=float,
        default=16.0,
        help="reference-tilt fringe period in pixels (> 8)",
    )
    p.add_argument("--binarize", type=_bool_flag, default=True, help="true/false")
    _add_grid_flags(p, aperture_frac=0.4)


def _add_output_flags(p: argparse.ArgumentParser, default_prefix: str) -> None:
    p.add_argument("--outdir", type=str, default=".", help="output directory")
    p.add_argument("--prefix", type=str, default=default_prefix, help="output file prefix")


def _mask_geometry(args) -> tuple[GridSpec, float, float]:
    grid = GridSpec.square(args.size, args.dx)
    if args.tilt_fringes <= 0:
        raise ValidationError("fringe period must be positive")
    tilt = 2.0 * math.pi / (args.tilt_fringes * args.dx)
    radius = args.aperture_frac * grid.half_width
    return grid, tilt, radius


def _out_prefix(args) -> Path:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir / args.prefix


# --- subcommands -------------------------------------------------------------


def cmd_mask(args) -> int:
    grid, tilt, radius = _mask_geometry(args)
    mask = synthesize_scalar_mask(args.n, tilt, radius, grid, binarize=args.binarize)
    prefix = _out_prefix(args)

    # raw interference tops out at 4 (constructive fringe of two unit waves)
    transmission = mask.transmission if mask.binarized else mask.transmission / 4.0
    write_pgm(prefix.with_suffix(".pgm"), transmission)
    write_field(prefix.with_suffix(".vfld"), ComplexField(grid, mask.transmission.astype(complex)))
    meta = {
        "schema_version": 1,
        "command": "mask",
        "n": mask.target_n,
        "size": grid.nx,
        "dx": grid.dx,
        "tilt_kx": mask.tilt_kx,
        "fringe_px": args.tilt_fringes,
        "aperture_radius": mask.aperture_radius,
        "binarized": mask.binarized,
    }
    write_json(prefix.with_suffix(".json"), meta)
    print(f"wrote {prefix}.pgm {prefix}.vfld {prefix}.json")
    return 0


def _load_mask(prefix: str) -> HologramMask:
    import json

    meta = json.loads(Path(prefix + ".json").read_text())
    field = read_field(prefix + ".vfld")
    grid = field.grid
    return HologramMask(
        grid=grid,
        transmission=field.values.real,
        tilt_kx=float(meta["tilt_kx"]),
        target_n=int(meta["n"]),
        aperture_radius=float(meta["aperture_radius"]),
        binarized=bool(meta["binarized"]),
    )


def _scalar_farfield_outputs(prefix: Path, ff, tilt_kx, target_n, aperture_radius, grid) -> dict:
    dk = ff.grid.dx
    step_px = tilt_kx / dk
    window = max(2, int(0.4 * step_px))
    analytic = fourier_transform(make_disk_vortex(grid, target_n, aperture_radius))
    report = order_report(ff, tilt_kx, [0, 1, 2], window, analytic_reference=analytic)
    save_png(prefix.parent / (prefix.name + "_intensity.png"), render_intensity(ff))
    save_png(prefix.parent / (prefix.name + "_phase.png"), render_phase(ff))
    return report


def cmd_farfield(args) -> int:
    prefix = _out_prefix(args)
    if args.mode == "scalar":
        if args.mask_prefix:
            mask = _load_mask(args.mask_prefix)
            grid, tilt, radius = mask.grid, mask.tilt_kx, mask.aperture_radius
            target_n = mask.target_n
        else:
            grid, tilt, radius = _mask_geometry(args)
            target_n = args.n
            mask = synthesize_scalar_mask(target_n, tilt, radius, grid, binarize=args.binarize)
        ff = reconstruct_far_field(mask, plane_wave(grid, tilt))
        report = _scalar_farfield_outputs(prefix, ff, tilt, target_n, radius, grid)
        report["command"] = "farfield"
        report["mode"] = "scalar"
        write_json(prefix.with_suffix(".json"), report)
        print(dumps_json(report), end="")
        return 0

    if args.mode == "spinor":
        grid, tilt, radius = _mask_geometry(args)
        mask, reference = synthesize_spinor_fork_mask(args.n, tilt, radius, grid)
        sff = spinor_far_field(mask, reference)
        dk = sff.up.grid.dx
        window = max(2, int(0.4 * tilt / dk))
        components = {}
        for name, comp, n_comp in (("up", sff.up, args.n), ("down", sff.down, args.n + 1)):
            analytic = fourier_transform(make_disk_vortex(grid, n_comp, radius))
            rep = order_report(comp, tilt, [0, 1, 2], window, analytic_reference=analytic)
            components[name] = rep
            save_png(prefix.parent / (prefix.name + f"_{name}_intensity.png"), render_intensity(comp))
            save_png(prefix.parent / (prefix.name + f"_{name}_phase.png"), render_phase(comp))
        total = sff.up.density() + sff.down.density()
        save_png(prefix.parent / (prefix.name + "_total_intensity.png"), to_grayscale(total))
        report = {
            "schema_version": 1,
            "command": "farfield",
            "mode": "spinor",
            "n": args.n,
            "components": components,
        }
        write_json(prefix.with_suffix(".json"), report)
        print(dumps_json(report), end="")
        return 0

    raise ValidationError(f"unknown farfield mode {args.mode!r}")


def cmd_angmom(args) -> int:
    kin = kinematics_from_voltage(args.ke, args.k_perp, mass=args.mass)
    spec = PauliBeamSpec(args.n, args.n_prime, args.alpha, kin)
    closed = angular_momentum_closed_form(spec)

    dx = args.kperp_dx / kin.k_perp
    grid = GridSpec.square(args.size, dx)
    numeric = angular_momentum_numeric(make_general(spec, grid))

    payload = {
        "schema_version": 1,
        "command": "angmom",
        "parameters": {
            "n": args.n,
            "n_prime": args.n_prime,
            "alpha": args.alpha,
            "kinetic_energy_kev": args.ke,
            "k_perp_kev": args.k_perp,
            "mass_kev": args.mass,
            "grid_size": args.size,
        },
        "closed_form": closed.to_json_dict(),
        "quadrature": numeric.to_json_dict(),
    }
    if args.out:
        write_json(args.out, payload)
    print(dumps_json(payload), end="")
    return 0


def cmd_dirac_density(args) -> int:
    if args.k_perp is not None:
        k_perp = args.k_perp
        vortex_radius = args.vortex_radius_nm
    else:
        vortex_radius = args.vortex_radius_nm
        k_perp = kperp_from_vortex_radius(vortex_radius, args.kperp_mode)
    kin = kinematics_from_voltage(args.ke, k_perp, mass=args.mass)
    analysis = density_analysis(
        args.branch,
        kin,
        r_max=nm_to_natural(args.r_max_pm / 1000.0),
        nbins=args.nbins,
        vortex_radius_nm=vortex_radius,
    )
    prefix = _out_prefix(args)
    write_density_csv(prefix.with_suffix(".csv"), analysis.rows())
    payload = analysis.to_json_dict()
    payload["command"] = "dirac-density"
    write_json(prefix.with_suffix(".json"), payload)
    if args.plot:
        _density_plot(prefix.parent / (prefix.name + ".png"), analysis)
    print(dumps_json(payload), end="")
    return 0


def _density_plot(path: Path, analysis) -> None:
    try:
        import matplotlib
    except ImportError as exc:
        raise ValidationError(
            "plotting requires matplotlib (install the 'plot' extra)"
        ) from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from .units import natural_to_pm

    r_pm = np.array([natural_to_pm(r) for r in analysis.profile.radii])
    full = analysis.profile.values
    first = analysis.first_term_profile.values

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(r_pm, full, label="full density")
    ax.plot(r_pm, first, "--", label="ring term only")
    ax.set_xlabel("r (pm)")
    ax.set_ylabel("density (arb. units)")
    ax.legend(loc="upper right")
    if analysis.r_c_closed_form is not None:
        zoom = 5.0 * natural_to_pm(analysis.r_c_closed_form)
        inset = ax.inset_axes([0.45, 0.35, 0.5, 0.45])
        sel = r_pm <= zoom
        inset.plot(r_pm[sel], full[sel])
        inset.plot(r_pm[sel], first[sel], "--")
        inset.set_title("central region", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_charge(args) -> int:
    field = read_field(args.infile)
    comps = [field] if isinstance(field, ComplexField) else list(
        field.components if hasattr(field, "components") else [field.up, field.down]
    )
    if not 0 <= args.component < len(comps):
        raise ValidationError(
            f"component {args.component} out of range (file has {len(comps)})"
        )
    comp = comps[args.component]
    meas = measure_vortex_charge(comp, loop_radius=args.loop_radius)
    payload = {
        "schema_version": 1,
        "command": "charge",
        "component": args.component,
        "charge": meas.charge,
        "residual": meas.residual,
        "loop_radius": meas.loop_radius,
        "n_samples": meas.n_samples,
    }
    print(dumps_json(payload), end="")
    return 0


# --- parser and entry point --------------------------------------------------


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="vortexbeams",
        description="Vortex-beam holography and angular-momentum toolkit",
    )
    subs = parser.add_subparsers(dest="subcommand")
    table: dict[str, argparse.ArgumentParser] = {}

    def sub(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = subs.add_parser(name, help=help_)
        p.add_argument("--config", type=str, default=None, help="key=value parameter file")
        p.set_defaults(func=func)
        table[name] = p
        return p

    p = sub("mask", cmd_mask, "synthesize a fork hologram")
    _add_mask_flags(p)
    _add_output_flags(p, "mask")

    p = sub("farfield", cmd_farfield, "far-field reconstruction and order charges")
    p.add_argument("--mode", choices=("scalar", "spinor"), default="scalar")
    p.add_argument("--mask-prefix", type=str, default=None, help="reuse files from `mask`")
    _add_mask_flags(p)
    _add_output_flags(p, "farfield")

    p = sub("angmom", cmd_angmom, "angular-momentum report (closed form + quadrature)")
    p.add_argument("--n", type=int, default=1, help="up-component vortex order")
    p.add_argument("--n-prime", type=int, default=2, help="down-component vortex order")
    p.add_argument("--alpha", type=float, default=1.0, help="down/up amplitude ratio")
    p.add_argument("--ke", type=float, default=200.0, help="kinetic energy (keV)")
    p.add_argument("--k-perp", type=float, default=7.4, help="transverse momentum (keV)")
    p.add_argument("--mass", type=float, default=ELECTRON_MASS_KEV, help="mass (keV)")
    p.add_argument("--size", type=int, default=512, help="quadrature grid points per side")
    p.add_argument("--kperp-dx", type=float, default=0.35, help="k_perp * dx sampling ratio")
    p.add_argument("--out", type=str, default=None, help="also write the report here")

    p = sub("dirac-density", cmd_dirac_density, "radial density profile and summary")
    p.add_argument("--ke", type=float, default=200.0, help="kinetic energy (keV)")
    p.add_argument("--vortex-radius-nm", type=float, default=0.05, help="vortex radius (nm)")
    p.add_argument("--k-perp", type=float, default=None, help="override k_perp (keV)")
    p.add_argument(
        "--kperp-mode",
        choices=("rounded_constant", "exact_maximum"),
        default="rounded_constant",
    )
    p.add_argument("--mass", type=float, default=ELECTRON_MASS_KEV, help="mass (keV)")
    p.add_argument("--branch", type=int, choices=(-1, 1), default=-1)
    p.add_argument("--r-max-pm", type=float, default=250.0, help="profile extent (pm)")
    p.add_argument("--nbins", type=int, default=512)
    p.add_argument("--plot", type=_bool_flag, default=False, help="true/false")
    _add_output_flags(p, "density")

    p = sub("charge", cmd_charge, "topological charge of a stored field")
    p.add_argument("--infile", type=str, default=None, help="VFLD field file")
    p.add_argument("--component", type=int, default=0)
    p.add_argument("--loop-radius", type=float, default=None)

    return parser, table


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser, table = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config", type=str, default=None)
        known, _ = pre.parse_known_args(argv)
        sub_name = next((a for a in argv if not a.startswith("-")), None)
        if known.config is not None:
            if sub_name not in table:
                raise ValidationError("--config requires a subcommand")
            _apply_config(table[sub_name], _load_config(known.config))
        args = parser.parse_args(argv)
        if getattr(args, "subcommand", None) is None:
            parser.print_help()
            return 2
        if args.subcommand == "charge" and not args.infile:
            raise ValidationError("charge requires --infile")
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
