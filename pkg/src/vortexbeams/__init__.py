"""Vortex beam modes for spin-1/2 particles.

Scalar, Pauli (2-spinor), and Dirac (4-spinor) Bessel vortex fields on
sampled grids; holographic fork masks (scalar and matrix-valued) with
far-field reconstruction; angular-momentum analysis; and the relativistic
spin-orbit observables of tightly focused beams.
"""
from .errors import (
    AmbiguousChargeError,
    ApertureError,
    BeamError,
    CrossingNotFoundError,
    DCSingularityError,
    DegenerateFieldError,
    EvanescentBeamError,
    GridMismatchError,
    MaskSingularityError,
    NumericalError,
    OrderOverlapError,
    SamplingError,
    ValidationError,
)
from .units import (
    DEFAULT_CONSTANTS,
    ELECTRON_MASS_KEV,
    HBARC_KEV_NM,
    KPERP_RADIUS_CONSTANT_KEV_NM,
    NEUTRON_MASS_KEV,
    BeamKinematics,
    PhysicalConstants,
    angle_parametrization,
    first_maximum_of_j1_squared,
    kinematics_from_voltage,
    kperp_from_vortex_radius,
    natural_to_nm,
    natural_to_pm,
    nm_to_natural,
    nm_to_pm,
)
from .grids import (
    GridSpec,
    default_aperture_radius,
    ensure_sampling,
    smooth_disk_window,
)
from .fields import (
    BesselProfile,
    ChargeMeasurement,
    ComplexField,
    DiskProfile,
    GaussianProfile,
    RadialProfile,
    Spinor2Field,
    Spinor4Field,
    apply_Lz,
    apply_aperture,
    fourier_transform,
    inner_product,
    lz_eigen_residual,
    lz_expectation,
    make_scalar_vortex,
    normalize,
    overlap,
    plane_wave,
    quadrature_norm,
    radial_average,
    topological_charge,
)
from .pauli import (
    AngularMomentumReport,
    PauliBeamSpec,
    angular_momentum_closed_form,
    angular_momentum_numeric,
    make_general,
    make_jz_eigenstate,
    make_spin_eigenstate,
)
from .dirac import (
    DensityAnalysis,
    DiracBeamSpec,
    apply_Jz_4,
    apply_transverse_helicity,
    central_density_fraction,
    combination_state_for_branch,
    critical_radius,
    density_analysis,
    density_terms,
    dirac_residual,
    lz_expectation_4,
    make_approx_Lz_state,
    make_dirac_spinor,
    sz_expectation_4,
    transverse_helicity_matrix,
)
from .holography import (
    ExtractedOrder,
    HologramMask,
    MatrixMask,
    PauliDecomposition,
    apply_matrix_mask,
    binarize_mask,
    extract_order,
    make_disk_vortex,
    make_jz_disk_target,
    measure_vortex_charge,
    order_report,
    pauli_decompose,
    pauli_recompose,
    reconstruct_far_field,
    spinor_far_field,
    spinor_plane_reference,
    synthesize_matrix_mask,
    synthesize_scalar_mask,
    synthesize_spinor_fork_mask,
)
from .io import (
    read_field,
    read_pgm,
    render_intensity,
    render_phase,
    save_png,
    to_grayscale,
    write_density_csv,
    write_field,
    write_json,
    write_pgm,
)

__version__ = "0.1.0"
