"""Deterministic channel model for line-of-sight MIMO links reflected off a
smooth planar surface.

The package synthesizes the spatial impulse response from its plane-wave
spectrum, samples it into uniform-linear-array channel matrices, and derives
eigenvalue spectra, waterfilling capacity, and the matched antenna spacings.
"""

from ._version import __version__
from .capacity import (
    CapacityResult,
    DofBound,
    dof_bound,
    optimal_stream_count,
    waterfill,
)
from .closedform import image_impulse, los_impulse, spherical_wave
from .config import (
    NORMALIZATIONS,
    SPACING_RULES,
    ConfigError,
    ExperimentConfig,
    config_to_text,
    load_config,
    parse_config,
)
from .eigensolve import jacobi_eigh
from .experiments import EXPERIMENT_NAMES, ResultSet, ResultTable, run_named
from .materials import (
    CONCRETE,
    FLOOR_BOARD,
    FREE_SPACE_IMPEDANCE,
    PERFECT_CONDUCTOR,
    PLASTER_BOARD,
    SPEED_OF_LIGHT,
    VACUUM,
    Material,
    Medium,
    fresnel_reflection,
    fresnel_transmission,
    load_catalog,
    longitudinal_wavenumbers,
    material_by_name,
    material_catalog,
    wavenumbers,
)
from .mimo import (
    RELATIVE,
    SELF_SUM,
    ArrayLayout,
    ChannelMatrix,
    EigenSpectrum,
    build_channel_matrix,
    eigen_spectrum,
    raw_eigenvalues,
    spacing_rayleigh,
    spacing_snr,
)
from .output import (
    channel_matrix_to_json,
    emit,
    results_to_json,
    write_channel_matrix_csv,
    write_convergence_csv,
    write_table_csv,
)
from .quadrature import (
    ConvergenceRow,
    ConvergenceStudy,
    QuadratureSpec,
    SpatialLag,
    UnderResolvedWarning,
    convergence_study,
    estimate_nodes,
    synthesize_impulse,
)
from .spectrum import (
    FieldComponent,
    SceneConfig,
    SceneError,
    decay_distance,
    evanescent_factor,
    oscillation_span,
    propagating_factor,
    validate_component,
    wavenumber_response,
)

__all__ = [
    "ArrayLayout",
    "CONCRETE",
    "CapacityResult",
    "ChannelMatrix",
    "ConfigError",
    "ConvergenceRow",
    "ConvergenceStudy",
    "DofBound",
    "EXPERIMENT_NAMES",
    "EigenSpectrum",
    "ExperimentConfig",
    "FLOOR_BOARD",
    "FREE_SPACE_IMPEDANCE",
    "FieldComponent",
    "Material",
    "Medium",
    "NORMALIZATIONS",
    "PERFECT_CONDUCTOR",
    "PLASTER_BOARD",
    "QuadratureSpec",
    "RELATIVE",
    "ResultSet",
    "ResultTable",
    "SELF_SUM",
    "SPACING_RULES",
    "SPEED_OF_LIGHT",
    "SceneConfig",
    "SceneError",
    "SpatialLag",
    "UnderResolvedWarning",
    "VACUUM",
    "__version__",
    "build_channel_matrix",
    "channel_matrix_to_json",
    "config_to_text",
    "convergence_study",
    "decay_distance",
    "dof_bound",
    "eigen_spectrum",
    "emit",
    "estimate_nodes",
    "evanescent_factor",
    "fresnel_reflection",
    "fresnel_transmission",
    "image_impulse",
    "jacobi_eigh",
    "load_catalog",
    "load_config",
    "longitudinal_wavenumbers",
    "los_impulse",
    "material_by_name",
    "material_catalog",
    "optimal_stream_count",
    "oscillation_span",
    "parse_config",
    "propagating_factor",
    "raw_eigenvalues",
    "results_to_json",
    "run_named",
    "spacing_rayleigh",
    "spacing_snr",
    "spherical_wave",
    "synthesize_impulse",
    "validate_component",
    "waterfill",
    "wavenumber_response",
    "wavenumbers",
]
