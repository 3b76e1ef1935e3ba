"""Harmonic analysis on compact groups: Weyl characters, lacunary spectra,
sparse torus series, and an SU(2) quadrature laboratory."""

from .errors import CatalogError, ConsistencyError, DomainError, ParameterError
from .rootweyl import (
    DominanceResult,
    RootSystem,
    SpectrumSet,
    Weight,
    WeylElement,
    build_root_system,
    cartan_pairing,
    is_dominant_integral,
    orbit_of_set,
    weyl_orbit,
)
from .series import TorusSeries, ZERO_THRESHOLD
from .characters import (
    character_eval,
    character_series,
    first_dominant_weights,
    weyl_denominator,
    weyl_denominator_product,
    weyl_dimension,
    weyl_integration_gram,
    weyl_numerator,
)
from .lacunary import (
    AxisCover,
    ConditionReport,
    LacunaryCert,
    check_condition_1,
    intset,
    is_lacunary,
    is_q_thin,
    min_lacunary_cover,
    parse_rational,
)
from .torus import (
    GridSpec,
    ScanReport,
    analyze,
    scan_samples,
    synthesize,
    synthesize_on_grid,
    zero_scan,
)
from .su2 import (
    BandlimitedFunction,
    HaarGrid,
    central_average,
    central_average_batch,
    char_expansion,
    check_group_element,
    euler,
    fourier_transform,
    grid_for_band,
    haar_grid,
    irrep_batch,
    irrep_matrix,
    random_su2,
    sample_on_euler_grid,
    synthesize_bandlimited,
    torus_element,
    translate,
    translated_trace,
    wigner_d,
)
from .experiment import (
    ExperimentReport,
    make_coefficients,
    uncertainty_experiment,
    write_report_bundle,
)

__version__ = "0.1.0"

__all__ = [
    "AxisCover",
    "BandlimitedFunction",
    "CatalogError",
    "ConditionReport",
    "ConsistencyError",
    "DominanceResult",
    "DomainError",
    "ExperimentReport",
    "GridSpec",
    "HaarGrid",
    "LacunaryCert",
    "ParameterError",
    "RootSystem",
    "ScanReport",
    "SpectrumSet",
    "TorusSeries",
    "Weight",
    "WeylElement",
    "ZERO_THRESHOLD",
    "analyze",
    "build_root_system",
    "cartan_pairing",
    "central_average",
    "central_average_batch",
    "char_expansion",
    "character_eval",
    "character_series",
    "check_condition_1",
    "check_group_element",
    "euler",
    "first_dominant_weights",
    "fourier_transform",
    "grid_for_band",
    "haar_grid",
    "intset",
    "irrep_batch",
    "irrep_matrix",
    "is_dominant_integral",
    "is_lacunary",
    "is_q_thin",
    "make_coefficients",
    "min_lacunary_cover",
    "orbit_of_set",
    "parse_rational",
    "random_su2",
    "sample_on_euler_grid",
    "scan_samples",
    "synthesize",
    "synthesize_bandlimited",
    "synthesize_on_grid",
    "torus_element",
    "translate",
    "translated_trace",
    "uncertainty_experiment",
    "weyl_denominator",
    "weyl_denominator_product",
    "weyl_dimension",
    "weyl_integration_gram",
    "weyl_numerator",
    "weyl_orbit",
    "wigner_d",
    "write_report_bundle",
    "zero_scan",
]
