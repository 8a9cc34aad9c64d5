"""Numerical toolkit for Gauss maps of submanifolds of pseudo-spheres.

Computes adapted frames, curvature tensors, and the grade-(n+1) Gauss map
nu = x ^ e_1 ^ ... ^ e_n of a parametrized submanifold of the unit
pseudo-sphere in E^m_s, evaluates the Laplacian of nu by two independent
routes (closed-form curvature assembly and a numeric Laplace-Beltrami
operator), and classifies the map as harmonic, 1-type, biharmonic, or
inconclusive against a catalog of explicit surfaces.
"""

from .linalg import (
    Signature,
    DimensionMismatch,
    NullPivot,
    causal_character,
    gram_schmidt_indefinite,
    extend_orthonormal,
)
from .multivector import WedgeSpace, Multivector, wedge, mv_inner
from .immersion import (
    Factor,
    Term,
    TermChart,
    CallableChart,
    Immersion,
    AdaptedFrame,
    DegenerateMetric,
    induced_metric,
    metric_index,
    adapted_frame,
    frame_connection,
)
from .curvature import (
    GeometryReport,
    geometry_report,
    second_fundamental_form,
    shape_operator,
    mean_curvature,
    squared_norm_h,
    scalar_curvature,
    normal_curvature,
    codazzi_residual,
    marginally_trapped,
)
from .gaussmap import (
    NotHypersurface,
    MultivectorField,
    wedge_space,
    gauss_map,
    gauss_map_field,
    gauss_map_derivative,
    laplacian_from_curvature,
    laplace_beltrami_numeric,
    companion_field,
    laplacian_companion,
    bilaplacian_numeric,
)
from .spectral import (
    NoOneTypeFit,
    FlatUmbilical,
    NullMeanCurvature,
    SpectralFit,
    fit_one_type,
    classify,
    predicted_decomposition,
    annihilating_polynomial,
    constant_component_criterion,
)
from .catalog import (
    CatalogEntry,
    NullCurve,
    DomainSingularity,
    catalog_names,
    get_entry,
    all_entries,
    null_curve_validator,
)
from .chartio import (
    ChartFormatError,
    parse_chart_text,
    dump_chart_text,
    load_chart_file,
    save_chart_file,
)

__version__ = "0.1.0"
