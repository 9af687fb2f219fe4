"""Numerical value-distribution lab for holomorphic maps on discs.

The package computes characteristic, proximity, counting and
ramification functions for concrete maps and projective curves, and
checks the classical balance identities and second-main-theorem
inequalities against them with explicit constants and exceptional-set
bookkeeping.
"""

from .errors import (
    ComputationError,
    ConfigError,
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    GridError,
    ImageInHyperplaneError,
    NevlabError,
    OriginHitsTargetError,
    PrecisionError,
    ZeroOnCircleError,
)
from .funcrep import (
    TARGET_INF,
    Disc,
    HoloMap,
    format_complex,
    gallery_manifest,
    gallery_names,
    get_map,
    is_inf_target,
    parse_complex,
)
from .ldl import ldl_residual, logderiv_proximity
from .nevan import (
    characteristic,
    defect_estimate,
    fitted_constant,
    fmt_constant,
    fmt_residual,
    growth_index,
    growth_index_from_values,
    proximity,
    smt_riemann_report,
)
from .nochka import (
    NochkaWeights,
    nochka_smt_report,
    nochka_weights,
    restrict_to_plane,
    subgeneral_check,
    verify_property_v,
)
from .projcurve import (
    Hyperplane,
    ProjCurve,
    ahlfors_estimate_check,
    associated_curve,
    cartan_smt_report,
    characteristic_fk,
    coordinate_hyperplanes,
    curve_gallery,
    get_curve,
    hyperplane_distance,
    plucker_residual,
    product_to_sum_check,
    proximity_fk,
)
from .quad import (
    RadialGrid,
    calculus_lemma_check,
    circle_average,
    exceptional_measure,
    growth_derivative_check,
    height_profile,
)
from .runner import (
    CSV_HEADER,
    ExceptionalSummary,
    ExperimentConfig,
    exceptional_set_measure,
    parse_config,
    run_experiment,
)
from .zeros import (
    ZeroRecord,
    counting_function,
    divisor_counting,
    locate_zeros,
    preimage_divisor,
    ramification_counting,
    ramification_records,
    unintegrated_count,
    winding_count,
)

__version__ = "0.1.0"
