"""Numerical toolkit for entropy inequalities of log-concave lattice
distributions: Renyi entropies and varentropy, concavity of
t -> log(t * sum x_i**t), majorization against geometric comparators,
concentration of information content, and the associated sharp constants.
"""

from .entropy import (
    InfoSummary,
    info_content,
    info_summary,
    power_sum,
    renyi,
    renyi_geometric,
    renyi_symmetric_geometric,
    shannon,
    tilt,
    varentropy,
    varentropy_geometric,
    varentropy_symmetric_geometric,
)
from .inequalities import (
    C_constant,
    K_constant,
    Side,
    check_concentration,
    check_renyi_gap,
    check_varentropy,
    concentration_bound,
    empirical_tail,
    epi_reversal_check,
    gap_constant,
    h2_hinf_identity_check,
    mean_mode_check,
    rate_r,
    sup_varentropy_symmetric,
)
from .lattice import (
    Direction,
    LatticePMF,
    LawKind,
    ParametricLaw,
    difference,
    is_log_concave,
    materialize,
    mean_variance,
    monotonicity,
    normalize,
    pmf_from_json,
    sample,
    symmetry_center,
)
from .lyapunov import (
    ConcavityReport,
    check_concavity,
    counterexample_check,
    extended_phi,
    phi,
    phi_geometric,
    phi_geometric_second_derivative,
    phi_second_derivative,
    scan_symmetric_peaks,
)
from .majorization import (
    CrossingResult,
    GeometricSequence,
    Interval,
    LevelCount,
    PowerDensity,
    SymmetricFold,
    cake_layer_check,
    convex_order_check,
    crossing_interval,
    crossing_verify,
    fold_symmetric,
    level_count,
    power_transform_density,
)
from .matching import MatchResult, match_geometric, match_symmetric_geometric, renyi_dominance_report
from .report import CheckReport

__version__ = "0.1.0"
