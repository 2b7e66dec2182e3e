"""Exact arithmetic for truncated bivariate Laurent q-series, with theta
functions, Hecke-type double sums, Appell sums, mock theta functions,
admissible-level string functions, and a verified identity catalogue."""

from .series import (
    GaussianRational,
    QZSeries,
    QSeriesError,
    NotAUnit,
    IllDefinedRootOfUnityPower,
    InsufficientTruncation,
)
from .theta import (
    ThetaArg,
    mono,
    qmono,
    neg_qmono,
    jacobi_theta,
    theta,
    J,
    J1,
    eta,
    euler_product,
    big_theta,
    theta_identity_suite,
    product_rearrangements,
    DegenerateSpecialization,
)
from .hecke import (
    HeckeParams,
    StringFnId,
    hecke_sum,
    string_cleared,
    string_coeff,
    character,
    character_cleared,
    character_value_cleared,
    quasi_periodic_shift,
    cross_spin_residual,
    integer_level_symmetries,
    NonTerminatingEnumeration,
    MRangeBoundFailure,
    IntegralityViolation,
)
from .appell import (
    appell,
    appell_j_product,
    changing_z_psi,
    msplit_m2,
    mock_theta,
    universal_g3,
    classical_third_order_suite,
    PoleAtSpecialization,
    NonUnitPrefactor,
    UnknownName,
    FormUnavailable,
    MOCK_NAMES,
)
from .registry import (
    IdentityCheck,
    CheckReport,
    register_builtin_catalogue,
    run_check,
    run_suite,
    summarize,
)

__version__ = "0.1.0"
