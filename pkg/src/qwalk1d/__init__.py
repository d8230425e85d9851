"""One-dimensional two-state quantum walks, two independent ways.

Distributions come from exact direct evolution on a growing lattice window
and, independently, from a closed form built on Chebyshev coefficients in a
Laurent basis; the operator algebra behind the walk is verified exactly on
finite cyclic lattices; the rescaled position converges to a known limit
density, measured by Kolmogorov distance and characteristic functions.
"""

from .algebra_check import (
    CyclicRep,
    RelationReport,
    build_basis,
    build_rep,
    qwr_check,
    verify_relations,
)
from .cheb_engine import (
    LaurentPoly,
    TransferQuadruple,
    char_fn_components,
    cheb_T_laurent,
    cheb_U_laurent,
    cross_series,
    cross_series_quadrature,
    qn_distribution,
    quadruple_to_csv,
    transfer_polys,
)
from .coin import (
    CoinMatrix,
    PolarParams,
    hadamard_coin,
    make_coin,
    phi_from_psi,
    polar,
    psi_from_phi,
    split,
)
from .direct_walk import (
    Distribution,
    WalkState,
    char_fn,
    distribution,
    distribution_to_csv,
    evolve,
    evolve_snapshots,
    initial_state,
    state_to_csv,
    step,
)
from .errors import (
    DegenerateCoin,
    InvalidConfig,
    NormViolation,
    ParamViolation,
    QuadratureDivergence,
    QuadratureFailure,
    QWalkError,
    RelationFailure,
    ResourceLimit,
)
from .limit_law import (
    LimitDensity,
    asym_integrals,
    asym_limits,
    cdf,
    cdf_grid,
    density,
    density_cdf_csv,
    kolmogorov_distance,
    lambda_phi,
    lambda_psi,
    limit_char_fn,
    limit_mean,
)

__version__ = "0.1.0"

__all__ = [
    "CoinMatrix",
    "PolarParams",
    "make_coin",
    "split",
    "polar",
    "psi_from_phi",
    "phi_from_psi",
    "hadamard_coin",
    "WalkState",
    "Distribution",
    "initial_state",
    "step",
    "evolve",
    "evolve_snapshots",
    "distribution",
    "char_fn",
    "distribution_to_csv",
    "state_to_csv",
    "LaurentPoly",
    "TransferQuadruple",
    "cheb_T_laurent",
    "cheb_U_laurent",
    "transfer_polys",
    "qn_distribution",
    "cross_series",
    "cross_series_quadrature",
    "char_fn_components",
    "quadruple_to_csv",
    "CyclicRep",
    "RelationReport",
    "build_rep",
    "verify_relations",
    "build_basis",
    "qwr_check",
    "LimitDensity",
    "lambda_psi",
    "lambda_phi",
    "density",
    "cdf",
    "cdf_grid",
    "limit_char_fn",
    "limit_mean",
    "asym_integrals",
    "asym_limits",
    "kolmogorov_distance",
    "density_cdf_csv",
    "QWalkError",
    "NormViolation",
    "DegenerateCoin",
    "ParamViolation",
    "ResourceLimit",
    "QuadratureDivergence",
    "QuadratureFailure",
    "RelationFailure",
    "InvalidConfig",
]
