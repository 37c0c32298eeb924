"""Polyanalytic calculus in one complex variable: exact ∂̄-problem solutions,
special functions and weighted L² estimates."""

from polyan.algebra import (
    E_ZBW,
    E_ZWB,
    E_ZZB,
    INFINITE,
    ONE,
    W,
    WB,
    Z,
    ZB,
    ExpPoly,
    Wirtinger,
    add,
    config,
    conjugate,
    evaluate,
    mul,
    polyanalytic_order,
    wirtinger,
    wirtinger_power,
)
from polyan.dbar import (
    PolyDecomposition,
    SolutionBundle,
    analytic_components,
    holomorphic_remainder,
    particular_solution,
    recompose,
    verify_solution,
)
from polyan.measures import (
    EstimateReport,
    NormResult,
    WeightSpec,
    estimate_check,
    gaussian_moment,
    hormander_norm,
    quad2d,
    radial_moment,
    sobolev_norms,
    weighted_pair_integral,
)
from polyan.parse import parse_expression
from polyan.special import (
    UniPoly,
    dcal,
    fock_kernel,
    fock_kernel_dbar,
    fock_particular_solution,
    hermite,
    hermite_particular_solution,
    hermite_rodrigues,
    laguerre,
    mixed_derivative_identity_check,
)

__version__ = "0.1.0"
