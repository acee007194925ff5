"""Expected numbers of internal equilibria in random games with correlated payoffs.

A symmetric d-player game with two strategies has internal equilibria at the
positive roots of ``P(y) = sum_k beta_k C(d-1, k) y^k``.  When the payoff
differences ``beta_k`` are standard normal with a common pairwise correlation
``r``, this package computes the mean number of such roots exactly (by
quadrature of the zero density), approximately for large ``d``, and by
sampling.
"""
__version__ = "0.1.0"

from .asymptotics import (
    AsymptoticResult,
    asymptotic,
    asymptotic_E1,
    asymptotic_E2,
    asymptotic_r0,
    bernstein_expected_real_zeros,
)
from .density import (
    DensityComponents,
    LegendreEval,
    density,
    density_at_one,
    density_components,
    density_in_x,
    legendre,
)
from .errors import (
    AllCoefficientsZero,
    ConvergenceFailure,
    NotPSD,
    OutOfModelRange,
    RootAtToleranceBoundary,
)
from .expected import ExpectedResult, expected_curve, expected_internal, expected_internal_improper
from .game import (
    EquilibriumReport,
    GainPolynomial,
    GameSpec,
    count_positive_roots,
    find_equilibria,
    gain_function_value,
    gain_polynomial,
)
from .montecarlo import (
    Estimate,
    SimulationConfig,
    SimulationReport,
    beta_symmetry_check,
    simulate,
    simulate_stable_fraction,
)
from .quadrature import QuadratureConfig
from .sampling import (
    CorrelationSpec,
    SampleBatch,
    effective_correlation,
    sample_beta,
    sample_beta_general,
)
