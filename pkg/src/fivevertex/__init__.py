"""Five-vertex model with scalar-product boundary conditions.

Exact finite-size partition functions (Hankel determinant and discrete
log-gas representations in rational arithmetic), closed-form equilibrium
measures and resolvents of the associated constrained log-gas, free-energy
densities in every regime, and a verification harness tying the finite
and asymptotic levels together.
"""

from .asymptotics import (
    CriticalValues,
    ScaledGeometry,
    ScenarioReport,
    classify,
    critical_values,
    loggas_free_energy,
    macmahon_growth,
    macmahon_growth_equal,
    polynomial_growth,
    regime_one_free_energy_t,
    regime_two_free_energy_t,
    t_of_x,
    vertex_free_energy,
    x_of_t,
)
from .equilibrium import (
    BandSupport,
    MeasureClosure,
    ParametricState,
    band_endpoints,
    density,
    density_moment,
    density_normalization,
    endpoint_residuals,
    first_moment,
    measure_closure,
    parametric_state,
    potential,
    potential_derivative,
    resolvent,
    resolvent_quadrature,
)
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    DomainError,
    FiveVertexError,
    InternalConsistencyError,
    QuadratureError,
)
from .exact import (
    FiniteModel,
    RationalPolynomial,
    WeightParams,
    binomial,
    hyper2f1_polynomial,
    partition_function,
    partition_polynomial,
    plane_partition_count,
    site_weight,
    tau_hankel,
    tau_loggas,
)
from .precision import MPContext
from .verify import (
    ConvergenceRecord,
    SuiteReport,
    TransitionProbe,
    convergence_study,
    equivalence_sweep,
    run_suites,
    scenario_scan,
    transition_order,
)

__version__ = "0.1.0"

__all__ = [
    "BandSupport",
    "BudgetExceededError",
    "ConvergenceError",
    "ConvergenceRecord",
    "CriticalValues",
    "DomainError",
    "FiniteModel",
    "FiveVertexError",
    "InternalConsistencyError",
    "MPContext",
    "MeasureClosure",
    "ParametricState",
    "QuadratureError",
    "RationalPolynomial",
    "ScaledGeometry",
    "ScenarioReport",
    "SuiteReport",
    "TransitionProbe",
    "WeightParams",
    "band_endpoints",
    "binomial",
    "classify",
    "convergence_study",
    "critical_values",
    "density",
    "density_moment",
    "density_normalization",
    "endpoint_residuals",
    "equivalence_sweep",
    "first_moment",
    "hyper2f1_polynomial",
    "loggas_free_energy",
    "macmahon_growth",
    "macmahon_growth_equal",
    "measure_closure",
    "parametric_state",
    "partition_function",
    "partition_polynomial",
    "plane_partition_count",
    "polynomial_growth",
    "potential",
    "potential_derivative",
    "regime_one_free_energy_t",
    "regime_two_free_energy_t",
    "resolvent",
    "resolvent_quadrature",
    "run_suites",
    "scenario_scan",
    "site_weight",
    "t_of_x",
    "tau_hankel",
    "tau_loggas",
    "transition_order",
    "vertex_free_energy",
    "x_of_t",
]
