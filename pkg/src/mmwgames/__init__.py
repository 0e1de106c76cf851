"""Certified equilibria of one-round zero-sum quantum games via matrix
multiplicative weights, with a reduction for strictly positive semidefinite
programs in super-operator form."""

from .errors import (
    DegenerateGame,
    DimensionError,
    InvalidDensity,
    InvalidMeasurement,
    NotHermitian,
    NotStrictlyPositive,
    NumericalError,
    SchemaError,
    ValueTooSmall,
)
from .linalg import (
    TOLERANCES,
    Spectrum,
    Tolerances,
    check_density,
    eig,
    hermitian,
    hs_inner,
    kron,
    mat_exp,
    partial_trace_A,
    partial_trace_B,
    spectral_norm,
    trace_norm,
)
from .games import (
    GameSuperOp,
    Measurement,
    PayoffObservable,
    RescaledGame,
    apply,
    apply_adjoint,
    expected_payoff,
    is_unit_range,
    observable_from_measurement,
    observable_from_superop,
    rescale,
    superop_from_observable,
)
from .solver import (
    EquilibriumResult,
    SolverParams,
    best_response_alice,
    best_response_bob,
    classical_minimax_oracle,
    default_iterations,
    default_mu,
    equilibrium_gap,
    solve,
)
from .psdp import PsdpResult, SuperOpSDP, solve_psdp, to_normal_form

__version__ = "0.1.0"

__all__ = [
    "DegenerateGame",
    "DimensionError",
    "InvalidDensity",
    "InvalidMeasurement",
    "NotHermitian",
    "NotStrictlyPositive",
    "NumericalError",
    "SchemaError",
    "ValueTooSmall",
    "TOLERANCES",
    "Tolerances",
    "Spectrum",
    "hermitian",
    "check_density",
    "hs_inner",
    "eig",
    "spectral_norm",
    "trace_norm",
    "mat_exp",
    "kron",
    "partial_trace_A",
    "partial_trace_B",
    "PayoffObservable",
    "Measurement",
    "GameSuperOp",
    "RescaledGame",
    "observable_from_measurement",
    "superop_from_observable",
    "observable_from_superop",
    "apply",
    "apply_adjoint",
    "expected_payoff",
    "rescale",
    "is_unit_range",
    "SolverParams",
    "EquilibriumResult",
    "default_mu",
    "default_iterations",
    "solve",
    "equilibrium_gap",
    "best_response_alice",
    "best_response_bob",
    "classical_minimax_oracle",
    "SuperOpSDP",
    "PsdpResult",
    "to_normal_form",
    "solve_psdp",
]
