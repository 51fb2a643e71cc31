"""Coresets for norm-regularized regression."""

from ._core import (
    Coreset,
    CounterexampleWitness,
    Error,
    SensitivityScores,
    SolverResult,
    VerificationReport,
    build_coreset,
    counterexample_alpha,
    demonstrate_violation,
    evaluate_objective,
    generate_ng_matrix,
    generate_response,
    prox_squared_l1,
    ridge_leverage_scores,
    rlad_sensitivity_bounds,
    run_experiment,
    run_sparsity,
    sample_size,
    solve,
    sparsity_count,
    statistical_dimension,
    uniform_scores,
    verify_coreset,
)

__all__ = [
    "Coreset",
    "CounterexampleWitness",
    "Error",
    "SensitivityScores",
    "SolverResult",
    "VerificationReport",
    "build_coreset",
    "counterexample_alpha",
    "demonstrate_violation",
    "evaluate_objective",
    "generate_ng_matrix",
    "generate_response",
    "prox_squared_l1",
    "ridge_leverage_scores",
    "rlad_sensitivity_bounds",
    "run_experiment",
    "run_sparsity",
    "sample_size",
    "solve",
    "sparsity_count",
    "statistical_dimension",
    "uniform_scores",
    "verify_coreset",
]
