"""Eigenvector purification by chaos-controlled shift scheduling.

The C++ core does the work; this package re-exports it. The central entry
points are `run_stabilized` (the controlled algorithm), `run_naive` (the
chaotic periodic baseline), and `extract_degenerate_basis` (shared-sequence
extraction of degenerate eigenspaces).
"""

from ._core import (
    DegenerateBasisResult,
    HermitianOperator,
    IterationTrace,
    LyapunovRow,
    LyapunovTrace,
    PurifyError,
    RunConfig,
    RunResult,
    SpinSystem,
    Spectrum,
    TraceRow,
    build_l2_operator,
    convergence_ratios,
    exact_spectrum,
    extract_degenerate_basis,
    generate_random_tridiagonal,
    lyapunov_estimate,
    ql_eigenvalues,
    random_permutation_excluding,
    read_eigenvalues,
    read_matrix,
    read_vector,
    residual_sigma_bar,
    run_naive,
    run_stabilized,
    shift_histogram,
    sigma_error,
    sigma_subspace,
    spectrum_stats,
    write_eigenvalues,
    write_matrix,
    write_vector,
)

__all__ = [
    "DegenerateBasisResult",
    "HermitianOperator",
    "IterationTrace",
    "LyapunovRow",
    "LyapunovTrace",
    "PurifyError",
    "RunConfig",
    "RunResult",
    "SpinSystem",
    "Spectrum",
    "TraceRow",
    "build_l2_operator",
    "convergence_ratios",
    "exact_spectrum",
    "extract_degenerate_basis",
    "generate_random_tridiagonal",
    "lyapunov_estimate",
    "ql_eigenvalues",
    "random_permutation_excluding",
    "read_eigenvalues",
    "read_matrix",
    "read_vector",
    "residual_sigma_bar",
    "run_naive",
    "run_stabilized",
    "shift_histogram",
    "sigma_error",
    "sigma_subspace",
    "spectrum_stats",
    "write_eigenvalues",
    "write_matrix",
    "write_vector",
]
