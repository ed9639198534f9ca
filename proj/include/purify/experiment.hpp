#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "purify/eigensolve.hpp"
#include "purify/richardson.hpp"

namespace purify {

/// Diagonal entries i.i.d. uniform on [-1, 1] from SplitMix64(seed); every
/// off-diagonal entry exactly 1.
TridiagonalMatrix generate_random_tridiagonal(std::size_t n, std::uint64_t seed);

enum class ExperimentKind { Tridiag, Su2, Lyapunov };

/// Everything one reproducible experiment needs. Seeds are always explicit.
struct ExperimentManifest {
    ExperimentKind kind = ExperimentKind::Tridiag;
    RunConfig config;

    // tridiag / lyapunov
    std::size_t n = 64;
    std::size_t target_k = 0;
    bool baseline = false;

    // su2
    int spins = 4;
    double spin_magnitude = 0.5;
    double mz = 0.0;
    int target_l = 0;
    bool orthonormalize = false;

    // lyapunov
    double offset = 1e-12;

    std::filesystem::path out_dir;
};

/// Run the experiment, write its artifacts (matrix/eigenvalue files, traces,
/// diagnostics CSVs, summary.json) under manifest.out_dir.
/// Returns 0 iff converged (lyapunov: iff the trace completed).
int run_experiment(const ExperimentManifest& manifest);

/// Run-level parallelism cap: PURIFY_THREADS env var, clamped to [1, hw].
int thread_budget();

}  // namespace purify
