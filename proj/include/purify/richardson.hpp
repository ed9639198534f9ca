#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "purify/operator.hpp"
#include "purify/rng.hpp"
#include "purify/spectrum.hpp"

namespace purify {

/// Tunables of one purification run.
struct RunConfig {
    double delta_bar = 1e-10;         // residual weight assigned to a freshly eliminated index
    double sigma_bar_target = 1e-10;  // termination threshold on sigma_bar
    std::size_t max_iterations = 0;   // 0 = 50 * number of distinct eigenvalues
    double refresh_threshold = 1e-5;  // first refresh when sigma_bar drops below this
    std::size_t refresh_period = 50;  // later refreshes every this many iterations; 0 disables
    std::uint64_t rng_seed = 0;
};

/// Controller state over the distinct eigenvalues. Weights are kept in log
/// space: one update multiplies a weight by |eps_i - eps_j| / Delta, which is
/// up to W per step and overflows linear doubles within a few hundred
/// iterations at realistic band widths.
struct ControllerState {
    std::vector<double> log_weights;         // log a_i; slot target_index unused (-inf)
    std::size_t target_index = 0;            // k, into Spectrum::distinct_values
    double delta_bar = 0.0;
    double delta_spacing = 0.0;              // Delta
    std::vector<std::size_t> shift_history;  // chosen distinct-value indices, in order
    std::vector<std::int64_t> counts;        // m_i; counts[target_index] stays 0
    std::size_t iteration = 0;

    // Linear-space accessors for inspection and tests.
    double weight(std::size_t i) const;
    void set_weight(std::size_t i, double a);
};

struct TraceRow {
    std::size_t n;
    std::size_t chosen_index;
    double sigma_bar;
    std::optional<double> sigma;  // only when a reference was supplied
};

struct IterationTrace {
    std::vector<TraceRow> rows;
};

struct RunResult {
    std::vector<double> final_vector;
    std::size_t iterations_used = 0;
    bool converged = false;
    IterationTrace trace;
    std::vector<std::size_t> shift_history;
    std::vector<std::int64_t> counts;
};

/// Optional per-iterate diagnostic; receives the current unit iterate and
/// returns sigma against some reference (unknowable in production, known in
/// experiments).
using SigmaReference = std::function<double(const std::vector<double>&)>;

/// Draw the initial unit vector (entries uniform(-1,1)) and the weight array
/// (uniform(0,1) for i != k), both from SplitMix64(config.rng_seed); the
/// vector is drawn first, then the weights in index order.
std::pair<std::vector<double>, ControllerState> init_controller(const Spectrum& spectrum,
                                                                std::size_t k,
                                                                const RunConfig& config);

/// Same, continuing an existing generator stream (used for restarts).
std::pair<std::vector<double>, ControllerState> init_controller(const Spectrum& spectrum,
                                                                std::size_t k,
                                                                const RunConfig& config,
                                                                SplitMix64& rng,
                                                                std::size_t dimension);

/// j = argmax over i != k of the weights; ties break to the smallest index.
std::size_t select_shift(const ControllerState& state);

/// The A-2 weight update after shift j was applied:
///   a_j   <- delta_bar / Delta
///   a_i   <- a_i |eps_i - eps_j| / Delta   (i != j, k)
/// plus bookkeeping of counts and history.
ControllerState update_weights(ControllerState state, std::size_t j, const Spectrum& spectrum);

/// One controller step: select, apply the shifted operator, update weights,
/// advance the iteration counter.
std::pair<std::vector<double>, ControllerState> step(const HermitianOperator& H,
                                                     const Spectrum& spectrum,
                                                     ControllerState state,
                                                     std::vector<double> v);

/// Replace every weight by its reciprocal, then rescale so the largest is 1.
ControllerState refresh_weights(ControllerState state);

/// The stabilized algorithm: iterate `step` until sigma_bar <= target or the
/// iteration budget runs out, refreshing weights on the configured schedule
/// once sigma_bar first drops under refresh_threshold. A ZeroVector event
/// (shift annihilated the iterate exactly) restarts with a fresh random
/// vector, up to 3 times, preserving the trace.
RunResult run_stabilized(const HermitianOperator& H, const Spectrum& spectrum, std::size_t k,
                         const RunConfig& config, const SigmaReference& sigma_ref = nullptr);

/// The naive periodic baseline: shifts cycle through `permutation`
/// (eps^(n) = eps_P[n mod |P|]); same trace and termination contract.
/// Expected not to converge at large band width.
RunResult run_naive(const HermitianOperator& H, const Spectrum& spectrum, std::size_t k,
                    const std::vector<std::size_t>& permutation, const RunConfig& config,
                    const SigmaReference& sigma_ref = nullptr);

/// Seeded Fisher-Yates permutation of the distinct-value indices excluding k.
std::vector<std::size_t> random_permutation_excluding(std::size_t n_values, std::size_t k,
                                                      std::uint64_t seed);

}  // namespace purify
