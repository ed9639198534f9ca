#include "purify/richardson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "purify/errors.hpp"
#include "purify/linalg.hpp"

namespace purify {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_target(const Spectrum& spectrum, std::size_t k) {
    if (k >= spectrum.distinct_values.size())
        throw BadTargetError("target index " + std::to_string(k) + " out of range for " +
                             std::to_string(spectrum.distinct_values.size()) +
                             " distinct eigenvalues");
}

void check_config(const RunConfig& config) {
    if (!(config.delta_bar > 0.0))
        throw std::invalid_argument("run config: delta_bar must be positive");
    if (!(config.sigma_bar_target >= std::numeric_limits<double>::epsilon()))
        throw std::invalid_argument("run config: sigma_bar_target below machine epsilon");
    if (!(config.refresh_threshold > 0.0))
        throw std::invalid_argument("run config: refresh_threshold must be positive");
}

std::size_t iteration_budget(const RunConfig& config, std::size_t n_distinct) {
    return config.max_iterations != 0 ? config.max_iterations : 50 * n_distinct;
}

void check_operator(const HermitianOperator& H, const Spectrum& spectrum) {
    if (H.dim() != spectrum.total_dimension)
        throw DimensionMismatchError("operator dim " + std::to_string(H.dim()) +
                                     " vs spectrum dimension " +
                                     std::to_string(spectrum.total_dimension));
}

}  // namespace

double ControllerState::weight(std::size_t i) const { return std::exp(log_weights.at(i)); }

void ControllerState::set_weight(std::size_t i, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("set_weight: weight must be positive");
    log_weights.at(i) = std::log(a);
}

std::pair<std::vector<double>, ControllerState> init_controller(const Spectrum& spectrum,
                                                                std::size_t k,
                                                                const RunConfig& config,
                                                                SplitMix64& rng,
                                                                std::size_t dimension) {
    check_target(spectrum, k);
    check_config(config);
    if (!(config.delta_bar < spectrum.delta))
        throw std::invalid_argument("run config: delta_bar must be below the smallest spacing");
    const std::size_t n = spectrum.distinct_values.size();

    auto v = random_unit_vector(dimension, rng);

    ControllerState st;
    st.log_weights.assign(n, kNegInf);
    for (std::size_t i = 0; i < n; ++i)
        if (i != k) st.log_weights[i] = std::log(rng.uniform01_open());
    st.target_index = k;
    st.delta_bar = config.delta_bar;
    st.delta_spacing = spectrum.delta;
    st.counts.assign(n, 0);
    return {std::move(v), std::move(st)};
}

std::pair<std::vector<double>, ControllerState> init_controller(const Spectrum& spectrum,
                                                                std::size_t k,
                                                                const RunConfig& config) {
    SplitMix64 rng(config.rng_seed);
    return init_controller(spectrum, k, config, rng, spectrum.total_dimension);
}

std::size_t select_shift(const ControllerState& state) {
    double best = kNegInf;
    std::size_t arg = state.log_weights.size();
    for (std::size_t i = 0; i < state.log_weights.size(); ++i) {
        if (i == state.target_index) continue;
        if (state.log_weights[i] > best) {
            best = state.log_weights[i];
            arg = i;
        }
    }
    if (arg == state.log_weights.size())
        throw std::logic_error("select_shift: no candidate weight");
    return arg;
}

ControllerState update_weights(ControllerState state, std::size_t j, const Spectrum& spectrum) {
    const auto& vals = spectrum.distinct_values;
    if (j >= vals.size() || j == state.target_index)
        throw std::invalid_argument("update_weights: invalid shift index");
    const double log_delta = std::log(state.delta_spacing);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i == state.target_index || i == j) continue;
        state.log_weights[i] += std::log(std::fabs(vals[i] - vals[j])) - log_delta;
    }
    state.log_weights[j] = std::log(state.delta_bar) - log_delta;
    // Rescale so the leading weight is 1. The weights model the coefficient
    // magnitudes of a vector that is itself renormalized every step; without
    // this the array's overall scale grows without bound and the reset level
    // delta_bar/Delta sinks ever further below the pack, collapsing the
    // selection into a fixed round-robin regardless of how fast each
    // component actually regrows.
    double max_log = kNegInf;
    for (std::size_t i = 0; i < state.log_weights.size(); ++i) {
        if (i == state.target_index) continue;
        max_log = std::max(max_log, state.log_weights[i]);
    }
    for (std::size_t i = 0; i < state.log_weights.size(); ++i) {
        if (i == state.target_index) continue;
        state.log_weights[i] -= max_log;
    }
    state.counts[j] += 1;
    state.shift_history.push_back(j);
    return state;
}

std::pair<std::vector<double>, ControllerState> step(const HermitianOperator& H,
                                                     const Spectrum& spectrum,
                                                     ControllerState state,
                                                     std::vector<double> v) {
    const std::size_t j = select_shift(state);
    v = apply_shifted(H, spectrum.distinct_values[j], v);
    state = update_weights(std::move(state), j, spectrum);
    state.iteration += 1;
    return {std::move(v), std::move(state)};
}

ControllerState refresh_weights(ControllerState state) {
    double max_log = kNegInf;
    for (std::size_t i = 0; i < state.log_weights.size(); ++i) {
        if (i == state.target_index) continue;
        state.log_weights[i] = -state.log_weights[i];
        max_log = std::max(max_log, state.log_weights[i]);
    }
    for (std::size_t i = 0; i < state.log_weights.size(); ++i) {
        if (i == state.target_index) continue;
        state.log_weights[i] -= max_log;
    }
    return state;
}

RunResult run_stabilized(const HermitianOperator& H, const Spectrum& spectrum, std::size_t k,
                         const RunConfig& config, const SigmaReference& sigma_ref) {
    check_operator(H, spectrum);
    check_target(spectrum, k);
    check_config(config);

    SplitMix64 rng(config.rng_seed);
    auto [v, state] = init_controller(spectrum, k, config, rng, H.dim());
    const std::size_t budget = iteration_budget(config, spectrum.distinct_values.size());
    const double eps_k = spectrum.distinct_values[k];

    RunResult res;
    bool refresh_latched = false;
    std::size_t next_refresh = 0;
    int restarts = 0;

    while (state.iteration < budget) {
        const std::size_t j = select_shift(state);
        std::vector<double> next;
        try {
            next = apply_shifted(H, spectrum.distinct_values[j], v);
        } catch (const ZeroVectorError&) {
            // The shift annihilated the iterate exactly. Redraw both the
            // vector and the weights from the continuing stream; keep the
            // record of what was already applied.
            if (++restarts > 3) throw;
            auto history = std::move(state.shift_history);
            auto counts = std::move(state.counts);
            const std::size_t done = state.iteration;
            std::tie(v, state) = init_controller(spectrum, k, config, rng, H.dim());
            state.shift_history = std::move(history);
            state.counts = std::move(counts);
            state.iteration = done;
            refresh_latched = false;
            continue;
        }
        v = std::move(next);
        state = update_weights(std::move(state), j, spectrum);
        const std::size_t n = state.iteration;  // this step applies shift eps^(n)
        state.iteration += 1;

        const double sb = residual_sigma_bar(H, eps_k, v);
        TraceRow row{n, j, sb, std::nullopt};
        if (sigma_ref) row.sigma = sigma_ref(v);
        res.trace.rows.push_back(std::move(row));

        if (sb <= config.sigma_bar_target) {
            res.converged = true;
            break;
        }
        if (config.refresh_period != 0) {
            if (!refresh_latched && sb < config.refresh_threshold) {
                refresh_latched = true;
                state = refresh_weights(std::move(state));
                next_refresh = state.iteration + config.refresh_period;
            } else if (refresh_latched && state.iteration >= next_refresh) {
                state = refresh_weights(std::move(state));
                next_refresh = state.iteration + config.refresh_period;
            }
        }
    }

    res.final_vector = std::move(v);
    res.iterations_used = state.iteration;
    res.shift_history = std::move(state.shift_history);
    res.counts = std::move(state.counts);
    return res;
}

RunResult run_naive(const HermitianOperator& H, const Spectrum& spectrum, std::size_t k,
                    const std::vector<std::size_t>& permutation, const RunConfig& config,
                    const SigmaReference& sigma_ref) {
    check_operator(H, spectrum);
    check_target(spectrum, k);
    check_config(config);
    // The schedule must be a full ordering of the non-target distinct indices:
    // a partial cycle would leave some components untouched forever.
    const std::size_t n_distinct = spectrum.distinct_values.size();
    if (permutation.size() != n_distinct - 1)
        throw std::invalid_argument("run_naive: schedule must order every index except k");
    std::vector<bool> seen(n_distinct, false);
    for (std::size_t j : permutation) {
        if (j >= n_distinct || j == k)
            throw std::invalid_argument("run_naive: schedule entry out of range or equal to k");
        if (seen[j]) throw std::invalid_argument("run_naive: schedule repeats an index");
        seen[j] = true;
    }

    SplitMix64 rng(config.rng_seed);
    auto v = random_unit_vector(H.dim(), rng);
    const std::size_t budget = iteration_budget(config, spectrum.distinct_values.size());
    const double eps_k = spectrum.distinct_values[k];

    RunResult res;
    res.counts.assign(spectrum.distinct_values.size(), 0);
    int restarts = 0;

    for (std::size_t n = 0; n < budget; ++n) {
        const std::size_t j = permutation[n % permutation.size()];
        try {
            v = apply_shifted(H, spectrum.distinct_values[j], v);
        } catch (const ZeroVectorError&) {
            if (++restarts > 3) throw;
            v = random_unit_vector(H.dim(), rng);
            --n;  // the annihilated application is not an iteration
            continue;
        }
        res.counts[j] += 1;
        res.shift_history.push_back(j);

        const double sb = residual_sigma_bar(H, eps_k, v);
        TraceRow row{n, j, sb, std::nullopt};
        if (sigma_ref) row.sigma = sigma_ref(v);
        res.trace.rows.push_back(std::move(row));
        res.iterations_used = n + 1;

        if (sb <= config.sigma_bar_target) {
            res.converged = true;
            break;
        }
    }

    res.final_vector = std::move(v);
    return res;
}

std::vector<std::size_t> random_permutation_excluding(std::size_t n_values, std::size_t k,
                                                      std::uint64_t seed) {
    std::vector<std::size_t> p;
    p.reserve(n_values > 0 ? n_values - 1 : 0);
    for (std::size_t i = 0; i < n_values; ++i)
        if (i != k) p.push_back(i);
    SplitMix64 rng(seed);
    for (std::size_t i = p.size(); i-- > 1;) {
        std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace purify
