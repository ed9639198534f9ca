#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "purify/operator.hpp"
#include "purify/spectrum.hpp"

namespace purify {

/// sigma = sqrt( ||v - v_ref||^2 / N ) minimized over the global sign of v.
double sigma_error(const std::vector<double>& v, const std::vector<double>& v_ref);

/// Out-of-subspace residual: sigma = sqrt( ||v - P v||^2 / N ) with P the
/// projector onto span(basis). The basis must be orthonormal to 1e-10
/// (Gram matrix vs identity), else NonOrthonormalBasisError.
double sigma_subspace(const std::vector<double>& v,
                      const std::vector<std::vector<double>>& basis);

struct LyapunovRow {
    std::size_t n;
    double zeta;    // separation after step n
    double lambda;  // running exponent estimate
};

struct LyapunovTrace {
    std::vector<LyapunovRow> rows;
    std::size_t renorm_interval = 10;
};

/// Two-trajectory Benettin estimate for an arbitrary iterated map: fiducial
/// and companion evolve under the same `step_map`; every renorm_interval
/// steps the companion is pulled back to distance renorm_distance from the
/// fiducial and the accumulated log-growth feeds the running exponent.
/// Throws DegenerateOffsetError when the initial separation is zero.
LyapunovTrace lyapunov_map_trace(const std::function<void(std::vector<double>&)>& step_map,
                                 std::vector<double> fiducial, std::vector<double> companion,
                                 double renorm_distance, std::size_t steps,
                                 std::size_t renorm_interval = 10);

/// The purification map specialization: both trajectories evolve by
/// v <- normalize((H - shifts(n)) v); the companion starts at
/// normalize(v0 + initial_offset * e_0).
LyapunovTrace lyapunov_estimate(const HermitianOperator& H,
                                const std::function<double(std::size_t)>& shifts,
                                const std::vector<double>& v0, double initial_offset,
                                std::size_t steps, std::size_t renorm_interval = 10);

/// Analytic bound on the surviving amplitude ratios after a run:
///   log r_i,k = sum_{j != i,k} m_j log|(eps_i - eps_j)/(eps_k - eps_j)|
///             + m_i log|delta/(eps_k - eps_i)|  + log(initial_ratio_bound)
/// over the distinct values; returned as log10. Entry k is NaN.
std::vector<double> convergence_ratios(const Spectrum& spectrum, std::size_t k,
                                       const std::vector<std::int64_t>& counts, double delta,
                                       double initial_ratio_bound = 1.0);

/// Occurrence counts m_i of each index in a shift history. n_values = 0
/// infers (max index + 1); pass the distinct-value count to keep trailing
/// zeros.
std::vector<std::int64_t> shift_histogram(const std::vector<std::size_t>& shift_history,
                                          std::size_t n_values = 0);

}  // namespace purify
