#include "purify/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "purify/errors.hpp"
#include "purify/linalg.hpp"

namespace purify {

double sigma_error(const std::vector<double>& v, const std::vector<double>& v_ref) {
    if (v.size() != v_ref.size()) throw DimensionMismatchError("sigma_error: length mismatch");
    if (v.empty()) throw std::invalid_argument("sigma_error: empty vectors");
    double minus = 0.0, plus = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double dm = v[i] - v_ref[i];
        double dp = v[i] + v_ref[i];
        minus += dm * dm;
        plus += dp * dp;
    }
    return std::sqrt(std::min(minus, plus) / static_cast<double>(v.size()));
}

double sigma_subspace(const std::vector<double>& v,
                      const std::vector<std::vector<double>>& basis) {
    if (basis.empty()) throw std::invalid_argument("sigma_subspace: empty basis");
    const std::size_t n = v.size();
    for (const auto& b : basis)
        if (b.size() != n) throw DimensionMismatchError("sigma_subspace: basis length mismatch");

    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = a; b < basis.size(); ++b) {
            double g = dot(basis[a], basis[b]);
            double expected = (a == b) ? 1.0 : 0.0;
            if (std::fabs(g - expected) > 1e-10)
                throw NonOrthonormalBasisError("sigma_subspace: basis is not orthonormal");
        }
    }

    std::vector<double> r = v;
    for (const auto& b : basis) {
        double c = dot(b, v);
        for (std::size_t i = 0; i < n; ++i) r[i] -= c * b[i];
    }
    return std::sqrt(dot(r, r) / static_cast<double>(n));
}

LyapunovTrace lyapunov_map_trace(const std::function<void(std::vector<double>&)>& step_map,
                                 std::vector<double> fiducial, std::vector<double> companion,
                                 double renorm_distance, std::size_t steps,
                                 std::size_t renorm_interval) {
    if (fiducial.size() != companion.size())
        throw DimensionMismatchError("lyapunov: trajectory length mismatch");
    if (!(renorm_distance > 0.0))
        throw std::invalid_argument("lyapunov: renorm distance must be positive");
    if (renorm_interval == 0) throw std::invalid_argument("lyapunov: renorm interval must be >= 1");

    double d_last = separation(fiducial, companion);
    if (d_last == 0.0)
        throw DegenerateOffsetError("lyapunov: initial separation is exactly zero");

    LyapunovTrace trace;
    trace.renorm_interval = renorm_interval;
    trace.rows.reserve(steps);
    double accum = 0.0;  // sum of log growth over completed segments

    for (std::size_t n = 1; n <= steps; ++n) {
        step_map(fiducial);
        step_map(companion);
        double zeta = separation(fiducial, companion);
        double lambda = (accum + std::log(zeta / d_last)) / static_cast<double>(n);
        trace.rows.push_back({n, zeta, lambda});

        if (n % renorm_interval == 0 && n < steps) {
            if (zeta == 0.0)
                throw DegenerateOffsetError("lyapunov: trajectories merged exactly");
            accum += std::log(zeta / d_last);
            double scale = renorm_distance / zeta;
            for (std::size_t i = 0; i < companion.size(); ++i)
                companion[i] = fiducial[i] + scale * (companion[i] - fiducial[i]);
            // Measure the realized separation rather than assuming the target:
            // the pullback rounds, and the estimate must stay exact.
            d_last = separation(fiducial, companion);
            if (d_last == 0.0)
                throw DegenerateOffsetError("lyapunov: pullback collapsed the companion");
        }
    }
    return trace;
}

LyapunovTrace lyapunov_estimate(const HermitianOperator& H,
                                const std::function<double(std::size_t)>& shifts,
                                const std::vector<double>& v0, double initial_offset,
                                std::size_t steps, std::size_t renorm_interval) {
    if (v0.empty()) throw std::invalid_argument("lyapunov: empty start vector");
    if (initial_offset == 0.0)
        throw DegenerateOffsetError("lyapunov: initial offset must be nonzero");
    if (std::fabs(initial_offset) < 1e-16 || std::fabs(initial_offset) > 1e-8)
        throw std::invalid_argument("lyapunov: |initial_offset| must lie in [1e-16, 1e-8]");

    std::vector<double> fiducial = normalize(v0);
    std::vector<double> companion = v0;
    companion[0] += initial_offset;
    normalize_in_place(companion);

    // The engine steps the fiducial then the companion within one map
    // iteration; both must see the same shift, hence the halved call count.
    auto calls = std::make_shared<std::size_t>(0);
    auto map = [&H, &shifts, calls](std::vector<double>& x) {
        const double s = shifts(*calls / 2);
        ++*calls;
        std::vector<double> y(x.size());
        H.apply_shifted_into(s, x, y);
        normalize_in_place(y);
        x = std::move(y);
    };
    const double d0 = separation(fiducial, companion);
    if (d0 == 0.0)
        throw DegenerateOffsetError("lyapunov: offset vanished under normalization");
    return lyapunov_map_trace(map, std::move(fiducial), std::move(companion), d0, steps,
                              renorm_interval);
}

std::vector<double> convergence_ratios(const Spectrum& spectrum, std::size_t k,
                                       const std::vector<std::int64_t>& counts, double delta,
                                       double initial_ratio_bound) {
    const auto& vals = spectrum.distinct_values;
    if (k >= vals.size()) throw BadTargetError("convergence_ratios: target index out of range");
    if (counts.size() != vals.size())
        throw DimensionMismatchError("convergence_ratios: counts length mismatch");
    if (!(delta > 0.0)) throw std::invalid_argument("convergence_ratios: delta must be positive");
    if (!(initial_ratio_bound > 0.0))
        throw std::invalid_argument("convergence_ratios: ratio bound must be positive");
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (i != k && vals[i] == vals[k])
            throw DegenerateGapError("convergence_ratios: a value coincides with the target");

    const double ln10 = std::log(10.0);
    std::vector<double> out(vals.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i == k) continue;
        double log_r = std::log(initial_ratio_bound);
        for (std::size_t j = 0; j < vals.size(); ++j) {
            if (j == i || j == k) continue;
            log_r += static_cast<double>(counts[j]) *
                     std::log(std::fabs((vals[i] - vals[j]) / (vals[k] - vals[j])));
        }
        log_r += static_cast<double>(counts[i]) * std::log(delta / std::fabs(vals[k] - vals[i]));
        out[i] = log_r / ln10;
    }
    return out;
}

std::vector<std::int64_t> shift_histogram(const std::vector<std::size_t>& shift_history,
                                          std::size_t n_values) {
    std::size_t size = n_values;
    if (size == 0) {
        for (std::size_t j : shift_history) size = std::max(size, j + 1);
    } else {
        for (std::size_t j : shift_history)
            if (j >= size) throw std::invalid_argument("shift_histogram: index out of range");
    }
    std::vector<std::int64_t> counts(size, 0);
    for (std::size_t j : shift_history) counts[j] += 1;
    return counts;
}

}  // namespace purify
