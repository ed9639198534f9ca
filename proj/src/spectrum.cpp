#include "purify/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "purify/errors.hpp"

namespace purify {

Spectrum spectrum_stats(const std::vector<double>& sorted_eigenvalues, double tol) {
    if (sorted_eigenvalues.empty()) throw std::invalid_argument("spectrum_stats: empty input");
    if (!(tol >= 0.0)) throw std::invalid_argument("spectrum_stats: tolerance must be >= 0");
    for (std::size_t i = 0; i + 1 < sorted_eigenvalues.size(); ++i)
        if (sorted_eigenvalues[i] > sorted_eigenvalues[i + 1])
            throw std::invalid_argument("spectrum_stats: input must be sorted ascending");

    Spectrum s;
    s.eigenvalues = sorted_eigenvalues;
    s.multiplicity_tolerance = tol;
    s.total_dimension = sorted_eigenvalues.size();

    // Group values whose consecutive gap is below the relative tolerance;
    // each group's representative is the mean of its members.
    std::size_t start = 0;
    const auto& ev = sorted_eigenvalues;
    for (std::size_t i = 1; i <= ev.size(); ++i) {
        bool close = false;
        if (i < ev.size()) {
            double scale = std::max({1.0, std::fabs(ev[i - 1]), std::fabs(ev[i])});
            close = (ev[i] - ev[i - 1]) <= tol * scale;
        }
        if (!close) {
            double mean = 0.0;
            for (std::size_t j = start; j < i; ++j) mean += ev[j];
            mean /= static_cast<double>(i - start);
            s.distinct_values.push_back(mean);
            s.multiplicities.push_back(static_cast<std::int64_t>(i - start));
            start = i;
        }
    }

    if (s.distinct_values.size() < 2)
        throw AllDegenerateError("spectrum_stats: all eigenvalues coincide within tolerance");

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < s.distinct_values.size(); ++i)
        min_gap = std::min(min_gap, s.distinct_values[i + 1] - s.distinct_values[i]);
    s.delta = min_gap;
    s.band_width = (s.distinct_values.back() - s.distinct_values.front()) / s.delta;
    return s;
}

}  // namespace purify
