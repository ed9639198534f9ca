#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace purify {

/// Sorted eigenvalue list with its degeneracy structure and the two numbers
/// the controller runs on: the smallest distinct spacing Delta and the
/// natural band width W = (eps_max - eps_min) / Delta.
struct Spectrum {
    /// Full sorted list, one entry per eigenvalue (with multiplicity).
    /// May be empty for sectors too large to materialize; total_dimension
    /// is authoritative then.
    std::vector<double> eigenvalues;
    std::vector<double> distinct_values;       // sorted ascending
    std::vector<std::int64_t> multiplicities;  // parallel to distinct_values
    double delta = 0.0;                        // smallest adjacent distinct gap
    double band_width = 0.0;                   // (max - min) / delta
    double multiplicity_tolerance = 1e-12;
    std::size_t total_dimension = 0;

    std::size_t n_distinct() const { return distinct_values.size(); }
};

/// Collapse a sorted eigenvalue list into a Spectrum. Adjacent values whose
/// gap is <= tol * max(1, |eps_i|, |eps_i+1|) are treated as one degenerate
/// value (represented by the group mean). Throws AllDegenerateError when only
/// one distinct value remains.
Spectrum spectrum_stats(const std::vector<double>& sorted_eigenvalues,
                        double multiplicity_tolerance = 1e-12);

}  // namespace purify
