#include "purify/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "purify/errors.hpp"
#include "purify/operator.hpp"
#include "purify/rng.hpp"

namespace purify {

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatchError("dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

void normalize_in_place(std::vector<double>& v) {
    double nrm = norm(v);
    // Threshold well above the smallest subnormal: dividing by anything
    // smaller would overflow components to inf.
    if (!(nrm > 1e-300)) throw ZeroVectorError("normalize: vector norm is effectively zero");
    double inv = 1.0 / nrm;
    for (double& x : v) x *= inv;
}

std::vector<double> normalize(std::vector<double> v) {
    normalize_in_place(v);
    return v;
}

void canonicalize_sign(std::vector<double>& v) {
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = std::fabs(v[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (best > 0.0 && v[arg] < 0.0)
        for (double& x : v) x = -x;
}

std::vector<double> apply_shifted(const HermitianOperator& H, double shift,
                                  const std::vector<double>& v) {
    std::vector<double> y(v.size());
    H.apply_shifted_into(shift, v, y);
    normalize_in_place(y);
    canonicalize_sign(y);
    return y;
}

double residual_sigma_bar(const HermitianOperator& H, double eps_k,
                          std::span<const double> v) {
    std::vector<double> y(v.size());
    H.apply_shifted_into(eps_k, v, y);
    return std::sqrt(dot(y, y) / static_cast<double>(v.size()));
}

double separation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatchError("separation: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::vector<double> random_unit_vector(std::size_t n, SplitMix64& rng) {
    std::vector<double> v(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform_pm1();
        double nrm = norm(v);
        if (nrm > 1e-8) break;  // astronomically unlikely to loop
    }
    normalize_in_place(v);
    return v;
}

}  // namespace purify
