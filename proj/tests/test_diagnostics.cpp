#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "purify/diagnostics.hpp"
#include "purify/eigensolve.hpp"
#include "purify/errors.hpp"
#include "purify/experiment.hpp"
#include "purify/linalg.hpp"
#include "purify/richardson.hpp"
#include "purify/rng.hpp"

using namespace purify;

TEST_CASE("sigma_error: identity, sign freedom, orthogonal pair") {
    std::vector<double> a{1, 0}, b{0, 1}, na{-1, 0};
    CHECK(sigma_error(a, a) == 0.0);
    CHECK(sigma_error(na, a) == 0.0);
    CHECK(sigma_error(a, b) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)sigma_error({1.0}, {1.0, 0.0}), DimensionMismatchError);
}

TEST_CASE("sigma_error: symmetric after sign minimization") {
    SplitMix64 rng(64);
    auto u = random_unit_vector(9, rng);
    auto w = random_unit_vector(9, rng);
    CHECK(sigma_error(u, w) == doctest::Approx(sigma_error(w, u)).epsilon(1e-15));
}

TEST_CASE("sigma_subspace: projector identities") {
    std::vector<std::vector<double>> e1only{{1, 0}};
    CHECK(sigma_subspace({1, 0}, e1only) == 0.0);
    CHECK(sigma_subspace({0, 1}, e1only) == doctest::Approx(1.0 / std::sqrt(2.0)));

    // v inside the span of a rotated 2-D basis in R^3
    double c = std::cos(0.3), s = std::sin(0.3);
    std::vector<std::vector<double>> basis{{c, s, 0}, {-s, c, 0}};
    std::vector<double> v = normalize({0.4, -0.7, 0.0});
    CHECK(sigma_subspace(v, basis) <= 1e-14);
}

TEST_CASE("sigma_subspace: complete basis rejects nothing") {
    auto T = generate_random_tridiagonal(12, 3);
    auto oracle = dense_eig_oracle(T.to_operator());
    SplitMix64 rng(4);
    auto v = random_unit_vector(12, rng);
    CHECK(sigma_subspace(v, oracle.eigenvectors) <= 1e-12);
}

TEST_CASE("sigma_subspace: equals the direct projection residual") {
    auto T = generate_random_tridiagonal(20, 8);
    auto oracle = dense_eig_oracle(T.to_operator());
    std::vector<std::vector<double>> basis(oracle.eigenvectors.begin(),
                                           oracle.eigenvectors.begin() + 5);
    SplitMix64 rng(9);
    auto v = random_unit_vector(20, rng);

    std::vector<double> resid = v;
    for (const auto& e : basis) {
        double c = dot(e, v);
        for (std::size_t t = 0; t < 20; ++t) resid[t] -= c * e[t];
    }
    double direct = std::sqrt(dot(resid, resid) / 20.0);
    CHECK(sigma_subspace(v, basis) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("sigma_subspace: rejects a non-orthonormal basis") {
    std::vector<std::vector<double>> bad{{1, 0}, {0.7071, 0.7071}};
    CHECK_THROWS_AS((void)sigma_subspace({0, 1}, bad), NonOrthonormalBasisError);
    std::vector<std::vector<double>> unnormalized{{2, 0}};
    CHECK_THROWS_AS((void)sigma_subspace({0, 1}, unnormalized), NonOrthonormalBasisError);
}

TEST_CASE("lyapunov_map_trace: doubling fixture gives ln 2 to 1e-12") {
    auto doubling = [](std::vector<double>& v) { v[0] *= 2.0; };
    const double d0 = 0x1.0p-30;
    auto trace = lyapunov_map_trace(doubling, {0.0}, {d0}, d0, 1000, 10);
    REQUIRE(trace.rows.size() == 1000);
    CHECK(trace.rows.back().lambda == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // separation never saturates thanks to the pullback
    for (const auto& row : trace.rows) CHECK(row.zeta <= d0 * 1024.0 + 1e-300);
}

TEST_CASE("lyapunov_map_trace: halving fixture gives -ln 2") {
    auto halving = [](std::vector<double>& v) { v[0] *= 0.5; };
    const double d0 = 0x1.0p-30;
    auto trace = lyapunov_map_trace(halving, {0.0}, {d0}, d0, 1000, 10);
    CHECK(trace.rows.back().lambda == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("lyapunov_map_trace: zero separation raises") {
    auto id = [](std::vector<double>&) {};
    CHECK_THROWS_AS((void)lyapunov_map_trace(id, {1.0}, {1.0}, 1e-9, 10, 5),
                    DegenerateOffsetError);
}

TEST_CASE("lyapunov_estimate: offset validation") {
    auto T = generate_random_tridiagonal(8, 1);
    auto H = T.to_operator();
    auto shifts = [](std::size_t) { return 0.5; };
    SplitMix64 rng(2);
    auto v0 = random_unit_vector(8, rng);
    CHECK_THROWS_AS((void)lyapunov_estimate(H, shifts, v0, 0.0, 10), DegenerateOffsetError);
    CHECK_THROWS((void)lyapunov_estimate(H, shifts, v0, 1e-20, 10));
    CHECK_THROWS((void)lyapunov_estimate(H, shifts, v0, 1e-6, 10));
}

TEST_CASE("lyapunov_estimate: positive exponent under the periodic naive sequence") {
    // The schedule must omit an interior index: omitting a band-edge index
    // leaves a cyclic product with one dominant direction, the separation
    // locks onto it, and the exponent measures as zero or negative.
    auto T = generate_random_tridiagonal(64, 23);
    auto H = T.to_operator();
    auto sp = spectrum_stats(ql_eigenvalues(T));
    auto perm = random_permutation_excluding(sp.n_distinct(), 32, 99);
    auto shifts = [&](std::size_t n) { return sp.distinct_values[perm[n % perm.size()]]; };
    SplitMix64 rng(24);
    auto v0 = random_unit_vector(64, rng);
    auto trace = lyapunov_estimate(H, shifts, v0, 1e-12, 2000);
    REQUIRE(trace.rows.size() == 2000);
    CHECK(trace.rows.back().lambda > 0.05);
    for (const auto& row : trace.rows) CHECK(row.zeta >= 0.0);
}

TEST_CASE("convergence_ratios: empty counts give the initial bound") {
    auto sp = spectrum_stats({1, 2, 3});
    auto r = convergence_ratios(sp, 0, {0, 0, 0}, 1e-10);
    REQUIRE(r.size() == 3);
    CHECK(std::isnan(r[0]));
    CHECK(r[1] == doctest::Approx(0.0));
    CHECK(r[2] == doctest::Approx(0.0));
}

TEST_CASE("convergence_ratios: two-term hand example") {
    auto sp = spectrum_stats({1, 2, 3});
    auto r = convergence_ratios(sp, 0, {0, 1, 1}, 1e-10);
    double expected = std::log10(0.5) - 10.0;  // log10|(2-3)/(1-3)| + log10(1e-10/|1-2|)
    CHECK(r[1] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("convergence_ratios: log-space result matches the direct product") {
    auto sp = spectrum_stats({0.5, 1.7, 3.1, 4.0});
    const std::size_t k = 1;
    std::vector<std::int64_t> m{2, 0, 3, 1};
    const double delta = 0.01, bound = 2.0;
    auto r = convergence_ratios(sp, k, m, delta, bound);
    for (std::size_t i = 0; i < 4; ++i) {
        if (i == k) continue;
        double direct = bound;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == i || j == k) continue;
            for (std::int64_t t = 0; t < m[j]; ++t)
                direct *= std::fabs((sp.distinct_values[i] - sp.distinct_values[j]) /
                                    (sp.distinct_values[k] - sp.distinct_values[j]));
        }
        for (std::int64_t t = 0; t < m[i]; ++t)
            direct *= std::fabs(delta / (sp.distinct_values[k] - sp.distinct_values[i]));
        CHECK(std::pow(10.0, r[i]) == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("convergence_ratios: validation") {
    auto sp = spectrum_stats({1, 2, 3});
    CHECK_THROWS((void)convergence_ratios(sp, 5, {0, 0, 0}, 1e-10));   // bad k
    CHECK_THROWS((void)convergence_ratios(sp, 0, {0, 0}, 1e-10));      // counts length
    CHECK_THROWS((void)convergence_ratios(sp, 0, {0, 0, 0}, 0.0));     // delta
    Spectrum dup;
    dup.distinct_values = {1, 1, 2};
    dup.multiplicities = {1, 1, 1};
    dup.delta = 1;
    dup.band_width = 1;
    dup.total_dimension = 3;
    CHECK_THROWS_AS((void)convergence_ratios(dup, 0, {0, 0, 0}, 1e-10), DegenerateGapError);
}

TEST_CASE("shift_histogram: examples") {
    CHECK(shift_histogram({}, 4) == std::vector<std::int64_t>{0, 0, 0, 0});
    CHECK(shift_histogram({2, 1, 2}) == std::vector<std::int64_t>{0, 1, 2});
    CHECK(shift_histogram({2, 1, 2}, 5) == std::vector<std::int64_t>{0, 1, 2, 0, 0});
    CHECK_THROWS((void)shift_histogram({7}, 3));  // index out of declared range
    auto h = shift_histogram({1, 1, 1, 3});
    CHECK(std::accumulate(h.begin(), h.end(), std::int64_t(0)) == 4);
}

namespace {

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        std::size_t t = 0;
        while (t < idx.size()) {
            std::size_t u = t;
            while (u + 1 < idx.size() && v[idx[u + 1]] == v[idx[t]]) ++u;
            double avg = 0.5 * double(t + u);  // average rank for ties
            for (std::size_t w = t; w <= u; ++w) r[idx[w]] = avg;
            t = u + 1;
        }
        return r;
    };
    auto rx = ranks(x), ry = ranks(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / double(rx.size());
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / double(ry.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("shift counts correlate positively with the local level spacing") {
    // Needs a long budget-capped run against an interior target: components
    // with wide local spacing regrow fastest and must be re-zapped most, but
    // the histogram only accumulates enough mass to show it well past the
    // point where an edge-target run has already converged.
    auto T = generate_random_tridiagonal(512, 24);
    auto H = T.to_operator();
    auto sp = spectrum_stats(ql_eigenvalues(T));
    const auto& e = sp.distinct_values;
    std::size_t imin = 0;
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
        if (e[i + 1] - e[i] < e[imin + 1] - e[imin]) imin = i;
    const std::size_t k = imin + 1;
    RunConfig cfg;
    cfg.rng_seed = 1;
    cfg.sigma_bar_target = std::numeric_limits<double>::epsilon();
    cfg.max_iterations = 4000;
    cfg.refresh_period = 0;
    auto res = run_stabilized(H, sp, k, cfg);

    std::vector<double> gap, m;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i == k) continue;
        double left = (i > 0) ? e[i] - e[i - 1] : e[i + 1] - e[i];
        double right = (i + 1 < e.size()) ? e[i + 1] - e[i] : left;
        gap.push_back(std::min(left, right));
        m.push_back(double(res.counts[i]));
    }
    CHECK(spearman(m, gap) > 0.1);
}
