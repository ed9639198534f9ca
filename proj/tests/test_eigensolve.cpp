#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "purify/eigensolve.hpp"
#include "purify/errors.hpp"
#include "purify/experiment.hpp"
#include "purify/rng.hpp"

using namespace purify;

namespace {

TridiagonalMatrix seeded_tridiag(std::size_t n, std::uint64_t seed) {
    return generate_random_tridiagonal(n, seed);
}

}  // namespace

TEST_CASE("ql_eigenvalues: decoupled diagonal") {
    TridiagonalMatrix T{{5, 1, 3}, {0, 0}};
    auto ev = ql_eigenvalues(T);
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(ev[2] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("ql_eigenvalues: 2x2 swap matrix") {
    TridiagonalMatrix T{{0, 0}, {1}};
    auto ev = ql_eigenvalues(T);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ql_eigenvalues: 1x1 and sorted output") {
    TridiagonalMatrix T{{7.5}, {}};
    auto ev = ql_eigenvalues(T);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0] == 7.5);

    auto ev2 = ql_eigenvalues(seeded_tridiag(40, 3));
    CHECK(std::is_sorted(ev2.begin(), ev2.end()));
}

TEST_CASE("ql_eigenvalues: matches the dense Jacobi oracle at N=64") {
    auto T = seeded_tridiag(64, 17);
    auto ev = ql_eigenvalues(T);
    auto oracle = dense_eig_oracle(T.to_operator());
    REQUIRE(ev.size() == oracle.eigenvalues.size());
    double width = ev.back() - ev.front();
    for (std::size_t i = 0; i < ev.size(); ++i)
        CHECK(std::fabs(ev[i] - oracle.eigenvalues[i]) <= 1e-10 * width);
}

TEST_CASE("ql_eigenvalues: oracle agreement across sizes") {
    for (std::size_t n : {8, 33, 128}) {
        auto T = seeded_tridiag(n, 100 + n);
        auto ev = ql_eigenvalues(T);
        auto oracle = dense_eig_oracle(T.to_operator());
        double width = ev.back() - ev.front();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(ev[i] - oracle.eigenvalues[i]) <= 1e-9 * width);
    }
}

TEST_CASE("ql_eigenvalues: Sturm-sequence position check") {
    auto T = seeded_tridiag(96, 8);
    auto ev = ql_eigenvalues(T);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        double tol = 1e-10 * std::max(1.0, std::fabs(ev[i]));
        CHECK(sturm_count_below(T, ev[i] + tol) == i + 1);
    }
}

TEST_CASE("sturm_count_below: endpoints and interior") {
    TridiagonalMatrix T{{0, 0}, {1}};  // eigenvalues -1, 1
    CHECK(sturm_count_below(T, -2.0) == 0);
    CHECK(sturm_count_below(T, 0.0) == 1);
    CHECK(sturm_count_below(T, 2.0) == 2);
}

TEST_CASE("ql_eigenvalues: trace preservation") {
    auto T = seeded_tridiag(200, 21);
    auto ev = ql_eigenvalues(T);
    double tr = std::accumulate(T.diagonal.begin(), T.diagonal.end(), 0.0);
    double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
    double maxd = 0.0;
    for (double d : T.diagonal) maxd = std::max(maxd, std::fabs(d));
    CHECK(std::fabs(sum - tr) <= 1e-10 * 200 * std::max(1.0, maxd));
}

TEST_CASE("ql_eigenvalues: sweep budget exhaustion raises") {
    auto T = seeded_tridiag(32, 5);
    CHECK_THROWS_AS((void)ql_eigenvalues(T, 1), NoConvergenceError);
}

TEST_CASE("dense_eig_oracle: diag(1,2,3)") {
    auto eig = dense_eig_oracle({1, 0, 0, 0, 2, 0, 0, 0, 3}, 3);
    REQUIRE(eig.eigenvalues.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(eig.eigenvalues[i] == doctest::Approx(double(i + 1)).epsilon(1e-13));
        for (std::size_t t = 0; t < 3; ++t)
            CHECK(eig.eigenvectors[i][t] == doctest::Approx(t == i ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("dense_eig_oracle: 2x2 swap matrix") {
    auto eig = dense_eig_oracle({0, 1, 1, 0}, 2);
    double r = 1.0 / std::sqrt(2.0);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    // canonical sign: dominant (first on ties) entry positive
    CHECK(eig.eigenvectors[0][0] == doctest::Approx(r).epsilon(1e-14));
    CHECK(eig.eigenvectors[0][1] == doctest::Approx(-r).epsilon(1e-14));
    CHECK(eig.eigenvectors[1][0] == doctest::Approx(r).epsilon(1e-14));
    CHECK(eig.eigenvectors[1][1] == doctest::Approx(r).epsilon(1e-14));
}

TEST_CASE("dense_eig_oracle: seeded 32x32 reconstruction and orthonormality") {
    const std::size_t n = 32;
    SplitMix64 rng(2718);
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a[i * n + j] = a[j * n + i] = rng.uniform_pm1();

    auto eig = dense_eig_oracle(a, n);
    CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));

    // V^T V = I within 1e-10 per entry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double g = 0.0;
            for (std::size_t t = 0; t < n; ++t) g += eig.eigenvectors[i][t] * eig.eigenvectors[j][t];
            CHECK(std::fabs(g - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }

    // V diag(eps) V^T = A within 1e-9 per entry
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t)
                s += eig.eigenvectors[t][r] * eig.eigenvalues[t] * eig.eigenvectors[t][c];
            CHECK(std::fabs(s - a[r * n + c]) <= 1e-9);
        }

    // H v_i = eps_i v_i per entry
    auto H = HermitianOperator::dense(n, a);
    for (std::size_t i = 0; i < n; ++i) {
        auto y = H.apply(eig.eigenvectors[i]);
        for (std::size_t t = 0; t < n; ++t)
            CHECK(std::fabs(y[t] - eig.eigenvalues[i] * eig.eigenvectors[i][t]) <= 1e-9);
    }
}

TEST_CASE("spectrum_stats: simple gaps") {
    auto s = spectrum_stats({1, 2, 3});
    CHECK(s.delta == doctest::Approx(1.0));
    CHECK(s.band_width == doctest::Approx(2.0));
    CHECK(s.n_distinct() == 3);
    CHECK(s.total_dimension == 3);
}

TEST_CASE("spectrum_stats: l(l+1) ladder") {
    auto s = spectrum_stats({0, 2, 6, 12});
    CHECK(s.delta == doctest::Approx(2.0));
    CHECK(s.band_width == doctest::Approx(6.0));
}

TEST_CASE("spectrum_stats: degeneracy collapse") {
    auto s = spectrum_stats({0, 0, 2, 2, 2, 6});
    CHECK(s.delta == doctest::Approx(2.0));
    CHECK(s.band_width == doctest::Approx(3.0));
    REQUIRE(s.n_distinct() == 3);
    CHECK(s.distinct_values[0] == doctest::Approx(0.0));
    CHECK(s.distinct_values[1] == doctest::Approx(2.0));
    CHECK(s.distinct_values[2] == doctest::Approx(6.0));
    CHECK(s.multiplicities == std::vector<std::int64_t>{2, 3, 1});
    CHECK(s.total_dimension == 6);
}

TEST_CASE("spectrum_stats: near-degenerate values are grouped by the tolerance") {
    // gap 1e-14 is below tol*max(1,|eps|); the pair counts as one value
    auto s = spectrum_stats({1.0, 1.0 + 1e-14, 2.0}, 1e-12);
    CHECK(s.n_distinct() == 2);
    CHECK(s.multiplicities[0] == 2);
    // group represented by its mean
    CHECK(s.distinct_values[0] == doctest::Approx(1.0 + 5e-15).epsilon(1e-15));
}

TEST_CASE("spectrum_stats: error cases") {
    CHECK_THROWS_AS((void)spectrum_stats({5, 5, 5}), AllDegenerateError);
    CHECK_THROWS_AS((void)spectrum_stats({1.0}), AllDegenerateError);
    CHECK_THROWS((void)spectrum_stats({3, 2, 1}));  // unsorted
    CHECK_THROWS((void)spectrum_stats({}));
}

TEST_CASE("TridiagonalMatrix::to_operator round-trips structure") {
    TridiagonalMatrix T{{1, 2, 3}, {0.5, -0.5}};
    auto H = T.to_operator();
    CHECK(H.dim() == 3);
    CHECK(H.storage() == HermitianOperator::Storage::Tridiagonal);
    auto y = H.apply({1, 0, 0});
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(0.5));
    CHECK(y[2] == 0.0);
}
