#include "purify/su2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "purify/errors.hpp"
#include "purify/linalg.hpp"

namespace purify {

namespace {

int to_twice(double x, const char* what) {
    double t = 2.0 * x;
    double r = std::round(t);
    if (std::fabs(t - r) > 1e-9)
        throw std::invalid_argument(std::string(what) + " must be integer or half-integer");
    return static_cast<int>(r);
}

/// K[TM] over the full product space: number of configurations with twice-sum
/// equal to TM. Indexed by U = (TM + N*ts)/2 in [0, N*ts].
std::vector<std::int64_t> sum_counts(int n_spins, int ts) {
    // DP over spins; each site contributes u in {0..ts} to the shifted sum.
    std::vector<std::int64_t> counts{1};
    for (int s = 0; s < n_spins; ++s) {
        std::vector<std::int64_t> nxt(counts.size() + ts, 0);
        for (std::size_t u = 0; u < counts.size(); ++u) {
            if (counts[u] == 0) continue;
            for (int add = 0; add <= ts; ++add) nxt[u + add] += counts[u];
        }
        counts = std::move(nxt);
    }
    return counts;
}

std::int64_t count_at(const std::vector<std::int64_t>& counts, int n_spins, int ts, int tm) {
    std::int64_t shifted = tm + static_cast<std::int64_t>(n_spins) * ts;
    if (shifted < 0 || shifted % 2 != 0) return 0;
    std::size_t u = static_cast<std::size_t>(shifted / 2);
    return u < counts.size() ? counts[u] : 0;
}

void enumerate_rec(int remaining, int ts, int tm_left, std::vector<int>& prefix,
                   std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        if (tm_left == 0) out.push_back(prefix);
        return;
    }
    // Pruning keeps the recursion linear in the output size.
    int rest = remaining - 1;
    for (int tm = ts; tm >= -ts; tm -= 2) {
        int left = tm_left - tm;
        if (std::abs(left) > rest * ts) continue;
        prefix.push_back(tm);
        enumerate_rec(rest, ts, left, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

SpinSystem SpinSystem::make(int n_spins, double spin, double mz, bool enumerate_basis) {
    if (n_spins < 1) throw std::invalid_argument("spin system: need at least one spin");
    int ts = to_twice(spin, "spin magnitude");
    if (ts < 1) throw std::invalid_argument("spin system: spin magnitude must be >= 1/2");
    int tmz = to_twice(mz, "mz sector");

    const std::int64_t t_total = static_cast<std::int64_t>(n_spins) * ts;
    if (std::abs(tmz) > t_total || ((t_total - tmz) % 2) != 0)
        throw EmptySectorError("spin sector mz=" + std::to_string(0.5 * tmz) + " is empty for " +
                               std::to_string(n_spins) + " spins of magnitude " +
                               std::to_string(0.5 * ts));

    SpinSystem sys;
    sys.n_spins = n_spins;
    sys.twice_spin = ts;
    sys.twice_mz = tmz;

    auto counts = sum_counts(n_spins, ts);
    std::int64_t dim = count_at(counts, n_spins, ts, tmz);
    if (dim <= 0) throw EmptySectorError("spin sector is empty");
    sys.sector_dimension = static_cast<std::size_t>(dim);

    if (enumerate_basis) {
        if (sys.sector_dimension > (1u << 22))
            throw std::invalid_argument("spin system: sector too large to enumerate (" +
                                        std::to_string(dim) + " states)");
        sys.basis.reserve(sys.sector_dimension);
        std::vector<int> prefix;
        prefix.reserve(n_spins);
        enumerate_rec(n_spins, ts, tmz, prefix, sys.basis);
    }
    return sys;
}

HermitianOperator build_l2_operator(const SpinSystem& sys) {
    if (sys.basis.empty() || sys.basis.size() != sys.sector_dimension)
        throw EmptySectorError("build_l2_operator: basis not enumerated");
    const int ts = sys.twice_spin;
    const std::size_t D = sys.basis.size();
    const std::size_t N = static_cast<std::size_t>(sys.n_spins);

    // Enumeration is descending-lex, so index lookup is a binary search with
    // the same ordering.
    auto desc_less = [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](int x, int y) { return x > y; });
    };
    auto index_of = [&](const std::vector<int>& config) {
        auto it = std::lower_bound(sys.basis.begin(), sys.basis.end(), config, desc_less);
        return static_cast<std::size_t>(it - sys.basis.begin());
    };

    const double s_sq = 0.25 * ts * (ts + 2);  // S(S+1) per site
    std::vector<SparseEntry> entries;

    std::vector<int> other(N);
    for (std::size_t b = 0; b < D; ++b) {
        const auto& cfg = sys.basis[b];

        // <m|L^2|m> = (sum m)^2 + sum_i [S(S+1) - m_i^2]
        std::int64_t tsum = 0, tsq = 0;
        for (int tm : cfg) {
            tsum += tm;
            tsq += static_cast<std::int64_t>(tm) * tm;
        }
        double diag = 0.25 * static_cast<double>(tsum * tsum) +
                      static_cast<double>(N) * s_sq - 0.25 * static_cast<double>(tsq);
        entries.push_back({b, b, diag});

        // Raising site i and lowering site j contributes c+(m_i) c-(m_j);
        // emit each symmetric pair once from its upper-triangle side.
        for (std::size_t i = 0; i < N; ++i) {
            if (cfg[i] >= ts) continue;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == i || cfg[j] <= -ts) continue;
                other = cfg;
                other[i] += 2;
                other[j] -= 2;
                std::size_t b2 = index_of(other);
                if (b2 <= b) continue;
                std::int64_t rad_up =
                    static_cast<std::int64_t>(ts) * (ts + 2) -
                    static_cast<std::int64_t>(cfg[i]) * (cfg[i] + 2);
                std::int64_t rad_dn =
                    static_cast<std::int64_t>(ts) * (ts + 2) -
                    static_cast<std::int64_t>(cfg[j]) * (cfg[j] - 2);
                double value = 0.25 * std::sqrt(static_cast<double>(rad_up * rad_dn));
                entries.push_back({b, b2, value});
            }
        }
    }
    return HermitianOperator::sparse(D, std::move(entries));
}

Spectrum exact_spectrum(const SpinSystem& sys) {
    if (sys.sector_dimension == 0) throw EmptySectorError("exact_spectrum: empty sector");
    const int ts = sys.twice_spin;
    const int n = sys.n_spins;
    const std::int64_t t_total = static_cast<std::int64_t>(n) * ts;

    auto counts = sum_counts(n, ts);
    // Multiplets with l >= |mz| each contribute exactly one state to the
    // sector; the number of l-multiplets is K(l) - K(l+1) over the full
    // product space.
    const int tl_min = std::abs(sys.twice_mz);

    Spectrum s;
    s.total_dimension = sys.sector_dimension;
    for (std::int64_t tl = tl_min; tl <= t_total; tl += 2) {
        std::int64_t mult = count_at(counts, n, ts, static_cast<int>(tl)) -
                            count_at(counts, n, ts, static_cast<int>(tl + 2));
        if (mult <= 0) continue;
        double value = 0.25 * static_cast<double>(tl) * static_cast<double>(tl + 2);
        s.distinct_values.push_back(value);
        s.multiplicities.push_back(mult);
    }
    if (s.distinct_values.empty()) throw EmptySectorError("exact_spectrum: no multiplets");
    if (s.distinct_values.size() < 2)
        throw AllDegenerateError("exact_spectrum: only one distinct eigenvalue in the sector");

    double min_gap = s.distinct_values[1] - s.distinct_values[0];
    for (std::size_t i = 1; i + 1 < s.distinct_values.size(); ++i)
        min_gap = std::min(min_gap, s.distinct_values[i + 1] - s.distinct_values[i]);
    s.delta = min_gap;
    s.band_width = (s.distinct_values.back() - s.distinct_values.front()) / s.delta;

    if (sys.sector_dimension <= (1u << 20)) {
        s.eigenvalues.reserve(sys.sector_dimension);
        for (std::size_t i = 0; i < s.distinct_values.size(); ++i)
            for (std::int64_t c = 0; c < s.multiplicities[i]; ++c)
                s.eigenvalues.push_back(s.distinct_values[i]);
    }
    return s;
}

DegenerateBasisResult extract_degenerate_basis(const HermitianOperator& H,
                                               const Spectrum& spectrum, int l, std::size_t d_l,
                                               const RunConfig& config, bool orthonormalize,
                                               int n_threads) {
    (void)n_threads;  // replay runs are cheap at supported scales; kept serial
    const double target_value = 0.25 * static_cast<double>(2 * l) * static_cast<double>(2 * l + 2);
    std::size_t k = spectrum.distinct_values.size();
    for (std::size_t i = 0; i < spectrum.distinct_values.size(); ++i) {
        if (std::fabs(spectrum.distinct_values[i] - target_value) < 1e-9) {
            k = i;
            break;
        }
    }
    if (k == spectrum.distinct_values.size())
        throw BadTargetError("extract_degenerate_basis: l(l+1) not in the sector spectrum");
    if (d_l < 1 || static_cast<std::int64_t>(d_l) != spectrum.multiplicities[k])
        throw std::invalid_argument(
            "extract_degenerate_basis: d_l must equal the multiplicity of l(l+1)");

    auto run = run_stabilized(H, spectrum, k, config);
    if (!run.converged)
        throw NoConvergenceError("extract_degenerate_basis: sequence run did not converge", k);

    bool residual_missed = false;
    for (int attempt = 0; attempt < 3; ++attempt) {
        // Replay the converged run's shift sequence on d_l fresh random
        // vectors; the sequence annihilates the complement of the eigenspace,
        // so independent starts give independent members with probability 1.
        std::vector<std::vector<double>> vectors;
        vectors.reserve(d_l);
        bool attempt_ok = true;
        for (std::size_t j = 0; j < d_l; ++j) {
            SplitMix64 rng(config.rng_seed + static_cast<std::uint64_t>(attempt) * d_l + j + 1);
            auto v = random_unit_vector(H.dim(), rng);
            for (std::size_t idx : run.shift_history)
                v = apply_shifted(H, spectrum.distinct_values[idx], v);
            if (residual_sigma_bar(H, spectrum.distinct_values[k], v) >
                config.sigma_bar_target) {
                // A replay start with an unluckily small target component can
                // land above the residual target; fresh seeds fix that.
                attempt_ok = false;
                residual_missed = true;
                break;
            }
            vectors.push_back(std::move(v));
        }
        if (!attempt_ok) continue;

        // Rank check: smallest eigenvalue of the Gram matrix.
        std::vector<double> gram(d_l * d_l);
        for (std::size_t a = 0; a < d_l; ++a)
            for (std::size_t b = 0; b < d_l; ++b)
                gram[a * d_l + b] = dot(vectors[a], vectors[b]);
        double min_eig;
        if (d_l == 1) {
            min_eig = gram[0];
        } else {
            // Gram matrices are tiny (d_l x d_l); a few cyclic rotation
            // sweeps diagonalize them to machine precision.
            std::vector<double> g = gram;
            for (int sweep = 0; sweep < 60; ++sweep) {
                double off = 0.0;
                for (std::size_t p = 0; p < d_l; ++p)
                    for (std::size_t q = p + 1; q < d_l; ++q) off += std::fabs(g[p * d_l + q]);
                if (off < 1e-15) break;
                for (std::size_t p = 0; p < d_l; ++p) {
                    for (std::size_t q = p + 1; q < d_l; ++q) {
                        double gpq = g[p * d_l + q];
                        if (gpq == 0.0) continue;
                        double theta = (g[q * d_l + q] - g[p * d_l + p]) / (2.0 * gpq);
                        double t = std::copysign(1.0, theta) /
                                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                        double c = 1.0 / std::sqrt(t * t + 1.0);
                        double sn = t * c;
                        for (std::size_t i = 0; i < d_l; ++i) {
                            double gip = g[i * d_l + p];
                            double giq = g[i * d_l + q];
                            g[i * d_l + p] = c * gip - sn * giq;
                            g[i * d_l + q] = sn * gip + c * giq;
                        }
                        for (std::size_t i = 0; i < d_l; ++i) {
                            double gpi = g[p * d_l + i];
                            double gqi = g[q * d_l + i];
                            g[p * d_l + i] = c * gpi - sn * gqi;
                            g[q * d_l + i] = sn * gpi + c * gqi;
                        }
                    }
                }
            }
            min_eig = g[0];
            for (std::size_t i = 1; i < d_l; ++i) min_eig = std::min(min_eig, g[i * d_l + i]);
        }

        if (min_eig > 1e-6) {
            if (orthonormalize) {
                // Modified Gram-Schmidt.
                for (std::size_t a = 0; a < d_l; ++a) {
                    for (std::size_t b = 0; b < a; ++b) {
                        double c = dot(vectors[b], vectors[a]);
                        for (std::size_t i = 0; i < vectors[a].size(); ++i)
                            vectors[a][i] -= c * vectors[b][i];
                    }
                    normalize_in_place(vectors[a]);
                }
            }
            DegenerateBasisResult out;
            out.vectors = std::move(vectors);
            out.sequence_run = std::move(run);
            return out;
        }
    }
    if (residual_missed)
        throw NoConvergenceError("extract_degenerate_basis: replayed vectors missed the residual target",
                                 k);
    throw RankDeficientError(
        "extract_degenerate_basis: replayed vectors remained numerically dependent");
}

}  // namespace purify
