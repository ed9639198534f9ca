#include "purify/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "json.hpp"
#include "purify/diagnostics.hpp"
#include "purify/errors.hpp"
#include "purify/io.hpp"
#include "purify/linalg.hpp"
#include "purify/su2.hpp"

namespace purify {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail_stage(const char* stage, const std::exception& e) {
    throw Error(std::string("stage ") + stage + ": " + e.what());
}

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        fail_stage(name, e);
    }
}

double max_finite(const std::vector<double>& xs) {
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (double x : xs) {
        if (std::isnan(x)) continue;
        best = std::max(best, x);
        any = true;
    }
    if (!any) throw std::invalid_argument("max over empty ratio list");
    return best;
}

void write_summary(const std::filesystem::path& out_dir, const json& j) {
    std::ofstream out(out_dir / "summary.json");
    if (!out) throw Error("cannot open summary.json for writing");
    out << j.dump(2) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// The figure-of-merit delta for the analytic ratio bound: the accuracy the
/// eigen equation was actually satisfied to, floored by the configured
/// residual weight (the two are comparable by construction when converged).
double ratio_delta(const RunConfig& config, double final_sigma_bar) {
    return std::max(config.delta_bar, final_sigma_bar);
}

int run_tridiag(const ExperimentManifest& m) {
    const auto t0 = std::chrono::steady_clock::now();
    auto T = stage("generate", [&] { return generate_random_tridiagonal(m.n, m.config.rng_seed); });
    auto H = T.to_operator();
    stage("write-matrix", [&] { io::write_matrix(m.out_dir / "matrix.txt", H); });

    auto eigenvalues = stage("eigensolve", [&] { return ql_eigenvalues(T); });
    stage("write-eigenvalues",
          [&] { io::write_eigenvalues(m.out_dir / "eigenvalues.txt", eigenvalues); });
    auto spectrum = stage("spectrum", [&] { return spectrum_stats(eigenvalues); });

    // First pass finds the converged vector; the second, identical pass
    // annotates the trace with sigma against it (the only reference
    // available without an independent eigensolver).
    auto result = stage("run", [&] { return run_stabilized(H, spectrum, m.target_k, m.config); });
    if (result.converged) {
        const auto reference = result.final_vector;
        SigmaReference sref = [reference](const std::vector<double>& v) {
            return sigma_error(v, reference);
        };
        result = stage("run", [&] {
            return run_stabilized(H, spectrum, m.target_k, m.config, sref);
        });
        if (m.baseline) {
            auto perm = random_permutation_excluding(spectrum.n_distinct(), m.target_k,
                                                     m.config.rng_seed);
            auto naive = stage("baseline", [&] {
                return run_naive(H, spectrum, m.target_k, perm, m.config, sref);
            });
            stage("write-naive",
                  [&] { io::write_trace_csv(m.out_dir / "trace_naive.csv", naive.trace); });
        }
    }

    stage("write-trace",
          [&] { io::write_trace_csv(m.out_dir / "trace_stabilized.csv", result.trace); });
    stage("write-vector",
          [&] { io::write_vector(m.out_dir / "eigenvector.txt", result.final_vector); });

    const double eps_k = spectrum.distinct_values[m.target_k];
    const double final_sb = residual_sigma_bar(H, eps_k, result.final_vector);
    auto ratios = convergence_ratios(spectrum, m.target_k, result.counts,
                                     ratio_delta(m.config, final_sb));
    stage("write-ratios",
          [&] { io::write_ratios_csv(m.out_dir / "ratios.csv", ratios, result.counts, m.target_k); });

    json summary;
    summary["experiment"] = "tridiag";
    summary["n"] = m.n;
    summary["seed"] = m.config.rng_seed;
    summary["target_k"] = m.target_k;
    summary["delta"] = spectrum.delta;
    summary["band_width"] = spectrum.band_width;
    summary["converged"] = result.converged;
    summary["iterations"] = result.iterations_used;
    summary["final_sigma_bar"] = final_sb;
    summary["max_log10_ratio"] = max_finite(ratios);
    summary["wall_time_seconds"] = seconds_since(t0);
    write_summary(m.out_dir, summary);
    return result.converged ? 0 : 1;
}

int run_su2(const ExperimentManifest& m) {
    const auto t0 = std::chrono::steady_clock::now();
    auto sys = stage("build-system",
                     [&] { return SpinSystem::make(m.spins, m.spin_magnitude, m.mz, true); });
    auto H = stage("build-operator", [&] { return build_l2_operator(sys); });
    stage("write-matrix", [&] { io::write_matrix(m.out_dir / "matrix.txt", H); });

    auto spectrum = stage("spectrum", [&] { return exact_spectrum(sys); });
    if (!spectrum.eigenvalues.empty())
        stage("write-eigenvalues",
              [&] { io::write_eigenvalues(m.out_dir / "eigenvalues.txt", spectrum.eigenvalues); });

    const double target_value = static_cast<double>(m.target_l) * (m.target_l + 1);
    std::size_t k = spectrum.n_distinct();
    for (std::size_t i = 0; i < spectrum.n_distinct(); ++i)
        if (std::fabs(spectrum.distinct_values[i] - target_value) < 1e-9) k = i;
    if (k == spectrum.n_distinct())
        throw Error("stage target: l(l+1) = " + std::to_string(target_value) +
                    " is not in the sector spectrum");
    const std::size_t d_l = static_cast<std::size_t>(spectrum.multiplicities[k]);

    auto extraction = stage("extract", [&] {
        return extract_degenerate_basis(H, spectrum, m.target_l, d_l, m.config, m.orthonormalize);
    });

    for (std::size_t j = 0; j < extraction.vectors.size(); ++j)
        stage("write-basis", [&] {
            io::write_vector(m.out_dir / ("basis_" + std::to_string(j) + ".txt"),
                             extraction.vectors[j]);
        });

    // Annotated rerun of the sequence run: sigma against the extracted
    // eigenspace (orthonormalized copy), the degenerate analog of comparing
    // against the converged vector.
    auto reference = extraction.vectors;
    for (std::size_t a = 0; a < reference.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            double c = dot(reference[b], reference[a]);
            for (std::size_t i = 0; i < reference[a].size(); ++i)
                reference[a][i] -= c * reference[b][i];
        }
        normalize_in_place(reference[a]);
    }
    SigmaReference sref = [reference](const std::vector<double>& v) {
        return sigma_subspace(v, reference);
    };
    auto annotated = stage("run", [&] { return run_stabilized(H, spectrum, k, m.config, sref); });
    stage("write-trace",
          [&] { io::write_trace_csv(m.out_dir / "trace_stabilized.csv", annotated.trace); });

    if (m.baseline) {
        auto perm = random_permutation_excluding(spectrum.n_distinct(), k, m.config.rng_seed);
        auto naive = stage("baseline",
                           [&] { return run_naive(H, spectrum, k, perm, m.config, sref); });
        stage("write-naive",
              [&] { io::write_trace_csv(m.out_dir / "trace_naive.csv", naive.trace); });
    }

    const double final_sb =
        residual_sigma_bar(H, spectrum.distinct_values[k], annotated.final_vector);
    auto ratios = convergence_ratios(spectrum, k, annotated.counts,
                                     ratio_delta(m.config, final_sb));
    stage("write-ratios",
          [&] { io::write_ratios_csv(m.out_dir / "ratios.csv", ratios, annotated.counts, k); });

    json summary;
    summary["experiment"] = "su2";
    summary["spins"] = m.spins;
    summary["spin_magnitude"] = m.spin_magnitude;
    summary["mz"] = m.mz;
    summary["sector_dimension"] = sys.sector_dimension;
    summary["target_l"] = m.target_l;
    summary["multiplicity"] = d_l;
    summary["seed"] = m.config.rng_seed;
    summary["converged"] = annotated.converged;
    summary["iterations"] = extraction.sequence_run.iterations_used;
    summary["final_sigma_bar"] = final_sb;
    summary["max_log10_ratio"] = max_finite(ratios);
    summary["wall_time_seconds"] = seconds_since(t0);
    write_summary(m.out_dir, summary);
    return annotated.converged ? 0 : 1;
}

int run_lyapunov(const ExperimentManifest& m) {
    const auto t0 = std::chrono::steady_clock::now();
    auto T = stage("generate", [&] { return generate_random_tridiagonal(m.n, m.config.rng_seed); });
    auto H = T.to_operator();
    stage("write-matrix", [&] { io::write_matrix(m.out_dir / "matrix.txt", H); });

    auto eigenvalues = stage("eigensolve", [&] { return ql_eigenvalues(T); });
    stage("write-eigenvalues",
          [&] { io::write_eigenvalues(m.out_dir / "eigenvalues.txt", eigenvalues); });
    auto spectrum = stage("spectrum", [&] { return spectrum_stats(eigenvalues); });

    auto perm =
        random_permutation_excluding(spectrum.n_distinct(), m.target_k, m.config.rng_seed);
    auto shifts = [perm, &spectrum](std::size_t n) {
        return spectrum.distinct_values[perm[n % perm.size()]];
    };
    SplitMix64 rng(m.config.rng_seed);
    auto v0 = random_unit_vector(H.dim(), rng);
    const std::size_t steps = m.config.max_iterations != 0 ? m.config.max_iterations : 5000;

    auto trace = stage("lyapunov",
                       [&] { return lyapunov_estimate(H, shifts, v0, m.offset, steps); });
    if (trace.rows.empty()) throw Error("stage lyapunov: empty trace");
    stage("write-lyapunov", [&] { io::write_lyapunov_csv(m.out_dir / "lyapunov.csv", trace); });

    json summary;
    summary["experiment"] = "lyapunov";
    summary["n"] = m.n;
    summary["seed"] = m.config.rng_seed;
    summary["target_k"] = m.target_k;
    summary["offset"] = m.offset;
    summary["steps"] = steps;
    summary["lambda"] = trace.rows.back().lambda;
    summary["wall_time_seconds"] = seconds_since(t0);
    write_summary(m.out_dir, summary);
    return 0;
}

}  // namespace

TridiagonalMatrix generate_random_tridiagonal(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_random_tridiagonal: need n >= 2");
    SplitMix64 rng(seed);
    TridiagonalMatrix T;
    T.diagonal.resize(n);
    for (auto& d : T.diagonal) d = rng.uniform_pm1();
    T.off_diagonal.assign(n - 1, 1.0);
    return T;
}

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const char* env = std::getenv("PURIFY_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return 1;
    return static_cast<int>(std::min<long>(v, hw));
}

int run_experiment(const ExperimentManifest& manifest) {
    std::error_code ec;
    std::filesystem::create_directories(manifest.out_dir, ec);
    if (ec) throw Error("stage setup: cannot create output directory " +
                        manifest.out_dir.string());
    switch (manifest.kind) {
        case ExperimentKind::Tridiag:
            return run_tridiag(manifest);
        case ExperimentKind::Su2:
            return run_su2(manifest);
        case ExperimentKind::Lyapunov:
            return run_lyapunov(manifest);
    }
    throw std::logic_error("run_experiment: unknown experiment kind");
}

}  // namespace purify
