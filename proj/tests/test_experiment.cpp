#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "purify/experiment.hpp"
#include "purify/io.hpp"

using namespace purify;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / "purify_exp_tests" / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generate_random_tridiagonal: structure and determinism") {
    auto a = generate_random_tridiagonal(2, 5);
    REQUIRE(a.diagonal.size() == 2);
    REQUIRE(a.off_diagonal.size() == 1);
    CHECK(a.off_diagonal[0] == 1.0);
    for (double d : a.diagonal) {
        CHECK(d >= -1.0);
        CHECK(d <= 1.0);
    }
    auto b = generate_random_tridiagonal(2, 5);
    CHECK(a.diagonal == b.diagonal);
    auto c = generate_random_tridiagonal(400, 5);
    for (double e : c.off_diagonal) CHECK(e == 1.0);
    CHECK_THROWS((void)generate_random_tridiagonal(1, 5));
}

TEST_CASE("run_experiment: tridiagonal pipeline end-to-end") {
    ExperimentManifest m;
    m.kind = ExperimentKind::Tridiag;
    m.n = 64;
    m.config.rng_seed = 1;
    m.target_k = 0;
    m.baseline = true;
    m.out_dir = temp_dir("tri64");
    CHECK(run_experiment(m) == 0);

    CHECK(fs::exists(m.out_dir / "matrix.txt"));
    CHECK(fs::exists(m.out_dir / "eigenvalues.txt"));
    CHECK(fs::exists(m.out_dir / "eigenvector.txt"));
    CHECK(fs::exists(m.out_dir / "trace_stabilized.csv"));
    CHECK(fs::exists(m.out_dir / "trace_naive.csv"));
    CHECK(fs::exists(m.out_dir / "ratios.csv"));

    auto summary = slurp(m.out_dir / "summary.json");
    CHECK(summary.find("\"converged\": true") != std::string::npos);

    // final sigma_bar from the trace is at or under the default target
    auto trace = slurp(m.out_dir / "trace_stabilized.csv");
    auto last_line_start = trace.rfind('\n', trace.size() - 2);
    std::istringstream last(trace.substr(last_line_start + 1));
    std::string n_field, j_field, sb_field;
    std::getline(last, n_field, ',');
    std::getline(last, j_field, ',');
    std::getline(last, sb_field, ',');
    CHECK(std::stod(sb_field) <= 1e-10);

    auto v = io::read_vector(m.out_dir / "eigenvector.txt");
    CHECK(v.size() == 64);
}

TEST_CASE("run_experiment: identical manifests give byte-identical artifacts") {
    ExperimentManifest m;
    m.kind = ExperimentKind::Tridiag;
    m.n = 48;
    m.config.rng_seed = 9;
    m.target_k = 3;
    m.baseline = true;
    m.out_dir = temp_dir("det_a");
    REQUIRE(run_experiment(m) == 0);
    auto m2 = m;
    m2.out_dir = temp_dir("det_b");
    REQUIRE(run_experiment(m2) == 0);

    for (const char* f : {"matrix.txt", "eigenvalues.txt", "eigenvector.txt",
                          "trace_stabilized.csv", "trace_naive.csv", "ratios.csv"})
        CHECK(slurp(m.out_dir / f) == slurp(m2.out_dir / f));
}

TEST_CASE("run_experiment: forced failure reports nonzero and a length-1 trace") {
    ExperimentManifest m;
    m.kind = ExperimentKind::Tridiag;
    m.n = 64;
    m.config.rng_seed = 1;
    m.config.max_iterations = 1;
    m.out_dir = temp_dir("fail1");
    CHECK(run_experiment(m) != 0);
    auto trace = slurp(m.out_dir / "trace_stabilized.csv");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 2);  // header + one row
    auto summary = slurp(m.out_dir / "summary.json");
    CHECK(summary.find("\"converged\": false") != std::string::npos);
}

TEST_CASE("run_experiment: su2 pipeline emits the degenerate basis") {
    ExperimentManifest m;
    m.kind = ExperimentKind::Su2;
    m.spins = 4;
    m.spin_magnitude = 0.5;
    m.target_l = 0;
    m.config.rng_seed = 2;
    m.out_dir = temp_dir("su2_l0");
    CHECK(run_experiment(m) == 0);
    CHECK(fs::exists(m.out_dir / "matrix.txt"));
    CHECK(fs::exists(m.out_dir / "basis_0.txt"));
    CHECK(fs::exists(m.out_dir / "basis_1.txt"));
    CHECK(!fs::exists(m.out_dir / "basis_2.txt"));  // multiplicity of l=0 is 2
    auto v = io::read_vector(m.out_dir / "basis_0.txt");
    CHECK(v.size() == 6);
    auto eigs = io::read_eigenvalues(m.out_dir / "eigenvalues.txt");
    CHECK(eigs == std::vector<double>{0, 0, 2, 2, 2, 6});
}

TEST_CASE("run_experiment: lyapunov pipeline writes the exponent trace") {
    ExperimentManifest m;
    m.kind = ExperimentKind::Lyapunov;
    m.n = 32;
    m.config.rng_seed = 4;
    m.config.max_iterations = 400;
    m.offset = 1e-12;
    m.out_dir = temp_dir("lyap");
    CHECK(run_experiment(m) == 0);
    auto csv = slurp(m.out_dir / "lyapunov.csv");
    CHECK(csv.rfind("n,zeta,lambda\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 401);
}

TEST_CASE("thread_budget: respects the environment override") {
    // no PURIFY_THREADS in the test environment: defaults to at least 1
    CHECK(thread_budget() >= 1);
}
