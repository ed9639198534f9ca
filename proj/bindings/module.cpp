#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "purify/diagnostics.hpp"
#include "purify/eigensolve.hpp"
#include "purify/errors.hpp"
#include "purify/experiment.hpp"
#include "purify/io.hpp"
#include "purify/linalg.hpp"
#include "purify/richardson.hpp"
#include "purify/su2.hpp"

namespace py = pybind11;
using namespace purify;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Eigenvector purification by chaos-controlled shift scheduling";

    py::register_exception<Error>(m, "PurifyError");

    py::class_<HermitianOperator>(m, "HermitianOperator")
        .def_static("tridiagonal", &HermitianOperator::tridiagonal, py::arg("diag"),
                    py::arg("off"))
        .def_static("sparse",
                    [](std::size_t dim,
                       const std::vector<std::tuple<std::size_t, std::size_t, double>>& upper) {
                        std::vector<SparseEntry> entries;
                        entries.reserve(upper.size());
                        for (const auto& [i, j, v] : upper) entries.push_back({i, j, v});
                        return HermitianOperator::sparse(dim, std::move(entries));
                    },
                    py::arg("dim"), py::arg("upper"))
        .def_static("dense", &HermitianOperator::dense, py::arg("dim"), py::arg("rowmajor"))
        .def_property_readonly("dim", &HermitianOperator::dim)
        .def("apply",
             py::overload_cast<const std::vector<double>&>(&HermitianOperator::apply,
                                                           py::const_),
             py::arg("v"))
        .def("to_dense", &HermitianOperator::to_dense);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("distinct_values", &Spectrum::distinct_values)
        .def_readonly("multiplicities", &Spectrum::multiplicities)
        .def_readonly("delta", &Spectrum::delta)
        .def_readonly("band_width", &Spectrum::band_width)
        .def_readonly("total_dimension", &Spectrum::total_dimension)
        .def_property_readonly("n_distinct", &Spectrum::n_distinct);

    m.def("spectrum_stats", &spectrum_stats, py::arg("sorted_eigenvalues"),
          py::arg("multiplicity_tolerance") = 1e-12);

    m.def(
        "ql_eigenvalues",
        [](const std::vector<double>& diag, const std::vector<double>& off, int max_sweeps) {
            return ql_eigenvalues(TridiagonalMatrix{diag, off}, max_sweeps);
        },
        py::arg("diag"), py::arg("off"), py::arg("max_sweeps") = 30);

    m.def(
        "generate_random_tridiagonal",
        [](std::size_t n, std::uint64_t seed) {
            auto T = generate_random_tridiagonal(n, seed);
            return py::make_tuple(T.diagonal, T.off_diagonal);
        },
        py::arg("n"), py::arg("seed"), "Returns (diagonal, off_diagonal)");

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("delta_bar", &RunConfig::delta_bar)
        .def_readwrite("sigma_bar_target", &RunConfig::sigma_bar_target)
        .def_readwrite("max_iterations", &RunConfig::max_iterations)
        .def_readwrite("refresh_threshold", &RunConfig::refresh_threshold)
        .def_readwrite("refresh_period", &RunConfig::refresh_period)
        .def_readwrite("rng_seed", &RunConfig::rng_seed);

    py::class_<TraceRow>(m, "TraceRow")
        .def_readonly("n", &TraceRow::n)
        .def_readonly("chosen_index", &TraceRow::chosen_index)
        .def_readonly("sigma_bar", &TraceRow::sigma_bar)
        .def_readonly("sigma", &TraceRow::sigma);

    py::class_<IterationTrace>(m, "IterationTrace")
        .def_readonly("rows", &IterationTrace::rows);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("final_vector", &RunResult::final_vector)
        .def_readonly("iterations_used", &RunResult::iterations_used)
        .def_readonly("converged", &RunResult::converged)
        .def_readonly("trace", &RunResult::trace)
        .def_readonly("shift_history", &RunResult::shift_history)
        .def_readonly("counts", &RunResult::counts);

    m.def("run_stabilized", &run_stabilized, py::arg("H"), py::arg("spectrum"), py::arg("k"),
          py::arg("config"), py::arg("sigma_ref") = nullptr);
    m.def("run_naive", &run_naive, py::arg("H"), py::arg("spectrum"), py::arg("k"),
          py::arg("permutation"), py::arg("config"), py::arg("sigma_ref") = nullptr);
    m.def("random_permutation_excluding", &random_permutation_excluding, py::arg("n_values"),
          py::arg("k"), py::arg("seed"));

    m.def("sigma_error", &sigma_error, py::arg("v"), py::arg("v_ref"));
    m.def("sigma_subspace", &sigma_subspace, py::arg("v"), py::arg("basis"));
    m.def("residual_sigma_bar",
          [](const HermitianOperator& H, double eps_k, const std::vector<double>& v) {
              return residual_sigma_bar(H, eps_k, v);
          },
          py::arg("H"), py::arg("eps_k"), py::arg("v"));
    m.def("convergence_ratios", &convergence_ratios, py::arg("spectrum"), py::arg("k"),
          py::arg("counts"), py::arg("delta"), py::arg("initial_ratio_bound") = 1.0);
    m.def("shift_histogram", &shift_histogram, py::arg("shift_history"),
          py::arg("n_values") = 0);

    py::class_<LyapunovRow>(m, "LyapunovRow")
        .def_readonly("n", &LyapunovRow::n)
        .def_readonly("zeta", &LyapunovRow::zeta)
        .def_readonly("lambda_", &LyapunovRow::lambda);

    py::class_<LyapunovTrace>(m, "LyapunovTrace")
        .def_readonly("rows", &LyapunovTrace::rows)
        .def_readonly("renorm_interval", &LyapunovTrace::renorm_interval);

    m.def("lyapunov_estimate", &lyapunov_estimate, py::arg("H"), py::arg("shifts"),
          py::arg("v0"), py::arg("initial_offset"), py::arg("steps"),
          py::arg("renorm_interval") = 10);

    py::class_<SpinSystem>(m, "SpinSystem")
        .def_static("make", &SpinSystem::make, py::arg("n_spins"), py::arg("spin"),
                    py::arg("mz") = 0.0, py::arg("enumerate_basis") = true)
        .def_readonly("n_spins", &SpinSystem::n_spins)
        .def_readonly("sector_dimension", &SpinSystem::sector_dimension)
        .def_readonly("basis", &SpinSystem::basis)
        .def_property_readonly("spin", &SpinSystem::spin)
        .def_property_readonly("mz", &SpinSystem::mz);

    m.def("build_l2_operator", &build_l2_operator, py::arg("sys"));
    m.def("exact_spectrum", &exact_spectrum, py::arg("sys"));

    py::class_<DegenerateBasisResult>(m, "DegenerateBasisResult")
        .def_readonly("vectors", &DegenerateBasisResult::vectors)
        .def_readonly("sequence_run", &DegenerateBasisResult::sequence_run);

    m.def("extract_degenerate_basis", &extract_degenerate_basis, py::arg("H"),
          py::arg("spectrum"), py::arg("l"), py::arg("d_l"), py::arg("config"),
          py::arg("orthonormalize") = false, py::arg("n_threads") = 1);

    m.def("read_matrix", &io::read_matrix, py::arg("path"));
    m.def("write_matrix", &io::write_matrix, py::arg("path"), py::arg("H"));
    m.def("read_vector", &io::read_vector, py::arg("path"));
    m.def("write_vector", &io::write_vector, py::arg("path"), py::arg("v"));
    m.def("read_eigenvalues", &io::read_eigenvalues, py::arg("path"));
    m.def("write_eigenvalues", &io::write_eigenvalues, py::arg("path"), py::arg("values"));
}
