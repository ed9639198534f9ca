#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "purify/diagnostics.hpp"
#include "purify/eigensolve.hpp"
#include "purify/operator.hpp"
#include "purify/richardson.hpp"

namespace purify::io {

/// All numeric output uses 17 significant digits so files round-trip
/// losslessly through strtod.
std::string format_full(double x);

// Matrix text formats: "tridiag N" + N diagonal + N-1 off-diagonal values,
// or "coo N nnz" + nnz lines "i j value" (0-based, upper triangle only).
void write_matrix(const std::filesystem::path& path, const HermitianOperator& H);
HermitianOperator read_matrix(const std::filesystem::path& path);

// "vec N" + N values.
void write_vector(const std::filesystem::path& path, const std::vector<double>& v);
std::vector<double> read_vector(const std::filesystem::path& path);

// "eigs N" + N sorted values.
void write_eigenvalues(const std::filesystem::path& path, const std::vector<double>& values);
std::vector<double> read_eigenvalues(const std::filesystem::path& path);

// CSV artifacts.
void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace);
void write_lyapunov_csv(const std::filesystem::path& path, const LyapunovTrace& trace);
/// Rows "i,log10_r,m_i" for every distinct index i != k.
void write_ratios_csv(const std::filesystem::path& path, const std::vector<double>& log10_r,
                      const std::vector<std::int64_t>& counts, std::size_t k);

}  // namespace purify::io
