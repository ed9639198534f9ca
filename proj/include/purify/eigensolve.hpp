#pragma once

#include <cstddef>
#include <vector>

#include "purify/operator.hpp"
#include "purify/spectrum.hpp"

namespace purify {

struct TridiagonalMatrix {
    std::vector<double> diagonal;      // length N
    std::vector<double> off_diagonal;  // length N-1

    std::size_t dim() const { return diagonal.size(); }
    HermitianOperator to_operator() const;
};

/// All eigenvalues of a symmetric tridiagonal matrix by the implicit QL
/// method with Wilkinson-style shifts; eigenvalues only, sorted ascending.
/// An off-diagonal element deflates when |e_i| <= eps_mach*(|d_i|+|d_i+1|).
/// Throws NoConvergenceError if an eigenvalue needs more than max_sweeps
/// sweeps.
std::vector<double> ql_eigenvalues(const TridiagonalMatrix& T, int max_sweeps = 30);

/// Number of eigenvalues of T strictly below x, by the Sturm sequence
/// (LDL^T pivot signs). Independent of the QL code path.
std::size_t sturm_count_below(const TridiagonalMatrix& T, double x);

struct EigenDecomposition {
    std::vector<double> eigenvalues;                 // sorted ascending
    std::vector<std::vector<double>> eigenvectors;   // eigenvectors[i] pairs with eigenvalues[i]
};

/// Brute-force cyclic Jacobi eigendecomposition of a dense symmetric matrix
/// (row-major). Test-scale oracle: rotates until every off-diagonal magnitude
/// is below 1e-13 * Frobenius norm, at most 100 sweeps, n <= 2048.
/// Deliberately shares no code with ql_eigenvalues.
EigenDecomposition dense_eig_oracle(const std::vector<double>& rowmajor, std::size_t n);

/// Convenience overload densifying any operator first.
EigenDecomposition dense_eig_oracle(const HermitianOperator& H);

}  // namespace purify
