#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace purify {

struct SparseEntry {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Real symmetric operator in one of three storages: tridiagonal
/// (diagonal + one off-diagonal band), sparse coordinate list (upper
/// triangle stored, symmetric closure implied), or dense row-major.
class HermitianOperator {
public:
    enum class Storage { Tridiagonal, Sparse, Dense };

    static HermitianOperator tridiagonal(std::vector<double> diag, std::vector<double> off);
    /// `upper` holds entries with row <= col only; the (col,row) mirror is implied.
    static HermitianOperator sparse(std::size_t dim, std::vector<SparseEntry> upper);
    /// `rowmajor` must be exactly symmetric (a[i*n+j] == a[j*n+i]).
    static HermitianOperator dense(std::size_t dim, std::vector<double> rowmajor);

    std::size_t dim() const { return dim_; }
    Storage storage() const { return storage_; }

    /// y = H x. Tridiagonal path uses exactly 3N-2 multiplications.
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

    /// y = (H - shift I) x.
    void apply_shifted_into(double shift, std::span<const double> x, std::span<double> y) const;

    /// Dense row-major copy (for oracles and diagnostics at test scale).
    std::vector<double> to_dense() const;

    const std::vector<double>& diag() const { return diag_; }
    const std::vector<double>& off_diag() const { return off_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }
    const std::vector<double>& dense_data() const { return dense_; }

private:
    HermitianOperator() = default;

    Storage storage_ = Storage::Dense;
    std::size_t dim_ = 0;
    std::vector<double> diag_, off_;        // tridiagonal
    std::vector<SparseEntry> entries_;      // sparse upper triangle
    std::vector<double> dense_;             // dense row-major
};

}  // namespace purify
