#include "purify/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "purify/errors.hpp"

namespace purify {

namespace {

void check_finite(const std::vector<double>& xs, const char* what) {
    for (double x : xs) {
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
}

}  // namespace

HermitianOperator HermitianOperator::tridiagonal(std::vector<double> diag,
                                                 std::vector<double> off) {
    if (diag.empty()) throw std::invalid_argument("tridiagonal: empty diagonal");
    if (off.size() + 1 != diag.size())
        throw std::invalid_argument("tridiagonal: off-diagonal must have length N-1");
    check_finite(diag, "tridiagonal");
    check_finite(off, "tridiagonal");
    HermitianOperator H;
    H.storage_ = Storage::Tridiagonal;
    H.dim_ = diag.size();
    H.diag_ = std::move(diag);
    H.off_ = std::move(off);
    return H;
}

HermitianOperator HermitianOperator::sparse(std::size_t dim, std::vector<SparseEntry> upper) {
    if (dim < 1) throw std::invalid_argument("sparse: dim must be >= 1");
    for (const auto& e : upper) {
        if (e.row > e.col) throw std::invalid_argument("sparse: entries must satisfy row <= col");
        if (e.col >= dim) throw std::invalid_argument("sparse: index out of range");
        if (!std::isfinite(e.value)) throw std::invalid_argument("sparse: non-finite entry");
    }
    HermitianOperator H;
    H.storage_ = Storage::Sparse;
    H.dim_ = dim;
    H.entries_ = std::move(upper);
    return H;
}

HermitianOperator HermitianOperator::dense(std::size_t dim, std::vector<double> rowmajor) {
    if (dim < 1) throw std::invalid_argument("dense: dim must be >= 1");
    if (rowmajor.size() != dim * dim) throw std::invalid_argument("dense: size must be dim*dim");
    check_finite(rowmajor, "dense");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            if (rowmajor[i * dim + j] != rowmajor[j * dim + i])
                throw std::invalid_argument("dense: matrix is not exactly symmetric");
    HermitianOperator H;
    H.storage_ = Storage::Dense;
    H.dim_ = dim;
    H.dense_ = std::move(rowmajor);
    return H;
}

void HermitianOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw DimensionMismatchError("matvec: operator dim " + std::to_string(dim_) +
                                     " vs vector " + std::to_string(x.size()));
    const std::size_t n = dim_;
    switch (storage_) {
        case Storage::Tridiagonal: {
            if (n == 1) {
                y[0] = diag_[0] * x[0];
                return;
            }
            y[0] = diag_[0] * x[0] + off_[0] * x[1];
            for (std::size_t i = 1; i + 1 < n; ++i)
                y[i] = off_[i - 1] * x[i - 1] + diag_[i] * x[i] + off_[i] * x[i + 1];
            y[n - 1] = off_[n - 2] * x[n - 2] + diag_[n - 1] * x[n - 1];
            return;
        }
        case Storage::Sparse: {
            for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
            for (const auto& e : entries_) {
                y[e.row] += e.value * x[e.col];
                if (e.row != e.col) y[e.col] += e.value * x[e.row];
            }
            return;
        }
        case Storage::Dense: {
            for (std::size_t i = 0; i < n; ++i) {
                const double* row = dense_.data() + i * n;
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
                y[i] = acc;
            }
            return;
        }
    }
}

std::vector<double> HermitianOperator::apply(const std::vector<double>& x) const {
    std::vector<double> y(dim_);
    apply(std::span<const double>(x), std::span<double>(y));
    return y;
}

void HermitianOperator::apply_shifted_into(double shift, std::span<const double> x,
                                           std::span<double> y) const {
    apply(x, y);
    for (std::size_t i = 0; i < dim_; ++i) y[i] -= shift * x[i];
}

std::vector<double> HermitianOperator::to_dense() const {
    std::vector<double> a(dim_ * dim_, 0.0);
    switch (storage_) {
        case Storage::Tridiagonal:
            for (std::size_t i = 0; i < dim_; ++i) a[i * dim_ + i] = diag_[i];
            for (std::size_t i = 0; i + 1 < dim_; ++i)
                a[i * dim_ + i + 1] = a[(i + 1) * dim_ + i] = off_[i];
            break;
        case Storage::Sparse:
            for (const auto& e : entries_) {
                a[e.row * dim_ + e.col] += e.value;
                if (e.row != e.col) a[e.col * dim_ + e.row] += e.value;
            }
            break;
        case Storage::Dense:
            a = dense_;
            break;
    }
    return a;
}

}  // namespace purify
