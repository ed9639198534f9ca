#include "purify/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "purify/errors.hpp"
#include "purify/operator.hpp"

namespace purify {

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

HermitianOperator TridiagonalMatrix::to_operator() const {
    return HermitianOperator::tridiagonal(diagonal, off_diagonal);
}

std::vector<double> ql_eigenvalues(const TridiagonalMatrix& T, int max_sweeps) {
    const std::size_t n = T.dim();
    if (n == 0) throw std::invalid_argument("ql_eigenvalues: empty matrix");
    if (T.off_diagonal.size() + 1 != n)
        throw std::invalid_argument("ql_eigenvalues: off-diagonal must have length N-1");
    std::vector<double> d = T.diagonal;
    std::vector<double> e(n, 0.0);  // e[0..n-2] subdiagonal, e[n-1] spare
    std::copy(T.off_diagonal.begin(), T.off_diagonal.end(), e.begin());

    if (n == 1) return d;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            // Find the first negligible subdiagonal element at or after l.
            for (m = l; m + 1 < n; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == max_sweeps)
                    throw NoConvergenceError(
                        "ql_eigenvalues: too many sweeps at eigenvalue " + std::to_string(l), l);
                // Wilkinson shift from the 2x2 block at l.
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        // Rotation annihilated prematurely; cancel and restart sweep.
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::size_t sturm_count_below(const TridiagonalMatrix& T, double x) {
    const std::size_t n = T.dim();
    if (n == 0) throw std::invalid_argument("sturm_count_below: empty matrix");
    // Count negative pivots of the LDL^T factorization of T - x*I.
    // pivmin keeps the recurrence off exact zero so signs stay well defined.
    double e_max = 0.0;
    for (double b : T.off_diagonal) e_max = std::max(e_max, std::fabs(b));
    double pivmin = std::numeric_limits<double>::min();
    if (e_max > 0.0)
        pivmin = std::max(pivmin, e_max * e_max * std::numeric_limits<double>::epsilon());

    std::size_t count = 0;
    double q = T.diagonal[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        double b = T.off_diagonal[i - 1];
        q = T.diagonal[i] - x - b * b / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

EigenDecomposition dense_eig_oracle(const std::vector<double>& rowmajor, std::size_t n) {
    if (n == 0) throw std::invalid_argument("dense_eig_oracle: empty matrix");
    if (n > 2048) throw std::invalid_argument("dense_eig_oracle: test-scale only (n <= 2048)");
    if (rowmajor.size() != n * n)
        throw std::invalid_argument("dense_eig_oracle: size must be n*n");

    std::vector<double> a = rowmajor;  // working copy, updated in place
    // Accumulated rotations kept transposed: row r holds eigenvector r, so
    // each rotation touches two contiguous rows instead of two strided columns.
    std::vector<double> vt(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;

    double fro = 0.0;
    for (double x : a) fro += x * x;
    fro = std::sqrt(fro);
    const double target = 1e-13 * fro;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return std::sqrt(2.0 * s);
    };

    const int max_sweeps = 100;
    int sweep = 0;
    // Cyclic sweeps of two-sided rotations; small pivots are skipped outright
    // via a per-sweep threshold so late sweeps cost O(n^2), not O(n^3).
    while (off_norm() > target) {
        if (sweep++ >= max_sweeps)
            throw NoConvergenceError("dense_eig_oracle: rotation sweeps failed to converge", n);
        double skip = off_norm() / static_cast<double>(n);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-3 * skip) continue;
                double app = a[p * n + p];
                double aqq = a[q * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = std::copysign(1.0, theta) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                double* ap = a.data() + p * n;
                double* aq = a.data() + q * n;
                for (std::size_t j = 0; j < n; ++j) {
                    double apj = ap[j];
                    double aqj = aq[j];
                    ap[j] = c * apj - s * aqj;
                    aq[j] = s * apj + c * aqj;
                }
                // The two-sided rotation closes on the (p,q) block exactly.
                ap[p] = app - t * apq;
                aq[q] = aqq + t * apq;
                ap[q] = 0.0;
                aq[p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    a[i * n + p] = ap[i];
                    a[i * n + q] = aq[i];
                }

                double* vp = vt.data() + p * n;
                double* vq = vt.data() + q * n;
                for (std::size_t j = 0; j < n; ++j) {
                    double vpj = vp[j];
                    double vqj = vq[j];
                    vp[j] = c * vpj - s * vqj;
                    vq[j] = s * vpj + c * vqj;
                }
            }
        }
    }

    // Sort columns by eigenvalue ascending.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t c = order[k];
        out.eigenvalues[k] = a[c * n + c];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[k][i] = vt[c * n + i];
        // Fix sign: largest-magnitude entry positive.
        double best = 0.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double mag = std::fabs(out.eigenvectors[k][i]);
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (best > 0.0 && out.eigenvectors[k][arg] < 0.0)
            for (double& x : out.eigenvectors[k]) x = -x;
    }
    return out;
}

EigenDecomposition dense_eig_oracle(const HermitianOperator& H) {
    return dense_eig_oracle(H.to_dense(), H.dim());
}

}  // namespace purify
