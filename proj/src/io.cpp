#include "purify/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "purify/errors.hpp"

namespace purify::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open for reading: " + path.string());
    return in;
}

double parse_double(std::istream& in, const std::filesystem::path& path) {
    double x;
    if (!(in >> x)) throw ParseError("malformed number in " + path.string());
    return x;
}

std::size_t parse_size(std::istream& in, const std::filesystem::path& path) {
    long long x;
    if (!(in >> x) || x < 0) throw ParseError("malformed count in " + path.string());
    return static_cast<std::size_t>(x);
}

}  // namespace

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_matrix(const std::filesystem::path& path, const HermitianOperator& H) {
    auto out = open_out(path);
    switch (H.storage()) {
        case HermitianOperator::Storage::Tridiagonal: {
            out << "tridiag " << H.dim() << "\n";
            for (double d : H.diag()) out << format_full(d) << "\n";
            for (double e : H.off_diag()) out << format_full(e) << "\n";
            break;
        }
        case HermitianOperator::Storage::Sparse: {
            out << "coo " << H.dim() << " " << H.entries().size() << "\n";
            for (const auto& e : H.entries())
                out << e.row << " " << e.col << " " << format_full(e.value) << "\n";
            break;
        }
        case HermitianOperator::Storage::Dense: {
            // Dense matrices travel as their upper triangle in coo form.
            std::vector<SparseEntry> entries;
            const auto& a = H.dense_data();
            for (std::size_t i = 0; i < H.dim(); ++i)
                for (std::size_t j = i; j < H.dim(); ++j)
                    if (a[i * H.dim() + j] != 0.0) entries.push_back({i, j, a[i * H.dim() + j]});
            out << "coo " << H.dim() << " " << entries.size() << "\n";
            for (const auto& e : entries)
                out << e.row << " " << e.col << " " << format_full(e.value) << "\n";
            break;
        }
    }
    if (!out) throw Error("write failed: " + path.string());
}

HermitianOperator read_matrix(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string kind;
    if (!(in >> kind)) throw ParseError("empty matrix file: " + path.string());
    if (kind == "tridiag") {
        std::size_t n = parse_size(in, path);
        if (n == 0) throw ParseError("tridiag of dimension 0 in " + path.string());
        std::vector<double> diag(n), off(n ? n - 1 : 0);
        for (auto& d : diag) d = parse_double(in, path);
        for (auto& e : off) e = parse_double(in, path);
        return HermitianOperator::tridiagonal(std::move(diag), std::move(off));
    }
    if (kind == "coo") {
        std::size_t n = parse_size(in, path);
        std::size_t nnz = parse_size(in, path);
        std::vector<SparseEntry> entries;
        entries.reserve(nnz);
        for (std::size_t t = 0; t < nnz; ++t) {
            std::size_t i = parse_size(in, path);
            std::size_t j = parse_size(in, path);
            double v = parse_double(in, path);
            entries.push_back({i, j, v});
        }
        return HermitianOperator::sparse(n, std::move(entries));
    }
    throw ParseError("unknown matrix format '" + kind + "' in " + path.string());
}

void write_vector(const std::filesystem::path& path, const std::vector<double>& v) {
    auto out = open_out(path);
    out << "vec " << v.size() << "\n";
    for (double x : v) out << format_full(x) << "\n";
    if (!out) throw Error("write failed: " + path.string());
}

std::vector<double> read_vector(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string kind;
    if (!(in >> kind) || kind != "vec") throw ParseError("expected 'vec' in " + path.string());
    std::size_t n = parse_size(in, path);
    std::vector<double> v(n);
    for (auto& x : v) x = parse_double(in, path);
    return v;
}

void write_eigenvalues(const std::filesystem::path& path, const std::vector<double>& values) {
    auto out = open_out(path);
    out << "eigs " << values.size() << "\n";
    for (double x : values) out << format_full(x) << "\n";
    if (!out) throw Error("write failed: " + path.string());
}

std::vector<double> read_eigenvalues(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string kind;
    if (!(in >> kind) || kind != "eigs") throw ParseError("expected 'eigs' in " + path.string());
    std::size_t n = parse_size(in, path);
    std::vector<double> v(n);
    for (auto& x : v) x = parse_double(in, path);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) throw ParseError("eigenvalues not sorted in " + path.string());
    return v;
}

void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace) {
    auto out = open_out(path);
    out << "n,j,sigma_bar,sigma\n";
    for (const auto& row : trace.rows) {
        out << row.n << "," << row.chosen_index << "," << format_full(row.sigma_bar) << ",";
        if (row.sigma) out << format_full(*row.sigma);
        out << "\n";
    }
    if (!out) throw Error("write failed: " + path.string());
}

void write_lyapunov_csv(const std::filesystem::path& path, const LyapunovTrace& trace) {
    auto out = open_out(path);
    out << "n,zeta,lambda\n";
    for (const auto& row : trace.rows)
        out << row.n << "," << format_full(row.zeta) << "," << format_full(row.lambda) << "\n";
    if (!out) throw Error("write failed: " + path.string());
}

void write_ratios_csv(const std::filesystem::path& path, const std::vector<double>& log10_r,
                      const std::vector<std::int64_t>& counts, std::size_t k) {
    if (log10_r.size() != counts.size())
        throw DimensionMismatchError("ratios csv: counts length mismatch");
    auto out = open_out(path);
    out << "i,log10_r,m_i\n";
    for (std::size_t i = 0; i < log10_r.size(); ++i) {
        if (i == k) continue;
        out << i << "," << format_full(log10_r[i]) << "," << counts[i] << "\n";
    }
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace purify::io
