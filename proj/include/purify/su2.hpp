#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "purify/operator.hpp"
#include "purify/richardson.hpp"
#include "purify/spectrum.hpp"

namespace purify {

/// N distinguishable spins of magnitude S restricted to a fixed total-Lz
/// sector. Configurations are stored as twice-m integers so half-integer
/// spins stay exact; enumeration order is lexicographically descending in
/// (m_1, ..., m_N).
struct SpinSystem {
    int n_spins = 0;
    int twice_spin = 0;  // 2S
    int twice_mz = 0;    // 2 * mz_sector
    std::size_t sector_dimension = 0;
    std::vector<std::vector<int>> basis;  // each config holds twice-m per site

    double spin() const { return 0.5 * twice_spin; }
    double mz() const { return 0.5 * twice_mz; }

    /// Validates the sector (nonempty iff |mz| <= N*S and N*S - mz is an
    /// integer; throws EmptySectorError otherwise) and enumerates the basis
    /// unless enumerate_basis is false (large sectors: dimension still
    /// computed, basis left empty).
    static SpinSystem make(int n_spins, double spin, double mz = 0.0,
                           bool enumerate_basis = true);
};

/// Sparse matrix of L^2 = Lz^2 + (L+L- + L-L+)/2, L_a = sum_i l_a^(i), in the
/// configuration basis of the sector. Exact integer-radicand arithmetic for
/// the ladder coefficients.
HermitianOperator build_l2_operator(const SpinSystem& sys);

/// The exactly known spectrum {l(l+1) : |mz| <= l <= N*S} with combinatorial
/// multiplicities mult(l) = K(l) - K(l+1), K(M) = number of configurations
/// with sum m = M; zero-multiplicity l values are dropped. The full
/// with-multiplicity list is materialized only for sectors up to 2^20 states.
Spectrum exact_spectrum(const SpinSystem& sys);

struct DegenerateBasisResult {
    std::vector<std::vector<double>> vectors;  // d_l independent eigenvectors
    RunResult sequence_run;                    // the run that produced the shared shift sequence
};

/// Extract a full basis of the eigenspace of l(l+1): one stabilized run
/// produces a shift sequence, which is then replayed on d_l fresh seeded
/// random vectors (seed + attempt*d_l + j + 1). Linear independence is
/// checked via the Gram matrix smallest eigenvalue (> 1e-6); up to 3 retry
/// attempts with fresh seeds before RankDeficientError.
DegenerateBasisResult extract_degenerate_basis(const HermitianOperator& H,
                                               const Spectrum& spectrum, int l, std::size_t d_l,
                                               const RunConfig& config,
                                               bool orthonormalize = false, int n_threads = 1);

}  // namespace purify
