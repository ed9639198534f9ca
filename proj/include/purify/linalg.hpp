#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "purify/operator.hpp"
#include "purify/rng.hpp"

namespace purify {

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

/// Scale v to unit Euclidean norm. Direction is preserved (positive scalar
/// multiple of the input). Throws ZeroVectorError below 1e-300.
std::vector<double> normalize(std::vector<double> v);
void normalize_in_place(std::vector<double>& v);

/// Flip the global sign so the entry of largest magnitude is positive
/// (first such entry on magnitude ties). Fixes the sign left free by
/// normalization so iterates and file outputs are deterministic.
void canonicalize_sign(std::vector<double>& v);

/// normalize((H - shift I) v) with the canonical sign applied.
/// Throws ZeroVectorError when v is an eigenvector of eigenvalue == shift.
std::vector<double> apply_shifted(const HermitianOperator& H, double shift,
                                  const std::vector<double>& v);

/// sigma_bar = sqrt( ||(H - eps_k) v||^2 / N ), the computable RMS residual
/// of the eigen equation used for termination.
double residual_sigma_bar(const HermitianOperator& H, double eps_k,
                          std::span<const double> v);

/// zeta = ||v1 - v2||.
double separation(std::span<const double> v1, std::span<const double> v2);

/// Unit vector with entries drawn i.i.d. uniform(-1,1) from rng, then normalized.
std::vector<double> random_unit_vector(std::size_t n, SplitMix64& rng);

}  // namespace purify
