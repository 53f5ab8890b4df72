#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "subsep/linalg.hpp"

namespace subsep {

using Rng = std::mt19937_64;

/// splitmix64 mix of (seed, stream); used for per-trial and per-probe seeds
/// so parallel schedules never change results.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
Complex complex_gaussian(Rng& rng);
Vec random_gaussian_vector(Rng& rng, Index n);
Vec random_unit_vector(Rng& rng, Index n);

/// Haar unitary via QR of a Ginibre matrix with phase fix.
Mat random_unitary(Rng& rng, Index n);

/// Invertible matrix with condition number at most max_cond (singular values
/// drawn log-uniformly in [1/sqrt(max_cond), sqrt(max_cond)]).
Mat random_invertible(Rng& rng, Index n, double max_cond = 20.0);

/// Dirichlet(1,...,1) weights.
std::vector<double> random_dirichlet(Rng& rng, int n);

/// Random mixed state of rank <= r supported on span(basis columns).
Mat random_state_on(Rng& rng, const Mat& basis, int rank);

}  // namespace subsep
