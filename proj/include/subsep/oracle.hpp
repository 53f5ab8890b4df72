#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsep/description.hpp"
#include "subsep/product_finder.hpp"
#include "subsep/random.hpp"

namespace subsep {

struct OracleOptions {
  int grid_steps = 16;          // nvars = 2 uses four times as many
  int max_starts = 400;
  double start_separation = 0.15;
  double accept = 1e-7;         // refined defect accepted as a zero
  double cluster = 1e-5;        // chordal radius merging refined zeros
};

/// Grid minimization of the rank-one defect over projective coefficient
/// space, each grid local minimum refined by pattern search. Returns unit
/// coefficient vectors in canonical phase, clustered.
std::vector<Vec> brute_force_product_search(const SubspaceBasis& basis, const Partition& partition,
                                            const OracleOptions& opt = {});

/// Pattern-search refinement of one start point; returns the refined point
/// and writes its defect.
Vec refine_zero(const std::vector<PencilCut>& cuts, const Vec& start, double& defect);

struct OracleComparison {
  bool agree = false;
  double worst_distance = 0.0;  // isolated matches (chordal) and curve residuals
  std::string message;
};

/// Agreement of the finder's solution set with the oracle's zeros within `dist`.
OracleComparison compare_with_oracle(const SubspaceBasis& basis, const Partition& partition,
                                     const ProductStateSet& found, const std::vector<Vec>& oracle,
                                     double dist = 1e-6);

/// Random extreme points (pure product projectors) of the described set;
/// the vertex list for polytopes.
std::vector<Mat> sample_extreme_points(const SeparableSetDescription& desc, Rng& rng, int n);

/// Affine dimension of a set of Hermitian matrices, by numeric rank of the
/// differences to the first one.
int affine_dimension(const std::vector<Mat>& points, double rank_rel_tol = 1e-9);

/// Random convex mixtures of random extreme points of the described set.
std::vector<DensityMatrix> sample_separable(const SeparableSetDescription& desc, Rng& rng, int n);

struct Failure {
  std::uint64_t seed = 0;
  std::string digest;
  std::string expected;
  std::string got;
};

struct VerificationReport {
  int trials = 0;
  int disagreements = 0;
  double worst_residual = 0.0;
  std::vector<Failure> failures;

  void merge(const VerificationReport& other);
};

/// FNV-1a over a fixed-precision rendering of the matrix entries.
std::string matrix_digest(const Mat& m);

/// Half the trials are separable samples, half random states of rank <= dim S
/// on S. A trial disagrees when class membership and PPT (across every cut of
/// the description's partition) give different verdicts. Trial i uses seed
/// derive_seed(seed, i).
VerificationReport monte_carlo_class_check(const SeparableSetDescription& desc, int n, std::uint64_t seed,
                                           const ToleranceConfig& tol);

}  // namespace subsep
