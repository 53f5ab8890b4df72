#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsep/bipartite.hpp"

namespace subsep {

/// Three product states given factor-wise over k subsystems:
/// factors[i][j] is the subsystem-j factor of product i.
struct MultipartiteInstance {
  DimensionProfile profile;
  std::vector<std::vector<Vec>> factors;
  std::vector<int> active;   // subsystems still taking part (all, before reduction)
  std::vector<int> dropped;  // subsystems removed as trivial

  static MultipartiteInstance from_factors(const DimensionProfile& profile, std::vector<std::vector<Vec>> factors);
  /// Splits ambient product vectors with one Schmidt decomposition per subsystem.
  /// Throws InputError when a vector is not a product state.
  static MultipartiteInstance from_product_vectors(const std::vector<Vec>& vectors, const DimensionProfile& profile,
                                                   double tol = 1e-8);

  int k() const { return static_cast<int>(active.size()); }
  Vec product(int i) const;  // ambient unit vector of product i
  std::vector<Vec> column(int subsystem) const;
};

enum class PatternKind { Independent, GeneralPosition, Equal, Trivial };
std::string to_string(PatternKind k);

struct SubsystemPattern {
  PatternKind kind = PatternKind::Trivial;
  std::array<int, 2> pair{-1, -1};  // Equal: the coinciding rows (0-based)
  bool operator==(const SubsystemPattern&) const = default;
};

/// One entry per active subsystem, in the order of `active`.
using EqualityPattern = std::vector<SubsystemPattern>;

enum class MultiTag {
  Triangle,
  SphericalCone,
  BLM_NoProduct,
  BLM_OneProduct,
  BLM_LocalQubit,
  BLM_Segment,
  LocalQudit,  // a single non-trivial subsystem: every state is product
  Bipartite,   // two non-trivial subsystems: see `bipartite`
};
std::string to_string(MultiTag t);

struct ConeData {
  Vec apex;
  int apex_index = -1;              // row of the apex product
  int qubit_subsystem = -1;         // subsystem along which the ball varies
  std::array<int, 2> pair{-1, -1};  // rows whose complementary factors coincide
  LocalBall ball;
};

struct MultiClassResult {
  MultiTag tag = MultiTag::Triangle;
  int k = 0;
  int dim_S_sep = 0;
  std::string situation;  // branch of the decision tree that fired
  EqualityPattern pattern;
  std::vector<int> active;
  std::vector<int> dropped;
  std::optional<ConeData> cone;
  std::optional<ClassificationResult> bipartite;
  SeparableSetDescription description;
  std::vector<std::string> warnings;
};

MultipartiteInstance reduce_trivial_subsystems(const MultipartiteInstance& inst, double tol);
EqualityPattern equality_pattern(const MultipartiteInstance& inst, double tol);

struct TreeOutcome {
  MultiTag tag = MultiTag::Triangle;
  int qubit_position = -1;  // index into the pattern for SphericalCone
  std::array<int, 2> pair{-1, -1};
  std::string situation;
};

/// The Triangle / SphericalCone decision on a reduced pattern with k >= 3.
/// Lowest-index choices wherever several relabelings fit.
TreeOutcome decide_pattern(const EqualityPattern& pattern);

MultiClassResult classify_multipartite(const MultipartiteInstance& inst, const ToleranceConfig& tol,
                                       std::uint64_t seed);

/// Raw-vector entry point: runs the product finder over all single-subsystem
/// cuts and classifies the span of the products it finds.
MultiClassResult classify_multipartite_subspace(const SubspaceBasis& basis, const ToleranceConfig& tol,
                                                std::uint64_t seed);

/// Rank test of {alpha_i (x) beta_i}; PreconditionUnmet unless the alphas are
/// independent or dependent in general position and the betas are not all equal.
bool tensor_independence(const std::vector<Vec>& alphas, const std::vector<Vec>& betas, double tol);

}  // namespace subsep
