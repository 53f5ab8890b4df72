#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsep/description.hpp"
#include "subsep/linalg.hpp"

namespace subsep {

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

/// PPT test across a two-group cut (group 1 is transposed).
PptResult is_ppt(const DensityMatrix& rho, const Partition& cut, const ToleranceConfig& tol);
/// Minimum over every bipartition of the groups of `partition`.
PptResult is_ppt_all_cuts(const DensityMatrix& rho, const Partition& partition, const ToleranceConfig& tol);

/// Every bipartition of k groups, as the transposed side (subsets of 1..k-1).
std::vector<std::vector<int>> transposed_sides(int groups);

enum class VerdictMethod { PPT, ClassMembership };
std::string to_string(VerdictMethod m);

/// Separable decomposition rho = sum_i weights[i] * components[i].
struct Certificate {
  std::vector<double> weights;
  std::vector<Mat> components;  // unit-trace, ambient

  Mat reconstruct() const;
};

struct SeparabilityVerdict {
  bool separable = false;
  double min_pt_eigenvalue = 0.0;
  VerdictMethod method = VerdictMethod::PPT;
  std::optional<Certificate> certificate;
  double residual = 0.0;  // membership: distance to the described set's defining equations
};

/// Class-specific convex membership. SupportMismatch when supp rho is not in S.
SeparabilityVerdict membership(const DensityMatrix& rho, const SeparableSetDescription& desc,
                               const ToleranceConfig& tol);

/// Exact decision for rank <= 3. Two groups: the PPT verdict (with a
/// certificate when membership produces one). Three or more groups: PPT
/// across all cuts and membership in the classified description of supp rho.
SeparabilityVerdict is_separable_rank3(const DensityMatrix& rho, const Partition& partition,
                                       const ToleranceConfig& tol, std::uint64_t seed);

/// Nonnegative least squares with at most a handful of columns, solved
/// exactly by enumerating active sets. Returns the residual norm.
double small_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& x);

}  // namespace subsep
