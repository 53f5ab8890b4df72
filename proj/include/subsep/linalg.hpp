#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subsep/errors.hpp"

namespace subsep {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Numerical thresholds for every discrete decision the library makes.
/// Classification is discontinuous at class boundaries, so these are
/// explicit and user-configurable rather than buried in the algorithms.
struct ToleranceConfig {
  double rank_rel_tol = 1e-9;      // singular values below this * sigma_max count as zero
  double membership_tol = 1e-8;    // residual accepted for "lies on the variety / in the set"
  double root_cluster_tol = 1e-6;  // chordal distance under which two roots are one
  double psd_tol = 1e-10;          // eigenvalues above -psd_tol count as nonnegative

  void validate() const;
};

/// Local Hilbert-space dimensions d_1..d_k; flattened indices are row-major
/// (first subsystem most significant).
class DimensionProfile {
 public:
  DimensionProfile() = default;
  explicit DimensionProfile(std::vector<int> dims);

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int subsystem) const { return dims_.at(static_cast<size_t>(subsystem)); }
  const std::vector<int>& dims() const { return dims_; }
  Index total() const;

  DimensionProfile concat(const DimensionProfile& other) const;
  DimensionProfile select(std::span<const int> subsystems) const;
  Index dim_of(std::span<const int> subsystems) const;

  bool operator==(const DimensionProfile&) const = default;

 private:
  std::vector<int> dims_;
};

/// Ordered grouping of subsystems. Two groups form a bipartite cut; the
/// finest partition (one group per subsystem) is full multipartite product.
struct Partition {
  std::vector<std::vector<int>> groups;

  static Partition bipartite(const std::vector<int>& side_a, int parties);
  static Partition finest(int parties);
  // For a 2-party profile the natural A|B cut; otherwise the finest partition.
  static Partition natural(const DimensionProfile& profile);

  int size() const { return static_cast<int>(groups.size()); }
  bool is_bipartite() const { return groups.size() == 2; }
  void validate(const DimensionProfile& profile) const;
  // Flattened subsystem order: group 0 subsystems, then group 1, ...
  std::vector<int> order() const;
  DimensionProfile group_profile(const DimensionProfile& profile) const;
};

class StateVector {
 public:
  /// Normalizes on construction; throws InputError on zero norm or a length
  /// that does not match the profile.
  StateVector(Vec amplitudes, DimensionProfile profile);
  /// Single-party convenience: profile is {amplitudes.size()}.
  explicit StateVector(Vec amplitudes);

  static StateVector basis(const DimensionProfile& profile, Index index);

  const Vec& amplitudes() const { return amplitudes_; }
  const DimensionProfile& profile() const { return profile_; }
  Index size() const { return amplitudes_.size(); }
  Complex operator[](Index i) const { return amplitudes_[i]; }

 private:
  Vec amplitudes_;
  DimensionProfile profile_;
};

/// |<a|b>| >= 1 - tol for normalized a, b.
bool projectively_equal(const Vec& a, const Vec& b, double tol);
bool projectively_equal(const StateVector& a, const StateVector& b, double tol);

/// Fubini-Study chordal distance sqrt(1 - |<a|b>|^2 / (|a|^2 |b|^2)).
double chordal_distance(const Vec& a, const Vec& b);

class DensityMatrix {
 public:
  /// Hermitizes, normalizes the trace to one and rejects inputs that are
  /// non-Hermitian or have an eigenvalue below -tol.
  DensityMatrix(Mat entries, DimensionProfile profile, double tol = 1e-8);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix pure(const Vec& psi, const DimensionProfile& profile);

  const Mat& matrix() const { return entries_; }
  const DimensionProfile& profile() const { return profile_; }
  Index size() const { return entries_.rows(); }

 private:
  Mat entries_;
  DimensionProfile profile_;
};

/// Orthonormal spanning set of a subspace of dimension 1..3.
class SubspaceBasis {
 public:
  /// Orthonormalizes by modified Gram-Schmidt (first vector keeps its
  /// direction); numerically dependent vectors are dropped.
  SubspaceBasis(const std::vector<Vec>& vectors, DimensionProfile profile,
                double rank_rel_tol = 1e-9);
  static SubspaceBasis from_states(const std::vector<StateVector>& states,
                                   double rank_rel_tol = 1e-9);

  int dim() const { return static_cast<int>(columns_.cols()); }
  const Mat& matrix() const { return columns_; }
  Vec vector(int i) const { return columns_.col(i); }
  const DimensionProfile& profile() const { return profile_; }
  Mat projector() const { return columns_ * columns_.adjoint(); }

 private:
  Mat columns_;
  DimensionProfile profile_;
};

struct SchmidtTerm {
  double coefficient;
  StateVector left;
  StateVector right;
};

// ---- operations -------------------------------------------------------------

Vec kron(const Vec& a, const Vec& b);
Mat kron(const Mat& a, const Mat& b);

/// Kronecker product; the profile is the concatenation of both profiles.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Reorders subsystems: output subsystem p is input subsystem perm[p].
Vec permute_subsystems(const Vec& v, const DimensionProfile& profile, std::span<const int> perm);
Mat permute_subsystems(const Mat& m, const DimensionProfile& profile, std::span<const int> perm);
std::vector<int> inverse_permutation(std::span<const int> perm);

/// Reshapes v into a d_A x d_B matrix, A = side_a (in the given order),
/// B = the remaining subsystems in ascending order.
Mat reshape_across(const Vec& v, const DimensionProfile& profile, std::span<const int> side_a);
std::vector<int> complement(std::span<const int> side, int parties);

/// Schmidt terms with coefficient >= rank_rel_tol * largest, descending.
std::vector<SchmidtTerm> schmidt_decompose(const StateVector& v, std::span<const int> side_a,
                                           double rank_rel_tol = 1e-9);
/// sigma_2 / sigma_1 across the cut (0 for product states).
double schmidt_ratio(const Vec& v, const DimensionProfile& profile, std::span<const int> side_a);

/// Transposes the listed subsystems.
Mat partial_transpose(const Mat& rho, const DimensionProfile& profile,
                      std::span<const int> subsystems);
/// Bipartite convenience: transpose one side of a two-party state.
Mat partial_transpose(const DensityMatrix& rho, int side);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

int numeric_rank(const Mat& m, double rank_rel_tol);
int numeric_rank(const Mat& m, const ToleranceConfig& tol);
Eigen::VectorXd singular_values(const Mat& m);

/// Eigenvectors with eigenvalue > rank_rel_tol * lambda_max; UnsupportedRank
/// beyond three.
SubspaceBasis support_basis(const DensityMatrix& rho, const ToleranceConfig& tol);

Eigen::VectorXd hermitian_eigenvalues(const Mat& h);
double min_hermitian_eigenvalue(const Mat& h);

Mat columns_of(const std::vector<StateVector>& states);
Mat columns_of(const std::vector<Vec>& vectors);

/// Orthonormal basis (columns) of span{vectors}, by modified Gram-Schmidt.
Mat orthonormalize(const std::vector<Vec>& vectors, double rank_rel_tol);

/// Removes the global phase: first entry with magnitude > 1e-12 made real positive.
Vec canonical_phase(const Vec& v);

/// Real vectorization of a Hermitian matrix (operator-space coordinates).
Eigen::VectorXd hermitian_to_real(const Mat& h);

}  // namespace subsep
