#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsep/kernels.hpp"
#include "subsep/linalg.hpp"
#include "subsep/random.hpp"

namespace subsep {

/// Unit-norm coefficient vector with its first non-negligible entry real
/// positive, so equal points compare equal.
Vec canonical_point(const Vec& c);

/// Holomorphic quadratic forms q(c) = c^T Q c in the basis coefficients.
/// `quadrics` is an orthonormal basis of the span of all 2x2 minors.
struct QuadricSystem {
  int nvars = 0;
  std::vector<Mat> quadrics;  // symmetric nvars x nvars
  double max_residual(const Vec& c) const;  // max_k |c^T Q_k c| for unit c
};

QuadricSystem minor_system(const SubspaceBasis& basis, const Partition& partition, const ToleranceConfig& tol);

enum class ComponentKind { Empty, IsolatedPoints, Line, TwoLines, Conic, FullPlane };
std::string to_string(ComponentKind k);

struct ComponentReport {
  ComponentKind kind = ComponentKind::Empty;
  std::vector<Vec> points;          // IsolatedPoints
  std::vector<Vec> line;            // Line: two points spanning it
  Vec vertex;                       // TwoLines: the common point
  std::vector<Vec> line_points;     // TwoLines: one further point on each line
  Mat conic;                        // Conic: the defining quadric
  std::vector<Vec> witnesses;       // sampled curve points (Line, TwoLines, Conic)
  std::vector<Vec> extra_isolated;  // points off the curve component
};

struct FinderOptions {
  int quadric_pairs = 4;
  int probe_lines = 16;
};

struct IsolatedResult {
  bool isolated = true;  // false: the resultant vanished, positive-dimensional locus
  std::vector<Vec> points;
};

IsolatedResult solve_isolated(const QuadricSystem& qs, Rng& rng, const ToleranceConfig& tol,
                              const FinderOptions& opt = {});

/// Curve detection by random line probes. Never returns IsolatedPoints:
/// when no curve is found the kind is Empty and the caller uses solve_isolated.
ComponentReport detect_positive_dimensional(const QuadricSystem& qs, Rng& rng, const ToleranceConfig& tol,
                                            const FinderOptions& opt = {});

struct ProductStateSet {
  ComponentReport report;
  Partition partition;
  std::vector<Vec> spanning_coeffs;                   // coefficient vectors (basis coordinates)
  std::vector<StateVector> spanning_products;         // ambient unit vectors
  std::vector<std::vector<StateVector>> factors;      // factors[i][g]: group-g factor of product i
  int dim_S_sep = 0;
  std::vector<int> local_dims;                        // numeric rank of each group's factors
  std::vector<bool> general_position;                 // per group, meaningful when dim_S_sep = 3
  std::vector<double> general_position_margin;        // smallest tested ratio per group
  std::vector<std::string> warnings;

  int a_sep_dim() const { return local_dims.at(0); }
  int b_sep_dim() const { return local_dims.at(1); }
};

ProductStateSet find_product_states(const SubspaceBasis& basis, const Partition& partition,
                                    const ToleranceConfig& tol, std::uint64_t seed,
                                    const FinderOptions& opt = {});

/// Ambient vector sum_i c_i b_i.
Vec ambient_vector(const SubspaceBasis& basis, const Vec& c);

/// Local factors of a product vector, one per partition group (unit norm).
std::vector<StateVector> factorize_product(const Vec& v, const DimensionProfile& profile,
                                           const Partition& partition);

/// Reassembles a product from per-group factors into the ambient ordering.
Vec assemble_product(const std::vector<Vec>& factors, const DimensionProfile& profile,
                     const Partition& partition);

/// Every size-min(d,3) subset has full numeric rank, d = rank of the family.
/// Ratios use root_cluster_tol, the scale at which solver output is resolved.
bool general_position(const std::vector<Vec>& vectors, double tol);
double general_position_margin(const std::vector<Vec>& vectors);

}  // namespace subsep
