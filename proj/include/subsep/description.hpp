#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subsep/linalg.hpp"

namespace subsep {

enum class DescriptionKind { AllStates, NoSeparable, SinglePoint, Segment, Triangle, Cone, TwoBalls, LCurve };
std::string to_string(DescriptionKind k);

/// Two-dimensional subspace made only of product states: one partition group
/// varies over a qubit while the rest stays fixed.
struct LocalBall {
  Mat span;              // ambient, two orthonormal columns
  int free_group = -1;   // group (or subsystem) whose factor varies
  Vec fixed_factor;      // factor on everything else, in partition order
};

/// Invertible map between the local supports: extreme points of the curve
/// are psi (x) L psi for psi in A_sep.
struct LinearMapL {
  Mat matrix;        // 2x2, a_basis coordinates -> b_basis coordinates
  Mat a_basis;       // d_A x 2, orthonormal
  Mat b_basis;       // d_B x 2, orthonormal
  Complex ratio;     // ad / bc

  /// L applied to a local vector of subsystem A (returns a d_B vector).
  Vec apply(const Vec& alpha) const { return b_basis * (matrix * (a_basis.adjoint() * alpha)); }
};

struct SeparableSetDescription {
  DescriptionKind kind = DescriptionKind::NoSeparable;
  DimensionProfile profile;
  Partition partition;
  Mat subspace;                  // orthonormal basis of S
  Mat all_states_basis;          // AllStates: subspace whose every state is separable
  std::vector<Vec> vertices;     // SinglePoint, Segment, Triangle
  Vec apex;                      // Cone
  std::vector<LocalBall> balls;  // Cone: one, TwoBalls: two
  Vec intersection;              // TwoBalls: common product of both balls
  std::optional<LinearMapL> lmap;

  /// Ambient product psi (x) L psi for psi = a_basis * x (LCurve only).
  Vec curve_point(const Vec& x) const;
  /// Affine dimension of the described set of density matrices.
  int expected_affine_dimension() const;
};

}  // namespace subsep
