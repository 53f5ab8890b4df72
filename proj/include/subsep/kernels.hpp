#pragma once

#include <vector>

#include "subsep/linalg.hpp"

namespace subsep {

/// Coefficient pencil across one cut: M(c) = sum_i c_i * slices[i].
struct PencilCut {
  std::vector<Mat> slices;
};

/// One PencilCut per cut group|rest of the partition (a single cut when
/// the partition is bipartite).
std::vector<PencilCut> pencil_cuts(const SubspaceBasis& basis, const Partition& partition);

/// sigma_2 / sigma_1 of M(c), maximized over cuts. Zero iff c is a product
/// state with respect to every cut.
double rank_one_defect(const std::vector<PencilCut>& cuts, const Vec& c);

/// Projective grid over the unit sphere of C^nvars (nvars in {2,3}).
/// nvars = 3: c = (cos a, sin a cos b e^{i p1}, sin a sin b e^{i p2}) with
/// a, b in [0, pi/2] on steps+1 nodes and p1, p2 on steps nodes of [0, 2 pi).
/// nvars = 2: c = (cos a, sin a e^{i p}).
struct ProjectiveGrid {
  int nvars = 3;
  int steps = 16;

  Index size() const;
  Vec point(Index flat) const;
  /// Flat indices of the grid neighbours (one step along each axis; phases wrap).
  std::vector<Index> neighbours(Index flat) const;
};

std::vector<double> defect_grid_serial(const std::vector<PencilCut>& cuts, const ProjectiveGrid& grid);
std::vector<double> defect_grid_parallel(const std::vector<PencilCut>& cuts, const ProjectiveGrid& grid);

/// Minimal eigenvalue of the partial transpose (on `subsystems`) of each matrix.
std::vector<double> min_pt_eigenvalues_serial(const std::vector<Mat>& rhos, const DimensionProfile& profile,
                                              const std::vector<int>& subsystems);
std::vector<double> min_pt_eigenvalues_parallel(const std::vector<Mat>& rhos, const DimensionProfile& profile,
                                                const std::vector<int>& subsystems);

}  // namespace subsep
