#include "subsep/kernels.hpp"

#include <cmath>

namespace subsep {

std::vector<PencilCut> pencil_cuts(const SubspaceBasis& basis, const Partition& partition) {
  partition.validate(basis.profile());
  std::vector<PencilCut> cuts;
  // for two groups the second cut is the transpose of the first
  const int ncuts = partition.is_bipartite() ? 1 : partition.size();
  for (int g = 0; g < ncuts; ++g) {
    PencilCut cut;
    for (int i = 0; i < basis.dim(); ++i)
      cut.slices.push_back(reshape_across(basis.vector(i), basis.profile(), partition.groups[static_cast<size_t>(g)]));
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

namespace {

double defect_of(const Mat& m) {
  const Index r = std::min(m.rows(), m.cols());
  if (r < 2) return 0.0;
  if (r == 2) {
    // sigma1 sigma2 from the 2x2 minors (no cancellation), sigma1^2 + sigma2^2 = |m|_F^2
    const Mat w = m.rows() == 2 ? m : Mat(m.transpose());
    double det = 0.0;
    for (Index i = 0; i < w.cols(); ++i)
      for (Index j = i + 1; j < w.cols(); ++j) det += std::norm(w(0, i) * w(1, j) - w(0, j) * w(1, i));
    const double t = w.squaredNorm();
    if (!(t > 0)) return 0.0;
    const double l1 = 0.5 * t + std::sqrt(std::max(0.0, 0.25 * t * t - det));
    return std::sqrt(det) / l1;
  }
  const auto s = singular_values(m);
  if (!(s[0] > 0)) return 0.0;
  return s[1] / s[0];
}

}  // namespace

double rank_one_defect(const std::vector<PencilCut>& cuts, const Vec& c) {
  double worst = 0.0;
  for (const auto& cut : cuts) {
    Mat m = Mat::Zero(cut.slices.front().rows(), cut.slices.front().cols());
    for (size_t i = 0; i < cut.slices.size(); ++i) m += c[static_cast<Index>(i)] * cut.slices[i];
    worst = std::max(worst, defect_of(m));
  }
  return worst;
}

Index ProjectiveGrid::size() const {
  const Index s = steps;
  return nvars == 3 ? (s + 1) * (s + 1) * s * s : (s + 1) * s;
}

Vec ProjectiveGrid::point(Index flat) const {
  const double h = 0.5 * M_PI / steps;
  const double hp = 2.0 * M_PI / steps;
  if (nvars == 2) {
    const Index ip = flat % steps, ia = flat / steps;
    Vec c(2);
    c << std::cos(ia * h), std::sin(ia * h) * std::polar(1.0, ip * hp);
    return c;
  }
  Index rest = flat;
  const Index ip2 = rest % steps;
  rest /= steps;
  const Index ip1 = rest % steps;
  rest /= steps;
  const Index ib = rest % (steps + 1);
  const Index ia = rest / (steps + 1);
  const double a = ia * h, b = ib * h;
  Vec c(3);
  c << std::cos(a), std::sin(a) * std::cos(b) * std::polar(1.0, ip1 * hp),
      std::sin(a) * std::sin(b) * std::polar(1.0, ip2 * hp);
  return c;
}

std::vector<Index> ProjectiveGrid::neighbours(Index flat) const {
  std::vector<Index> out;
  const Index s = steps;
  if (nvars == 2) {
    const Index ip = flat % s, ia = flat / s;
    if (ia > 0) out.push_back((ia - 1) * s + ip);
    if (ia < s) out.push_back((ia + 1) * s + ip);
    out.push_back(ia * s + (ip + 1) % s);
    out.push_back(ia * s + (ip + s - 1) % s);
    return out;
  }
  Index rest = flat;
  const Index ip2 = rest % s;
  rest /= s;
  const Index ip1 = rest % s;
  rest /= s;
  const Index ib = rest % (s + 1);
  const Index ia = rest / (s + 1);
  auto idx = [&](Index a, Index b, Index p1, Index p2) { return ((a * (s + 1) + b) * s + p1) * s + p2; };
  if (ia > 0) out.push_back(idx(ia - 1, ib, ip1, ip2));
  if (ia < s) out.push_back(idx(ia + 1, ib, ip1, ip2));
  if (ib > 0) out.push_back(idx(ia, ib - 1, ip1, ip2));
  if (ib < s) out.push_back(idx(ia, ib + 1, ip1, ip2));
  out.push_back(idx(ia, ib, (ip1 + 1) % s, ip2));
  out.push_back(idx(ia, ib, (ip1 + s - 1) % s, ip2));
  out.push_back(idx(ia, ib, ip1, (ip2 + 1) % s));
  out.push_back(idx(ia, ib, ip1, (ip2 + s - 1) % s));
  return out;
}

std::vector<double> defect_grid_serial(const std::vector<PencilCut>& cuts, const ProjectiveGrid& grid) {
  std::vector<double> out(static_cast<size_t>(grid.size()));
  for (Index i = 0; i < grid.size(); ++i) out[static_cast<size_t>(i)] = rank_one_defect(cuts, grid.point(i));
  return out;
}

std::vector<double> defect_grid_parallel(const std::vector<PencilCut>& cuts, const ProjectiveGrid& grid) {
  std::vector<double> out(static_cast<size_t>(grid.size()));
  const Index n = grid.size();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[static_cast<size_t>(i)] = rank_one_defect(cuts, grid.point(i));
  return out;
}

std::vector<double> min_pt_eigenvalues_serial(const std::vector<Mat>& rhos, const DimensionProfile& profile,
                                              const std::vector<int>& subsystems) {
  std::vector<double> out(rhos.size());
  for (size_t i = 0; i < rhos.size(); ++i)
    out[i] = min_hermitian_eigenvalue(partial_transpose(rhos[i], profile, subsystems));
  return out;
}

std::vector<double> min_pt_eigenvalues_parallel(const std::vector<Mat>& rhos, const DimensionProfile& profile,
                                                const std::vector<int>& subsystems) {
  std::vector<double> out(rhos.size());
  const long n = static_cast<long>(rhos.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] =
        min_hermitian_eigenvalue(partial_transpose(rhos[static_cast<size_t>(i)], profile, subsystems));
  return out;
}

}  // namespace subsep
