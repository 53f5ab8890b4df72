#include "subsep/separability.hpp"

#include <cmath>
#include <functional>

#include "subsep/bipartite.hpp"
#include "subsep/multipartite.hpp"

namespace subsep {

namespace {

// Maximizer of a concave function on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Mat hermitian_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

// Unit-trace copy of a PSD matrix with negligible negative noise clipped.
Mat as_state(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  Mat out = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const double tr = out.trace().real();
  return tr > 0 ? Mat(out / tr) : out;
}

Mat projector(const Vec& v) {
  const Vec u = v / v.norm();
  return u * u.adjoint();
}

double support_residual(const Mat& rho, const Mat& basis) {
  const Mat p = basis * basis.adjoint();
  return (rho - p * rho * p).norm();
}

void finish_certificate(SeparabilityVerdict& v, const Mat& rho, Certificate cert, double tol) {
  Certificate c;
  for (size_t i = 0; i < cert.weights.size(); ++i)
    if (cert.weights[i] > 1e-15) {
      c.weights.push_back(cert.weights[i]);
      c.components.push_back(cert.components[i]);
    }
  if ((c.reconstruct() - rho).norm() <= tol) v.certificate = std::move(c);
}

SeparabilityVerdict vertex_membership(const Mat& rho, const Mat& basis, const std::vector<Vec>& vertices,
                                      const ToleranceConfig& tol) {
  const Mat r = basis.adjoint() * rho * basis;
  Eigen::MatrixXd a(r.rows() * r.rows(), static_cast<Index>(vertices.size()));
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Vec x = basis.adjoint() * vertices[i];
    a.col(static_cast<Index>(i)) = hermitian_to_real(projector(x));
  }
  Eigen::VectorXd w;
  const double res = small_nnls(a, hermitian_to_real(r), w);
  SeparabilityVerdict v;
  v.method = VerdictMethod::ClassMembership;
  v.residual = std::max(res, std::abs(w.sum() - 1.0));
  v.separable = v.residual <= tol.membership_tol;
  if (v.separable) {
    Certificate c;
    for (size_t i = 0; i < vertices.size(); ++i) {
      c.weights.push_back(w[static_cast<Index>(i)]);
      c.components.push_back(projector(vertices[i]));
    }
    finish_certificate(v, rho, std::move(c), tol.membership_tol);
  }
  return v;
}

SeparabilityVerdict all_states_membership(const Mat& rho, const Mat& basis, const ToleranceConfig& tol) {
  SeparabilityVerdict v;
  v.method = VerdictMethod::ClassMembership;
  v.residual = support_residual(rho, basis);
  v.separable = v.residual <= tol.membership_tol;
  if (v.separable) {
    // every vector of the span is a product, so the spectral decomposition certifies
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(rho));
    Certificate c;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double w = es.eigenvalues()[i];
      if (w <= tol.psd_tol) continue;
      c.weights.push_back(w);
      c.components.push_back(projector(es.eigenvectors().col(i)));
    }
    finish_certificate(v, rho, std::move(c), tol.membership_tol);
  }
  return v;
}

SeparabilityVerdict cone_membership(const Mat& rho, const SeparableSetDescription& desc, const ToleranceConfig& tol) {
  const Mat& b = desc.subspace;
  const Mat r = b.adjoint() * rho * b;
  const Vec a = b.adjoint() * (desc.apex / desc.apex.norm());
  const Mat c = b.adjoint() * desc.balls.at(0).span;
  const Mat p = c * c.adjoint();
  const Mat aa = a * a.adjoint();
  auto objective = [&](double t) {
    const Mat rp = r - t * aa;
    const double ball = min_hermitian_eigenvalue(hermitian_part(c.adjoint() * rp * c));
    const double off = (rp - p * rp * p).norm();
    return std::min(ball, -off);
  };
  double best = golden_max(objective, 0.0, 1.0, 1e-13);
  // the apex weight is pinned by the direction orthogonal to the ball
  if (r.rows() == 3) {
    Eigen::JacobiSVD<Mat> svd(c.adjoint(), Eigen::ComputeFullV);
    const Vec n = svd.matrixV().col(2);
    const double overlap = std::norm(a.dot(n));
    if (overlap > 1e-14) {
      const double exact = std::clamp((n.adjoint() * r * n)(0, 0).real() / overlap, 0.0, 1.0);
      if (objective(exact) > objective(best)) best = exact;
    }
  }
  SeparabilityVerdict v;
  v.method = VerdictMethod::ClassMembership;
  const double j = objective(best);
  v.residual = std::max(0.0, -j);
  v.separable = j >= -tol.membership_tol;
  if (v.separable) {
    const Mat rp = r - best * aa;
    Certificate cert;
    cert.weights = {best, 1.0 - best};
    cert.components = {projector(desc.apex), as_state(b * (p * rp * p) * b.adjoint())};
    finish_certificate(v, rho, std::move(cert), tol.membership_tol);
  }
  return v;
}

// Unit vector of span(cols) orthogonal to c.
Vec orth_in_span(const Mat& cols, const Vec& c) {
  Vec best;
  double nb = -1;
  for (Index j = 0; j < cols.cols(); ++j) {
    const Vec w = cols.col(j) - c * c.dot(cols.col(j));
    if (w.norm() > nb) {
      nb = w.norm();
      best = w;
    }
  }
  return best / nb;
}

SeparabilityVerdict two_balls_membership(const Mat& rho, const SeparableSetDescription& desc,
                                         const ToleranceConfig& tol) {
  const Mat& b = desc.subspace;
  const Mat r = b.adjoint() * rho * b;
  const Vec c = (b.adjoint() * desc.intersection).normalized();
  const Vec a = orth_in_span(b.adjoint() * desc.balls.at(0).span, c);
  const Vec e = orth_in_span(b.adjoint() * desc.balls.at(1).span, c);
  Mat t(3, 3);
  t << a, c, e;
  const Mat tinv = t.inverse();
  const Mat rr = hermitian_part(tinv * r * tinv.adjoint());
  // in the basis (a, c, e) the first ball lives on {0,1} and the second on {1,2}
  const double cross_term = std::abs(rr(0, 2));
  auto blocks = [&](double s, Mat& x1, Mat& x2) {
    x1 = Mat::Zero(3, 3);
    x2 = Mat::Zero(3, 3);
    x1(0, 0) = rr(0, 0);
    x1(0, 1) = rr(0, 1);
    x1(1, 0) = rr(1, 0);
    x1(1, 1) = s;
    x2(1, 1) = rr(1, 1) - s;
    x2(1, 2) = rr(1, 2);
    x2(2, 1) = rr(2, 1);
    x2(2, 2) = rr(2, 2);
  };
  auto objective = [&](double s) {
    Mat x1, x2;
    blocks(s, x1, x2);
    return std::min(min_hermitian_eigenvalue(x1.topLeftCorner(2, 2)),
                    min_hermitian_eigenvalue(x2.bottomRightCorner(2, 2)));
  };
  const double hi = std::max(0.0, rr(1, 1).real());
  double s = golden_max(objective, 0.0, hi, 1e-14 * std::max(1.0, hi));
  // Schur-complement end points of the feasible split
  const double r00 = rr(0, 0).real(), r22 = rr(2, 2).real();
  if (r00 > 1e-14 && r22 > 1e-14) {
    const double lo = std::norm(rr(0, 1)) / r00;
    const double up = rr(1, 1).real() - std::norm(rr(1, 2)) / r22;
    const double mid = std::clamp(0.5 * (lo + up), 0.0, hi);
    if (objective(mid) > objective(s)) s = mid;
  }
  const double j = objective(s);
  SeparabilityVerdict v;
  v.method = VerdictMethod::ClassMembership;
  v.residual = std::max(cross_term, std::max(0.0, -j));
  v.separable = cross_term <= tol.membership_tol && j >= -tol.membership_tol;
  if (v.separable) {
    Mat x1, x2;
    blocks(s, x1, x2);
    const Mat s1 = b * t * x1 * t.adjoint() * b.adjoint();
    const Mat s2 = b * t * x2 * t.adjoint() * b.adjoint();
    Certificate cert;
    cert.weights = {s1.trace().real(), s2.trace().real()};
    cert.components = {as_state(s1), as_state(s2)};
    finish_certificate(v, rho, std::move(cert), tol.membership_tol);
  }
  return v;
}

}  // namespace

double small_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& x) {
  const int n = static_cast<int>(a.cols());
  x = Eigen::VectorXd::Zero(n);
  double best = b.norm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    Eigen::MatrixXd sub(a.rows(), static_cast<Index>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(idx[k]);
    const Eigen::VectorXd w = sub.colPivHouseholderQr().solve(b);
    if ((w.array() < 0).any()) continue;
    const double res = (sub * w - b).norm();
    if (res < best) {
      best = res;
      x.setZero();
      for (size_t k = 0; k < idx.size(); ++k) x[idx[k]] = w[static_cast<Index>(k)];
    }
  }
  return best;
}

Mat Certificate::reconstruct() const {
  if (components.empty()) return Mat();
  Mat out = Mat::Zero(components.front().rows(), components.front().cols());
  for (size_t i = 0; i < weights.size(); ++i) out += weights[i] * components[i];
  return out;
}

std::string to_string(VerdictMethod m) { return m == VerdictMethod::PPT ? "PPT" : "ClassMembership"; }

std::vector<std::vector<int>> transposed_sides(int groups) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << (groups - 1)); ++mask) {
    std::vector<int> side;
    for (int g = 1; g < groups; ++g)
      if (mask & (1 << (g - 1))) side.push_back(g);
    out.push_back(side);
  }
  return out;
}

PptResult is_ppt(const DensityMatrix& rho, const Partition& cut, const ToleranceConfig& tol) {
  cut.validate(rho.profile());
  if (!cut.is_bipartite()) throw InputError("PPT test needs a two-group cut");
  const double lmin = min_hermitian_eigenvalue(partial_transpose(rho.matrix(), rho.profile(), cut.groups[1]));
  return {lmin >= -tol.psd_tol, lmin};
}

PptResult is_ppt_all_cuts(const DensityMatrix& rho, const Partition& partition, const ToleranceConfig& tol) {
  partition.validate(rho.profile());
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& side : transposed_sides(partition.size())) {
    std::vector<int> subs;
    for (int g : side) subs.insert(subs.end(), partition.groups[static_cast<size_t>(g)].begin(),
                                   partition.groups[static_cast<size_t>(g)].end());
    lmin = std::min(lmin, min_hermitian_eigenvalue(partial_transpose(rho.matrix(), rho.profile(), subs)));
  }
  return {lmin >= -tol.psd_tol, lmin};
}

SeparabilityVerdict membership(const DensityMatrix& rho, const SeparableSetDescription& desc,
                               const ToleranceConfig& tol) {
  if (!(rho.profile() == desc.profile)) throw InputError("state and description live on different spaces");
  const Mat& m = rho.matrix();
  const double outside = support_residual(m, desc.subspace);
  if (outside > tol.membership_tol)
    throw SupportMismatch("support of the state is not contained in the subspace (residual " +
                          std::to_string(outside) + ")");
  switch (desc.kind) {
    case DescriptionKind::NoSeparable: {
      SeparabilityVerdict v;
      v.method = VerdictMethod::ClassMembership;
      v.residual = 1.0;
      return v;
    }
    case DescriptionKind::SinglePoint:
    case DescriptionKind::Segment:
    case DescriptionKind::Triangle: return vertex_membership(m, desc.subspace, desc.vertices, tol);
    case DescriptionKind::AllStates: return all_states_membership(m, desc.all_states_basis, tol);
    case DescriptionKind::Cone: return cone_membership(m, desc, tol);
    case DescriptionKind::TwoBalls: return two_balls_membership(m, desc, tol);
    case DescriptionKind::LCurve: {
      const PptResult p = is_ppt(rho, desc.partition, tol);
      SeparabilityVerdict v;
      v.method = VerdictMethod::PPT;
      v.separable = p.ppt;
      v.min_pt_eigenvalue = p.min_eigenvalue;
      v.residual = std::max(0.0, -p.min_eigenvalue);
      return v;
    }
  }
  throw InputError("unknown description kind");
}

SeparabilityVerdict is_separable_rank3(const DensityMatrix& rho, const Partition& partition,
                                       const ToleranceConfig& tol, std::uint64_t seed) {
  tol.validate();
  partition.validate(rho.profile());
  const SubspaceBasis support = support_basis(rho, tol);
  if (partition.is_bipartite()) {
    const PptResult p = is_ppt(rho, partition, tol);
    SeparabilityVerdict v;
    v.method = VerdictMethod::PPT;
    v.separable = p.ppt;
    v.min_pt_eigenvalue = p.min_eigenvalue;
    if (v.separable) {
      try {
        const auto result = classify_bipartite(support, partition, tol, seed);
        const auto m = membership(rho, result.description, tol);
        if (m.separable) v.certificate = m.certificate;
      } catch (const Error&) {
        // the verdict stands without a certificate
      }
    }
    return v;
  }
  // regroup so that each partition group is one subsystem
  const auto order = partition.order();
  const DimensionProfile grouped = partition.group_profile(rho.profile());
  const Mat permuted = permute_subsystems(rho.matrix(), rho.profile(), order);
  const DensityMatrix r2(permuted, grouped);
  const Partition finest = Partition::finest(grouped.parties());
  const PptResult p = is_ppt_all_cuts(r2, finest, tol);
  const SubspaceBasis supp2 = support_basis(r2, tol);
  const MultiClassResult cls = classify_multipartite_subspace(supp2, tol, seed);
  SeparabilityVerdict m = membership(r2, cls.description, tol);
  SeparabilityVerdict v;
  v.method = VerdictMethod::ClassMembership;
  v.min_pt_eigenvalue = p.min_eigenvalue;
  v.residual = m.residual;
  v.separable = p.ppt && m.separable;
  if (v.separable && m.certificate) {
    Certificate back;
    back.weights = m.certificate->weights;
    const auto inv = inverse_permutation(order);
    for (const auto& comp : m.certificate->components)
      back.components.push_back(permute_subsystems(comp, rho.profile().select(order), inv));
    v.certificate = std::move(back);
  }
  return v;
}

}  // namespace subsep
