#include "subsep/product_finder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unsupported/Eigen/Polynomials>

namespace subsep {

namespace {

using Poly = std::vector<Complex>;  // ascending powers

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Complex(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Complex(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

double poly_max(const Poly& p) {
  double m = 0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  return m;
}

// Roots of a polynomial after dropping negligible leading coefficients.
std::vector<Complex> poly_roots(Poly p, double rel) {
  const double scale = poly_max(p);
  if (scale == 0) return {};
  while (p.size() > 1 && std::abs(p.back()) <= rel * scale) p.pop_back();
  if (p.size() < 2) return {};
  if (p.size() == 2) return {-p[0] / p[1]};
  if (p.size() == 3) {
    // stable quadratic formula
    const Complex a = p[2], b = p[1], c = p[0];
    Complex disc = std::sqrt(b * b - 4.0 * a * c);
    if (std::real(std::conj(b) * disc) < 0) disc = -disc;
    const Complex q = -0.5 * (b + disc);
    if (std::abs(q) == 0) return {Complex(0), Complex(0)};
    return {q / a, c / q};
  }
  Eigen::VectorXcd coeffs(static_cast<Index>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) coeffs[static_cast<Index>(i)] = p[i];
  Eigen::PolynomialSolver<Complex, Eigen::Dynamic> solver(coeffs);
  const auto& r = solver.roots();
  return std::vector<Complex>(r.data(), r.data() + r.size());
}

Complex qform(const Mat& q, const Vec& c) { return (c.transpose() * q * c)(0, 0); }

Mat random_combination(const QuadricSystem& qs, Rng& rng) {
  Mat q = Mat::Zero(qs.nvars, qs.nvars);
  for (const auto& qk : qs.quadrics) q += complex_gaussian(rng) * qk;
  return q;
}

Vec cross(const Vec& a, const Vec& b) {
  Vec out(3);
  out << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
  return out;
}

// Gauss-Newton on all quadrics over the affine chart c = u0 + U1 y.
Vec polish(const QuadricSystem& qs, const Vec& u0, const Mat& u1, Vec y) {
  const Index m = static_cast<Index>(qs.quadrics.size());
  for (int it = 0; it < 12; ++it) {
    const Vec c = u0 + u1 * y;
    Vec r(m);
    Mat jac(m, y.size());
    for (Index k = 0; k < m; ++k) {
      const Mat& q = qs.quadrics[static_cast<size_t>(k)];
      r[k] = qform(q, c);
      jac.row(k) = 2.0 * (q * c).transpose() * u1;
    }
    if (r.norm() <= 1e-16 * std::max(1.0, c.squaredNorm())) break;
    const Vec step = jac.completeOrthogonalDecomposition().solve(-r);
    y += step;
    if (step.norm() <= 1e-16 * std::max(1.0, y.norm())) break;
  }
  return u0 + u1 * y;
}

void add_clustered(std::vector<Vec>& pts, std::vector<double>& res, const Vec& c, double r, double cluster) {
  for (size_t i = 0; i < pts.size(); ++i) {
    if (chordal_distance(pts[i], c) <= cluster) {
      if (r < res[i]) {
        pts[i] = c;
        res[i] = r;
      }
      return;
    }
  }
  pts.push_back(c);
  res.push_back(r);
}

// Sort points into a reproducible order (by canonical coordinates).
void sort_points(std::vector<Vec>& pts) {
  for (auto& p : pts) p = canonical_point(p);
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    for (Index i = 0; i < a.size(); ++i) {
      const double da = std::abs(a[i]), db = std::abs(b[i]);
      if (std::abs(da - db) > 1e-9) return da > db;
    }
    for (Index i = 0; i < a.size(); ++i) {
      const double pa = std::arg(a[i]), pb = std::arg(b[i]);
      if (std::abs(pa - pb) > 1e-9) return pa < pb;
    }
    return false;
  });
}

// Least-squares g with sym(l g^T) = q; returns residual norm through `resid`.
Vec factor_off_line(const Vec& l, const Mat& q, double& resid) {
  // unknown g (3 complex); equations on the 6 upper-triangular entries
  Mat a = Mat::Zero(6, 3);
  Vec b(6);
  int row = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      a(row, j) += 0.5 * l[i];
      a(row, i) += 0.5 * l[j];
      b[row] = q(i, j);
      ++row;
    }
  const Vec g = a.completeOrthogonalDecomposition().solve(b);
  resid = (a * g - b).norm();
  return g;
}

// Least-squares l with sym(l g_k^T) = Q_k for all k.
Vec fit_line_normal(const std::vector<Vec>& gs, const std::vector<Mat>& qs) {
  const Index m = static_cast<Index>(gs.size());
  Mat a = Mat::Zero(6 * m, 3);
  Vec b(6 * m);
  for (Index k = 0; k < m; ++k) {
    int row = 0;
    const Vec& g = gs[static_cast<size_t>(k)];
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        a(6 * k + row, i) += 0.5 * g[j];
        a(6 * k + row, j) += 0.5 * g[i];
        b[6 * k + row] = qs[static_cast<size_t>(k)](i, j);
        ++row;
      }
  }
  return a.completeOrthogonalDecomposition().solve(b);
}

}  // namespace

Vec canonical_point(const Vec& c) {
  const double n = c.norm();
  if (!(n > 0)) throw InputError("zero projective point");
  Vec v = c / n;
  double big = 0;
  for (Index i = 0; i < v.size(); ++i) big = std::max(big, std::abs(v[i]));
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8 * big) {
      v *= std::abs(v[i]) / v[i];
      break;
    }
  }
  return v;
}

double QuadricSystem::max_residual(const Vec& c) const {
  const Vec u = c / c.norm();
  double worst = 0;
  for (const auto& q : quadrics) worst = std::max(worst, std::abs(qform(q, u)));
  return worst;
}

std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Empty: return "Empty";
    case ComponentKind::IsolatedPoints: return "IsolatedPoints";
    case ComponentKind::Line: return "Line";
    case ComponentKind::TwoLines: return "TwoLines";
    case ComponentKind::Conic: return "Conic";
    case ComponentKind::FullPlane: return "FullPlane";
  }
  return "?";
}

QuadricSystem minor_system(const SubspaceBasis& basis, const Partition& partition, const ToleranceConfig& tol) {
  const int n = basis.dim();
  if (n < 2) throw InputError("minor system needs a subspace of dimension 2 or 3");
  const auto cuts = pencil_cuts(basis, partition);
  const double rt2 = std::sqrt(2.0);
  const int nsym = n * (n + 1) / 2;
  std::vector<Vec> rows;
  for (const auto& cut : cuts) {
    const Index da = cut.slices.front().rows(), db = cut.slices.front().cols();
    for (Index r = 0; r < da; ++r)
      for (Index r2 = r + 1; r2 < da; ++r2)
        for (Index s = 0; s < db; ++s)
          for (Index s2 = s + 1; s2 < db; ++s2) {
            Mat q(n, n);
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                const Mat& mi = cut.slices[static_cast<size_t>(i)];
                const Mat& mj = cut.slices[static_cast<size_t>(j)];
                q(i, j) = mi(r, s) * mj(r2, s2) - mi(r, s2) * mj(r2, s);
              }
            Vec row(nsym);
            int k = 0;
            for (int i = 0; i < n; ++i)
              for (int j = i; j < n; ++j) row[k++] = i == j ? q(i, i) : 0.5 * rt2 * (q(i, j) + q(j, i));
            rows.push_back(row);
          }
  }
  QuadricSystem qs;
  qs.nvars = n;
  if (rows.empty()) return qs;
  Mat v(static_cast<Index>(rows.size()), nsym);
  for (size_t i = 0; i < rows.size(); ++i) v.row(static_cast<Index>(i)) = rows[i].transpose();
  Eigen::JacobiSVD<Mat> svd(v, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double thr = tol.rank_rel_tol * std::max(s.size() ? s[0] : 0.0, 1.0);
  for (Index k = 0; k < s.size(); ++k) {
    if (s[k] <= thr) break;
    const Vec w = svd.matrixV().col(k).conjugate();
    Mat q(n, n);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (i == j) {
          q(i, i) = w[idx];
        } else {
          q(i, j) = w[idx] / rt2;
          q(j, i) = q(i, j);
        }
        ++idx;
      }
    qs.quadrics.push_back(q);
  }
  return qs;
}

IsolatedResult solve_isolated(const QuadricSystem& qs, Rng& rng, const ToleranceConfig& tol,
                              const FinderOptions& opt) {
  IsolatedResult out;
  if (qs.quadrics.empty()) {
    out.isolated = false;
    return out;
  }
  std::vector<Vec> pts;
  std::vector<double> res;
  auto accept = [&](const Vec& c) {
    const double r = qs.max_residual(c);
    if (r <= tol.membership_tol) add_clustered(pts, res, c / c.norm(), r, tol.root_cluster_tol);
  };

  if (qs.nvars == 2) {
    for (int p = 0; p < opt.quadric_pairs; ++p) {
      const Mat u = random_unitary(rng, 2);
      const Mat q = u.transpose() * random_combination(qs, rng) * u;
      const auto roots = poly_roots({q(0, 0), 2.0 * q(0, 1), q(1, 1)}, 1e-14);
      for (const auto& t : roots) {
        Vec y(1);
        y << t;
        accept(polish(qs, u.col(0), u.col(1), y));
      }
    }
    sort_points(pts);
    out.points = pts;
    return out;
  }

  if (qs.quadrics.size() < 2) {
    out.isolated = false;
    return out;
  }

  int vanished = 0;
  for (int p = 0; p < opt.quadric_pairs; ++p) {
    const Mat u = random_unitary(rng, 3);
    const Mat qa = u.transpose() * random_combination(qs, rng) * u;
    const Mat qb = u.transpose() * random_combination(qs, rng) * u;
    // q(1, y1, y2) = a2 y2^2 + a1(y1) y2 + a0(y1)
    const Poly a2{qa(2, 2)}, a1{2.0 * qa(0, 2), 2.0 * qa(1, 2)}, a0{qa(0, 0), 2.0 * qa(0, 1), qa(1, 1)};
    const Poly b2{qb(2, 2)}, b1{2.0 * qb(0, 2), 2.0 * qb(1, 2)}, b0{qb(0, 0), 2.0 * qb(0, 1), qb(1, 1)};
    const Poly t1 = poly_sub(poly_mul(a2, b0), poly_mul(a0, b2));
    const Poly t2 = poly_sub(poly_mul(a2, b1), poly_mul(a1, b2));
    const Poly t3 = poly_sub(poly_mul(a1, b0), poly_mul(a0, b1));
    const Poly resultant = poly_sub(poly_mul(t1, t1), poly_mul(t2, t3));
    const double scale = std::pow(qa.norm() * qb.norm(), 2);
    if (poly_max(resultant) <= tol.rank_rel_tol * scale) {
      ++vanished;
      continue;
    }
    const Mat u1 = u.rightCols(2);
    for (const auto& y1 : poly_roots(resultant, 1e-12)) {
      for (const Mat* q : {&qa, &qb}) {
        const Complex c2 = (*q)(2, 2);
        const Complex c1 = 2.0 * ((*q)(0, 2) + (*q)(1, 2) * y1);
        const Complex c0 = (*q)(0, 0) + 2.0 * (*q)(0, 1) * y1 + (*q)(1, 1) * y1 * y1;
        for (const auto& y2 : poly_roots({c0, c1, c2}, 1e-12)) {
          Vec y(2);
          y << y1, y2;
          accept(polish(qs, u.col(0), u1, y));
        }
      }
    }
  }
  out.isolated = 2 * vanished < opt.quadric_pairs;
  sort_points(pts);
  out.points = pts;
  return out;
}

ComponentReport detect_positive_dimensional(const QuadricSystem& qs, Rng& rng, const ToleranceConfig& tol,
                                            const FinderOptions& opt) {
  ComponentReport rep;
  if (qs.quadrics.empty()) {
    rep.kind = ComponentKind::FullPlane;
    return rep;
  }
  if (qs.nvars != 3) return rep;

  // probe random lines p0 + t p1
  const double probe_tol = 1e-6;
  int witnessing = 0;
  std::vector<Vec> witnesses;
  for (int j = 0; j < opt.probe_lines; ++j) {
    const Vec p0 = random_gaussian_vector(rng, 3);
    const Vec p1 = random_gaussian_vector(rng, 3);
    size_t dom = 0;
    double dom_norm = -1;
    std::vector<Poly> restricted;
    for (size_t k = 0; k < qs.quadrics.size(); ++k) {
      const Mat& q = qs.quadrics[k];
      Poly r{qform(q, p0), 2.0 * (p0.transpose() * q * p1)(0, 0), qform(q, p1)};
      const double nrm = poly_max(r);
      if (nrm > dom_norm) {
        dom_norm = nrm;
        dom = k;
      }
      restricted.push_back(r);
    }
    bool hit = false;
    for (const auto& t : poly_roots(restricted[dom], 1e-14)) {
      const Vec x = p0 + t * p1;
      if (qs.max_residual(x) <= probe_tol) {
        hit = true;
        witnesses.push_back(canonical_point(x));
      }
    }
    if (hit) ++witnessing;
  }
  if (witnessing == 0) return rep;
  if (witnessing != opt.probe_lines)
    throw InconsistentProbes("line probes disagree on a curve component (" + std::to_string(witnessing) + " of " +
                             std::to_string(opt.probe_lines) + " witnessed)");

  const double geo = tol.root_cluster_tol;
  if (qs.quadrics.size() == 1) {
    const Mat& q = qs.quadrics[0];
    Eigen::JacobiSVD<Mat> svd(q, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Index i = 0; i < 3; ++i)
      if (s[i] > geo * s[0]) ++rank;
    rep.witnesses = witnesses;
    if (rank == 3) {
      rep.kind = ComponentKind::Conic;
      rep.conic = q;
      return rep;
    }
    if (rank == 2) {
      rep.kind = ComponentKind::TwoLines;
      rep.vertex = canonical_point(svd.matrixV().col(2));
      // group witnesses by the line through the vertex they lie on
      std::vector<Vec> normals, reps;
      std::vector<double> dist;
      for (const auto& w : witnesses) {
        const double d = chordal_distance(w, rep.vertex);
        if (d < 1e-3) continue;
        const Vec nrm = cross(rep.vertex, w);
        bool placed = false;
        for (size_t i = 0; i < normals.size(); ++i) {
          if (chordal_distance(normals[i], nrm) < 1e-4) {
            if (d > dist[i]) {
              reps[i] = w;
              dist[i] = d;
            }
            placed = true;
            break;
          }
        }
        if (!placed) {
          normals.push_back(nrm);
          reps.push_back(w);
          dist.push_back(d);
        }
      }
      if (normals.size() != 2)
        throw InconsistentProbes("rank-2 quadric did not split into two lines (" + std::to_string(normals.size()) +
                                 " found)");
      rep.line_points = reps;
      sort_points(rep.line_points);
      return rep;
    }
    rep.kind = ComponentKind::Line;
    rep.line = {canonical_point(svd.matrixV().col(1)), canonical_point(svd.matrixV().col(2))};
    return rep;
  }

  // several quadrics share a line: fit it, then factor each quadric off it
  Mat w(3, static_cast<Index>(witnesses.size()));
  for (size_t i = 0; i < witnesses.size(); ++i) w.col(static_cast<Index>(i)) = witnesses[i];
  Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  if (s[2] > 1e-5 * s[0]) throw InconsistentProbes("curve witnesses are not collinear");
  Vec l = svd.matrixU().col(2).conjugate();
  std::vector<Vec> gs;
  for (int iter = 0; iter < 4; ++iter) {
    gs.clear();
    for (const auto& q : qs.quadrics) {
      double r = 0;
      gs.push_back(factor_off_line(l, q, r));
    }
    l = fit_line_normal(gs, qs.quadrics);
    l /= l.norm();
  }
  double worst = 0;
  gs.clear();
  for (const auto& q : qs.quadrics) {
    double r = 0;
    gs.push_back(factor_off_line(l, q, r));
    worst = std::max(worst, r);
  }
  if (worst > 1e-6) throw InconsistentProbes("quadrics do not share the fitted line");
  // line points: orthonormal complement of conj(l)
  Eigen::JacobiSVD<Mat> lsvd(Mat(l.transpose()), Eigen::ComputeFullV);
  rep.kind = ComponentKind::Line;
  rep.line = {canonical_point(lsvd.matrixV().col(1)), canonical_point(lsvd.matrixV().col(2))};
  rep.witnesses = witnesses;

  Mat g(static_cast<Index>(gs.size()), 3);
  for (size_t k = 0; k < gs.size(); ++k) g.row(static_cast<Index>(k)) = gs[k].transpose();
  Eigen::JacobiSVD<Mat> gsvd(g, Eigen::ComputeFullV);
  const auto& gsv = gsvd.singularValues();
  const Index grank = (gsv.array() > geo * gsv[0]).count();
  if (grank < 2) throw InconsistentProbes("quadric factors are degenerate");
  if (grank == 2) {
    const Vec x = canonical_point(gsvd.matrixV().col(2));
    const double on_line = std::abs((l.transpose() * x)(0, 0));
    if (on_line > 1e-6 && qs.max_residual(x) <= tol.membership_tol) rep.extra_isolated.push_back(x);
  }
  return rep;
}

Vec ambient_vector(const SubspaceBasis& basis, const Vec& c) {
  const Vec v = basis.matrix() * c;
  return v / v.norm();
}

std::vector<StateVector> factorize_product(const Vec& v, const DimensionProfile& profile, const Partition& partition) {
  std::vector<StateVector> out;
  for (const auto& g : partition.groups) {
    const Mat m = reshape_across(v, profile, g);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    out.emplace_back(canonical_phase(svd.matrixU().col(0)), profile.select(g));
  }
  return out;
}

Vec assemble_product(const std::vector<Vec>& factors, const DimensionProfile& profile, const Partition& partition) {
  if (factors.size() != partition.groups.size()) throw InputError("one factor per partition group expected");
  Vec w = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) w = kron(w, factors[i]);
  const auto order = partition.order();
  return permute_subsystems(w, profile.select(order), inverse_permutation(order));
}

namespace {

double subset_ratio(const std::vector<Vec>& vectors, const std::vector<int>& idx) {
  Mat m(vectors.front().size(), static_cast<Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) m.col(static_cast<Index>(i)) = vectors[static_cast<size_t>(idx[i])].normalized();
  const auto s = singular_values(m);
  return s[0] > 0 ? s[s.size() - 1] / s[0] : 0.0;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

double general_position_margin(const std::vector<Vec>& vectors) {
  const int d = numeric_rank(columns_of(vectors), 1e-6);
  const int k = std::min(d, 3);
  if (k <= 1) return 1.0;
  double margin = 1.0;
  for (const auto& s : subsets(static_cast<int>(vectors.size()), k)) margin = std::min(margin, subset_ratio(vectors, s));
  return margin;
}

bool general_position(const std::vector<Vec>& vectors, double tol) {
  const int d = numeric_rank(columns_of(vectors), tol);
  const int k = std::min(d, 3);
  if (k <= 1) return true;
  for (const auto& s : subsets(static_cast<int>(vectors.size()), k))
    if (subset_ratio(vectors, s) <= tol) return false;
  return true;
}

ProductStateSet find_product_states(const SubspaceBasis& basis, const Partition& partition,
                                    const ToleranceConfig& tol, std::uint64_t seed, const FinderOptions& opt) {
  tol.validate();
  partition.validate(basis.profile());
  const auto& profile = basis.profile();
  const int n = basis.dim();
  const double geo = tol.root_cluster_tol;

  ProductStateSet out;
  out.partition = partition;
  ComponentReport& rep = out.report;

  if (n == 1) {
    Vec one = Vec::Ones(1);
    if (rank_one_defect(pencil_cuts(basis, partition), one) <= tol.membership_tol) {
      rep.kind = ComponentKind::IsolatedPoints;
      rep.points = {one};
    }
  } else {
    const QuadricSystem qs = minor_system(basis, partition, tol);
    Rng iso_rng = make_rng(seed, 1);
    Rng probe_rng = make_rng(seed, 2);
    const IsolatedResult iso = solve_isolated(qs, iso_rng, tol, opt);
    ComponentReport curve = detect_positive_dimensional(qs, probe_rng, tol, opt);
    if (curve.kind == ComponentKind::FullPlane) {
      rep = curve;
    } else if (n == 2) {
      rep.kind = iso.points.empty() ? ComponentKind::Empty : ComponentKind::IsolatedPoints;
      rep.points = iso.points;
    } else {
      const bool has_curve = curve.kind != ComponentKind::Empty;
      if (has_curve && iso.isolated)
        throw InconsistentProbes("line probes found a curve but the resultants did not vanish");
      if (!has_curve && !iso.isolated)
        throw InconsistentProbes("resultants vanished but no line probe met a curve");
      if (has_curve) {
        rep = curve;
      } else {
        rep.kind = iso.points.empty() ? ComponentKind::Empty : ComponentKind::IsolatedPoints;
        rep.points = iso.points;
      }
    }
    if (rep.kind == ComponentKind::IsolatedPoints && static_cast<int>(rep.points.size()) > n)
      throw InconsistentProbes("found " + std::to_string(rep.points.size()) + " isolated product states in a " +
                               std::to_string(n) + "-dimensional subspace");
  }

  // spanning coefficient vectors
  std::vector<Vec> cand;
  switch (rep.kind) {
    case ComponentKind::Empty: break;
    case ComponentKind::IsolatedPoints: cand = rep.points; break;
    case ComponentKind::Line:
      cand = rep.line;
      cand.insert(cand.end(), rep.extra_isolated.begin(), rep.extra_isolated.end());
      break;
    case ComponentKind::TwoLines:
      cand = {rep.vertex};
      cand.insert(cand.end(), rep.line_points.begin(), rep.line_points.end());
      break;
    case ComponentKind::FullPlane:
      for (int i = 0; i < n; ++i) cand.push_back(Vec::Unit(n, i));
      break;
    case ComponentKind::Conic: {
      const auto& w = rep.witnesses;
      double best = -1;
      std::array<size_t, 3> pick{0, 1, 2};
      for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
          for (size_t k = j + 1; k < w.size(); ++k) {
            Mat m(3, 3);
            m << w[i], w[j], w[k];
            const double d = std::abs(m.determinant());
            if (d > best) {
              best = d;
              pick = {i, j, k};
            }
          }
      if (w.size() < 3) throw InconsistentProbes("too few conic witnesses");
      cand = {w[pick[0]], w[pick[1]], w[pick[2]]};
      break;
    }
  }
  for (const auto& c : cand) {
    std::vector<Vec> trial = out.spanning_coeffs;
    trial.push_back(c);
    if (numeric_rank(columns_of(trial), geo) == static_cast<int>(trial.size())) out.spanning_coeffs.push_back(c);
  }
  out.dim_S_sep = static_cast<int>(out.spanning_coeffs.size());

  const auto cuts = pencil_cuts(basis, partition);
  for (const auto& c : out.spanning_coeffs) {
    if (rank_one_defect(cuts, c) > tol.membership_tol)
      throw InconsistentProbes("a reported product state fails the Schmidt-rank test");
    const Vec v = ambient_vector(basis, c);
    out.spanning_products.emplace_back(v, profile);
    out.factors.push_back(factorize_product(v, profile, partition));
  }

  const int ngroups = partition.size();
  out.local_dims.assign(static_cast<size_t>(ngroups), 0);
  out.general_position.assign(static_cast<size_t>(ngroups), false);
  out.general_position_margin.assign(static_cast<size_t>(ngroups), 0.0);
  for (int g = 0; g < ngroups; ++g) {
    std::vector<Vec> fam;
    for (const auto& f : out.factors) fam.push_back(f[static_cast<size_t>(g)].amplitudes());
    if (fam.empty()) continue;
    out.local_dims[static_cast<size_t>(g)] = numeric_rank(columns_of(fam), geo);
    if (out.dim_S_sep == 3) {
      out.general_position[static_cast<size_t>(g)] = general_position(fam, geo);
      const double margin = general_position_margin(fam);
      out.general_position_margin[static_cast<size_t>(g)] = margin;
      if (margin > geo && margin <= 100 * geo)
        out.warnings.push_back("group " + std::to_string(g) + " factors are close to a class boundary (margin " +
                               std::to_string(margin) + ")");
    }
  }
  return out;
}

}  // namespace subsep
