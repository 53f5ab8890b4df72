#include "subsep/oracle.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <numeric>

#include "subsep/separability.hpp"

namespace subsep {

namespace {

Mat projector(const Vec& v) {
  const Vec u = v / v.norm();
  return u * u.adjoint();
}

double line_distance(const Vec& c, const Vec& p, const Vec& q) {
  const Mat o = orthonormalize({p, q}, 1e-12);
  const Vec u = c / c.norm();
  return (u - o * (o.adjoint() * u)).norm();
}

double conic_distance(const Vec& c, const Mat& q) {
  const Vec u = c / c.norm();
  return std::abs((u.transpose() * q * u)(0, 0)) / q.norm();
}

double nearest(const Vec& c, const std::vector<Vec>& pts) {
  double best = 2.0;
  for (const auto& p : pts) best = std::min(best, chordal_distance(c, p));
  return best;
}

}  // namespace

Vec refine_zero(const std::vector<PencilCut>& cuts, const Vec& start, double& defect) {
  Vec c = start / start.norm();
  double best = rank_one_defect(cuts, c);
  const Index n = c.size();
  const Complex dirs[] = {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)};
  auto eval = [&](Vec t) {
    t /= t.norm();
    return std::make_pair(rank_one_defect(cuts, t), t);
  };

  // steepest descent first: the defect grows about linearly with the distance
  // to the zero set, so f/|grad f| estimates that distance and the descent
  // heads for the nearest zero rather than sliding along a valley
  for (int it = 0; it < 300 && best > 1e-11; ++it) {
    Vec g(n);
    const double h = 1e-7;
    for (Index k = 0; k < n; ++k) {
      Complex gk;
      for (int part = 0; part < 2; ++part) {
        const Complex d = part == 0 ? Complex(h, 0) : Complex(0, h);
        Vec tp = c, tm = c;
        tp[k] += d;
        tm[k] -= d;
        const double fd = (eval(tp).first - eval(tm).first) / (2 * h);
        gk += part == 0 ? Complex(fd, 0) : Complex(0, fd);
      }
      g[k] = gk;
    }
    const double gn = g.norm();
    if (gn < 1e-14) break;
    double t = std::min(best / gn, 0.2) / gn;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
      auto [f, x] = eval(c - t * g);
      if (f < best) {
        best = f;
        c = x;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  double step = std::clamp(best, 1e-10, 0.05);
  int evaluations = 0;
  while (step > 1e-13 && best > 0.0 && evaluations < 200000) {
    bool moved = false;
    for (Index k = 0; k < n; ++k)
      for (const Complex dir : dirs) {
        Vec t = c;
        t[k] += step * dir;
        auto [f, x] = eval(t);
        ++evaluations;
        if (f < best) {
          best = f;
          c = x;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  defect = best;
  return canonical_point(c);
}

std::vector<Vec> brute_force_product_search(const SubspaceBasis& basis, const Partition& partition,
                                            const OracleOptions& opt) {
  if (basis.dim() < 2 || basis.dim() > 3) throw InputError("oracle search needs a subspace of dimension 2 or 3");
  if (opt.grid_steps < 16) throw InputError("grid_steps must be at least 16");
  const auto cuts = pencil_cuts(basis, partition);
  ProjectiveGrid grid;
  grid.nvars = basis.dim();
  grid.steps = grid.nvars == 2 ? 4 * opt.grid_steps : opt.grid_steps;
  const auto values = defect_grid_parallel(cuts, grid);

  std::vector<Index> minima;
  for (Index i = 0; i < grid.size(); ++i) {
    bool local = true;
    for (Index j : grid.neighbours(i))
      if (values[static_cast<size_t>(j)] < values[static_cast<size_t>(i)]) {
        local = false;
        break;
      }
    if (local) minima.push_back(i);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](Index a, Index b) {
    return values[static_cast<size_t>(a)] < values[static_cast<size_t>(b)];
  });
  // local minima first, then the remaining nodes by value; a node is refined
  // only when it is away from every earlier start and every zero found so far,
  // so a curve that already holds many zeros does not absorb all the starts
  std::vector<Index> rest(static_cast<size_t>(grid.size()));
  std::iota(rest.begin(), rest.end(), Index{0});
  std::stable_sort(rest.begin(), rest.end(), [&](Index a, Index b) {
    return values[static_cast<size_t>(a)] < values[static_cast<size_t>(b)];
  });
  std::vector<Vec> visited, out;
  int refinements = 0;
  for (const auto* list : {&minima, &rest})
    for (Index i : *list) {
      if (refinements >= opt.max_starts) break;
      const Vec p = grid.point(i);
      if (nearest(p, visited) < opt.start_separation) continue;
      visited.push_back(p);
      ++refinements;
      double defect = 0.0;
      const Vec z = refine_zero(cuts, p, defect);
      if (defect > opt.accept) continue;
      if (nearest(z, out) > opt.cluster) {
        out.push_back(z);
        visited.push_back(z);
      }
    }
  return out;
}

OracleComparison compare_with_oracle(const SubspaceBasis& basis, const Partition& partition,
                                     const ProductStateSet& found, const std::vector<Vec>& oracle, double dist) {
  OracleComparison cmp;
  const auto& rep = found.report;
  const auto cuts = pencil_cuts(basis, partition);
  auto fail = [&](const std::string& why) {
    cmp.agree = false;
    cmp.message = why;
    return cmp;
  };

  for (const auto& w : rep.witnesses)
    if (rank_one_defect(cuts, w) > 1e-7) return fail("solver witness is not a product state");

  // curve membership per component; empty when the report has no curve
  std::vector<std::function<double(const Vec&)>> curves;
  switch (rep.kind) {
    case ComponentKind::Line: curves.push_back([&](const Vec& c) { return line_distance(c, rep.line[0], rep.line[1]); }); break;
    case ComponentKind::TwoLines:
      for (const auto& lp : rep.line_points)
        curves.push_back([&rep, lp](const Vec& c) { return line_distance(c, rep.vertex, lp); });
      break;
    case ComponentKind::Conic: curves.push_back([&](const Vec& c) { return conic_distance(c, rep.conic); }); break;
    case ComponentKind::FullPlane: curves.push_back([](const Vec&) { return 0.0; }); break;
    default: break;
  }
  const std::vector<Vec>& isolated = rep.kind == ComponentKind::IsolatedPoints ? rep.points : rep.extra_isolated;

  std::vector<int> on_curve(curves.size(), 0);
  std::vector<bool> matched(isolated.size(), false);
  for (const auto& p : oracle) {
    bool explained = false;
    for (size_t k = 0; k < curves.size(); ++k) {
      const double d = curves[k](p);
      if (d <= dist) {
        ++on_curve[k];
        explained = true;
        cmp.worst_distance = std::max(cmp.worst_distance, d);
      }
    }
    if (explained) continue;
    for (size_t k = 0; k < isolated.size(); ++k) {
      const double d = chordal_distance(p, isolated[k]);
      if (d <= dist) {
        matched[k] = true;
        explained = true;
        cmp.worst_distance = std::max(cmp.worst_distance, d);
      }
    }
    if (!explained) return fail("oracle zero not produced by the solver");
  }
  for (size_t k = 0; k < isolated.size(); ++k)
    if (!matched[k]) return fail("solver point not found by the oracle");
  for (size_t k = 0; k < curves.size(); ++k)
    if (on_curve[k] < 3) return fail("oracle found fewer than 3 points on a curve component");
  cmp.agree = true;
  cmp.message = "agree";
  return cmp;
}

std::vector<DensityMatrix> sample_separable(const SeparableSetDescription& desc, Rng& rng, int n) {
  std::vector<DensityMatrix> out;
  const Mat p = desc.subspace * desc.subspace.adjoint();
  for (int s = 0; s < n; ++s) {
    std::vector<Mat> parts;
    switch (desc.kind) {
      case DescriptionKind::NoSeparable: throw PreconditionUnmet("no separable states to sample");
      case DescriptionKind::SinglePoint:
      case DescriptionKind::Segment:
      case DescriptionKind::Triangle:
        for (const auto& v : desc.vertices) parts.push_back(projector(v));
        break;
      case DescriptionKind::AllStates: {
        const int r = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(desc.all_states_basis.cols()));
        parts.push_back(random_state_on(rng, desc.all_states_basis, r));
        break;
      }
      case DescriptionKind::Cone:
        parts.push_back(projector(desc.apex));
        parts.push_back(random_state_on(rng, desc.balls.at(0).span, 1 + static_cast<int>(rng() % 2)));
        break;
      case DescriptionKind::TwoBalls:
        for (const auto& b : desc.balls) parts.push_back(random_state_on(rng, b.span, 1 + static_cast<int>(rng() % 2)));
        break;
      case DescriptionKind::LCurve: {
        const int k = 1 + static_cast<int>(rng() % 9);
        for (int i = 0; i < k; ++i) parts.push_back(projector(desc.curve_point(random_unit_vector(rng, 2))));
        break;
      }
    }
    const auto w = random_dirichlet(rng, static_cast<int>(parts.size()));
    Mat rho = Mat::Zero(p.rows(), p.cols());
    for (size_t i = 0; i < parts.size(); ++i) rho += w[i] * parts[i];
    if ((rho - p * rho * p).norm() > 1e-10) throw SolverError("separable sample left the subspace");
    out.emplace_back(rho, desc.profile);
  }
  return out;
}

std::vector<Mat> sample_extreme_points(const SeparableSetDescription& desc, Rng& rng, int n) {
  std::vector<Mat> out;
  auto pure_on = [&](const Mat& span) { return projector(span * random_unit_vector(rng, span.cols())); };
  switch (desc.kind) {
    case DescriptionKind::NoSeparable: break;
    case DescriptionKind::SinglePoint:
    case DescriptionKind::Segment:
    case DescriptionKind::Triangle:
      for (const auto& v : desc.vertices) out.push_back(projector(v));
      break;
    case DescriptionKind::AllStates:
      for (int i = 0; i < n; ++i) out.push_back(pure_on(desc.all_states_basis));
      break;
    case DescriptionKind::Cone:
      out.push_back(projector(desc.apex));
      for (int i = 0; i < n; ++i) out.push_back(pure_on(desc.balls.at(0).span));
      break;
    case DescriptionKind::TwoBalls:
      for (int i = 0; i < n; ++i) out.push_back(pure_on(desc.balls.at(static_cast<size_t>(i % 2)).span));
      break;
    case DescriptionKind::LCurve:
      for (int i = 0; i < n; ++i) out.push_back(projector(desc.curve_point(random_unit_vector(rng, 2))));
      break;
  }
  return out;
}

int affine_dimension(const std::vector<Mat>& points, double rank_rel_tol) {
  if (points.size() < 2) return points.empty() ? -1 : 0;
  const Eigen::VectorXd base = hermitian_to_real(points.front());
  Eigen::MatrixXd diffs(base.size(), static_cast<Index>(points.size() - 1));
  for (size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<Index>(i - 1)) = hermitian_to_real(points[i]) - base;
  return numeric_rank(Mat(diffs.cast<Complex>()), rank_rel_tol);
}

void VerificationReport::merge(const VerificationReport& other) {
  trials += other.trials;
  disagreements += other.disagreements;
  worst_residual = std::max(worst_residual, other.worst_residual);
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string matrix_digest(const Mat& m) {
  std::uint64_t h = 1469598103934665603ULL;
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const int len = std::snprintf(buf, sizeof buf, "%.12e,%.12e;", m(i, j).real(), m(i, j).imag());
      for (int k = 0; k < len; ++k) {
        h ^= static_cast<unsigned char>(buf[k]);
        h *= 1099511628211ULL;
      }
    }
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

VerificationReport monte_carlo_class_check(const SeparableSetDescription& desc, int n, std::uint64_t seed,
                                           const ToleranceConfig& tol) {
  struct Trial {
    bool disagree = false;
    double residual = 0.0;
    Failure failure;
  };
  std::vector<Trial> trials(static_cast<size_t>(n));
  const int dim = static_cast<int>(desc.subspace.cols());
  const bool has_separable = desc.kind != DescriptionKind::NoSeparable;

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    Trial& t = trials[static_cast<size_t>(i)];
    try {
    Rng rng = make_rng(s);
    const bool sample_set = has_separable && i % 2 == 0;
    const DensityMatrix rho = sample_set ? sample_separable(desc, rng, 1).front()
                                         : DensityMatrix(random_state_on(rng, desc.subspace, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dim))), desc.profile);
    const PptResult ppt = is_ppt_all_cuts(rho, desc.partition, tol);
    const SeparabilityVerdict m = membership(rho, desc, tol);
    t.residual = sample_set ? m.residual : 0.0;
    const bool ok = m.separable == ppt.ppt && (!sample_set || m.separable);
    if (!ok) {
      t.disagree = true;
      t.failure.seed = s;
      t.failure.digest = matrix_digest(rho.matrix());
      t.failure.expected = sample_set ? "separable member, PPT" : (m.separable ? "PPT" : "NPT");
      char buf[96];
      std::snprintf(buf, sizeof buf, "membership=%d ppt=%d min_pt_eig=%.3e", m.separable ? 1 : 0, ppt.ppt ? 1 : 0,
                    ppt.min_eigenvalue);
      t.failure.got = buf;
    }
    } catch (const Error& e) {
      t.disagree = true;
      t.failure.seed = s;
      t.failure.expected = "no error";
      t.failure.got = e.what();
    }
  }

  VerificationReport rep;
  rep.trials = n;
  for (const auto& t : trials) {
    rep.worst_residual = std::max(rep.worst_residual, t.residual);
    if (t.disagree) {
      ++rep.disagreements;
      rep.failures.push_back(t.failure);
    }
  }
  return rep;
}

}  // namespace subsep
