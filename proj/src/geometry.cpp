#include "subsep/geometry.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "subsep/product_finder.hpp"

namespace subsep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConstraintTol = 1e-12;

Mat projector(const Vec& v) {
  const Vec u = v / v.norm();
  return u * u.adjoint();
}

void require(const SeparableSetDescription& desc, DescriptionKind kind) {
  if (desc.kind != kind)
    throw InputError("expected a " + to_string(kind) + " description, got " + to_string(desc.kind));
}

void require_samples(int n, int min) {
  if (n < min) throw InputError("need at least " + std::to_string(min) + " samples, got " + std::to_string(n));
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

double sq(double x) { return x * x; }

}  // namespace

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json vector_to_json(const Vec& v) {
  auto out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

nlohmann::json matrix_to_json(const Mat& m) {
  auto out = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

double constraint_violation(const FigureData& fig) {
  double worst = 0.0;
  for (size_t i = 0; i < fig.points.size(); ++i) {
    const auto [x, y, z] = fig.points[i];
    const int g = fig.groups.empty() ? 0 : fig.groups[i];
    double v = 0.0;
    if (fig.label == "triangle") {
      const Point3 expected[3] = {{1, 0, 0}, {-0.5, std::sqrt(3.0) / 2, 0}, {-0.5, -std::sqrt(3.0) / 2, 0}};
      v = std::max({std::abs(x - expected[i][0]), std::abs(y - expected[i][1]), std::abs(z)});
    } else if (fig.label == "cone") {
      if (g == 2)
        v = std::max({std::abs(x), std::abs(y), std::abs(z - 1)});
      else
        v = std::max(std::abs(x * x + y * y - 1), std::abs(z));
    } else if (fig.label == "bisphere") {
      if (g == 0)
        v = std::max(std::abs(sq(x - 1) + y * y - 1), std::abs(z));
      else
        v = std::max(std::abs(sq(x + 1) + z * z - 1), std::abs(y));
    } else if (fig.label == "l_curve") {
      const double lower = 2 * x * x - 1, upper = 1 - 2 * y * y;
      v = std::max({std::abs(x * x + y * y - 1), std::abs(z - (x * x - y * y)), std::abs(z - lower),
                    std::abs(z - upper), lower - z, z - upper});
    } else {
      throw InputError("unknown figure label " + fig.label);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

void validate_figure(const FigureData& fig) {
  const double v = constraint_violation(fig);
  if (!(v <= kConstraintTol)) {
    std::ostringstream os;
    os << fig.label << " constraint violated by " << v;
    throw SolverError(os.str());
  }
}

FigureData emit_triangle(const SeparableSetDescription& desc) {
  require(desc, DescriptionKind::Triangle);
  FigureData fig;
  fig.label = "triangle";
  const double h = std::sqrt(3.0) / 2;
  fig.points = {{1, 0, 0}, {-0.5, h, 0}, {-0.5, -h, 0}};
  fig.groups = {0, 0, 0};
  fig.edges = {{0, 1}, {1, 2}, {2, 0}};
  auto& md = fig.metadata;
  md["embedding"] = "equilateral triangle in z = 0, vertex i at angle 2 pi i / 3";
  md["constraints"] = {"z = 0", "points are the three fixed vertices"};
  md["barycentric_map"] = "point sum_i w_i V_i <-> state sum_i w_i P_i";
  md["vertex_products"] = nlohmann::json::array();
  for (const auto& v : desc.vertices) {
    md["vertex_products"].push_back(vector_to_json(canonical_phase(v / v.norm())));
    fig.states.push_back(projector(v));
  }
  // edge midpoints and the centroid
  for (int i = 0; i < 3; ++i) fig.states.push_back(0.5 * (fig.states[i] + fig.states[(i + 1) % 3]));
  fig.states.push_back((fig.states[0] + fig.states[1] + fig.states[2]) / 3.0);
  md["states"] = {"vertex 0", "vertex 1", "vertex 2", "midpoint 0-1", "midpoint 1-2", "midpoint 2-0", "centroid"};
  return fig;
}

FigureData emit_cone_section(const SeparableSetDescription& desc, int n) {
  require(desc, DescriptionKind::Cone);
  require_samples(n, 3);
  FigureData fig;
  fig.label = "cone";
  const Mat& ball = desc.balls.at(0).span;
  for (int j = 0; j < n; ++j) {
    const double t = 2 * kPi * j / n;
    fig.points.push_back({std::cos(t), std::sin(t), 0.0});
    fig.groups.push_back(0);
    fig.edges.push_back({j, n});
  }
  fig.points.push_back({0, 0, 1});
  fig.groups.push_back(2);
  auto& md = fig.metadata;
  md["embedding"] = "equator (cos t, sin t, 0), apex (0, 0, 1)";
  md["constraints"] = {"equator: x^2 + y^2 = 1, z = 0", "apex = (0, 0, 1)"};
  md["equator_state"] = "angle t <-> projector onto (e0 + exp(i t) e1) / sqrt 2";
  md["ball_basis"] = {vector_to_json(ball.col(0)), vector_to_json(ball.col(1))};
  md["apex_product"] = vector_to_json(canonical_phase(desc.apex / desc.apex.norm()));
  md["parameters"] = {{"samples", n}};
  fig.states.push_back(projector(desc.apex));
  const int shown = std::min(n, 8);
  for (int j = 0; j < shown; ++j) {
    const double t = 2 * kPi * j / n;
    fig.states.push_back(projector(ball.col(0) + std::polar(1.0, t) * ball.col(1)));
  }
  fig.states.push_back(0.5 * (fig.states[0] + fig.states[1]));
  return fig;
}

FigureData emit_bisphere_projection(const SeparableSetDescription& desc, int n) {
  require(desc, DescriptionKind::TwoBalls);
  require_samples(n, 3);
  FigureData fig;
  fig.label = "bisphere";
  const Vec c = desc.intersection / desc.intersection.norm();
  const Vec a1 = orth_in_span(desc.balls.at(0).span, c);
  const Vec a2 = orth_in_span(desc.balls.at(1).span, c);
  for (int circle = 0; circle < 2; ++circle)
    for (int j = 0; j < n; ++j) {
      const double t = 2 * kPi * j / n;
      if (circle == 0)
        fig.points.push_back({1 - std::cos(t), std::sin(t), 0.0});
      else
        fig.points.push_back({-1 + std::cos(t), 0.0, std::sin(t)});
      fig.groups.push_back(circle);
      fig.edges.push_back({circle * n + j, circle * n + (j + 1) % n});
    }
  auto& md = fig.metadata;
  md["embedding"] = "circle 1 in z = 0 centred (1,0,0), circle 2 in y = 0 centred (-1,0,0), shared point (0,0,0)";
  md["constraints"] = {"circle 1: (x-1)^2 + y^2 = 1, z = 0", "circle 2: (x+1)^2 + z^2 = 1, y = 0"};
  md["circle_state"] = "angle t on circle k <-> cos(t/2) c + sin(t/2) a_k";
  md["intersection_product"] = vector_to_json(canonical_phase(c));
  md["great_circle_partners"] = {vector_to_json(a1), vector_to_json(a2)};
  md["parameters"] = {{"samples", n}};
  fig.states.push_back(projector(c));
  for (const Vec& a : {a1, a2})
    for (int j = 1; j < 4; ++j) {
      const double t = 2 * kPi * j / 4;
      fig.states.push_back(projector(std::cos(t / 2) * c + std::sin(t / 2) * a));
    }
  fig.states.push_back(0.5 * (fig.states[2] + fig.states[5]));
  return fig;
}

FigureData emit_l_curve_projection(const SeparableSetDescription& desc, int n) {
  require(desc, DescriptionKind::LCurve);
  require_samples(n, 4);
  FigureData fig;
  fig.label = "l_curve";
  for (int j = 0; j < n; ++j) {
    const double p = 2 * kPi * j / n;
    fig.points.push_back({std::cos(p), std::sin(p), std::cos(2 * p)});
    fig.groups.push_back(0);
    fig.edges.push_back({j, (j + 1) % n});
  }
  const auto table = emit_extreme_density_curve(desc, std::max(n, 5));
  auto& md = fig.metadata;
  md["embedding"] = "(cos p, sin p, cos 2p)";
  md["constraints"] = {"x^2 + y^2 = 1", "z = x^2 - y^2", "2x^2 - 1 <= z <= 1 - 2y^2, equality on the curve"};
  md["curve_state"] = "angle p <-> psi (x) L psi, psi = (a0 + exp(i p) a1) / sqrt 2";
  md["normal_form_basis"] = {"|11>", "|Psi+>", "|22>"};
  md["harmonics"] = {{"C", matrix_to_json(table.c)}, {"A", matrix_to_json(table.a)}, {"B", matrix_to_json(table.b)}};
  md["decomposition"] = "rho(p) = C + exp(i p) A + exp(-i p) A^H + exp(2 i p) B + exp(-2 i p) B^H";
  md["l_map"] = {{"matrix", matrix_to_json(desc.lmap->matrix)}, {"ratio", complex_to_json(desc.lmap->ratio)}};
  md["parameters"] = {{"samples", n}};
  const int shown = std::min(n, 8);
  for (int j = 0; j < shown; ++j) {
    const double p = 2 * kPi * j / n;
    Vec x(2);
    x << 1.0, std::polar(1.0, p);
    fig.states.push_back(projector(desc.curve_point(x / std::sqrt(2.0))));
  }
  Mat mix = Mat::Zero(fig.states[0].rows(), fig.states[0].cols());
  for (const auto& s : fig.states) mix += s;
  fig.states.push_back(mix / static_cast<double>(fig.states.size()));
  return fig;
}

FigureData emit_figure(const SeparableSetDescription& desc, int n) {
  switch (desc.kind) {
    case DescriptionKind::Triangle: return emit_triangle(desc);
    case DescriptionKind::Cone: return emit_cone_section(desc, n);
    case DescriptionKind::TwoBalls: return emit_bisphere_projection(desc, n);
    case DescriptionKind::LCurve: return emit_l_curve_projection(desc, n);
    default: throw InputError("nothing to emit for a " + to_string(desc.kind) + " separable set");
  }
}

ExtremeCurveTable emit_extreme_density_curve(const SeparableSetDescription& desc, int n) {
  require(desc, DescriptionKind::LCurve);
  require_samples(n, 5);
  const LinearMapL& l = *desc.lmap;
  const auto order = desc.partition.order();
  const DimensionProfile grouped = desc.partition.group_profile(desc.profile);
  const int da = grouped.dim(0), db = grouped.dim(1);
  const Mat left = l.a_basis.adjoint();
  const Mat right = l.matrix.inverse() * l.b_basis.adjoint();
  const double s2 = std::sqrt(2.0);

  ExtremeCurveTable t;
  t.a = t.b = t.c = Mat::Zero(3, 3);
  for (int j = 0; j < n; ++j) {
    const double p = 2 * kPi * j / n;
    Vec x(2);
    x << 1.0, std::polar(1.0, p);
    const Vec amb = desc.curve_point(x / s2);
    const Vec v = permute_subsystems(amb, desc.profile, order);
    const Mat m = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        v.data(), da, db);
    const auto sv = singular_values(m);
    t.product_defect = std::max(t.product_defect, sv.size() > 1 ? sv[1] / sv[0] : 0.0);
    const Mat xx = left * m * right.transpose();  // the normal form x (x) x
    Vec coords(3);
    coords << xx(0, 0), (xx(0, 1) + xx(1, 0)) / s2, xx(1, 1);
    coords /= coords.norm();
    const Mat rho = coords * coords.adjoint();
    const auto ev = hermitian_eigenvalues(rho);
    t.rank_defect = std::max(t.rank_defect, ev[1]);
    t.phis.push_back(p);
    t.densities.push_back(rho);
    t.c += rho / static_cast<double>(n);
    t.a += std::polar(1.0 / n, -p) * rho;
    t.b += std::polar(1.0 / n, -2 * p) * rho;
  }
  t.c_exact = Mat::Zero(3, 3);
  t.c_exact.diagonal() << 0.25, 0.5, 0.25;
  t.a_exact = Mat::Zero(3, 3);
  t.a_exact(1, 0) = t.a_exact(2, 1) = 1.0 / (2 * s2);
  t.b_exact = Mat::Zero(3, 3);
  t.b_exact(2, 0) = 0.25;
  t.harmonic_error = std::max({(t.a - t.a_exact).cwiseAbs().maxCoeff(), (t.b - t.b_exact).cwiseAbs().maxCoeff(),
                               (t.c - t.c_exact).cwiseAbs().maxCoeff()});
  return t;
}

nlohmann::json figure_to_json(const FigureData& fig) {
  nlohmann::json j;
  j["label"] = fig.label;
  j["points"] = nlohmann::json::array();
  for (const auto& p : fig.points) j["points"].push_back({p[0], p[1], p[2]});
  j["groups"] = fig.groups;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : fig.edges) j["edges"].push_back({e[0], e[1]});
  j["metadata"] = fig.metadata;
  j["states"] = nlohmann::json::array();
  for (const auto& s : fig.states) j["states"].push_back(matrix_to_json(s));
  return j;
}

void write_figure(const FigureData& fig, const std::string& path) {
  validate_figure(fig);
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv) {
    out << "x,y,z,group\n" << std::setprecision(17);
    for (size_t i = 0; i < fig.points.size(); ++i)
      out << fig.points[i][0] << ',' << fig.points[i][1] << ',' << fig.points[i][2] << ','
          << (fig.groups.empty() ? 0 : fig.groups[i]) << '\n';
  } else {
    out << figure_to_json(fig).dump(2) << '\n';
  }
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace subsep
