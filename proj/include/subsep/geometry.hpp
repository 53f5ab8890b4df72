#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "subsep/description.hpp"

namespace subsep {

using Point3 = std::array<double, 3>;

/// Plottable point set with the algebraic constraints its points obey.
struct FigureData {
  std::string label;
  std::vector<Point3> points;
  std::vector<int> groups;                 // per point: 0 body, 1 second circle, 2 apex ...
  std::vector<std::array<int, 2>> edges;
  nlohmann::json metadata;
  std::vector<Mat> states;                 // ambient density matrices referenced by metadata
};

/// Largest violation of the constraints recorded for `fig.label`.
double constraint_violation(const FigureData& fig);
/// Throws SolverError when a constraint is violated beyond 1e-12.
void validate_figure(const FigureData& fig);

FigureData emit_triangle(const SeparableSetDescription& desc);
FigureData emit_cone_section(const SeparableSetDescription& desc, int n);
FigureData emit_bisphere_projection(const SeparableSetDescription& desc, int n);
FigureData emit_l_curve_projection(const SeparableSetDescription& desc, int n);

/// Picks the figure for the description kind; InputError("nothing to emit")
/// for kinds without a figure.
FigureData emit_figure(const SeparableSetDescription& desc, int n);

struct ExtremeCurveTable {
  std::vector<double> phis;
  std::vector<Mat> densities;  // 3x3, coordinates |11>, |Psi+>, |22> of the normal form
  Mat a, b, c;                 // harmonics recovered from the samples
  Mat a_exact, b_exact, c_exact;
  double harmonic_error = 0.0;  // max entry error of the recovered harmonics
  double product_defect = 0.0;  // max sigma2 / sigma1 of the ambient curve points
  double rank_defect = 0.0;     // max second eigenvalue of the densities
};

/// Samples phi_j = 2 pi j / n, maps each curve point to the normal form
/// through the stored local maps and extracts the three harmonics.
ExtremeCurveTable emit_extreme_density_curve(const SeparableSetDescription& desc, int n);

/// CSV (x,y,z,group) for ".csv", JSON otherwise. Validates first.
void write_figure(const FigureData& fig, const std::string& path);
nlohmann::json figure_to_json(const FigureData& fig);

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const Mat& m);
nlohmann::json vector_to_json(const Vec& v);

}  // namespace subsep
