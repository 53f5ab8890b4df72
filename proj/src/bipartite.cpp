#include "subsep/bipartite.hpp"

#include <cmath>

namespace subsep {

std::string to_string(DescriptionKind k) {
  switch (k) {
    case DescriptionKind::AllStates: return "AllStates";
    case DescriptionKind::NoSeparable: return "NoSeparable";
    case DescriptionKind::SinglePoint: return "SinglePoint";
    case DescriptionKind::Segment: return "Segment";
    case DescriptionKind::Triangle: return "Triangle";
    case DescriptionKind::Cone: return "Cone";
    case DescriptionKind::TwoBalls: return "TwoBalls";
    case DescriptionKind::LCurve: return "LCurve";
  }
  return "?";
}

Vec SeparableSetDescription::curve_point(const Vec& x) const {
  if (!lmap) throw InputError("description has no L map");
  const Vec psi = lmap->a_basis * x;
  const Vec phi = lmap->apply(psi);
  const Vec v = assemble_product({psi, phi}, profile, partition);
  return v / v.norm();
}

int SeparableSetDescription::expected_affine_dimension() const {
  switch (kind) {
    case DescriptionKind::NoSeparable: return -1;
    case DescriptionKind::SinglePoint: return 0;
    case DescriptionKind::Segment: return 1;
    case DescriptionKind::Triangle: return 2;
    case DescriptionKind::Cone: return 4;
    case DescriptionKind::TwoBalls: return 6;
    case DescriptionKind::LCurve: return 8;
    case DescriptionKind::AllStates: {
      const auto n = all_states_basis.cols();
      return static_cast<int>(n * n - 1);
    }
  }
  return -1;
}

namespace {

struct TagName {
  ClassTag tag;
  const char* name;
};

constexpr TagName kNames[] = {
    {ClassTag::BLM_NoProduct, "BLM_NoProduct"}, {ClassTag::BLM_OneProduct, "BLM_OneProduct"},
    {ClassTag::BLM_1x2, "BLM_1x2"},             {ClassTag::BLM_2x1, "BLM_2x1"},
    {ClassTag::BLM_2x2, "BLM_2x2"},             {ClassTag::C_1x3, "C_1x3"},
    {ClassTag::C_3x1, "C_3x1"},                 {ClassTag::C_3x3, "C_3x3"},
    {ClassTag::C_2x3_i, "C_2x3_i"},             {ClassTag::C_2x3_ii, "C_2x3_ii"},
    {ClassTag::C_3x2_i, "C_3x2_i"},             {ClassTag::C_3x2_ii, "C_3x2_ii"},
    {ClassTag::C_2x2_i, "C_2x2_i"},             {ClassTag::C_2x2_ii, "C_2x2_ii"},
};

Mat orthonormal_columns(const std::vector<Vec>& vs) { return orthonormalize(vs, 1e-9); }

std::vector<Vec> group_factors(const ProductStateSet& ps, int g) {
  std::vector<Vec> out;
  for (const auto& f : ps.factors) out.push_back(f[static_cast<size_t>(g)].amplitudes());
  return out;
}

std::vector<CoincidingPair> coinciding_pairs(const ProductStateSet& ps, double geo) {
  std::vector<CoincidingPair> out;
  const int n = static_cast<int>(ps.factors.size());
  for (int g = 0; g < ps.partition.size(); ++g)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (chordal_distance(ps.factors[static_cast<size_t>(i)][static_cast<size_t>(g)].amplitudes(),
                             ps.factors[static_cast<size_t>(j)][static_cast<size_t>(g)].amplitudes()) <= geo)
          out.push_back({g, i, j});
  return out;
}

[[noreturn]] void mismatch(const ProductStateSet& ps, const std::string& expected) {
  std::string dims;
  for (size_t i = 0; i < ps.local_dims.size(); ++i) dims += (i ? "," : "") + std::to_string(ps.local_dims[i]);
  throw InconsistentProbes("solution variety " + to_string(ps.report.kind) + " with local dims (" + dims +
                           ") does not match " + expected);
}

// Two-dimensional rules applied to a subspace whose product span has dimension <= 2.
ClassTag low_rank_tag(const ProductStateSet& ps) {
  switch (ps.dim_S_sep) {
    case 0: return ClassTag::BLM_NoProduct;
    case 1: return ClassTag::BLM_OneProduct;
    case 2: break;
    default: mismatch(ps, "a product span of dimension <= 2");
  }
  const int da = ps.a_sep_dim(), db = ps.b_sep_dim();
  const bool whole = ps.report.kind == ComponentKind::FullPlane ||
                     (ps.report.kind == ComponentKind::Line && ps.report.extra_isolated.empty());
  if (whole) {
    if (da == 1 && db == 2) return ClassTag::BLM_1x2;
    if (da == 2 && db == 1) return ClassTag::BLM_2x1;
    mismatch(ps, "a local qubit");
  }
  if (ps.report.kind == ComponentKind::IsolatedPoints && da == 2 && db == 2) return ClassTag::BLM_2x2;
  mismatch(ps, "two isolated products in general position");
}

ClassTag full_rank_tag(const ProductStateSet& ps) {
  const int da = ps.a_sep_dim(), db = ps.b_sep_dim();
  const bool gpa = ps.general_position[0], gpb = ps.general_position[1];
  const auto kind = ps.report.kind;
  const bool three_points = kind == ComponentKind::IsolatedPoints && ps.report.points.size() == 3;
  const bool line_point = kind == ComponentKind::Line && ps.report.extra_isolated.size() == 1;
  if (da == 1 && db == 3) {
    if (kind != ComponentKind::FullPlane) mismatch(ps, "C_1x3");
    return ClassTag::C_1x3;
  }
  if (da == 3 && db == 1) {
    if (kind != ComponentKind::FullPlane) mismatch(ps, "C_3x1");
    return ClassTag::C_3x1;
  }
  if (da == 3 && db == 3) {
    if (!three_points) mismatch(ps, "C_3x3");
    return ClassTag::C_3x3;
  }
  if (da == 2 && db == 3) {
    if (gpa && three_points) return ClassTag::C_2x3_i;
    if (!gpa && line_point) return ClassTag::C_2x3_ii;
    mismatch(ps, gpa ? "C_2x3_i" : "C_2x3_ii");
  }
  if (da == 3 && db == 2) {
    if (gpb && three_points) return ClassTag::C_3x2_i;
    if (!gpb && line_point) return ClassTag::C_3x2_ii;
    mismatch(ps, gpb ? "C_3x2_i" : "C_3x2_ii");
  }
  if (da == 2 && db == 2) {
    // general position holds on both sides or on neither
    if (gpa && gpb && kind == ComponentKind::Conic) return ClassTag::C_2x2_ii;
    if (!gpa && !gpb && kind == ComponentKind::TwoLines) return ClassTag::C_2x2_i;
    mismatch(ps, gpa && gpb ? "C_2x2_ii" : "C_2x2_i");
  }
  mismatch(ps, "any three-dimensional class");
}

ClassificationResult finish(ClassTag tag, int dim_S, ProductStateSet ps, const SubspaceBasis& basis,
                            const ToleranceConfig& tol) {
  ClassificationResult r;
  r.tag = tag;
  r.dim_S = dim_S;
  r.dim_S_sep = ps.dim_S_sep;
  r.local_dims = ps.local_dims;
  r.coinciding = coinciding_pairs(ps, tol.root_cluster_tol);
  r.warnings = ps.warnings;
  r.witnesses = std::move(ps);
  r.description = describe_separable_set(r, basis);
  return r;
}

void require_bipartite(const SubspaceBasis& basis, const Partition& cut) {
  cut.validate(basis.profile());
  if (!cut.is_bipartite()) throw InputError("bipartite classification needs a two-group cut");
}

}  // namespace

std::string to_string(ClassTag t) {
  for (const auto& n : kNames)
    if (n.tag == t) return n.name;
  return "?";
}

ClassTag parse_class_tag(const std::string& s) {
  for (const auto& n : kNames)
    if (s == n.name) return n.tag;
  throw InputError("unknown class tag '" + s + "'");
}

ClassTag mirror(ClassTag t) {
  switch (t) {
    case ClassTag::BLM_1x2: return ClassTag::BLM_2x1;
    case ClassTag::BLM_2x1: return ClassTag::BLM_1x2;
    case ClassTag::C_1x3: return ClassTag::C_3x1;
    case ClassTag::C_3x1: return ClassTag::C_1x3;
    case ClassTag::C_2x3_i: return ClassTag::C_3x2_i;
    case ClassTag::C_3x2_i: return ClassTag::C_2x3_i;
    case ClassTag::C_2x3_ii: return ClassTag::C_3x2_ii;
    case ClassTag::C_3x2_ii: return ClassTag::C_2x3_ii;
    default: return t;
  }
}

ClassificationResult classify_dim2(const SubspaceBasis& basis, const Partition& cut, const ToleranceConfig& tol,
                                   std::uint64_t seed) {
  require_bipartite(basis, cut);
  if (basis.dim() != 2) throw InputError("classify_dim2 needs a two-dimensional subspace");
  ProductStateSet ps = find_product_states(basis, cut, tol, seed);
  const ClassTag tag = low_rank_tag(ps);
  return finish(tag, 2, std::move(ps), basis, tol);
}

ClassificationResult classify_dim3(const SubspaceBasis& basis, const Partition& cut, const ToleranceConfig& tol,
                                   std::uint64_t seed) {
  require_bipartite(basis, cut);
  if (basis.dim() != 3) throw InputError("classify_dim3 needs a three-dimensional subspace");
  ProductStateSet ps = find_product_states(basis, cut, tol, seed);
  const ClassTag tag = ps.dim_S_sep <= 2 ? low_rank_tag(ps) : full_rank_tag(ps);
  return finish(tag, 3, std::move(ps), basis, tol);
}

ClassificationResult classify_bipartite(const SubspaceBasis& basis, const Partition& cut, const ToleranceConfig& tol,
                                        std::uint64_t seed) {
  switch (basis.dim()) {
    case 1: {
      require_bipartite(basis, cut);
      ProductStateSet ps = find_product_states(basis, cut, tol, seed);
      const ClassTag tag = ps.dim_S_sep == 1 ? ClassTag::BLM_OneProduct : ClassTag::BLM_NoProduct;
      return finish(tag, 1, std::move(ps), basis, tol);
    }
    case 2: return classify_dim2(basis, cut, tol, seed);
    case 3: return classify_dim3(basis, cut, tol, seed);
    default: throw UnsupportedRank(basis.dim());
  }
}

LinearMapL build_L_map(const std::vector<Vec>& alphas, const std::vector<Vec>& betas, double tol) {
  if (alphas.size() != 3 || betas.size() != 3) throw InputError("L map needs three product pairs");
  std::vector<Vec> a(3), b(3);
  for (int i = 0; i < 3; ++i) {
    a[static_cast<size_t>(i)] = alphas[static_cast<size_t>(i)].normalized();
    b[static_cast<size_t>(i)] = betas[static_cast<size_t>(i)].normalized();
  }
  LinearMapL out;
  out.a_basis = orthonormal_columns(a);
  out.b_basis = orthonormal_columns(b);
  if (out.a_basis.cols() != 2 || out.b_basis.cols() != 2)
    throw DegenerateCoefficients("local factors do not span two-dimensional spaces");
  Mat x(2, 3), y(2, 3);
  for (int i = 0; i < 3; ++i) {
    x.col(i) = out.a_basis.adjoint() * a[static_cast<size_t>(i)];
    y.col(i) = out.b_basis.adjoint() * b[static_cast<size_t>(i)];
  }
  const Mat x12 = x.leftCols(2), y12 = y.leftCols(2);
  if (std::abs(x12.determinant()) <= tol || std::abs(y12.determinant()) <= tol)
    throw DegenerateCoefficients("first two local factors are parallel");
  const Vec ab = x12.partialPivLu().solve(x.col(2));
  const Vec cd = y12.partialPivLu().solve(y.col(2));
  for (Index i = 0; i < 2; ++i)
    if (std::abs(ab[i]) <= tol || std::abs(cd[i]) <= tol)
      throw DegenerateCoefficients("expansion coefficient below tolerance; factors are not in general position");
  out.ratio = ab[0] * cd[1] / (ab[1] * cd[0]);
  Mat img(2, 2);
  img.col(0) = y.col(0);
  img.col(1) = out.ratio * y.col(1);
  out.matrix = img * x12.inverse();
  const Vec l3 = out.matrix * x.col(2);
  if (chordal_distance(l3, y.col(2)) > 1e-6) throw SolverError("L map does not carry the third factor correctly");
  return out;
}

SeparableSetDescription describe_separable_set(const ClassificationResult& result, const SubspaceBasis& basis) {
  const ProductStateSet& ps = result.witnesses;
  SeparableSetDescription d;
  d.profile = basis.profile();
  d.partition = ps.partition;
  d.subspace = basis.matrix();
  std::vector<Vec> prods;
  for (const auto& p : ps.spanning_products) prods.push_back(p.amplitudes());

  switch (result.tag) {
    case ClassTag::BLM_NoProduct: d.kind = DescriptionKind::NoSeparable; break;
    case ClassTag::BLM_OneProduct:
      d.kind = DescriptionKind::SinglePoint;
      d.vertices = prods;
      break;
    case ClassTag::BLM_2x2:
      d.kind = DescriptionKind::Segment;
      d.vertices = prods;
      break;
    case ClassTag::C_3x3:
    case ClassTag::C_2x3_i:
    case ClassTag::C_3x2_i:
      d.kind = DescriptionKind::Triangle;
      d.vertices = prods;
      break;
    case ClassTag::BLM_1x2:
    case ClassTag::BLM_2x1:
    case ClassTag::C_1x3:
    case ClassTag::C_3x1:
      d.kind = DescriptionKind::AllStates;
      d.all_states_basis = orthonormal_columns(prods);
      break;
    case ClassTag::C_2x3_ii:
    case ClassTag::C_3x2_ii: {
      // products 0 and 1 span the line, product 2 is the apex
      d.kind = DescriptionKind::Cone;
      d.apex = prods.at(2);
      LocalBall ball;
      ball.span = orthonormal_columns({prods[0], prods[1]});
      const int fixed = result.tag == ClassTag::C_2x3_ii ? 0 : 1;
      ball.free_group = 1 - fixed;
      ball.fixed_factor = ps.factors[0][static_cast<size_t>(fixed)].amplitudes();
      d.balls = {ball};
      break;
    }
    case ClassTag::C_2x2_i: {
      // products: common vertex, then one further point on each line
      d.kind = DescriptionKind::TwoBalls;
      d.intersection = prods.at(0);
      for (int j = 1; j <= 2; ++j) {
        LocalBall ball;
        ball.span = orthonormal_columns({prods[0], prods[static_cast<size_t>(j)]});
        const auto& f0 = ps.factors[0];
        const auto& fj = ps.factors[static_cast<size_t>(j)];
        const int fixed = chordal_distance(f0[0].amplitudes(), fj[0].amplitudes()) <=
                                  chordal_distance(f0[1].amplitudes(), fj[1].amplitudes())
                              ? 0
                              : 1;
        ball.free_group = 1 - fixed;
        ball.fixed_factor = f0[static_cast<size_t>(fixed)].amplitudes();
        d.balls.push_back(ball);
      }
      break;
    }
    case ClassTag::C_2x2_ii:
      d.kind = DescriptionKind::LCurve;
      d.lmap = build_L_map(group_factors(ps, 0), group_factors(ps, 1));
      break;
  }
  return d;
}

}  // namespace subsep
