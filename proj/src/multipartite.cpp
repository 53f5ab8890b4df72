#include "subsep/multipartite.hpp"

#include <algorithm>

namespace subsep {

namespace {

std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

bool same_pair(const SubsystemPattern& a, const SubsystemPattern& b) { return a.pair == b.pair; }

SeparableSetDescription base_description(const DimensionProfile& profile, const std::vector<Vec>& prods) {
  SeparableSetDescription d;
  d.profile = profile;
  d.partition = Partition::finest(profile.parties());
  d.subspace = orthonormalize(prods, 1e-9);
  return d;
}

// Distinct products (projectively) among the rows.
std::vector<int> distinct_rows(const std::vector<Vec>& prods, double tol) {
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(prods.size()); ++i) {
    bool dup = false;
    for (int j : keep)
      if (chordal_distance(prods[static_cast<size_t>(i)], prods[static_cast<size_t>(j)]) <= tol) dup = true;
    if (!dup) keep.push_back(i);
  }
  return keep;
}

}  // namespace

MultipartiteInstance MultipartiteInstance::from_factors(const DimensionProfile& profile,
                                                        std::vector<std::vector<Vec>> factors) {
  if (factors.size() != 3) throw InputError("a multipartite instance needs exactly three product rows");
  for (const auto& row : factors) {
    if (static_cast<int>(row.size()) != profile.parties())
      throw InputError("each factor row needs one factor per subsystem");
    for (int j = 0; j < profile.parties(); ++j) {
      const auto& f = row[static_cast<size_t>(j)];
      if (f.size() != profile.dim(j)) throw InputError("factor length does not match the local dimension");
      if (!(f.norm() > 0)) throw InputError("zero factor");
    }
  }
  MultipartiteInstance inst;
  inst.profile = profile;
  for (auto& row : factors)
    for (auto& f : row) f /= f.norm();
  inst.factors = std::move(factors);
  inst.active = iota_vec(profile.parties());
  return inst;
}

MultipartiteInstance MultipartiteInstance::from_product_vectors(const std::vector<Vec>& vectors,
                                                                const DimensionProfile& profile, double tol) {
  const Partition finest = Partition::finest(profile.parties());
  std::vector<std::vector<Vec>> table;
  for (const auto& v : vectors) {
    if (v.size() != profile.total()) throw InputError("vector length does not match dims");
    const auto f = factorize_product(v / v.norm(), profile, finest);
    std::vector<Vec> row;
    for (const auto& s : f) row.push_back(s.amplitudes());
    if (chordal_distance(assemble_product(row, profile, finest), v) > tol)
      throw InputError("input vector is not a product state");
    table.push_back(row);
  }
  return from_factors(profile, std::move(table));
}

Vec MultipartiteInstance::product(int i) const {
  const auto& row = factors.at(static_cast<size_t>(i));
  Vec v = row.front();
  for (size_t j = 1; j < row.size(); ++j) v = kron(v, row[j]);
  return v / v.norm();
}

std::vector<Vec> MultipartiteInstance::column(int subsystem) const {
  std::vector<Vec> out;
  for (const auto& row : factors) out.push_back(row.at(static_cast<size_t>(subsystem)));
  return out;
}

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::Independent: return "Independent";
    case PatternKind::GeneralPosition: return "GeneralPosition";
    case PatternKind::Equal: return "Equal";
    case PatternKind::Trivial: return "Trivial";
  }
  return "?";
}

std::string to_string(MultiTag t) {
  switch (t) {
    case MultiTag::Triangle: return "Triangle";
    case MultiTag::SphericalCone: return "SphericalCone";
    case MultiTag::BLM_NoProduct: return "BLM_NoProduct";
    case MultiTag::BLM_OneProduct: return "BLM_OneProduct";
    case MultiTag::BLM_LocalQubit: return "BLM_LocalQubit";
    case MultiTag::BLM_Segment: return "BLM_Segment";
    case MultiTag::LocalQudit: return "LocalQudit";
    case MultiTag::Bipartite: return "Bipartite";
  }
  return "?";
}

MultipartiteInstance reduce_trivial_subsystems(const MultipartiteInstance& inst, double tol) {
  MultipartiteInstance out = inst;
  out.active.clear();
  for (int j : inst.active) {
    if (numeric_rank(columns_of(inst.column(j)), tol) <= 1)
      out.dropped.push_back(j);
    else
      out.active.push_back(j);
  }
  std::sort(out.dropped.begin(), out.dropped.end());
  if (out.active.empty())
    throw InputError("every subsystem is trivial: the three rows describe a single product state");
  return out;
}

EqualityPattern equality_pattern(const MultipartiteInstance& inst, double tol) {
  EqualityPattern pat;
  for (int j : inst.active) {
    const auto col = inst.column(j);
    SubsystemPattern p;
    const int r = numeric_rank(columns_of(col), tol);
    if (r <= 1) {
      p.kind = PatternKind::Trivial;
    } else if (r == 3) {
      p.kind = PatternKind::Independent;
    } else {
      p.kind = PatternKind::GeneralPosition;
      for (int a = 0; a < 3 && p.kind != PatternKind::Equal; ++a)
        for (int b = a + 1; b < 3; ++b)
          if (chordal_distance(col[static_cast<size_t>(a)], col[static_cast<size_t>(b)]) <= tol) {
            p.kind = PatternKind::Equal;
            p.pair = {a, b};
            break;
          }
    }
    pat.push_back(p);
  }
  return pat;
}

TreeOutcome decide_pattern(const EqualityPattern& pattern) {
  const int k = static_cast<int>(pattern.size());
  if (k < 3) throw InputError("the multipartite decision needs at least three non-trivial subsystems");
  std::vector<int> independent, gp, equal;
  for (int j = 0; j < k; ++j) {
    switch (pattern[static_cast<size_t>(j)].kind) {
      case PatternKind::Independent: independent.push_back(j); break;
      case PatternKind::GeneralPosition: gp.push_back(j); break;
      case PatternKind::Equal: equal.push_back(j); break;
      case PatternKind::Trivial: throw InputError("pattern still contains a trivial subsystem");
    }
  }
  auto all_same = [&](const std::vector<int>& idx) {
    for (size_t a = 1; a < idx.size(); ++a)
      if (!same_pair(pattern[static_cast<size_t>(idx[0])], pattern[static_cast<size_t>(idx[a])])) return false;
    return true;
  };
  auto others = [&](int l) {
    std::vector<int> o;
    for (int j = 0; j < k; ++j)
      if (j != l) o.push_back(j);
    return o;
  };
  TreeOutcome out;
  auto cone = [&](int qubit, const std::array<int, 2>& pair, const char* label) {
    out.tag = MultiTag::SphericalCone;
    out.qubit_position = qubit;
    out.pair = pair;
    out.situation = label;
    return out;
  };
  auto triangle = [&](const char* label) {
    out.tag = MultiTag::Triangle;
    out.situation = label;
    return out;
  };

  if (independent.size() >= 2) return triangle("two independent subsystems");
  if (independent.size() == 1) {
    const int l = independent[0];
    if (!gp.empty()) return triangle("one independent subsystem, another in general position");
    const auto rest = others(l);
    if (!all_same(rest)) return triangle("one independent subsystem, coinciding pairs differ");
    return cone(l, pattern[static_cast<size_t>(rest[0])].pair, "one independent subsystem, one shared coinciding pair");
  }
  if (gp.size() >= 2) return triangle("two subsystems in general position");
  if (gp.size() == 1) {
    const int l = gp[0];
    const auto rest = others(l);
    if (!all_same(rest)) return triangle("one subsystem in general position, coinciding pairs differ");
    return cone(l, pattern[static_cast<size_t>(rest[0])].pair, "one subsystem in general position, one shared coinciding pair");
  }
  // every subsystem has a coinciding pair
  if (all_same(equal))
    throw InconsistentPattern("all subsystems share one coinciding pair: the products span only two dimensions");
  int l = -1, m = -1;
  for (int a = 0; a < k && l < 0; ++a)
    for (int b = a + 1; b < k; ++b)
      if (!same_pair(pattern[static_cast<size_t>(a)], pattern[static_cast<size_t>(b)])) {
        l = a;
        m = b;
        break;
      }
  std::vector<int> rest;
  for (int j = 0; j < k; ++j)
    if (j != l && j != m) rest.push_back(j);
  if (!all_same(rest)) return triangle("only coinciding pairs, the remaining subsystems disagree");
  const auto& common = pattern[static_cast<size_t>(rest[0])];
  const char* odd_one = "only coinciding pairs, one subsystem differs";
  if (same_pair(common, pattern[static_cast<size_t>(m)])) return cone(l, common.pair, odd_one);
  if (same_pair(common, pattern[static_cast<size_t>(l)])) return cone(m, common.pair, odd_one);
  return triangle("only coinciding pairs, three distinct pairs");
}

namespace {

MultiClassResult low_rank_result(const std::vector<Vec>& prods, const DimensionProfile& profile,
                                 const std::vector<std::vector<Vec>>& factors, double geo) {
  MultiClassResult r;
  r.k = profile.parties();
  const auto rows = distinct_rows(prods, geo);
  r.dim_S_sep = numeric_rank(columns_of(prods), geo);
  r.description = base_description(profile, prods);
  std::vector<Vec> distinct;
  for (int i : rows) distinct.push_back(prods[static_cast<size_t>(i)]);
  if (r.dim_S_sep == 1) {
    r.tag = MultiTag::BLM_OneProduct;
    r.description.kind = DescriptionKind::SinglePoint;
    r.description.vertices = {distinct[0]};
    return r;
  }
  // two dimensions: a local qubit when two distinct rows differ on one subsystem only
  const auto& f0 = factors[static_cast<size_t>(rows[0])];
  const auto& f1 = factors[static_cast<size_t>(rows[1])];
  int differing = 0;
  for (size_t j = 0; j < f0.size(); ++j)
    if (chordal_distance(f0[j], f1[j]) > geo) ++differing;
  if (differing == 1) {
    r.tag = MultiTag::BLM_LocalQubit;
    r.description.kind = DescriptionKind::AllStates;
    r.description.all_states_basis = orthonormalize(distinct, 1e-9);
    return r;
  }
  if (rows.size() > 2)
    throw InconsistentPattern("three distinct products in a two-dimensional span that is not a local qubit");
  r.tag = MultiTag::BLM_Segment;
  r.description.kind = DescriptionKind::Segment;
  r.description.vertices = distinct;
  return r;
}

}  // namespace

MultiClassResult classify_multipartite(const MultipartiteInstance& inst, const ToleranceConfig& tol,
                                       std::uint64_t seed) {
  tol.validate();
  const double geo = tol.root_cluster_tol;
  std::vector<Vec> prods;
  for (int i = 0; i < 3; ++i) prods.push_back(inst.product(i));
  if (numeric_rank(columns_of(prods), geo) < 3) return low_rank_result(prods, inst.profile, inst.factors, geo);

  const MultipartiteInstance red = reduce_trivial_subsystems(inst, geo);
  MultiClassResult r;
  r.k = inst.profile.parties();
  r.dim_S_sep = 3;
  r.active = red.active;
  r.dropped = red.dropped;
  r.description = base_description(inst.profile, prods);

  if (red.k() == 1) {
    r.tag = MultiTag::LocalQudit;
    r.situation = "single non-trivial subsystem";
    r.description.kind = DescriptionKind::AllStates;
    r.description.all_states_basis = r.description.subspace;
    return r;
  }
  if (red.k() == 2) {
    std::vector<int> g0 = {red.active[0]};
    g0.insert(g0.end(), red.dropped.begin(), red.dropped.end());
    std::sort(g0.begin(), g0.end());
    const Partition cut{{g0, {red.active[1]}}};
    const SubspaceBasis basis(prods, inst.profile, tol.rank_rel_tol);
    r.bipartite = classify_dim3(basis, cut, tol, seed);
    r.tag = MultiTag::Bipartite;
    r.situation = "two non-trivial subsystems";
    r.description = r.bipartite->description;
    r.warnings = r.bipartite->warnings;
    return r;
  }

  r.pattern = equality_pattern(red, geo);
  const TreeOutcome t = decide_pattern(r.pattern);
  r.tag = t.tag;
  r.situation = t.situation;
  if (t.tag == MultiTag::Triangle) {
    r.description.kind = DescriptionKind::Triangle;
    r.description.vertices = prods;
    return r;
  }
  ConeData c;
  c.pair = t.pair;
  c.apex_index = 3 - c.pair[0] - c.pair[1];
  c.apex = prods[static_cast<size_t>(c.apex_index)];
  c.qubit_subsystem = red.active[static_cast<size_t>(t.qubit_position)];
  c.ball.span = orthonormalize({prods[static_cast<size_t>(c.pair[0])], prods[static_cast<size_t>(c.pair[1])]}, 1e-9);
  c.ball.free_group = c.qubit_subsystem;
  {
    const auto& row = inst.factors[static_cast<size_t>(c.pair[0])];
    Vec fixed = Vec::Ones(1);
    for (int j = 0; j < inst.profile.parties(); ++j)
      if (j != c.qubit_subsystem) fixed = kron(fixed, row[static_cast<size_t>(j)]);
    c.ball.fixed_factor = fixed;
  }
  r.description.kind = DescriptionKind::Cone;
  r.description.apex = c.apex;
  r.description.balls = {c.ball};
  r.cone = c;
  return r;
}

MultiClassResult classify_multipartite_subspace(const SubspaceBasis& basis, const ToleranceConfig& tol,
                                                std::uint64_t seed) {
  const auto& profile = basis.profile();
  if (profile.parties() < 3) throw InputError("multipartite classification needs at least three subsystems");
  const Partition finest = Partition::finest(profile.parties());
  const ProductStateSet ps = find_product_states(basis, finest, tol, seed);
  std::vector<std::vector<Vec>> table;
  for (const auto& row : ps.factors) {
    std::vector<Vec> r;
    for (const auto& f : row) r.push_back(f.amplitudes());
    table.push_back(r);
  }
  MultiClassResult r;
  if (ps.dim_S_sep == 3) {
    r = classify_multipartite(MultipartiteInstance::from_factors(profile, table), tol, seed);
  } else if (ps.dim_S_sep == 0) {
    r.k = profile.parties();
    r.tag = MultiTag::BLM_NoProduct;
    r.description = base_description(profile, {});
    r.description.subspace = basis.matrix();
    r.description.kind = DescriptionKind::NoSeparable;
  } else {
    std::vector<Vec> prods;
    for (const auto& p : ps.spanning_products) prods.push_back(p.amplitudes());
    r = low_rank_result(prods, profile, table, tol.root_cluster_tol);
    // a two-dimensional line of products is a local qubit even if only two rows are listed
    if (ps.report.kind == ComponentKind::Line || ps.report.kind == ComponentKind::FullPlane) {
      if (ps.dim_S_sep == 2 && r.tag != MultiTag::BLM_LocalQubit)
        throw InconsistentPattern("a line of product states that is not a local qubit");
    }
  }
  r.description.subspace = basis.matrix();
  r.dim_S_sep = ps.dim_S_sep;
  r.warnings.insert(r.warnings.end(), ps.warnings.begin(), ps.warnings.end());
  return r;
}

bool tensor_independence(const std::vector<Vec>& alphas, const std::vector<Vec>& betas, double tol) {
  if (alphas.size() != 3 || betas.size() != 3) throw InputError("independence check needs three alphas and three betas");
  const int ra = numeric_rank(columns_of(alphas), tol);
  const bool alpha_ok = ra == 3 || (ra == 2 && general_position(alphas, tol));
  const bool betas_equal = chordal_distance(betas[0], betas[1]) <= tol && chordal_distance(betas[0], betas[2]) <= tol;
  if (!alpha_ok) throw PreconditionUnmet("alphas are neither independent nor in general position");
  if (betas_equal) throw PreconditionUnmet("betas are all equal");
  std::vector<Vec> t;
  for (int i = 0; i < 3; ++i) t.push_back(kron(alphas[static_cast<size_t>(i)], betas[static_cast<size_t>(i)]));
  return numeric_rank(columns_of(t), tol) == 3;
}

}  // namespace subsep
