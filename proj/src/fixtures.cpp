#include "subsep/fixtures.hpp"

#include <cmath>

namespace subsep {

namespace {

Vec ket(std::initializer_list<Complex> amps) {
  Vec v(static_cast<Index>(amps.size()));
  Index i = 0;
  for (Complex a : amps) v[i++] = a;
  return v;
}

Vec basis_vec(int d, int i) {
  Vec v = Vec::Zero(d);
  v[i] = 1.0;
  return v;
}

// |i j> in C^da (x) C^db
Vec ij(int da, int db, int i, int j) { return kron(basis_vec(da, i), basis_vec(db, j)); }

Vec plus() { return ket({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}); }

Fixture bip(std::string name, std::string tag, int da, int db, std::vector<Vec> vectors) {
  return Fixture{std::move(name), std::move(tag), DimensionProfile({da, db}), std::move(vectors), std::nullopt};
}

Fixture multi(std::string name, std::string tag, std::vector<std::vector<Vec>> factors) {
  std::vector<int> dims;
  for (const auto& f : factors.front()) dims.push_back(static_cast<int>(f.size()));
  std::vector<Vec> vectors;
  for (const auto& row : factors) {
    Vec v = row.front();
    for (size_t j = 1; j < row.size(); ++j) v = kron(v, row[j]);
    vectors.push_back(v);
  }
  return Fixture{std::move(name), std::move(tag), DimensionProfile(dims), std::move(vectors), std::move(factors)};
}

std::vector<Fixture> make_bipartite() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Fixture> f;
  f.push_back(bip("blm_noproduct", "BLM_NoProduct", 2, 3,
                  {r * (ij(2, 3, 0, 0) + ij(2, 3, 1, 1)), r * (ij(2, 3, 0, 1) + ij(2, 3, 1, 2))}));
  f.push_back(bip("blm_oneproduct", "BLM_OneProduct", 2, 2, {ij(2, 2, 0, 0), r * (ij(2, 2, 0, 1) + ij(2, 2, 1, 0))}));
  f.push_back(bip("blm_1x2", "BLM_1x2", 2, 2, {ij(2, 2, 0, 0), ij(2, 2, 0, 1)}));
  f.push_back(bip("blm_2x1", "BLM_2x1", 2, 2, {ij(2, 2, 0, 0), ij(2, 2, 1, 0)}));
  f.push_back(bip("blm_2x2", "BLM_2x2", 2, 2, {ij(2, 2, 0, 0), ij(2, 2, 1, 1)}));
  f.push_back(bip("c1x3", "C_1x3", 2, 3, {ij(2, 3, 0, 0), ij(2, 3, 0, 1), ij(2, 3, 0, 2)}));
  f.push_back(bip("c3x1", "C_3x1", 3, 2, {ij(3, 2, 0, 0), ij(3, 2, 1, 0), ij(3, 2, 2, 0)}));
  f.push_back(bip("c3x3", "C_3x3", 3, 3, {ij(3, 3, 0, 0), ij(3, 3, 1, 1), ij(3, 3, 2, 2)}));
  f.push_back(bip("c2x3_i", "C_2x3_i", 2, 3, {ij(2, 3, 0, 0), ij(2, 3, 1, 1), kron(plus(), basis_vec(3, 2))}));
  f.push_back(bip("c2x3_ii", "C_2x3_ii", 2, 3, {ij(2, 3, 0, 0), ij(2, 3, 1, 1), ij(2, 3, 1, 2)}));
  f.push_back(bip("c3x2_i", "C_3x2_i", 3, 2, {ij(3, 2, 0, 0), ij(3, 2, 1, 1), kron(basis_vec(3, 2), plus())}));
  f.push_back(bip("c3x2_ii", "C_3x2_ii", 3, 2, {ij(3, 2, 0, 0), ij(3, 2, 1, 1), ij(3, 2, 2, 1)}));
  f.push_back(bip("c2x2_i", "C_2x2_i", 2, 2, {ij(2, 2, 0, 0), ij(2, 2, 1, 0), ij(2, 2, 1, 1)}));
  f.push_back(bip("sym22", "C_2x2_ii", 2, 2, {ij(2, 2, 0, 0), ij(2, 2, 1, 1), r * (ij(2, 2, 0, 1) + ij(2, 2, 1, 0))}));
  return f;
}

std::vector<Fixture> make_multipartite() {
  const Vec z = basis_vec(2, 0), o = basis_vec(2, 1), p = plus();
  return {
      multi("multi_triangle", "Triangle", {{z, z, z}, {o, o, o}, {p, p, p}}),
      multi("multi_cone", "SphericalCone", {{z, z, z}, {o, o, o}, {p, o, o}}),
      multi("multi_triangle2", "Triangle", {{z, z, z}, {o, o, z}, {o, z, o}}),
  };
}

}  // namespace

const std::vector<Fixture>& bipartite_fixtures() {
  static const std::vector<Fixture> f = make_bipartite();
  return f;
}

const std::vector<Fixture>& multipartite_fixtures() {
  static const std::vector<Fixture> f = make_multipartite();
  return f;
}

const Fixture& fixture_by_tag(const std::string& tag) {
  for (const auto* set : {&bipartite_fixtures(), &multipartite_fixtures()})
    for (const auto& f : *set)
      if (f.expected == tag || f.name == tag) return f;
  throw InputError("no fixture for '" + tag + "'");
}

}  // namespace subsep
