#include <doctest.h>

#include "subsep/bipartite.hpp"
#include "subsep/fixtures.hpp"
#include "subsep/verify.hpp"

using namespace subsep;

namespace {

ClassificationResult classify(const std::vector<Vec>& vs, const DimensionProfile& p, std::uint64_t seed = 0) {
  return classify_bipartite(SubspaceBasis(vs, p), Partition::natural(p), ToleranceConfig{}, seed);
}

Vec e(Index n, Index k) {
  Vec v = Vec::Zero(n);
  v[k] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("every fixture classifies to its tag") {
  REQUIRE(bipartite_fixtures().size() == 14);
  for (const auto& f : bipartite_fixtures()) {
    CAPTURE(f.name);
    const auto r = classify(f.vectors, f.profile);
    CHECK(to_string(r.tag) == f.expected);
    CHECK(r.dim_S == static_cast<int>(f.vectors.size()));
  }
}

TEST_CASE("tag strings round trip and mirror is an involution") {
  for (ClassTag t : kAllTags) {
    CHECK(parse_class_tag(to_string(t)) == t);
    CHECK(mirror(mirror(t)) == t);
  }
  CHECK(mirror(ClassTag::C_2x3_ii) == ClassTag::C_3x2_ii);
  CHECK(mirror(ClassTag::C_2x2_ii) == ClassTag::C_2x2_ii);
  CHECK_THROWS_AS(parse_class_tag("C_4x4"), InputError);
}

TEST_CASE("two-dimensional subspaces of two qubits") {
  const DimensionProfile p({2, 2});
  const double r = std::sqrt(0.5);
  CHECK(classify({e(4, 0), e(4, 3)}, p).tag == ClassTag::BLM_2x2);
  CHECK(classify({e(4, 0), e(4, 1)}, p).tag == ClassTag::BLM_1x2);
  CHECK(classify({e(4, 0), e(4, 2)}, p).tag == ClassTag::BLM_2x1);
  // a|00> + b(|01> - |10>) is a product only for b = 0
  CHECK(classify({e(4, 0), r * (e(4, 1) - e(4, 2))}, p).tag == ClassTag::BLM_OneProduct);
  // Phi+ and Psi-: the pencil determinant a^2 + b^2 has two roots
  CHECK(classify({r * (e(4, 0) + e(4, 3)), r * (e(4, 1) - e(4, 2))}, p).tag == ClassTag::BLM_2x2);
}

TEST_CASE("swapping the subsystems mirrors the tag") {
  for (const auto& f : bipartite_fixtures()) {
    CAPTURE(f.name);
    const std::vector<int> swap{1, 0};
    std::vector<Vec> vs;
    for (const auto& v : f.vectors) vs.push_back(permute_subsystems(v, f.profile, swap));
    const DimensionProfile q({f.profile.dim(1), f.profile.dim(0)});
    CHECK(to_string(mirror(classify(vs, q).tag)) == f.expected);
  }
}

TEST_CASE("local invertible maps keep the tag") {
  Rng rng = make_rng(77);
  for (const auto& f : bipartite_fixtures()) {
    CAPTURE(f.name);
    for (int t = 0; t < 5; ++t) {
      const Mat x = random_invertible(rng, f.profile.dim(0));
      const Mat y = random_invertible(rng, f.profile.dim(1));
      CHECK(to_string(classify(apply_local(f.vectors, x, y), f.profile, t).tag) == f.expected);
    }
  }
}

TEST_CASE("descriptions of the generic classes") {
  struct Row {
    const char* tag;
    DescriptionKind kind;
    int dimension;
  };
  for (const Row& r : {Row{"C_3x3", DescriptionKind::Triangle, 2}, Row{"C_2x3_ii", DescriptionKind::Cone, 4},
                       Row{"C_2x2_i", DescriptionKind::TwoBalls, 6}, Row{"C_2x2_ii", DescriptionKind::LCurve, 8},
                       Row{"C_1x3", DescriptionKind::AllStates, 8}, Row{"BLM_2x2", DescriptionKind::Segment, 1},
                       Row{"BLM_NoProduct", DescriptionKind::NoSeparable, -1}}) {
    CAPTURE(r.tag);
    const Fixture& f = fixture_by_tag(r.tag);
    const auto c = classify(f.vectors, f.profile);
    CHECK(c.description.kind == r.kind);
    if (r.dimension >= 0) CHECK(c.description.expected_affine_dimension() == r.dimension);
  }
}

TEST_CASE("coinciding pairs are reported by index") {
  const Fixture& f = fixture_by_tag("C_2x3_ii");
  const auto c = classify(f.vectors, f.profile);
  REQUIRE(!c.coinciding.empty());
  const auto& cp = c.coinciding.front();
  CHECK(cp.group == 0);
  CHECK(cp.first != cp.second);
}

TEST_CASE("L map sends each alpha to its beta") {
  Rng rng = make_rng(4);
  std::vector<Vec> alphas, betas;
  const Mat l = random_invertible(rng, 2);
  const Vec a0 = random_unit_vector(rng, 2), a1 = random_unit_vector(rng, 2);
  alphas = {a0, a1, a0 + Complex(0.3, 0.7) * a1};
  for (const auto& a : alphas) betas.push_back(l * a);
  const LinearMapL m = build_L_map(alphas, betas);
  for (size_t i = 0; i < 3; ++i) CHECK(chordal_distance(m.apply(alphas[i]), betas[i]) < 1e-9);
}

TEST_CASE("curve points of the triplet subspace are products") {
  const Fixture& f = fixture_by_tag("C_2x2_ii");
  const auto c = classify(f.vectors, f.profile);
  REQUIRE(c.description.lmap.has_value());
  const Vec y = c.description.lmap->a_basis.adjoint() * Vec(e(2, 0));
  const std::vector<int> side{0};
  CHECK(schmidt_ratio(c.description.curve_point(y), f.profile, side) < 1e-12);
}

TEST_CASE("one-dimensional subspaces") {
  const DimensionProfile p({2, 2});
  const double r = std::sqrt(0.5);
  CHECK(classify({e(4, 1)}, p).description.kind == DescriptionKind::SinglePoint);
  CHECK(classify({r * (e(4, 0) + e(4, 3))}, p).description.kind == DescriptionKind::NoSeparable);
}
