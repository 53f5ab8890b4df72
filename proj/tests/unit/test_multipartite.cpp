#include <doctest.h>

#include "subsep/fixtures.hpp"
#include "subsep/multipartite.hpp"
#include "subsep/separability.hpp"
#include "subsep/verify.hpp"

using namespace subsep;

namespace {

Vec q(Complex a, Complex b) {
  Vec v(2);
  v << a, b;
  return v / v.norm();
}

const Vec k0 = q(1, 0), k1 = q(0, 1), kp = q(1, 1), km = q(1, -1);

MultipartiteInstance inst(std::vector<std::vector<Vec>> f) {
  const DimensionProfile p(std::vector<int>(f.front().size(), 2));
  return MultipartiteInstance::from_factors(p, std::move(f));
}

}  // namespace

TEST_CASE("equality pattern of a single subsystem") {
  Vec e2 = Vec::Zero(3);
  e2[2] = 1.0;
  Vec e0 = Vec::Zero(3), e1 = Vec::Zero(3);
  e0[0] = 1.0;
  e1[1] = 1.0;
  const auto pat = equality_pattern(inst({{k0, k0, k0}, {k1, k1, k1}, {kp, k1, k0}}), 1e-8);
  CHECK(pat[0].kind == PatternKind::GeneralPosition);
  CHECK(pat[1].kind == PatternKind::Equal);
  CHECK(pat[1].pair == std::array<int, 2>{1, 2});
  CHECK(pat[2].kind == PatternKind::Equal);
  CHECK(pat[2].pair == std::array<int, 2>{0, 2});
  const auto qutrit = MultipartiteInstance::from_factors(DimensionProfile({3, 2, 2}),
                                                         {{e0, k0, k0}, {e1, k1, k1}, {e2, kp, kp}});
  CHECK(equality_pattern(qutrit, 1e-8)[0].kind == PatternKind::Independent);
}

TEST_CASE("trivial subsystems are dropped") {
  const auto r = reduce_trivial_subsystems(inst({{k0, k0, k0, kp}, {k1, k1, k0, kp}, {kp, kp, k0, kp}}), 1e-8);
  CHECK(r.active == std::vector<int>{0, 1});
  CHECK(r.dropped == std::vector<int>{2, 3});
  const auto same = reduce_trivial_subsystems(inst({{k0, k0, k0}, {k1, k1, k1}, {kp, kp, kp}}), 1e-8);
  CHECK(same.dropped.empty());
}

TEST_CASE("multipartite fixtures") {
  for (const auto& f : multipartite_fixtures()) {
    CAPTURE(f.name);
    const auto r = classify_multipartite(MultipartiteInstance::from_factors(f.profile, *f.factors), ToleranceConfig{}, 0);
    CHECK(to_string(r.tag) == f.expected);
    CHECK(r.dim_S_sep == 3);
    // the raw-vector route finds the same class
    CHECK(to_string(classify_multipartite_subspace(f.basis(), ToleranceConfig{}, 0).tag) == f.expected);
  }
}

TEST_CASE("cone data of span{000, 111, +11}") {
  const auto r = classify_multipartite(inst({{k0, k0, k0}, {k1, k1, k1}, {kp, k1, k1}}), ToleranceConfig{}, 0);
  REQUIRE(r.tag == MultiTag::SphericalCone);
  REQUIRE(r.cone.has_value());
  CHECK(r.cone->qubit_subsystem == 0);
  CHECK(r.cone->apex_index == 0);
  CHECK(r.cone->pair == std::array<int, 2>{1, 2});
  Vec apex = Vec::Zero(8);
  apex[0] = 1.0;
  CHECK(chordal_distance(r.cone->apex, apex) < 1e-12);
  CHECK(r.description.kind == DescriptionKind::Cone);
}

TEST_CASE("decision tree branches") {
  const SubsystemPattern ind{PatternKind::Independent, {-1, -1}};
  const SubsystemPattern gp{PatternKind::GeneralPosition, {-1, -1}};
  const SubsystemPattern eq12{PatternKind::Equal, {1, 2}};
  const SubsystemPattern eq01{PatternKind::Equal, {0, 1}};
  CHECK(decide_pattern({ind, ind, gp}).tag == MultiTag::Triangle);
  CHECK(decide_pattern({ind, eq12, eq12}).tag == MultiTag::SphericalCone);
  CHECK(decide_pattern({ind, eq12, eq01}).tag == MultiTag::Triangle);
  CHECK(decide_pattern({gp, gp, gp}).tag == MultiTag::Triangle);
  const auto cone = decide_pattern({gp, eq12, eq12});
  CHECK(cone.tag == MultiTag::SphericalCone);
  CHECK(cone.qubit_position == 0);
}

TEST_CASE("fewer subsystems delegate") {
  const auto r = classify_multipartite(inst({{k0, k0, k0}, {k1, k1, k0}, {kp, kp, k0}}), ToleranceConfig{}, 0);
  CHECK(r.tag == MultiTag::Bipartite);
  REQUIRE(r.bipartite.has_value());
  CHECK(r.bipartite->tag == ClassTag::C_2x2_ii);
  Vec e0 = Vec::Zero(3), e1 = Vec::Zero(3), e2 = Vec::Zero(3);
  e0[0] = e1[1] = e2[2] = 1.0;
  const auto single = classify_multipartite(
      MultipartiteInstance::from_factors(DimensionProfile({3, 2, 2}), {{e0, k0, k0}, {e1, k0, k0}, {e2, k0, k0}}),
      ToleranceConfig{}, 0);
  CHECK(single.tag == MultiTag::LocalQudit);
}

TEST_CASE("genuine multipartite spans are never two-ball or curve classes") {
  Rng rng = make_rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto i = random_multipartite_instance(rng, 3 + t % 2);
    try {
      const auto r = classify_multipartite(i, ToleranceConfig{}, 0);
      if (r.active.size() < 3 || r.dim_S_sep < 3) continue;
      CAPTURE(to_string(r.tag));
      CHECK((r.tag == MultiTag::Triangle || r.tag == MultiTag::SphericalCone));
    } catch (const InputError&) {
    } catch (const InconsistentPattern&) {
    }
  }
}

TEST_CASE("tensor independence") {
  Rng rng = make_rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec> a, b;
    random_independence_instance(rng, a, b);
    CHECK(tensor_independence(a, b, 1e-9));
  }
  CHECK_THROWS_AS(tensor_independence({k0, k1, kp}, {k0, k0, k0}, 1e-9), PreconditionUnmet);
  CHECK_THROWS_AS(tensor_independence({k0, k0, kp}, {k0, k1, kp}, 1e-9), PreconditionUnmet);
}

TEST_CASE("product vectors are factorized") {
  const auto i = MultipartiteInstance::from_product_vectors(
      {kron(kron(k0, k0), k0), kron(kron(k1, k1), k1), kron(kron(kp, km), k1)}, DimensionProfile({2, 2, 2}));
  CHECK(chordal_distance(i.factors[2][1], km) < 1e-12);
  const double r = std::sqrt(0.5);
  Vec ghz = Vec::Zero(8);
  ghz[0] = ghz[7] = r;
  CHECK_THROWS_AS(MultipartiteInstance::from_product_vectors({ghz}, DimensionProfile({2, 2, 2})), InputError);
}
