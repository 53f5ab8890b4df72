#include <doctest.h>

#include "subsep/bipartite.hpp"
#include "subsep/fixtures.hpp"
#include "subsep/oracle.hpp"
#include "subsep/verify.hpp"

using namespace subsep;

namespace {

ClassificationResult classify(const Fixture& f) {
  return classify_bipartite(f.basis(), Partition::natural(f.profile), ToleranceConfig{}, 0);
}

}  // namespace

TEST_CASE("oracle zeros of the triplet subspace lie on its conic") {
  const Fixture& f = fixture_by_tag("C_2x2_ii");
  const auto zeros = brute_force_product_search(f.basis(), Partition::natural(f.profile));
  CHECK(zeros.size() >= 10);
  const std::vector<int> a{0};
  for (const auto& z : zeros) CHECK(schmidt_ratio(ambient_vector(f.basis(), z), f.profile, a) < 1e-6);
}

TEST_CASE("oracle finds exactly the isolated products") {
  const Fixture& f = fixture_by_tag("C_3x3");
  CHECK(brute_force_product_search(f.basis(), Partition::natural(f.profile)).size() == 3);
  const Fixture& g = fixture_by_tag("BLM_NoProduct");
  CHECK(brute_force_product_search(g.basis(), Partition::natural(g.profile)).empty());
}

TEST_CASE("comparison detects a missing solver point") {
  const Fixture& f = fixture_by_tag("C_3x3");
  const auto part = Partition::natural(f.profile);
  const auto s = find_product_states(f.basis(), part, ToleranceConfig{}, 0);
  auto zeros = brute_force_product_search(f.basis(), part);
  CHECK(compare_with_oracle(f.basis(), part, s, zeros).agree);
  zeros.pop_back();
  CHECK_FALSE(compare_with_oracle(f.basis(), part, s, zeros).agree);
}

TEST_CASE("random product-spanned subspaces agree with the oracle") {
  Rng rng = make_rng(404);
  for (int t = 0; t < 12; ++t) {
    const int db = 2 + t % 2;
    const auto vs = random_product_subspace(rng, 2, db, 3);
    const DimensionProfile p({2, db});
    const SubspaceBasis b(vs, p);
    const auto part = Partition::natural(p);
    const auto s = find_product_states(b, part, ToleranceConfig{}, static_cast<std::uint64_t>(t));
    const auto cmp = compare_with_oracle(b, part, s, brute_force_product_search(b, part));
    CHECK_MESSAGE(cmp.agree, cmp.message);
  }
}

TEST_CASE("refinement converges from a nearby start") {
  const Fixture& f = fixture_by_tag("C_3x3");
  const auto cuts = pencil_cuts(f.basis(), Partition::natural(f.profile));
  Vec c(3);
  c << 1.0, 0.05, Complex(0, 0.03);
  double defect = 1.0;
  const Vec z = refine_zero(cuts, c, defect);
  CHECK(defect < 1e-9);
  Vec e0 = Vec::Zero(3);
  e0[0] = 1.0;
  CHECK(chordal_distance(z, e0) < 1e-8);
}

TEST_CASE("affine dimension of sampled extreme points") {
  Rng rng = make_rng(6);
  for (const auto& [tag, dim] : std::vector<std::pair<std::string, int>>{
           {"C_3x3", 2}, {"C_2x3_ii", 4}, {"C_2x2_i", 6}, {"C_2x2_ii", 8}, {"C_1x3", 8}}) {
    CAPTURE(tag);
    const auto desc = classify(fixture_by_tag(tag)).description;
    CHECK(affine_dimension(sample_extreme_points(desc, rng, 40)) == dim);
  }
}

TEST_CASE("Monte-Carlo check is reproducible and clean") {
  const auto desc = classify(fixture_by_tag("C_2x2_ii")).description;
  const auto a = monte_carlo_class_check(desc, 60, 5, ToleranceConfig{});
  const auto b = monte_carlo_class_check(desc, 60, 5, ToleranceConfig{});
  CHECK(a.disagreements == 0);
  CHECK(a.trials == 60);
  CHECK(a.worst_residual == b.worst_residual);
}

TEST_CASE("separable samples are states on the subspace") {
  Rng rng = make_rng(8);
  const auto desc = classify(fixture_by_tag("C_2x3_ii")).description;
  const Mat p = desc.subspace * desc.subspace.adjoint();
  for (const auto& rho : sample_separable(desc, rng, 10)) {
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0));
    CHECK((p * rho.matrix() * p - rho.matrix()).norm() < 1e-10);
  }
}

TEST_CASE("reports merge and digests are stable") {
  VerificationReport a, b;
  a.trials = 3;
  b.trials = 4;
  b.disagreements = 1;
  b.worst_residual = 0.5;
  b.failures.push_back({1, "x", "e", "g"});
  a.merge(b);
  CHECK(a.trials == 7);
  CHECK(a.disagreements == 1);
  CHECK(a.failures.size() == 1);
  const Mat m = Mat::Identity(2, 2);
  CHECK(matrix_digest(m) == matrix_digest(m));
  CHECK(matrix_digest(m) != matrix_digest(2.0 * m));
}
