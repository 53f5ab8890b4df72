#include <doctest.h>

#include "subsep/bipartite.hpp"
#include "subsep/fixtures.hpp"
#include "subsep/multipartite.hpp"
#include "subsep/separability.hpp"

using namespace subsep;

namespace {

SeparableSetDescription describe(const std::string& tag) {
  const Fixture& f = fixture_by_tag(tag);
  return classify_bipartite(f.basis(), Partition::natural(f.profile), ToleranceConfig{}, 0).description;
}

Mat proj(const Vec& v) {
  const Vec u = v / v.norm();
  return u * u.adjoint();
}

Vec e(Index n, Index k) {
  Vec v = Vec::Zero(n);
  v[k] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("PPT test on two qubits") {
  const DimensionProfile p({2, 2});
  const Partition cut = Partition::natural(p);
  const double r = std::sqrt(0.5);
  const auto bell = is_ppt(DensityMatrix(proj(r * (e(4, 0) + e(4, 3))), p), cut, ToleranceConfig{});
  CHECK_FALSE(bell.ppt);
  CHECK(bell.min_eigenvalue == doctest::Approx(-0.5));
  CHECK(is_ppt(DensityMatrix(proj(e(4, 1)), p), cut, ToleranceConfig{}).ppt);
  // Werner state at the threshold p = 1/3 is PPT
  const Mat w = (1.0 / 3.0) * proj(r * (e(4, 0) + e(4, 3))) + (2.0 / 3.0) * Mat::Identity(4, 4) / 4.0;
  CHECK(is_ppt(DensityMatrix(w, p), cut, ToleranceConfig{}).ppt);
}

TEST_CASE("bipartitions of k groups") {
  CHECK(transposed_sides(2).size() == 1);
  CHECK(transposed_sides(3).size() == 3);
  CHECK(transposed_sides(4).size() == 7);
}

TEST_CASE("small NNLS") {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd b(3), x;
  b << 1, 2, 3;
  CHECK(small_nnls(a, b, x) < 1e-12);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
  // the unconstrained optimum has a negative entry; the clamped one is exact
  b << -1, 2, 1;
  small_nnls(a, b, x);
  CHECK(x[0] == doctest::Approx(0.0));
  CHECK(x[1] == doctest::Approx(1.5));
}

TEST_CASE("triangle centroid has weights one third") {
  const auto desc = describe("C_3x3");
  const Mat rho = (proj(e(9, 0)) + proj(e(9, 4)) + proj(e(9, 8))) / 3.0;
  const auto v = membership(DensityMatrix(rho, desc.profile), desc, ToleranceConfig{});
  CHECK(v.separable);
  REQUIRE(v.certificate.has_value());
  for (double w : v.certificate->weights) CHECK(w == doctest::Approx(1.0 / 3.0));
  CHECK((v.certificate->reconstruct() - rho).norm() < 1e-10);
}

TEST_CASE("superpositions of triangle vertices are rejected") {
  const auto desc = describe("C_3x3");
  const auto v = membership(DensityMatrix(proj(e(9, 0) + e(9, 4)), desc.profile), desc, ToleranceConfig{});
  CHECK_FALSE(v.separable);
}

TEST_CASE("states outside the subspace are refused") {
  const auto desc = describe("C_3x3");
  CHECK_THROWS_AS(membership(DensityMatrix(proj(e(9, 1)), desc.profile), desc, ToleranceConfig{}), SupportMismatch);
}

TEST_CASE("membership agrees with PPT on structured states") {
  Rng rng = make_rng(40);
  for (const char* tag : {"C_2x3_ii", "C_2x2_i", "C_2x2_ii"}) {
    CAPTURE(tag);
    const auto desc = describe(tag);
    const Partition cut = Partition::natural(desc.profile);
    for (int t = 0; t < 40; ++t) {
      const DensityMatrix rho(random_state_on(rng, desc.subspace, 1 + t % 3), desc.profile);
      const auto m = membership(rho, desc, ToleranceConfig{});
      CHECK(m.separable == is_ppt(rho, cut, ToleranceConfig{}).ppt);
      if (m.separable && m.certificate) CHECK((m.certificate->reconstruct() - rho.matrix()).norm() < 1e-6);
    }
  }
}

TEST_CASE("triplet subspace: the maximally mixed state on it is separable") {
  const auto desc = describe("C_2x2_ii");
  const DensityMatrix rho(desc.subspace * desc.subspace.adjoint() / 3.0, desc.profile);
  CHECK(membership(rho, desc, ToleranceConfig{}).separable);
  CHECK(is_separable_rank3(rho, Partition::natural(desc.profile), ToleranceConfig{}, 0).separable);
}

TEST_CASE("three-qubit rank-three states") {
  const DimensionProfile p({2, 2, 2});
  const Partition all = Partition::finest(3);
  const Mat sep = (proj(e(8, 0)) + proj(e(8, 7)) + proj(Vec::Ones(8))) / 3.0;
  const auto v = is_separable_rank3(DensityMatrix(sep, p), all, ToleranceConfig{}, 0);
  CHECK(v.separable);
  const double r = std::sqrt(0.5);
  Vec ghz = Vec::Zero(8);
  ghz[0] = ghz[7] = r;
  const Mat mix = 0.5 * proj(ghz) + 0.25 * proj(e(8, 0)) + 0.25 * proj(e(8, 7));
  const auto w = is_separable_rank3(DensityMatrix(mix, p), all, ToleranceConfig{}, 0);
  CHECK_FALSE(w.separable);
  CHECK(is_ppt_all_cuts(DensityMatrix(mix, p), all, ToleranceConfig{}).min_eigenvalue < -0.1);
}
