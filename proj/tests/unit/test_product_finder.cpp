#include <doctest.h>

#include "subsep/fixtures.hpp"
#include "subsep/oracle.hpp"
#include "subsep/product_finder.hpp"

using namespace subsep;

namespace {

ProductStateSet find(const std::string& tag, std::uint64_t seed = 0) {
  const Fixture& f = fixture_by_tag(tag);
  return find_product_states(f.basis(), Partition::natural(f.profile), ToleranceConfig{}, seed);
}

Vec e(Index n, Index k) {
  Vec v = Vec::Zero(n);
  v[k] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("component kinds of the canonical fixtures") {
  struct Row {
    const char* tag;
    ComponentKind kind;
    int sep;
  };
  for (const Row& r : {Row{"BLM_NoProduct", ComponentKind::Empty, 0},
                       Row{"BLM_OneProduct", ComponentKind::IsolatedPoints, 1},
                       Row{"BLM_2x2", ComponentKind::IsolatedPoints, 2},
                       Row{"BLM_1x2", ComponentKind::FullPlane, 2},
                       Row{"C_3x3", ComponentKind::IsolatedPoints, 3},
                       Row{"C_2x3_ii", ComponentKind::Line, 3},
                       Row{"C_2x2_i", ComponentKind::TwoLines, 3},
                       Row{"C_2x2_ii", ComponentKind::Conic, 3},
                       Row{"C_1x3", ComponentKind::FullPlane, 3}}) {
    CAPTURE(r.tag);
    const auto s = find(r.tag);
    CHECK(s.report.kind == r.kind);
    CHECK(s.dim_S_sep == r.sep);
  }
}

TEST_CASE("reported products are products") {
  for (const auto& f : bipartite_fixtures()) {
    CAPTURE(f.name);
    const auto s = find_product_states(f.basis(), Partition::natural(f.profile), ToleranceConfig{}, 3);
    const std::vector<int> a{0};
    for (const auto& p : s.spanning_products) CHECK(schmidt_ratio(p.amplitudes(), f.profile, a) < 1e-9);
    for (const auto& w : s.report.witnesses)
      CHECK(schmidt_ratio(ambient_vector(f.basis(), w), f.profile, a) < 1e-9);
  }
}

TEST_CASE("triplet subspace products are psi (x) psi") {
  const auto s = find("C_2x2_ii");
  REQUIRE(!s.report.witnesses.empty());
  const auto& f = fixture_by_tag("C_2x2_ii");
  for (const auto& w : s.report.witnesses) {
    const auto parts = factorize_product(ambient_vector(f.basis(), w), f.profile, Partition::natural(f.profile));
    CHECK(projectively_equal(parts[0].amplitudes(), parts[1].amplitudes(), 1e-9));
  }
}

TEST_CASE("isolated points of C_3x3 are the basis products") {
  const auto s = find("C_3x3");
  REQUIRE(s.report.points.size() == 3);
  for (int k = 0; k < 3; ++k) {
    double best = 1.0;
    for (const auto& p : s.report.points) best = std::min(best, chordal_distance(p, e(3, k)));
    CHECK(best < 1e-9);
  }
  CHECK(s.local_dims == std::vector<int>{3, 3});
}

TEST_CASE("seed does not change the solution set") {
  const auto a = find("C_2x3_i", 1), b = find("C_2x3_i", 99);
  CHECK(a.report.kind == b.report.kind);
  CHECK(a.dim_S_sep == b.dim_S_sep);
}

TEST_CASE("factorize and assemble round trip") {
  const DimensionProfile p({2, 3, 2});
  Vec a(2), b(3), c(2);
  a << 1.0, Complex(0, 1);
  b << 0.5, 1.0, -1.0;
  c << 2.0, 1.0;
  const Vec v = kron(kron(a, b), c);
  const Partition part = Partition::bipartite({1}, 3);
  const auto parts = factorize_product(v, p, part);
  REQUIRE(parts.size() == 2);
  std::vector<Vec> fs{parts[0].amplitudes(), parts[1].amplitudes()};
  CHECK(chordal_distance(assemble_product(fs, p, part), v) < 1e-12);
}

TEST_CASE("general position") {
  CHECK(general_position({e(2, 0), e(2, 1), e(2, 0) + e(2, 1)}, 1e-6));
  CHECK_FALSE(general_position({e(2, 0), e(2, 1), e(2, 1)}, 1e-6));
  CHECK(general_position({e(3, 0), e(3, 1), e(3, 2)}, 1e-6));
}

TEST_CASE("canonical point") {
  Vec c(2);
  c << Complex(0, -2), 1.0;
  const Vec p = canonical_point(c);
  CHECK(p.norm() == doctest::Approx(1.0));
  CHECK(p[0].real() > 0);
  CHECK(std::abs(p[0].imag()) < 1e-15);
}

TEST_CASE("finder agrees with the grid oracle on the fixtures") {
  for (const char* tag : {"C_2x2_i", "C_2x2_ii", "C_3x3", "C_2x3_ii", "BLM_2x2"}) {
    CAPTURE(tag);
    const Fixture& f = fixture_by_tag(tag);
    const auto part = Partition::natural(f.profile);
    const auto s = find_product_states(f.basis(), part, ToleranceConfig{}, 5);
    const auto oracle = brute_force_product_search(f.basis(), part);
    const auto cmp = compare_with_oracle(f.basis(), part, s, oracle);
    CHECK_MESSAGE(cmp.agree, cmp.message);
  }
}
