#include <doctest.h>

#include "subsep/fixtures.hpp"
#include "subsep/kernels.hpp"
#include "subsep/random.hpp"

using namespace subsep;

namespace {

std::vector<PencilCut> cuts_of(const std::string& tag) {
  const Fixture& f = fixture_by_tag(tag);
  return pencil_cuts(f.basis(), Partition::natural(f.profile));
}

// sigma_2 / sigma_1 of the reshaped ambient vector, by SVD.
double svd_ratio(const SubspaceBasis& b, const Vec& c, int da, int db) {
  const Vec v = b.matrix() * c;
  Mat m(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) m(i, j) = v[i * db + j];
  const Eigen::VectorXd s = singular_values(m);
  return s[1] / s[0];
}

}  // namespace

TEST_CASE("defect matches an SVD of the reshaped vector") {
  Rng rng = make_rng(21);
  for (const char* tag : {"C_2x2_ii", "C_3x3", "C_2x3_ii"}) {
    const Fixture& f = fixture_by_tag(tag);
    const auto cuts = pencil_cuts(f.basis(), Partition::natural(f.profile));
    for (int t = 0; t < 50; ++t) {
      const Vec c = random_unit_vector(rng, f.basis().dim());
      CHECK(rank_one_defect(cuts, c) ==
            doctest::Approx(svd_ratio(f.basis(), c, f.profile.dim(0), f.profile.dim(1))).epsilon(1e-9));
    }
  }
}

TEST_CASE("defect vanishes on product states") {
  const auto cuts = cuts_of("C_2x2_ii");
  // (1, 1, sqrt 2)/2 in the basis |00>, |11>, |Psi+> is |+>|+>
  Vec c(3);
  c << 0.5, 0.5, std::sqrt(0.5);
  CHECK(rank_one_defect(cuts, c) < 1e-14);
  Vec e(3);
  e << 0.0, 0.0, 1.0;
  CHECK(rank_one_defect(cuts, e) == doctest::Approx(1.0));
}

TEST_CASE("grid geometry") {
  ProjectiveGrid g{3, 16};
  CHECK(g.size() == 17 * 17 * 16 * 16);
  for (Index i : {Index{0}, Index{1000}, g.size() - 1}) CHECK(g.point(i).norm() == doctest::Approx(1.0));
  ProjectiveGrid g2{2, 64};
  CHECK(g2.size() == 65 * 64);
  for (Index n : g2.neighbours(5)) CHECK((n >= 0 && n < g2.size()));
}

TEST_CASE("parallel kernels equal their serial references") {
  for (const char* tag : {"C_2x2_ii", "C_3x3", "BLM_2x2"}) {
    const auto cuts = cuts_of(tag);
    ProjectiveGrid grid{fixture_by_tag(tag).basis().dim(), 16};
    CHECK(defect_grid_serial(cuts, grid) == defect_grid_parallel(cuts, grid));
  }
  Rng rng = make_rng(8);
  std::vector<Mat> rhos;
  const Mat basis = Mat::Identity(9, 9);
  for (int i = 0; i < 200; ++i) rhos.push_back(random_state_on(rng, basis.leftCols(3), 3));
  const DimensionProfile p({3, 3});
  CHECK(min_pt_eigenvalues_serial(rhos, p, {1}) == min_pt_eigenvalues_parallel(rhos, p, {1}));
}

TEST_CASE("multipartite pencils take the worst cut") {
  const Fixture& f = fixture_by_tag("multi_triangle");
  const auto cuts = pencil_cuts(f.basis(), Partition::natural(f.profile));
  CHECK(cuts.size() == 3);
  Vec c = Vec::Zero(3);
  c[0] = 1.0;
  CHECK(rank_one_defect(cuts, c) < 1e-14);
}
