#include <doctest.h>

#include "subsep/linalg.hpp"
#include "subsep/random.hpp"

using namespace subsep;

namespace {

Vec ket(std::initializer_list<Complex> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

// Direct index-loop partial transpose of the second factor.
Mat pt_second(const Mat& rho, int da, int db) {
  Mat out(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(i * db + j, k * db + l) = rho(i * db + l, k * db + j);
  return out;
}

}  // namespace

TEST_CASE("dimension profile arithmetic") {
  const DimensionProfile p({2, 3, 4});
  CHECK(p.total() == 24);
  CHECK(p.parties() == 3);
  const std::vector<int> sel{0, 2};
  CHECK(p.select(sel).dims() == std::vector<int>{2, 4});
  CHECK(p.dim_of(sel) == 8);
  CHECK(p.concat(DimensionProfile({5})).total() == 120);
  CHECK_THROWS_AS(DimensionProfile({2, 0}), InputError);
}

TEST_CASE("partitions validate") {
  const DimensionProfile p({2, 2, 2});
  CHECK(Partition::natural(DimensionProfile({2, 3})).is_bipartite());
  CHECK(Partition::natural(p).size() == 3);
  CHECK(Partition::bipartite({1}, 3).order() == std::vector<int>{1, 0, 2});
  Partition bad{{{0, 1}, {1, 2}}};
  CHECK_THROWS_AS(bad.validate(p), InputError);
}

TEST_CASE("state vectors normalize and reject zero") {
  const StateVector s(ket({3.0, 4.0}));
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(StateVector(ket({0.0, 0.0})), InputError);
  CHECK_THROWS_AS(StateVector(ket({1.0, 0.0, 0.0}), DimensionProfile({2, 2})), InputError);
}

TEST_CASE("chordal distance ignores phase and scale") {
  const Vec a = ket({1.0, 2.0});
  CHECK(chordal_distance(a, Complex(0, 3) * a) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(chordal_distance(ket({1.0, 0.0}), ket({0.0, 1.0})) == doctest::Approx(1.0));
  CHECK(projectively_equal(a, -a, 1e-12));
}

TEST_CASE("kron and tensor agree") {
  const Vec a = ket({1.0, Complex(0, 1)});
  const Vec b = ket({2.0, 0.0, 1.0});
  const Vec k = kron(a, b);
  CHECK(k.size() == 6);
  CHECK(std::abs(k[3] - Complex(0, 2)) < 1e-15);
  const StateVector t = tensor(StateVector(a), StateVector(b));
  CHECK(t.profile().dims() == std::vector<int>{2, 3});
  CHECK(chordal_distance(t.amplitudes(), k) < 1e-12);
}

TEST_CASE("subsystem permutation round trip") {
  Rng rng = make_rng(3);
  const DimensionProfile p({2, 3, 2});
  const Vec v = random_unit_vector(rng, 12);
  const std::vector<int> perm{2, 0, 1};
  const Vec w = permute_subsystems(v, p, perm);
  const std::vector<int> inv = inverse_permutation(perm);
  const Vec back = permute_subsystems(w, DimensionProfile({2, 2, 3}), inv);
  CHECK((back - v).norm() < 1e-14);
  // a product maps to the product of permuted factors
  const Vec a = random_unit_vector(rng, 2), b = random_unit_vector(rng, 3), c = random_unit_vector(rng, 2);
  CHECK((permute_subsystems(kron(kron(a, b), c), p, perm) - kron(kron(c, a), b)).norm() < 1e-14);
}

TEST_CASE("schmidt decomposition") {
  const double r = std::sqrt(0.5);
  const StateVector bell(ket({r, 0, 0, r}), DimensionProfile({2, 2}));
  const std::vector<int> a{0};
  const auto terms = schmidt_decompose(bell, a);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].coefficient == doctest::Approx(r));
  CHECK(schmidt_ratio(bell.amplitudes(), bell.profile(), a) == doctest::Approx(1.0));
  const Vec prod = kron(ket({1.0, 2.0}), ket({1.0, -1.0, 0.5}));
  CHECK(schmidt_ratio(prod, DimensionProfile({2, 3}), a) < 1e-14);
}

TEST_CASE("partial transpose matches index loops") {
  Rng rng = make_rng(5);
  const Mat g = Mat::Random(6, 6);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  const DensityMatrix d(rho, DimensionProfile({2, 3}));
  const std::vector<int> second{1};
  CHECK((partial_transpose(d.matrix(), d.profile(), second) - pt_second(d.matrix(), 2, 3)).norm() < 1e-14);
  CHECK((partial_transpose(d, 1) - pt_second(d.matrix(), 2, 3)).norm() < 1e-14);
}

TEST_CASE("Bell projector has partial-transpose eigenvalue -1/2") {
  const double r = std::sqrt(0.5);
  const DensityMatrix bell = DensityMatrix::pure(ket({r, 0, 0, r}), DimensionProfile({2, 2}));
  CHECK(min_hermitian_eigenvalue(partial_transpose(bell, 1)) == doctest::Approx(-0.5));
  const std::vector<int> keep{0};
  const DensityMatrix red = partial_trace(bell, keep);
  CHECK((red.matrix() - 0.5 * Mat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("density matrices reject bad input") {
  Mat m = Mat::Identity(4, 4);
  m(0, 0) = -1.0;
  CHECK_THROWS_AS(DensityMatrix(m, DimensionProfile({2, 2})), InputError);
  Mat h = Mat::Identity(4, 4);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(DensityMatrix(h, DimensionProfile({2, 2})), InputError);
}

TEST_CASE("support of a state") {
  ToleranceConfig tol;
  const DensityMatrix mixed(Mat::Identity(4, 4), DimensionProfile({2, 2}));
  CHECK_THROWS_AS(support_basis(mixed, tol), UnsupportedRank);
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  CHECK(support_basis(DensityMatrix(m, DimensionProfile({2, 2})), tol).dim() == 2);
}

TEST_CASE("numeric rank and subspace basis") {
  const Vec a = ket({1.0, 0.0, 0.0}), b = ket({0.0, 1.0, 0.0});
  const SubspaceBasis s({a, b, a + 2.0 * b}, DimensionProfile({3}));
  CHECK(s.dim() == 2);
  CHECK((s.matrix().adjoint() * s.matrix() - Mat::Identity(2, 2)).norm() < 1e-14);
  CHECK(numeric_rank(columns_of(std::vector<Vec>{a, b, a + b}), 1e-9) == 2);
}

TEST_CASE("canonical phase and hermitian coordinates") {
  const Vec v = canonical_phase(ket({Complex(0, 2), 1.0}));
  CHECK(std::abs(v[0].imag()) < 1e-15);
  CHECK(v[0].real() > 0);
  const Mat h = Mat::Identity(3, 3);
  CHECK(hermitian_to_real(h).size() == 9);
}

TEST_CASE("tolerance validation") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.validate());
  t.rank_rel_tol = -1;
  CHECK_THROWS_AS(t.validate(), InputError);
}
