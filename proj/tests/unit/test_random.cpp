#include <doctest.h>

#include <numeric>
#include <set>

#include "subsep/random.hpp"

using namespace subsep;

TEST_CASE("derived seeds are deterministic and distinct") {
  CHECK(derive_seed(7, 1) == derive_seed(7, 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(7, s));
  CHECK(seen.size() == 1000);
  Rng a = make_rng(9, 2), b = make_rng(9, 2);
  CHECK(a() == b());
}

TEST_CASE("haar unitaries are unitary") {
  Rng rng = make_rng(1);
  const Mat u = random_unitary(rng, 5);
  CHECK((u.adjoint() * u - Mat::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("invertible maps respect the condition bound") {
  Rng rng = make_rng(2);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd s = singular_values(random_invertible(rng, 3, 20.0));
    CHECK(s.maxCoeff() / s.minCoeff() <= 20.0 * (1 + 1e-9));
  }
}

TEST_CASE("dirichlet weights lie on the simplex") {
  Rng rng = make_rng(3);
  const auto w = random_dirichlet(rng, 4);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
  for (double x : w) CHECK(x >= 0.0);
}

TEST_CASE("random states live on the requested subspace") {
  Rng rng = make_rng(4);
  const Mat basis = Mat::Identity(6, 6).leftCols(2);
  const Mat rho = random_state_on(rng, basis, 2);
  CHECK(rho.trace().real() == doctest::Approx(1.0));
  const Mat p = basis * basis.adjoint();
  CHECK((p * rho * p - rho).norm() < 1e-12);
  CHECK(min_hermitian_eigenvalue(rho) > -1e-12);
  CHECK(numeric_rank(random_state_on(rng, basis, 1), 1e-9) == 1);
}
