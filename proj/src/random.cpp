#include "subsep/random.hpp"

#include <cmath>

namespace subsep {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) { return Rng(derive_seed(seed, stream)); }

double uniform(Rng& rng, double lo, double hi) {
  // 53 random bits; avoids the implementation-defined uniform_real_distribution
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {
double standard_normal(Rng& rng) {
  // Box-Muller, portable across standard libraries
  double u1 = uniform(rng);
  while (u1 <= 0.0) u1 = uniform(rng);
  const double u2 = uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}
}  // namespace

Complex complex_gaussian(Rng& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return {re, im};
}

Vec random_gaussian_vector(Rng& rng, Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = complex_gaussian(rng);
  return v;
}

Vec random_unit_vector(Rng& rng, Index n) {
  Vec v = random_gaussian_vector(rng, n);
  return v / v.norm();
}

Mat random_unitary(Rng& rng, Index n) {
  Mat g(n, n);
  for (Index j = 0; j < n; ++j) g.col(j) = random_gaussian_vector(rng, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat random_invertible(Rng& rng, Index n, double max_cond) {
  const Mat u = random_unitary(rng, n);
  const Mat v = random_unitary(rng, n);
  const double half = 0.5 * std::log(max_cond);
  Eigen::VectorXd s(n);
  for (Index i = 0; i < n; ++i) s[i] = std::exp(uniform(rng, -half, half));
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

std::vector<double> random_dirichlet(Rng& rng, int n) {
  std::vector<double> w(static_cast<size_t>(n));
  double total = 0;
  for (auto& x : w) {
    double u = uniform(rng);
    while (u <= 0.0) u = uniform(rng);
    x = -std::log(u);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

Mat random_state_on(Rng& rng, const Mat& basis, int rank) {
  const Index n = basis.rows();
  Mat rho = Mat::Zero(n, n);
  const auto w = random_dirichlet(rng, rank);
  for (int i = 0; i < rank; ++i) {
    const Vec c = random_unit_vector(rng, basis.cols());
    const Vec psi = basis * c;
    rho += w[static_cast<size_t>(i)] * psi * psi.adjoint();
  }
  return rho / rho.trace().real();
}

}  // namespace subsep
