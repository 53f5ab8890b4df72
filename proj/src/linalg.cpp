#include "subsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace subsep {

namespace {

// Row-major strides for a list of dimensions.
std::vector<Index> strides_of(const std::vector<int>& dims) {
  std::vector<Index> strides(dims.size(), 1);
  for (int j = static_cast<int>(dims.size()) - 2; j >= 0; --j)
    strides[j] = strides[j + 1] * dims[j + 1];
  return strides;
}

void decompose(Index flat, const std::vector<int>& dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    digits[j] = static_cast<int>(flat % dims[j]);
    flat /= dims[j];
  }
}

// Maps every input flat index to its flat index after the permutation.
std::vector<Index> permutation_map(const DimensionProfile& profile, std::span<const int> perm) {
  const auto& dims = profile.dims();
  if (perm.size() != dims.size()) throw InputError("permutation size does not match profile");
  std::vector<int> new_dims(dims.size());
  for (size_t p = 0; p < perm.size(); ++p) new_dims[p] = dims.at(static_cast<size_t>(perm[p]));
  const auto new_strides = strides_of(new_dims);
  // stride of old subsystem perm[p] in the new layout
  std::vector<Index> old_to_new_stride(dims.size());
  for (size_t p = 0; p < perm.size(); ++p) old_to_new_stride[static_cast<size_t>(perm[p])] = new_strides[p];

  std::vector<Index> map(static_cast<size_t>(profile.total()));
  std::vector<int> digits;
  for (Index i = 0; i < profile.total(); ++i) {
    decompose(i, dims, digits);
    Index target = 0;
    for (size_t j = 0; j < dims.size(); ++j) target += digits[j] * old_to_new_stride[j];
    map[static_cast<size_t>(i)] = target;
  }
  return map;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(rank_rel_tol > 0) || !(membership_tol > 0) || !(root_cluster_tol > 0) || !(psd_tol > 0))
    throw InputError("all tolerances must be strictly positive");
}

// ---- DimensionProfile -------------------------------------------------------

DimensionProfile::DimensionProfile(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InputError("dimension profile needs at least one subsystem");
  for (int d : dims_)
    if (d < 1) throw InputError("local dimensions must be positive");
}

Index DimensionProfile::total() const {
  Index n = 1;
  for (int d : dims_) n *= d;
  return n;
}

DimensionProfile DimensionProfile::concat(const DimensionProfile& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return DimensionProfile(std::move(d));
}

DimensionProfile DimensionProfile::select(std::span<const int> subsystems) const {
  std::vector<int> d;
  for (int s : subsystems) d.push_back(dim(s));
  return DimensionProfile(std::move(d));
}

Index DimensionProfile::dim_of(std::span<const int> subsystems) const {
  Index n = 1;
  for (int s : subsystems) n *= dim(s);
  return n;
}

// ---- Partition --------------------------------------------------------------

Partition Partition::bipartite(const std::vector<int>& side_a, int parties) {
  return Partition{{side_a, complement(side_a, parties)}};
}

Partition Partition::finest(int parties) {
  Partition p;
  for (int j = 0; j < parties; ++j) p.groups.push_back({j});
  return p;
}

Partition Partition::natural(const DimensionProfile& profile) {
  return finest(profile.parties());
}

void Partition::validate(const DimensionProfile& profile) const {
  if (groups.size() < 2) throw InputError("a partition needs at least two nonempty groups");
  std::vector<int> seen(static_cast<size_t>(profile.parties()), 0);
  for (const auto& g : groups) {
    if (g.empty()) throw InputError("partition groups must be nonempty");
    for (int s : g) {
      if (s < 0 || s >= profile.parties()) throw InputError("partition refers to unknown subsystem");
      if (seen[static_cast<size_t>(s)]++) throw InputError("subsystem listed twice in partition");
    }
  }
  for (int c : seen)
    if (!c) throw InputError("partition does not cover every subsystem");
}

std::vector<int> Partition::order() const {
  std::vector<int> o;
  for (const auto& g : groups) o.insert(o.end(), g.begin(), g.end());
  return o;
}

DimensionProfile Partition::group_profile(const DimensionProfile& profile) const {
  std::vector<int> d;
  for (const auto& g : groups) d.push_back(static_cast<int>(profile.dim_of(g)));
  return DimensionProfile(std::move(d));
}

// ---- StateVector ------------------------------------------------------------

StateVector::StateVector(Vec amplitudes, DimensionProfile profile)
    : amplitudes_(std::move(amplitudes)), profile_(std::move(profile)) {
  if (amplitudes_.size() != profile_.total())
    throw InputError("vector length " + std::to_string(amplitudes_.size()) +
                     " does not match product of dims " + std::to_string(profile_.total()));
  const double n = amplitudes_.norm();
  if (!(n > 0) || !std::isfinite(n)) throw InputError("state vector has zero or non-finite norm");
  amplitudes_ /= n;
}

StateVector::StateVector(Vec amplitudes)
    : StateVector(amplitudes, DimensionProfile({static_cast<int>(amplitudes.size())})) {}

StateVector StateVector::basis(const DimensionProfile& profile, Index index) {
  Vec v = Vec::Zero(profile.total());
  v[index] = 1.0;
  return StateVector(std::move(v), profile);
}

bool projectively_equal(const Vec& a, const Vec& b, double tol) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) return false;
  return std::abs(a.dot(b)) / (na * nb) >= 1.0 - tol;
}

bool projectively_equal(const StateVector& a, const StateVector& b, double tol) {
  return projectively_equal(a.amplitudes(), b.amplitudes(), tol);
}

double chordal_distance(const Vec& a, const Vec& b) {
  // norm of the part of b orthogonal to a; 1 - |<a|b>|^2 loses half the digits
  const Vec u = a / a.norm();
  const Vec w = b / b.norm();
  return std::min(1.0, (w - u * u.dot(w)).norm());
}

// ---- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(Mat entries, DimensionProfile profile, double tol)
    : entries_(std::move(entries)), profile_(std::move(profile)) {
  if (entries_.rows() != entries_.cols()) throw InputError("density matrix must be square");
  if (entries_.rows() != profile_.total()) throw InputError("density matrix size does not match dims");
  const double scale = std::max(1.0, entries_.norm());
  if ((entries_ - entries_.adjoint()).norm() > tol * scale)
    throw InputError("density matrix is not Hermitian");
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
  const double tr = entries_.trace().real();
  if (!(tr > 0)) throw InputError("density matrix has nonpositive trace");
  entries_ /= tr;
  if (min_hermitian_eigenvalue(entries_) < -tol) throw InputError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.profile());
}

DensityMatrix DensityMatrix::pure(const Vec& psi, const DimensionProfile& profile) {
  return pure(StateVector(psi, profile));
}

// ---- SubspaceBasis ----------------------------------------------------------

Mat orthonormalize(const std::vector<Vec>& vectors, double rank_rel_tol) {
  if (vectors.empty()) return Mat();
  double scale = 0;
  for (const auto& v : vectors) scale = std::max(scale, v.norm());
  std::vector<Vec> kept;
  for (const auto& v : vectors) {
    Vec w = v;
    // two passes of MGS for stability
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) w -= q * q.dot(w);
    const double n = w.norm();
    if (n > rank_rel_tol * scale && n > 0) kept.push_back(w / n);
  }
  Mat out(vectors.front().size(), static_cast<Index>(kept.size()));
  for (size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Index>(i)) = kept[i];
  return out;
}

SubspaceBasis::SubspaceBasis(const std::vector<Vec>& vectors, DimensionProfile profile,
                             double rank_rel_tol)
    : profile_(std::move(profile)) {
  if (vectors.empty()) throw InputError("subspace needs at least one vector");
  for (const auto& v : vectors)
    if (v.size() != profile_.total()) throw InputError("basis vector length does not match dims");
  // rank decided by SVD so the count agrees with numeric_rank
  const int rank = numeric_rank(columns_of(vectors), rank_rel_tol);
  if (rank == 0) throw InputError("subspace vectors are all zero");
  if (rank > 3) throw UnsupportedRank(rank);
  columns_ = orthonormalize(vectors, rank_rel_tol);
  if (columns_.cols() != rank) {
    // MGS and SVD disagree only at the tolerance edge; trust the SVD
    Eigen::JacobiSVD<Mat> svd(columns_of(vectors), Eigen::ComputeThinU);
    columns_ = svd.matrixU().leftCols(rank);
  }
}

SubspaceBasis SubspaceBasis::from_states(const std::vector<StateVector>& states, double rank_rel_tol) {
  if (states.empty()) throw InputError("subspace needs at least one vector");
  std::vector<Vec> v;
  for (const auto& s : states) v.push_back(s.amplitudes());
  return SubspaceBasis(v, states.front().profile(), rank_rel_tol);
}

// ---- operations -------------------------------------------------------------

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  return StateVector(kron(a.amplitudes(), b.amplitudes()), a.profile().concat(b.profile()));
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (size_t p = 0; p < perm.size(); ++p) inv[static_cast<size_t>(perm[p])] = static_cast<int>(p);
  return inv;
}

Vec permute_subsystems(const Vec& v, const DimensionProfile& profile, std::span<const int> perm) {
  const auto map = permutation_map(profile, perm);
  Vec out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[map[static_cast<size_t>(i)]] = v[i];
  return out;
}

Mat permute_subsystems(const Mat& m, const DimensionProfile& profile, std::span<const int> perm) {
  const auto map = permutation_map(profile, perm);
  Mat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = m(i, j);
  return out;
}

std::vector<int> complement(std::span<const int> side, int parties) {
  std::vector<int> rest;
  for (int j = 0; j < parties; ++j)
    if (std::find(side.begin(), side.end(), j) == side.end()) rest.push_back(j);
  return rest;
}

Mat reshape_across(const Vec& v, const DimensionProfile& profile, std::span<const int> side_a) {
  const auto side_b = complement(side_a, profile.parties());
  if (side_a.empty() || side_b.empty()) throw InputError("degenerate cut: one side is empty");
  std::vector<int> perm(side_a.begin(), side_a.end());
  perm.insert(perm.end(), side_b.begin(), side_b.end());
  const Vec w = permute_subsystems(v, profile, perm);
  const Index da = profile.dim_of(side_a), db = profile.dim_of(side_b);
  return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      w.data(), da, db);
}

std::vector<SchmidtTerm> schmidt_decompose(const StateVector& v, std::span<const int> side_a,
                                           double rank_rel_tol) {
  const auto& profile = v.profile();
  const Mat m = reshape_across(v.amplitudes(), profile, side_a);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const auto side_b = complement(side_a, profile.parties());
  const DimensionProfile pa = profile.select(side_a), pb = profile.select(side_b);
  std::vector<SchmidtTerm> terms;
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i] < rank_rel_tol * s[0] || s[i] == 0) break;
    terms.push_back({s[i], StateVector(svd.matrixU().col(i), pa),
                     StateVector(svd.matrixV().col(i).conjugate(), pb)});
  }
  return terms;
}

double schmidt_ratio(const Vec& v, const DimensionProfile& profile, std::span<const int> side_a) {
  const Mat m = reshape_across(v, profile, side_a);
  const auto s = singular_values(m);
  if (s.size() < 2 || s[0] == 0) return 0.0;
  return s[1] / s[0];
}

Mat partial_transpose(const Mat& rho, const DimensionProfile& profile, std::span<const int> subsystems) {
  if (rho.rows() != profile.total() || rho.cols() != profile.total())
    throw InputError("matrix size does not match dims");
  for (int s : subsystems)
    if (s < 0 || s >= profile.parties()) throw InputError("partial transpose of unknown subsystem");
  const auto& dims = profile.dims();
  const auto strides = strides_of(dims);
  Mat out(rho.rows(), rho.cols());
  std::vector<int> ri, ci;
  for (Index r = 0; r < rho.rows(); ++r) {
    decompose(r, dims, ri);
    for (Index c = 0; c < rho.cols(); ++c) {
      decompose(c, dims, ci);
      Index nr = r, nc = c;
      for (int s : subsystems) {
        const Index delta = (ci[s] - ri[s]) * strides[s];
        nr += delta;
        nc -= delta;
      }
      out(nr, nc) = rho(r, c);
    }
  }
  return out;
}

Mat partial_transpose(const DensityMatrix& rho, int side) {
  if (rho.profile().parties() != 2) throw InputError("profile is not bipartite");
  const int s[1] = {side};
  return partial_transpose(rho.matrix(), rho.profile(), s);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const auto& profile = rho.profile();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty() || static_cast<int>(kept.size()) >= profile.parties())
    throw InputError("partial trace keep set must be a nonempty strict subset");
  for (int s : kept)
    if (s < 0 || s >= profile.parties()) throw InputError("partial trace of unknown subsystem");
  const auto traced = complement(kept, profile.parties());
  std::vector<int> perm = kept;
  perm.insert(perm.end(), traced.begin(), traced.end());
  const Mat m = permute_subsystems(rho.matrix(), profile, perm);
  const Index dk = profile.dim_of(kept), dt = profile.dim_of(traced);
  Mat out = Mat::Zero(dk, dk);
  for (Index t = 0; t < dt; ++t)
    for (Index i = 0; i < dk; ++i)
      for (Index j = 0; j < dk; ++j) out(i, j) += m(i * dt + t, j * dt + t);
  return DensityMatrix(out, profile.select(kept));
}

Eigen::VectorXd singular_values(const Mat& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues();
}

int numeric_rank(const Mat& m, double rank_rel_tol) {
  const auto s = singular_values(m);
  if (s.size() == 0 || !(s[0] > 0)) return 0;
  int r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] >= rank_rel_tol * s[0]) ++r;
  return r;
}

int numeric_rank(const Mat& m, const ToleranceConfig& tol) { return numeric_rank(m, tol.rank_rel_tol); }

Eigen::VectorXd hermitian_eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_hermitian_eigenvalue(const Mat& h) {
  if (h.size() == 0) return 0.0;
  return hermitian_eigenvalues(h)[0];
}

SubspaceBasis support_basis(const DensityMatrix& rho, const ToleranceConfig& tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
  const auto& ev = es.eigenvalues();
  const double top = ev[ev.size() - 1];
  std::vector<Vec> vecs;
  for (Index i = ev.size() - 1; i >= 0; --i)
    if (ev[i] > tol.rank_rel_tol * top) vecs.push_back(es.eigenvectors().col(i));
  if (vecs.size() > 3) throw UnsupportedRank(static_cast<int>(vecs.size()));
  return SubspaceBasis(vecs, rho.profile(), tol.rank_rel_tol);
}

Mat columns_of(const std::vector<StateVector>& states) {
  if (states.empty()) return Mat();
  Mat m(states.front().size(), static_cast<Index>(states.size()));
  for (size_t i = 0; i < states.size(); ++i) m.col(static_cast<Index>(i)) = states[i].amplitudes();
  return m;
}

Mat columns_of(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return Mat();
  Mat m(vectors.front().size(), static_cast<Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Index>(i)) = vectors[i];
  return m;
}

Vec canonical_phase(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) return v * (std::abs(v[i]) / v[i]);
  }
  return v;
}

Eigen::VectorXd hermitian_to_real(const Mat& h) {
  const Index n = h.rows();
  Eigen::VectorXd out(n * n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    out[k++] = h(i, i).real();
    for (Index j = i + 1; j < n; ++j) {
      out[k++] = std::sqrt(2.0) * h(i, j).real();
      out[k++] = std::sqrt(2.0) * h(i, j).imag();
    }
  }
  return out;
}

}  // namespace subsep
