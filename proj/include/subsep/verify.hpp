#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "subsep/bipartite.hpp"
#include "subsep/multipartite.hpp"
#include "subsep/oracle.hpp"

namespace subsep {

struct VerifyOptions {
  std::string suite = "all";  // all | classes | oracle | multipartite | geometry | dimension
  int samples = 1000;         // Monte-Carlo trials per bipartite fixture
  std::uint64_t seed = 7;
  int invariance_trials = 100;
  int oracle_instances = 200;
  int independence_instances = 1000;
  int multipartite_samples = 100;
  int random_multipartite = 2000;
  ToleranceConfig tol;
};

struct SuiteOutcome {
  std::string name;
  VerificationReport report;
  nlohmann::json details;
};

SuiteOutcome verify_classes(const VerifyOptions& opt);
SuiteOutcome verify_invariance(const VerifyOptions& opt);
SuiteOutcome verify_oracle(const VerifyOptions& opt);
SuiteOutcome verify_multipartite(const VerifyOptions& opt);
SuiteOutcome verify_geometry(const VerifyOptions& opt);
SuiteOutcome verify_dimension(const VerifyOptions& opt);

/// Runs the selected suites; the JSON holds no timings and is identical
/// for identical options. InputError for an unknown suite name.
nlohmann::json run_verify(const VerifyOptions& opt, int& disagreements);

/// Local invertible map X (x) Y applied to each vector (two-party profiles).
std::vector<Vec> apply_local(const std::vector<Vec>& vectors, const Mat& x, const Mat& y);

/// Span of `dim` random product vectors in C^da (x) C^db. With probability
/// one quarter two of them share their A factor.
std::vector<Vec> random_product_subspace(Rng& rng, int da, int db, int dim);

/// Alphas independent or dependent in general position, betas not all
/// equal: the hypotheses of tensor_independence.
void random_independence_instance(Rng& rng, std::vector<Vec>& alphas, std::vector<Vec>& betas);

/// k-partite instance whose factors are drawn from small per-subsystem pools,
/// so coincidences between rows are frequent.
MultipartiteInstance random_multipartite_instance(Rng& rng, int k);

}  // namespace subsep
