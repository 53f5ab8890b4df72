#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subsep/bipartite.hpp"
#include "subsep/fixtures.hpp"
#include "subsep/multipartite.hpp"
#include "subsep/oracle.hpp"
#include "subsep/separability.hpp"

namespace subsep {

using nlohmann::json;

/// {"dims", "vectors", optional "factors", "tol", "seed"}; complex numbers are [re, im].
struct SubspaceInput {
  DimensionProfile profile;
  std::vector<Vec> vectors;
  std::optional<std::vector<std::vector<Vec>>> factors;
  std::optional<ToleranceConfig> tol;
  std::optional<std::uint64_t> seed;
};

/// {"dims", "matrix"}, row-major.
struct StateInput {
  DimensionProfile profile;
  Mat matrix;
};

/// Reads and parses a file; InputError on unreadable or malformed JSON.
json load_json(const std::string& path);

SubspaceInput parse_subspace(const json& j);
StateInput parse_state(const json& j);

Complex complex_from_json(const json& j);
Vec vector_from_json(const json& j);
Mat matrix_from_json(const json& j);

/// "0,1|2" -> groups {0,1}, {2}. Every subsystem must appear exactly once.
Partition parse_cut(const std::string& text, const DimensionProfile& profile);

json fixture_to_json(const Fixture& f);
json description_to_json(const SeparableSetDescription& d);
json classification_to_json(const ClassificationResult& r);
json multipartite_to_json(const MultiClassResult& r);
json certificate_to_json(const Certificate& c);
json report_to_json(const VerificationReport& r);

/// Deterministic number formatting: doubles rounded to 12 significant digits.
json rounded(const json& j);

}  // namespace subsep
