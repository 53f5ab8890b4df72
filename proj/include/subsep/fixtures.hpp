#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subsep/linalg.hpp"

namespace subsep {

/// A canonical class representative.
struct Fixture {
  std::string name;      // file stem under fixtures/
  std::string expected;  // tag string (ClassTag or MultiTag)
  DimensionProfile profile;
  std::vector<Vec> vectors;
  // multipartite only: factors[i][j] is the subsystem-j factor of vector i
  std::optional<std::vector<std::vector<Vec>>> factors;

  SubspaceBasis basis() const { return SubspaceBasis(vectors, profile); }
};

/// One representative per bipartite class, in kAllTags order.
const std::vector<Fixture>& bipartite_fixtures();
/// Triangle, SphericalCone, Triangle.
const std::vector<Fixture>& multipartite_fixtures();
/// InputError when no fixture has this tag or name.
const Fixture& fixture_by_tag(const std::string& tag);

}  // namespace subsep
