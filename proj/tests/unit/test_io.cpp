#include <doctest.h>

#include "subsep/io.hpp"

using namespace subsep;

TEST_CASE("complex values") {
  CHECK(complex_from_json(json::parse("[1.5, -2]")) == Complex(1.5, -2));
  CHECK(complex_from_json(json::parse("3")) == Complex(3, 0));
  CHECK_THROWS_AS(complex_from_json(json::parse("[1]")), InputError);
  CHECK_THROWS_AS(complex_from_json(json::parse("\"x\"")), InputError);
}

TEST_CASE("subspace files") {
  const auto in = parse_subspace(json::parse(R"({"dims": [2, 2], "vectors": [[1, 0, 0, 0], [0, 0, 0, [0, 1]]],
                                                 "tol": {"membership_tol": 1e-6}, "seed": 12})"));
  CHECK(in.profile.dims() == std::vector<int>{2, 2});
  CHECK(in.vectors.size() == 2);
  CHECK(in.vectors[1][3] == Complex(0, 1));
  REQUIRE(in.tol.has_value());
  CHECK(in.tol->membership_tol == 1e-6);
  CHECK(in.seed == 12u);
  CHECK_THROWS_AS(parse_subspace(json::parse(R"({"dims": [2, 2], "vectors": [[1, 0, 0]]})")), InputError);
  CHECK_THROWS_AS(parse_subspace(json::parse(R"({"dims": [2, 2], "vectors": []})")), UnsupportedRank);
  CHECK_THROWS_AS(parse_subspace(json::parse(
                      R"({"dims": [2], "vectors": [[1, 0], [0, 1], [1, 1], [1, -1]]})")),
                  UnsupportedRank);
  CHECK_THROWS_AS(parse_subspace(json::parse(R"({"vectors": [[1]]})")), InputError);
  CHECK_THROWS_AS(parse_subspace(json::parse(R"({"dims": [2, 2], "vectors": [[1, 0, 0, 0]], "tol": "x"})")),
                  InputError);
}

TEST_CASE("factor tables") {
  const auto in = parse_subspace(json::parse(
      R"({"dims": [2, 2], "vectors": [[1, 0, 0, 0]], "factors": [[[1, 0], [1, 0]]]})"));
  REQUIRE(in.factors.has_value());
  CHECK(in.factors->at(0).size() == 2);
  CHECK_THROWS_AS(parse_subspace(json::parse(
                      R"({"dims": [2, 2], "vectors": [[1, 0, 0, 0]], "factors": [[[1, 0]]]})")),
                  InputError);
}

TEST_CASE("state files") {
  const auto s = parse_state(json::parse(R"({"dims": [2], "matrix": [[1, 0], [0, 0]]})"));
  CHECK(s.matrix.rows() == 2);
  CHECK_THROWS_AS(parse_state(json::parse(R"({"dims": [2], "matrix": [[1, 0]]})")), InputError);
  CHECK_THROWS_AS(parse_state(json::parse(R"({"dims": [3], "matrix": [[1, 0], [0, 0]]})")), InputError);
}

TEST_CASE("cuts") {
  const DimensionProfile p({2, 2, 3});
  const auto c = parse_cut("0,1|2", p);
  CHECK(c.groups == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(parse_cut("0|1|2", p).size() == 3);
  CHECK_THROWS_AS(parse_cut("0,1", p), InputError);
  CHECK_THROWS_AS(parse_cut("0|1", p), InputError);
  CHECK_THROWS_AS(parse_cut("0|x,1|2", p), InputError);
  CHECK_THROWS_AS(parse_cut("0||1,2", p), InputError);
}

TEST_CASE("rounding is stable") {
  const json j = rounded(json{{"a", 0.1 + 0.2}, {"b", {-0.0, 1e-300}}});
  CHECK(j["a"].dump() == "0.3");
  CHECK(j["b"][0].dump() == "0.0");
}

TEST_CASE("missing files") { CHECK_THROWS_AS(load_json("/nonexistent/file.json"), InputError); }

TEST_CASE("fixture round trip") {
  for (const auto* set : {&bipartite_fixtures(), &multipartite_fixtures()})
    for (const auto& f : *set) {
      const auto in = parse_subspace(fixture_to_json(f));
      CHECK(in.profile == f.profile);
      REQUIRE(in.vectors.size() == f.vectors.size());
      for (size_t i = 0; i < f.vectors.size(); ++i) CHECK((in.vectors[i] - f.vectors[i]).norm() == 0.0);
      CHECK(in.factors.has_value() == f.factors.has_value());
    }
}
