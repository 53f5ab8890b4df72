#include <doctest.h>

#include "subsep/verify.hpp"

using namespace subsep;

TEST_CASE("geometry and dimension suites are clean and repeatable") {
  VerifyOptions opt;
  for (const char* s : {"geometry", "dimension"}) {
    opt.suite = s;
    int d1 = -1, d2 = -1;
    const auto a = run_verify(opt, d1);
    const auto b = run_verify(opt, d2);
    CHECK(d1 == 0);
    CHECK(a.dump() == b.dump());
    CHECK(a["seed"] == "7");
  }
}

TEST_CASE("small class run") {
  VerifyOptions opt;
  opt.samples = 40;
  opt.invariance_trials = 5;
  const auto r = verify_classes(opt);
  CHECK(r.report.disagreements == 0);
  CHECK(r.report.trials >= 14 * 40);
  CHECK(verify_invariance(opt).report.disagreements == 0);
}

TEST_CASE("seeds change the report digest") {
  VerifyOptions a, b;
  a.suite = b.suite = "dimension";
  b.seed = 8;
  int d = 0;
  CHECK(run_verify(a, d)["seed"] != run_verify(b, d)["seed"]);
}

TEST_CASE("unknown suite") {
  VerifyOptions opt;
  opt.suite = "nope";
  int d = 0;
  CHECK_THROWS_AS(run_verify(opt, d), InputError);
}

TEST_CASE("local maps act factor-wise") {
  Rng rng = make_rng(1);
  const Mat x = random_invertible(rng, 2), y = random_invertible(rng, 3);
  const Vec a = random_unit_vector(rng, 2), b = random_unit_vector(rng, 3);
  const auto out = apply_local({kron(a, b)}, x, y);
  CHECK(chordal_distance(out[0], kron(Vec(x * a), Vec(y * b))) < 1e-12);
}
