// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "subsep/fixtures.hpp"
#include "subsep/verify.hpp"

using namespace subsep;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* what, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s  %d  %-34s %s; %.2f s", pass ? "PASS" : "FAIL", id, what, o.detail.c_str(), secs);
  if (limit_s > 0) std::printf(" (limit %.0f s)", limit_s);
  std::printf("\n");
  std::fflush(stdout);
}

Outcome from_suite(const SuiteOutcome& s) {
  std::string d = std::to_string(s.report.trials) + " trials, " + std::to_string(s.report.disagreements) +
                  " disagreements";
  if (!s.report.failures.empty()) d += ", first: " + s.report.failures.front().got;
  return {s.report.disagreements == 0 && s.report.trials > 0, d};
}

}  // namespace

int main() {
  VerifyOptions opt;
  opt.seed = 7;

  criterion(1, "canonical class coverage", 1.0, [] {
    int right = 0;
    std::string wrong;
    for (const auto& f : bipartite_fixtures()) {
      const auto r = classify_bipartite(f.basis(), Partition::natural(f.profile), ToleranceConfig{}, 0);
      if (to_string(r.tag) == f.expected) ++right;
      else wrong += " " + f.name + "->" + to_string(r.tag);
    }
    return Outcome{right == 14, std::to_string(right) + "/14 tags" + wrong};
  });

  criterion(2, "local invertible invariance", 30.0, [&] {
    VerifyOptions o = opt;
    o.invariance_trials = 100;
    return from_suite(verify_invariance(o));
  });

  criterion(3, "membership vs PPT equivalence", 120.0, [&] {
    VerifyOptions o = opt;
    o.samples = 1000;
    o.tol.membership_tol = 1e-8;
    return from_suite(verify_classes(o));
  });

  criterion(4, "product finder vs grid oracle", 120.0, [&] {
    VerifyOptions o = opt;
    o.oracle_instances = 200;
    return from_suite(verify_oracle(o));
  });

  criterion(5, "geometry constraints", 5.0, [&] { return from_suite(verify_geometry(opt)); });

  criterion(6, "multipartite suite", 180.0, [&] { return from_suite(verify_multipartite(opt)); });

  criterion(7, "dimension law", 30.0, [&] { return from_suite(verify_dimension(opt)); });

  criterion(8, "determinism of verify --suite all", 0.0, [&] {
    VerifyOptions o = opt;
    o.suite = "all";
    int d1 = 0, d2 = 0;
    const std::string a = run_verify(o, d1).dump(2);
    const std::string b = run_verify(o, d2).dump(2);
    return Outcome{a == b && d1 == 0 && d2 == 0,
                   std::string(a == b ? "byte-identical" : "reports differ") + ", " + std::to_string(a.size()) +
                       " bytes, " + std::to_string(d1) + " disagreements"};
  });

  return failures == 0 ? 0 : 1;
}
