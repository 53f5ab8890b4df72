#include "subsep/verify.hpp"

#include <cinttypes>
#include <cstdio>

#include "subsep/fixtures.hpp"
#include "subsep/geometry.hpp"
#include "subsep/io.hpp"
#include "subsep/separability.hpp"

namespace subsep {

namespace {

using nlohmann::json;

void record(VerificationReport& rep, std::uint64_t seed, const std::string& digest, const std::string& expected,
            const std::string& got) {
  ++rep.disagreements;
  rep.failures.push_back({seed, digest, expected, got});
}

std::string vectors_digest(const std::vector<Vec>& vs) { return matrix_digest(columns_of(vs)); }

json report_json(const SuiteOutcome& s) {
  json j = report_to_json(s.report);
  j["name"] = s.name;
  j["details"] = s.details;
  return j;
}

Vec random_coefficients(Rng& rng, int n) {
  // keep every coefficient away from zero so the state is a genuine superposition
  Vec c = random_gaussian_vector(rng, n);
  for (Index i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) < 0.1) c[i] = std::polar(0.1, std::arg(c[i]));
  return c / c.norm();
}

}  // namespace

std::vector<Vec> apply_local(const std::vector<Vec>& vectors, const Mat& x, const Mat& y) {
  const Mat xy = kron(x, y);
  std::vector<Vec> out;
  for (const auto& v : vectors) out.push_back(xy * v);
  return out;
}

std::vector<Vec> random_product_subspace(Rng& rng, int da, int db, int dim) {
  std::vector<Vec> as, bs;
  for (int i = 0; i < dim; ++i) {
    as.push_back(random_unit_vector(rng, da));
    bs.push_back(random_unit_vector(rng, db));
  }
  if (dim == 3 && uniform(rng) < 0.25) as[1] = as[0];
  std::vector<Vec> out;
  for (int i = 0; i < dim; ++i) out.push_back(kron(as[static_cast<size_t>(i)], bs[static_cast<size_t>(i)]));
  return out;
}

void random_independence_instance(Rng& rng, std::vector<Vec>& alphas, std::vector<Vec>& betas) {
  const int da = uniform(rng) < 0.5 ? 2 : 3;  // qubit alphas are dependent and in general position
  const int db = uniform(rng) < 0.5 ? 2 : 3;
  alphas.clear();
  betas.clear();
  for (int i = 0; i < 3; ++i) {
    alphas.push_back(random_unit_vector(rng, da));
    betas.push_back(random_unit_vector(rng, db));
  }
  // often let two betas coincide; never all three
  const double u = uniform(rng);
  if (u < 0.5) {
    const int keep = static_cast<int>(rng() % 3);
    const int other = (keep + 1 + static_cast<int>(rng() % 2)) % 3;
    betas[static_cast<size_t>(other)] = betas[static_cast<size_t>(keep)];
  }
}

MultipartiteInstance random_multipartite_instance(Rng& rng, int k) {
  std::vector<int> dims;
  std::vector<std::vector<Vec>> factors(3);
  for (int j = 0; j < k; ++j) {
    const int d = uniform(rng) < 0.7 ? 2 : 3;
    dims.push_back(d);
    const int pool = 1 + static_cast<int>(rng() % 3);
    std::vector<Vec> p;
    for (int i = 0; i < pool; ++i) p.push_back(random_unit_vector(rng, d));
    for (int i = 0; i < 3; ++i) {
      const int pick = i < pool ? i : static_cast<int>(rng() % static_cast<std::uint64_t>(pool));
      factors[static_cast<size_t>(i)].push_back(p[static_cast<size_t>(pick)]);
    }
  }
  return MultipartiteInstance::from_factors(DimensionProfile(dims), factors);
}

SuiteOutcome verify_classes(const VerifyOptions& opt) {
  SuiteOutcome out{"classes", {}, json::array()};
  const auto& fx = bipartite_fixtures();
  for (size_t i = 0; i < fx.size(); ++i) {
    const Fixture& f = fx[i];
    const std::uint64_t s = derive_seed(opt.seed, 100 + i);
    json d = {{"fixture", f.name}, {"expected", f.expected}};
    try {
      const auto r = classify_bipartite(f.basis(), Partition::natural(f.profile), opt.tol, s);
      d["tag"] = to_string(r.tag);
      ++out.report.trials;
      if (to_string(r.tag) != f.expected) record(out.report, s, vectors_digest(f.vectors), f.expected, to_string(r.tag));
      const auto mc = monte_carlo_class_check(r.description, opt.samples, derive_seed(opt.seed, 200 + i), opt.tol);
      d["trials"] = mc.trials;
      d["disagreements"] = mc.disagreements;
      out.report.merge(mc);
    } catch (const Error& e) {
      ++out.report.trials;
      record(out.report, s, vectors_digest(f.vectors), f.expected, e.what());
    }
    out.details.push_back(d);
  }
  return out;
}

SuiteOutcome verify_invariance(const VerifyOptions& opt) {
  SuiteOutcome out{"invariance", {}, json::array()};
  const auto& fx = bipartite_fixtures();
  for (size_t i = 0; i < fx.size(); ++i) {
    const Fixture& f = fx[i];
    const int n = opt.invariance_trials;
    std::vector<std::string> got(static_cast<size_t>(n));
    std::vector<std::uint64_t> seeds(static_cast<size_t>(n));
    std::vector<std::string> digests(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < n; ++t) {
      const std::uint64_t s = derive_seed(opt.seed, 10000 + 1000 * i + static_cast<std::uint64_t>(t));
      seeds[static_cast<size_t>(t)] = s;
      Rng rng = make_rng(s);
      const Mat x = random_invertible(rng, f.profile.dim(0));
      const Mat y = random_invertible(rng, f.profile.dim(1));
      const auto vs = apply_local(f.vectors, x, y);
      digests[static_cast<size_t>(t)] = vectors_digest(vs);
      try {
        const SubspaceBasis b(vs, f.profile);
        got[static_cast<size_t>(t)] = to_string(classify_bipartite(b, Partition::natural(f.profile), opt.tol, s).tag);
      } catch (const Error& e) {
        got[static_cast<size_t>(t)] = std::string("error: ") + e.what();
      }
    }
    int bad = 0;
    for (int t = 0; t < n; ++t) {
      ++out.report.trials;
      if (got[static_cast<size_t>(t)] != f.expected) {
        ++bad;
        record(out.report, seeds[static_cast<size_t>(t)], digests[static_cast<size_t>(t)], f.expected,
               got[static_cast<size_t>(t)]);
      }
    }
    out.details.push_back({{"fixture", f.name}, {"trials", n}, {"tag_changes", bad}});
  }
  return out;
}

SuiteOutcome verify_oracle(const VerifyOptions& opt) {
  SuiteOutcome out{"oracle", {}, json::object()};
  json kinds = json::object();
  double worst = 0.0;
  for (int i = 0; i < opt.oracle_instances; ++i) {
    const std::uint64_t s = derive_seed(opt.seed, 50000 + static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    const int db = i % 2 == 0 ? 2 : 3;
    const int dim = i % 4 == 3 ? 2 : 3;
    const auto vs = random_product_subspace(rng, 2, db, dim);
    const DimensionProfile prof({2, db});
    const Partition cut = Partition::natural(prof);
    ++out.report.trials;
    try {
      const SubspaceBasis basis(vs, prof);
      const auto found = find_product_states(basis, cut, opt.tol, derive_seed(s, 1));
      const auto zeros = brute_force_product_search(basis, cut);
      const auto cmp = compare_with_oracle(basis, cut, found, zeros);
      const std::string key = to_string(found.report.kind);
      kinds[key] = kinds.value(key, 0) + 1;
      worst = std::max(worst, cmp.worst_distance);
      if (!cmp.agree) record(out.report, s, vectors_digest(vs), "oracle agreement", cmp.message);
    } catch (const Error& e) {
      record(out.report, s, vectors_digest(vs), "oracle agreement", e.what());
    }
  }
  out.report.worst_residual = worst;
  out.details = {{"components", kinds}};
  return out;
}

SuiteOutcome verify_multipartite(const VerifyOptions& opt) {
  SuiteOutcome out{"multipartite", {}, json::object()};
  auto& rep = out.report;

  // tensor independence
  int rank3 = 0;
  for (int i = 0; i < opt.independence_instances; ++i) {
    const std::uint64_t s = derive_seed(opt.seed, 70000 + static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    std::vector<Vec> a, b;
    random_independence_instance(rng, a, b);
    ++rep.trials;
    try {
      if (tensor_independence(a, b, opt.tol.root_cluster_tol))
        ++rank3;
      else
        record(rep, s, vectors_digest(a), "rank 3", "dependent");
    } catch (const Error& e) {
      record(rep, s, vectors_digest(a), "rank 3", e.what());
    }
  }
  out.details["independence"] = {{"instances", opt.independence_instances}, {"rank3", rank3}};

  // fixtures, checked across every cut
  json fixtures = json::array();
  const auto& fx = multipartite_fixtures();
  for (size_t i = 0; i < fx.size(); ++i) {
    const Fixture& f = fx[i];
    const std::uint64_t s = derive_seed(opt.seed, 80000 + i);
    json d = {{"fixture", f.name}, {"expected", f.expected}};
    ++rep.trials;
    try {
      const auto inst = MultipartiteInstance::from_factors(f.profile, *f.factors);
      const auto r = classify_multipartite(inst, opt.tol, s);
      d["tag"] = to_string(r.tag);
      if (to_string(r.tag) != f.expected) record(rep, s, vectors_digest(f.vectors), f.expected, to_string(r.tag));
      const auto mc = monte_carlo_class_check(r.description, opt.multipartite_samples, derive_seed(s, 1), opt.tol);
      rep.merge(mc);
      // pure superpositions of the spanning products are entangled across some cut
      Rng rng = make_rng(derive_seed(s, 2));
      int npt = 0;
      for (int t = 0; t < opt.multipartite_samples; ++t) {
        const Vec c = random_coefficients(rng, 3);
        const Vec v = r.description.subspace * (r.description.subspace.adjoint() * columns_of(f.vectors) * c);
        const auto rho = DensityMatrix::pure(v, f.profile);
        ++rep.trials;
        if (!is_ppt_all_cuts(rho, Partition::finest(f.profile.parties()), opt.tol).ppt)
          ++npt;
        else
          record(rep, s, matrix_digest(rho.matrix()), "NPT across some cut", "PPT across every cut");
      }
      d["npt_superpositions"] = npt;
    } catch (const Error& e) {
      record(rep, s, vectors_digest(f.vectors), f.expected, e.what());
    }
    fixtures.push_back(d);
  }
  out.details["fixtures"] = fixtures;

  // random genuine instances
  const int n = opt.random_multipartite;
  std::vector<std::string> tags(static_cast<size_t>(n)), problems(static_cast<size_t>(n));
  std::vector<std::uint64_t> seeds(static_cast<size_t>(n));
  std::vector<int> genuine(static_cast<size_t>(n), 0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const std::uint64_t s = derive_seed(opt.seed, 90000 + static_cast<std::uint64_t>(i));
    seeds[static_cast<size_t>(i)] = s;
    Rng rng = make_rng(s);
    const MultipartiteInstance inst = random_multipartite_instance(rng, 3 + static_cast<int>(rng() % 2));
    try {
      const auto r = classify_multipartite(inst, opt.tol, s);
      tags[static_cast<size_t>(i)] = to_string(r.tag);
      const bool rank3 = r.dim_S_sep == 3;
      const int k_reduced = r.tag == MultiTag::LocalQudit ? 1 : (r.tag == MultiTag::Bipartite ? 2 : static_cast<int>(r.active.size()));
      if (rank3 && k_reduced >= 3) {
      genuine[static_cast<size_t>(i)] = 1;
      if (r.bipartite) {
        const auto t = r.bipartite->tag;
        if (t == ClassTag::C_2x2_i || t == ClassTag::C_2x2_ii) problems[static_cast<size_t>(i)] = "tag " + to_string(t);
      }
      if (r.tag != MultiTag::Triangle && r.tag != MultiTag::SphericalCone)
        problems[static_cast<size_t>(i)] = "genuine instance tagged " + to_string(r.tag);
      // the raw-vector route must agree with the factor-table route
      std::vector<Vec> prods;
      for (int j = 0; j < 3; ++j) prods.push_back(inst.product(j));
      const auto r2 = classify_multipartite_subspace(SubspaceBasis(prods, inst.profile), opt.tol, derive_seed(s, 1));
      if (r2.tag != r.tag) problems[static_cast<size_t>(i)] = "subspace route gave " + to_string(r2.tag);
      }
    } catch (const Error& e) {
      problems[static_cast<size_t>(i)] = e.what();
    }
  }
  json counts = json::object();
  int genuine_count = 0;
  for (int i = 0; i < n; ++i) {
    ++rep.trials;
    genuine_count += genuine[static_cast<size_t>(i)];
    if (genuine[static_cast<size_t>(i)]) counts[tags[static_cast<size_t>(i)]] = counts.value(tags[static_cast<size_t>(i)], 0) + 1;
    if (!problems[static_cast<size_t>(i)].empty())
      record(rep, seeds[static_cast<size_t>(i)], "", "Triangle or SphericalCone", problems[static_cast<size_t>(i)]);
  }
  out.details["random"] = {{"instances", n}, {"genuine", genuine_count}, {"tags", counts}};
  return out;
}

SuiteOutcome verify_geometry(const VerifyOptions& opt) {
  SuiteOutcome out{"geometry", {}, json::array()};
  auto& rep = out.report;
  const std::pair<const char*, int> cases[] = {{"C_3x3", 3}, {"C_2x3_ii", 64}, {"C_3x2_ii", 64},
                                               {"C_2x2_i", 64}, {"C_2x2_ii", 256}};
  for (size_t i = 0; i < std::size(cases); ++i) {
    const auto& [tag, n] = cases[i];
    const Fixture& f = fixture_by_tag(tag);
    const std::uint64_t s = derive_seed(opt.seed, 60000 + i);
    ++rep.trials;
    try {
      const auto r = classify_bipartite(f.basis(), Partition::natural(f.profile), opt.tol, s);
      const FigureData fig = emit_figure(r.description, n);
      const double viol = constraint_violation(fig);
      json d = {{"fixture", f.name}, {"figure", fig.label}, {"points", fig.points.size()}, {"violation", viol}};
      if (!(viol <= 1e-12)) record(rep, s, "", "constraints within 1e-12", fig.label);
      int members = 0;
      for (const auto& st : fig.states) {
        const auto m = membership(DensityMatrix(st, f.profile), r.description, opt.tol);
        if (m.separable) ++members;
      }
      d["metadata_states"] = fig.states.size();
      d["metadata_members"] = members;
      if (members != static_cast<int>(fig.states.size())) record(rep, s, "", "metadata states are members", fig.label);
      if (r.description.kind == DescriptionKind::LCurve) {
        const auto t = emit_extreme_density_curve(r.description, 16);
        d["harmonic_error"] = t.harmonic_error;
        d["product_defect"] = t.product_defect;
        rep.worst_residual = std::max(rep.worst_residual, t.harmonic_error);
        if (!(t.harmonic_error <= 1e-10)) record(rep, s, "", "harmonics within 1e-10", "harmonic mismatch");
        if (!(t.product_defect <= 1e-10) || !(t.rank_defect <= 1e-10))
          record(rep, s, "", "rank-one product curve points", "defect");
      }
      out.details.push_back(d);
    } catch (const Error& e) {
      record(rep, s, "", tag, e.what());
    }
  }
  return out;
}

SuiteOutcome verify_dimension(const VerifyOptions& opt) {
  SuiteOutcome out{"dimension", {}, json::array()};
  std::vector<const Fixture*> all;
  for (const auto& f : bipartite_fixtures()) all.push_back(&f);
  for (const auto& f : multipartite_fixtures()) all.push_back(&f);
  for (size_t i = 0; i < all.size(); ++i) {
    const Fixture& f = *all[i];
    const std::uint64_t s = derive_seed(opt.seed, 65000 + i);
    ++out.report.trials;
    try {
      const SeparableSetDescription desc =
          f.factors ? classify_multipartite(MultipartiteInstance::from_factors(f.profile, *f.factors), opt.tol, s).description
                    : classify_bipartite(f.basis(), Partition::natural(f.profile), opt.tol, s).description;
      if (desc.kind == DescriptionKind::NoSeparable) continue;
      Rng rng = make_rng(derive_seed(s, 1));
      const int got = affine_dimension(sample_extreme_points(desc, rng, 40));
      const int want = desc.expected_affine_dimension();
      out.details.push_back({{"fixture", f.name}, {"kind", to_string(desc.kind)}, {"dimension", got}, {"expected", want}});
      if (got != want)
        record(out.report, s, "", std::to_string(want), std::to_string(got));
    } catch (const Error& e) {
      record(out.report, s, "", "description", e.what());
    }
  }
  return out;
}

json run_verify(const VerifyOptions& opt, int& disagreements) {
  std::vector<SuiteOutcome (*)(const VerifyOptions&)> suites;
  const std::string& s = opt.suite;
  if (s == "all")
    suites = {verify_classes, verify_invariance, verify_oracle, verify_multipartite, verify_geometry, verify_dimension};
  else if (s == "classes")
    suites = {verify_classes, verify_invariance};
  else if (s == "oracle")
    suites = {verify_oracle};
  else if (s == "multipartite")
    suites = {verify_multipartite};
  else if (s == "geometry")
    suites = {verify_geometry};
  else if (s == "dimension")
    suites = {verify_dimension};
  else
    throw InputError("unknown suite '" + s + "'");

  json results = json::array();
  disagreements = 0;
  int trials = 0;
  for (auto fn : suites) {
    const SuiteOutcome o = fn(opt);
    disagreements += o.report.disagreements;
    trials += o.report.trials;
    results.push_back(report_json(o));
  }
  char seed[32];
  std::snprintf(seed, sizeof seed, "%" PRIu64, opt.seed);
  json j = {{"suite", s}, {"seed", seed}, {"samples", opt.samples}, {"results", results},
            {"trials", trials}, {"disagreements", disagreements}};
  j = rounded(j);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  j["digest"] = buf;
  return j;
}

}  // namespace subsep
