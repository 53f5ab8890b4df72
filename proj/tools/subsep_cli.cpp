#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "subsep/geometry.hpp"
#include "subsep/io.hpp"
#include "subsep/verify.hpp"

using namespace subsep;

namespace {

constexpr int kInputError = 1;
constexpr int kSolverError = 2;
constexpr int kVerifyFailed = 3;

struct Common {
  std::string input;
  std::string cut;
  double tol = -1.0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string format = "json";
};

std::uint64_t env_seed() {
  const char* s = std::getenv("SUBSEP_SEED");
  if (!s || !*s) return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw InputError(std::string("SUBSEP_SEED is not an integer: ") + s);
  }
}

ToleranceConfig tolerances(const Common& c, const std::optional<ToleranceConfig>& from_file) {
  ToleranceConfig t = from_file.value_or(ToleranceConfig{});
  if (c.tol > 0) t.membership_tol = c.tol;
  t.validate();
  return t;
}

std::uint64_t seed_of(const Common& c, const std::optional<std::uint64_t>& from_file) {
  if (c.seed_given) return c.seed;
  if (from_file) return *from_file;
  return env_seed();
}

void print(const json& j) { std::cout << rounded(j).dump(2) << '\n'; }

json classify_input(const SubspaceInput& in, const Common& c) {
  const ToleranceConfig tol = tolerances(c, in.tol);
  const std::uint64_t seed = seed_of(c, in.seed);
  const SubspaceBasis basis(in.vectors, in.profile, tol.rank_rel_tol);
  if (in.profile.parties() == 2 || !c.cut.empty()) {
    const Partition cut = c.cut.empty() ? Partition::natural(in.profile) : parse_cut(c.cut, in.profile);
    if (!cut.is_bipartite() && in.profile.parties() != cut.size())
      throw InputError("a cut with more than two groups must list one subsystem per group");
    if (cut.is_bipartite()) return classification_to_json(classify_bipartite(basis, cut, tol, seed));
  }
  if (in.profile.parties() < 2) throw InputError("need at least two subsystems");
  if (basis.dim() != 3 || in.vectors.size() != 3) {
    return multipartite_to_json(classify_multipartite_subspace(basis, tol, seed));
  }
  std::vector<std::string> notes;
  MultiClassResult r;
  if (in.factors) {
    r = classify_multipartite(MultipartiteInstance::from_factors(in.profile, *in.factors), tol, seed);
  } else {
    try {
      const auto inst = MultipartiteInstance::from_product_vectors(in.vectors, in.profile, tol.membership_tol);
      notes.push_back("no factors table: input vectors were factorized automatically");
      r = classify_multipartite(inst, tol, seed);
    } catch (const InputError&) {
      notes.push_back("input vectors are not all product states: product states located by the solver");
      r = classify_multipartite_subspace(basis, tol, seed);
    }
  }
  r.warnings.insert(r.warnings.begin(), notes.begin(), notes.end());
  for (const auto& n : notes) std::cerr << "warning: " << n << '\n';
  return multipartite_to_json(r);
}

int cmd_classify(const Common& c) {
  const SubspaceInput in = parse_subspace(load_json(c.input));
  print(classify_input(in, c));
  return 0;
}

int cmd_check_state(const Common& c) {
  const StateInput in = parse_state(load_json(c.input));
  const ToleranceConfig tol = tolerances(c, std::nullopt);
  const std::uint64_t seed = seed_of(c, std::nullopt);
  const DensityMatrix rho(in.matrix, in.profile, tol.membership_tol);
  const SubspaceBasis support = support_basis(rho, tol);
  const Partition cut = c.cut.empty() ? Partition::natural(in.profile) : parse_cut(c.cut, in.profile);
  json j;
  j["rank"] = support.dim();
  if (cut.is_bipartite()) {
    const auto cls = classify_bipartite(support, cut, tol, seed);
    const PptResult ppt = is_ppt(rho, cut, tol);
    const SeparabilityVerdict m = membership(rho, cls.description, tol);
    j["class"] = to_string(cls.tag);
    j["ppt"] = ppt.ppt;
    j["min_pt_eig"] = ppt.min_eigenvalue;
    j["membership"] = m.separable;
    j["membership_residual"] = m.residual;
    j["separable"] = ppt.ppt;
    if (m.certificate) j["certificate"] = certificate_to_json(*m.certificate);
  } else {
    const auto v = is_separable_rank3(rho, cut, tol, seed);
    const auto cls = classify_multipartite_subspace(support, tol, seed);
    const PptResult ppt = is_ppt_all_cuts(rho, cut, tol);
    j["class"] = to_string(cls.tag);
    j["ppt"] = ppt.ppt;
    j["min_pt_eig"] = ppt.min_eigenvalue;
    j["membership"] = v.separable;
    j["membership_residual"] = v.residual;
    j["separable"] = v.separable;
    if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
  }
  print(j);
  return 0;
}

int cmd_emit_geometry(const Common& c, const std::string& tag, int samples, const std::string& out) {
  if (tag.empty() == c.input.empty()) throw InputError("give exactly one of --class and --input");
  const ToleranceConfig tol = tolerances(c, std::nullopt);
  const std::uint64_t seed = seed_of(c, std::nullopt);
  SeparableSetDescription desc;
  if (!tag.empty()) {
    const Fixture& f = fixture_by_tag(tag);
    if (f.factors)
      desc = classify_multipartite(MultipartiteInstance::from_factors(f.profile, *f.factors), tol, seed).description;
    else
      desc = classify_bipartite(f.basis(), Partition::natural(f.profile), tol, seed).description;
  } else {
    const SubspaceInput in = parse_subspace(load_json(c.input));
    const SubspaceBasis basis(in.vectors, in.profile, tol.rank_rel_tol);
    if (in.profile.parties() == 2)
      desc = classify_bipartite(basis, Partition::natural(in.profile), tol, seed).description;
    else
      desc = classify_multipartite_subspace(basis, tol, seed).description;
  }
  const FigureData fig = emit_figure(desc, samples);
  write_figure(fig, out);
  int members = 0;
  for (const auto& st : fig.states)
    if (membership(DensityMatrix(st, desc.profile), desc, tol).separable) ++members;
  std::cout << fig.label << ": " << fig.points.size() << " points written to " << out << '\n'
            << "constraint violation " << constraint_violation(fig) << " (limit 1e-12): pass\n"
            << "metadata states in the separable set: " << members << "/" << fig.states.size() << '\n';
  if (desc.kind == DescriptionKind::LCurve) {
    const auto t = emit_extreme_density_curve(desc, std::max(samples, 5));
    std::cout << "harmonic extraction error " << t.harmonic_error << '\n';
  }
  return members == static_cast<int>(fig.states.size()) ? 0 : kSolverError;
}

int cmd_verify(const Common& c, const std::string& suite, int samples, const std::string& out) {
  VerifyOptions opt;
  opt.suite = suite;
  opt.samples = samples;
  opt.seed = c.seed_given ? c.seed : env_seed();
  opt.tol = tolerances(c, std::nullopt);
  int disagreements = 0;
  const json report = run_verify(opt, disagreements);
  if (out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot open " + out);
    f << report.dump(2) << '\n';
  }
  return disagreements == 0 ? 0 : kVerifyFailed;
}

int cmd_export_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  int n = 0;
  for (const auto* set : {&bipartite_fixtures(), &multipartite_fixtures()})
    for (const auto& f : *set) {
      const std::string path = (std::filesystem::path(dir) / (f.name + ".json")).string();
      std::ofstream out(path);
      if (!out) throw InputError("cannot write " + path);
      out << fixture_to_json(f).dump(2) << '\n';
      ++n;
    }
  std::cout << n << " fixtures written to " << dir << '\n';
  return 0;
}

void add_common(CLI::App* cmd, Common& c, bool with_input) {
  if (with_input) cmd->add_option("--input", c.input, "JSON input file");
  cmd->add_option("--tol", c.tol, "membership tolerance");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&c](const std::uint64_t& s) {
        c.seed = s;
        c.seed_given = true;
      },
      "random seed (default: $SUBSEP_SEED, else 0)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subsep: product states and separable sets of small subspaces"};
  app.require_subcommand(1);
  Common c;
  std::string tag, out, suite = "all";
  int samples = 0;

  auto* classify = app.add_subcommand("classify", "classify the span of a set of vectors");
  add_common(classify, c, true);
  classify->add_option("--cut", c.cut, "bipartition such as \"0,1|2\"");
  classify->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}));

  auto* check = app.add_subcommand("check-state", "decide separability of a state of rank at most three");
  add_common(check, c, true);
  check->add_option("--cut", c.cut, "partition such as \"0|1\" or \"0|1|2\"");
  check->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}));

  auto* emit = app.add_subcommand("emit-geometry", "write the plotting data of a separable set");
  add_common(emit, c, true);
  emit->add_option("--class", tag, "class tag of a canonical fixture");
  emit->add_option("--samples", samples, "points per curve")->default_val(64);
  emit->add_option("--out", out, "output path (.csv or .json)")->required();

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, c, false);
  verify->add_option("--suite", suite, "all, classes, oracle, multipartite, geometry or dimension")
      ->check(CLI::IsMember({"all", "classes", "oracle", "multipartite", "geometry", "dimension"}));
  verify->add_option("--samples", samples, "Monte-Carlo trials per fixture")->default_val(1000);
  verify->add_option("--out", out, "write the report here instead of stdout");

  auto* exportf = app.add_subcommand("export-fixtures", "write the canonical fixtures as JSON files");
  exportf->add_option("--out", out, "directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*classify || *check) {
      if (c.input.empty()) throw InputError("--input is required");
      return *classify ? cmd_classify(c) : cmd_check_state(c);
    }
    if (*emit) return cmd_emit_geometry(c, tag, samples, out);
    if (*verify) {
      if (samples < 2) throw InputError("--samples must be at least 2");
      return cmd_verify(c, suite, samples, out);
    }
    return cmd_export_fixtures(out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverError;
  }
}
