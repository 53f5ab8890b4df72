#include "subsep/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "subsep/geometry.hpp"

namespace subsep {

namespace {

std::vector<int> parse_dims(const json& j) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    throw InputError("\"dims\" must be a non-empty array");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 1) throw InputError("\"dims\" entries must be positive integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

ToleranceConfig parse_tol(const json& j) {
  ToleranceConfig t;
  if (j.is_number()) {
    t.membership_tol = j.get<double>();
  } else if (j.is_object()) {
    t.rank_rel_tol = j.value("rank_rel_tol", t.rank_rel_tol);
    t.membership_tol = j.value("membership_tol", t.membership_tol);
    t.root_cluster_tol = j.value("root_cluster_tol", t.root_cluster_tol);
    t.psd_tol = j.value("psd_tol", t.psd_tol);
  } else {
    throw InputError("\"tol\" must be a number or an object");
  }
  t.validate();
  return t;
}

json vec_list(const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_to_json(canonical_phase(v)));
  return out;
}

json ball_to_json(const LocalBall& b) {
  return {{"span", vec_list({b.span.col(0), b.span.col(1)})},
          {"free_group", b.free_group},
          {"fixed_factor", vector_to_json(canonical_phase(b.fixed_factor))}};
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("amplitude vectors must be non-empty arrays");
  Vec v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = complex_from_json(j[i]);
  return v;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrices are non-empty arrays of rows");
  const auto n = static_cast<Index>(j.size());
  Mat m(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) throw InputError("matrix must be square");
    for (Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

SubspaceInput parse_subspace(const json& j) {
  if (!j.is_object()) throw InputError("subspace file must be a JSON object");
  SubspaceInput in;
  in.profile = DimensionProfile(parse_dims(j));
  if (!j.contains("vectors") || !j["vectors"].is_array()) throw InputError("\"vectors\" must be an array");
  const auto& vs = j["vectors"];
  if (vs.empty() || vs.size() > 3) throw UnsupportedRank(static_cast<int>(vs.size()));
  for (const auto& v : vs) {
    Vec x = vector_from_json(v);
    if (x.size() != in.profile.total())
      throw InputError("vector length " + std::to_string(x.size()) + " does not match dims");
    in.vectors.push_back(std::move(x));
  }
  if (j.contains("factors")) {
    const auto& f = j["factors"];
    if (!f.is_array() || f.size() != vs.size()) throw InputError("\"factors\" needs one row per vector");
    std::vector<std::vector<Vec>> rows;
    for (const auto& row : f) {
      if (!row.is_array() || static_cast<int>(row.size()) != in.profile.parties())
        throw InputError("each \"factors\" row needs one factor per subsystem");
      std::vector<Vec> r;
      for (size_t s = 0; s < row.size(); ++s) {
        Vec x = vector_from_json(row[s]);
        if (x.size() != in.profile.dim(static_cast<int>(s))) throw InputError("factor length does not match dims");
        r.push_back(std::move(x));
      }
      rows.push_back(std::move(r));
    }
    in.factors = std::move(rows);
  }
  if (j.contains("tol")) in.tol = parse_tol(j["tol"]);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("\"seed\" must be a non-negative integer");
    in.seed = j["seed"].get<std::uint64_t>();
  }
  return in;
}

StateInput parse_state(const json& j) {
  if (!j.is_object()) throw InputError("state file must be a JSON object");
  StateInput in;
  in.profile = DimensionProfile(parse_dims(j));
  if (!j.contains("matrix")) throw InputError("state file needs \"matrix\"");
  in.matrix = matrix_from_json(j["matrix"]);
  if (in.matrix.rows() != in.profile.total()) throw InputError("matrix size does not match dims");
  return in;
}

Partition parse_cut(const std::string& text, const DimensionProfile& profile) {
  Partition p;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, '|')) {
    std::vector<int> g;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        size_t used = 0;
        const int s = std::stoi(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        g.push_back(s);
      } catch (const std::exception&) {
        throw InputError("bad subsystem index '" + item + "' in cut");
      }
    }
    if (g.empty()) throw InputError("empty group in cut '" + text + "'");
    p.groups.push_back(std::move(g));
  }
  if (p.groups.size() < 2) throw InputError("cut needs at least two groups");
  p.validate(profile);
  return p;
}

json fixture_to_json(const Fixture& f) {
  json j;
  j["name"] = f.name;
  j["expected"] = f.expected;
  j["dims"] = f.profile.dims();
  j["vectors"] = json::array();
  for (const auto& v : f.vectors) j["vectors"].push_back(vector_to_json(v));
  if (f.factors) {
    j["factors"] = json::array();
    for (const auto& row : *f.factors) {
      json r = json::array();
      for (const auto& v : row) r.push_back(vector_to_json(v));
      j["factors"].push_back(r);
    }
  }
  return j;
}

json description_to_json(const SeparableSetDescription& d) {
  json j;
  j["kind"] = to_string(d.kind);
  j["partition"] = d.partition.groups;
  j["affine_dimension"] = d.expected_affine_dimension();
  switch (d.kind) {
    case DescriptionKind::NoSeparable: break;
    case DescriptionKind::AllStates:
      j["basis"] = vec_list([&] {
        std::vector<Vec> cols;
        for (Index c = 0; c < d.all_states_basis.cols(); ++c) cols.push_back(d.all_states_basis.col(c));
        return cols;
      }());
      break;
    case DescriptionKind::SinglePoint:
    case DescriptionKind::Segment:
    case DescriptionKind::Triangle: j["vertices"] = vec_list(d.vertices); break;
    case DescriptionKind::Cone:
      j["apex"] = vector_to_json(canonical_phase(d.apex));
      j["ball"] = ball_to_json(d.balls.at(0));
      break;
    case DescriptionKind::TwoBalls:
      j["intersection"] = vector_to_json(canonical_phase(d.intersection));
      j["balls"] = {ball_to_json(d.balls.at(0)), ball_to_json(d.balls.at(1))};
      break;
    case DescriptionKind::LCurve:
      j["l_map"] = {{"matrix", matrix_to_json(d.lmap->matrix)},
                    {"a_basis", matrix_to_json(d.lmap->a_basis)},
                    {"b_basis", matrix_to_json(d.lmap->b_basis)},
                    {"ratio", complex_to_json(d.lmap->ratio)}};
      break;
  }
  return j;
}

json classification_to_json(const ClassificationResult& r) {
  json j;
  j["tag"] = to_string(r.tag);
  j["dim_S"] = r.dim_S;
  j["dim_S_sep"] = r.dim_S_sep;
  j["local_dims"] = r.local_dims;
  j["component"] = to_string(r.witnesses.report.kind);
  std::vector<Vec> prods;
  for (const auto& p : r.witnesses.spanning_products) prods.push_back(p.amplitudes());
  j["witnesses"] = vec_list(prods);
  j["general_position"] = r.witnesses.general_position;
  j["coinciding"] = json::array();
  for (const auto& c : r.coinciding)
    j["coinciding"].push_back({{"group", c.group}, {"pair", {c.first, c.second}}});
  j["description"] = description_to_json(r.description);
  j["warnings"] = r.warnings;
  return j;
}

json multipartite_to_json(const MultiClassResult& r) {
  json j;
  j["tag"] = to_string(r.tag);
  j["k"] = r.k;
  j["dim_S_sep"] = r.dim_S_sep;
  j["situation"] = r.situation;
  j["active"] = r.active;
  j["dropped"] = r.dropped;
  json pat = json::array();
  for (const auto& p : r.pattern) {
    json e = {{"kind", to_string(p.kind)}};
    if (p.kind == PatternKind::Equal) e["pair"] = {p.pair[0], p.pair[1]};
    pat.push_back(e);
  }
  j["pattern"] = pat;
  if (r.cone) {
    j["cone"] = {{"apex_index", r.cone->apex_index},
                 {"qubit_subsystem", r.cone->qubit_subsystem},
                 {"pair", {r.cone->pair[0], r.cone->pair[1]}},
                 {"apex", vector_to_json(canonical_phase(r.cone->apex))}};
  }
  if (r.bipartite) j["bipartite"] = classification_to_json(*r.bipartite);
  j["description"] = description_to_json(r.description);
  j["warnings"] = r.warnings;
  return j;
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["weights"] = c.weights;
  j["components"] = json::array();
  for (const auto& m : c.components) j["components"].push_back(matrix_to_json(m));
  return j;
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["trials"] = r.trials;
  j["disagreements"] = r.disagreements;
  j["worst_residual"] = r.worst_residual;
  j["failures"] = json::array();
  for (const auto& f : r.failures) {
    char seed[32];
    std::snprintf(seed, sizeof seed, "%llu", static_cast<unsigned long long>(f.seed));
    j["failures"].push_back({{"seed", seed}, {"digest", f.digest}, {"expected", f.expected}, {"got", f.got}});
  }
  return j;
}

json rounded(const json& j) {
  if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    const double v = std::stod(buf);
    return v == 0.0 ? 0.0 : v;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

}  // namespace subsep
