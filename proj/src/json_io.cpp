#include "fibslope/json_io.hpp"

#include <fstream>
#include <sstream>

namespace fibslope {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("JSON parse error in " + path + ": " + e.what());
  }
}

Rat rat_from_json(const Json& v, const std::string& field) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  throw ValidationError("field '" + field + "' must be a rational string or an integer");
}

long int_from_json(const Json& v, const std::string& field) {
  if (!v.is_number_integer())
    throw ValidationError("field '" + field + "' must be an integer");
  return v.get<long>();
}

namespace {

const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError("missing required field '" + key + "'");
  return j.at(key);
}

std::map<long, long> count_map_from_json(const Json& j, const std::string& field, long min_key) {
  std::map<long, long> out;
  if (!j.is_object())
    throw ValidationError("field '" + field + "' must be an object of k -> count");
  for (const auto& [key, value] : j.items()) {
    long k;
    try {
      std::size_t pos = 0;
      k = std::stol(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ValidationError("field '" + field + "' has a non-integer key '" + key + "'");
    }
    if (k < min_key)
      throw ValidationError("field '" + field + "' key must be >= " + std::to_string(min_key));
    out[k] = int_from_json(value, field + "." + key);
  }
  return out;
}

Json count_map_to_json(const std::map<long, long>& m) {
  Json out = Json::object();
  for (const auto& [k, count] : m) out[std::to_string(k)] = count;
  return out;
}

std::string rat_str(const Rat& r) { return format_rational(r); }

}  // namespace

GlobalSurfaceData global_surface_from_json(const Json& j) {
  GlobalSurfaceData data;
  data.g = int_from_json(require(j, "g"), "g");
  data.b = int_from_json(require(j, "b"), "b");
  data.chi_O = rat_from_json(require(j, "chi_O"), "chi_O");
  data.K2 = rat_from_json(require(j, "K2"), "K2");
  data.e_top = rat_from_json(require(j, "e_top"), "e_top");
  if (j.contains("q_f") && !j.at("q_f").is_null())
    data.q_f = int_from_json(j.at("q_f"), "q_f");
  return data;
}

HNData hn_from_json(const Json& j) {
  HNData hn;
  hn.g = int_from_json(require(j, "g"), "g");
  const Json& parts = require(j, "parts");
  if (!parts.is_array()) throw ValidationError("field 'parts' must be an array");
  for (const auto& pj : parts) {
    HNPart p;
    p.r = int_from_json(require(pj, "r"), "r");
    p.mu = rat_from_json(require(pj, "mu"), "mu");
    p.d = rat_from_json(require(pj, "d"), "d");
    p.image_class = image_class_from_name(
        pj.contains("class") ? require(pj, "class").get<std::string>() : "unknown");
    if (pj.contains("class_params")) {
      const Json& cp = pj.at("class_params");
      if (cp.contains("gamma")) p.gamma = int_from_json(cp.at("gamma"), "class_params.gamma");
      if (cp.contains("g_im")) p.g_im = int_from_json(cp.at("g_im"), "class_params.g_im");
    }
    hn.parts.push_back(std::move(p));
  }
  return hn;
}

namespace {

SingNode sing_node_from_json(const Json& j) {
  SingNode node;
  node.mult = int_from_json(require(j, "mult"), "mult");
  if (j.contains("children")) {
    const Json& ch = j.at("children");
    if (!ch.is_array()) throw ValidationError("field 'children' must be an array");
    for (const auto& cj : ch) node.children.push_back(sing_node_from_json(cj));
  }
  return node;
}

}  // namespace

SingularityForest forest_from_json(const Json& j) {
  SingularityForest forest;
  const Json& fibers = require(j, "fibers");
  if (!fibers.is_array()) throw ValidationError("field 'fibers' must be an array");
  for (const auto& fj : fibers) {
    FiberBranchData fiber;
    fiber.fiber_id = require(fj, "fiber_id").get<std::string>();
    fiber.n2 = int_from_json(require(fj, "n2"), "n2");
    if (fj.contains("singularities")) {
      const Json& roots = fj.at("singularities");
      if (!roots.is_array()) throw ValidationError("field 'singularities' must be an array");
      for (const auto& rj : roots) fiber.roots.push_back(sing_node_from_json(rj));
    }
    forest.fibers.push_back(std::move(fiber));
  }
  return forest;
}

DoubleCoverData double_cover_from_json(const Json& j) {
  DoubleCoverData data;
  data.g = int_from_json(require(j, "g"), "g");
  data.gamma = int_from_json(require(j, "gamma"), "gamma");
  data.omega_h2 = rat_from_json(require(j, "omega_h2"), "omega_h2");
  data.chi_h = rat_from_json(require(j, "chi_h"), "chi_h");
  data.e_h = rat_from_json(require(j, "e_h"), "e_h");
  data.T = rat_from_json(require(j, "T"), "T");
  data.n2 = int_from_json(require(j, "n2"), "n2");
  data.s2 = rat_from_json(require(j, "s2"), "s2");
  if (j.contains("s_odd")) data.s_odd = count_map_from_json(j.at("s_odd"), "s_odd", 1);
  if (j.contains("s_even")) data.s_even = count_map_from_json(j.at("s_even"), "s_even", 2);
  if (j.contains("q_pi") && !j.at("q_pi").is_null())
    data.q_pi = int_from_json(j.at("q_pi"), "q_pi");
  return data;
}

BoundsProfile bounds_profile_from_json(const Json& j) {
  BoundsProfile p;
  p.g = int_from_json(require(j, "g"), "g");
  if (j.contains("gamma") && !j.at("gamma").is_null())
    p.gamma = int_from_json(j.at("gamma"), "gamma");
  if (j.contains("q_pi") && !j.at("q_pi").is_null())
    p.q_pi = int_from_json(j.at("q_pi"), "q_pi");
  if (j.contains("q_f") && !j.at("q_f").is_null())
    p.q_f = int_from_json(j.at("q_f"), "q_f");
  auto opt_bool = [&](const char* key) -> std::optional<bool> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_boolean())
      throw ValidationError(std::string("field '") + key + "' must be a boolean");
    return j.at(key).get<bool>();
  };
  p.h_locally_trivial = opt_bool("h_locally_trivial").value_or(false);
  p.J0_is_curve = opt_bool("J0_is_curve").value_or(false);
  p.not_double_cover = opt_bool("not_double_cover");
  p.not_triple_cover = opt_bool("not_triple_cover");
  p.min_gamma_ge_g_over_3 = opt_bool("min_gamma_ge_g_over_3");
  return p;
}

Json to_json(const FibrationInvariants& inv) {
  Json out = Json::object();
  out["g"] = inv.g;
  if (inv.b) out["b"] = *inv.b;
  if (inv.q_f) out["q_f"] = *inv.q_f;
  out["omega2"] = rat_str(inv.omega2);
  out["chi"] = rat_str(inv.chi);
  out["e"] = rat_str(inv.e);
  return out;
}

Json to_json(const ValidityReport& rep) {
  Json out = Json::object();
  out["noether_ok"] = rep.noether_ok;
  out["e_nonneg"] = rep.e_nonneg;
  out["chi_nonneg"] = rep.chi_nonneg;
  out["locally_trivial"] = rep.locally_trivial;
  out["smooth"] = rep.smooth;
  out["slope_in_range"] = rep.slope_in_range;
  return out;
}

Json to_json(const SingularIndices& idx) {
  Json out = Json::object();
  out["s2_correction"] = idx.s2_correction;
  out["s_odd"] = count_map_to_json(idx.s_odd);
  out["s_even"] = count_map_to_json(idx.s_even);
  out["n2_total"] = idx.n2_total;
  out["minus1_curves"] = idx.minus1_curves;
  out["warnings"] = idx.warnings;
  return out;
}

Json to_json(const XiaoBound& bound) {
  Json out = Json::object();
  out["bound"] = rat_str(bound.value);
  out["subsequence"] = bound.subsequence;
  return out;
}

Json to_json(const AuditReport& rep) {
  Json out = Json::object();
  out["g"] = rep.g;
  out["all_pass"] = rep.all_pass;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json r = Json::object();
    r["list"] = row.list_id;
    r["row"] = row.row_id;
    r["r"] = row.r;
    if (row.gamma) r["gamma"] = *row.gamma;
    r["d"] = rat_str(row.d);
    r["d_next"] = rat_str(row.d_next);
    r["lhs"] = rat_str(row.lhs);
    r["relation"] = row.relation;
    r["rhs"] = rat_str(row.rhs);
    r["applicable"] = row.applicable;
    r["asserted"] = row.asserted;
    r["pass"] = row.pass;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out;
}

Json to_json(const TermBreakdown& breakdown) {
  Json out = Json::object();
  out["lambda"] = rat_str(breakdown.lambda);
  Json terms = Json::array();
  for (const auto& t : breakdown.terms) {
    Json tj = Json::object();
    tj["term"] = t.name;
    if (t.k) tj["k"] = *t.k;
    tj["coefficient"] = rat_str(t.coefficient);
    tj["value"] = rat_str(t.value);
    tj["product"] = rat_str(t.product);
    terms.push_back(std::move(tj));
  }
  out["terms"] = std::move(terms);
  out["total"] = rat_str(breakdown.total);
  out["expected"] = rat_str(breakdown.expected);
  out["identity_ok"] = breakdown.identity_ok;
  return out;
}

Json to_json(const ConstraintVerdict& verdict) {
  Json out = Json::object();
  out["lhs"] = rat_str(verdict.lhs);
  out["rhs"] = rat_str(verdict.rhs);
  out["slack"] = rat_str(verdict.slack);
  out["satisfied"] = verdict.satisfied;
  return out;
}

Json to_json(const SlopeBoundReport& report) {
  Json out = Json::object();
  out["theorem"] = report.theorem_id;
  Json hyps = Json::array();
  for (const auto& h : report.hypotheses) {
    Json hj = Json::object();
    hj["hypothesis"] = h.name;
    hj["met"] = h.met;
    hyps.push_back(std::move(hj));
  }
  out["hypotheses"] = std::move(hyps);
  out["hypotheses_met"] = report.hypotheses_met;
  if (report.bound) out["bound"] = rat_str(*report.bound);
  if (report.conjectural) out["conjectural"] = true;
  return out;
}

Json to_json(const ExampleRecord& record) {
  Json out = Json::object();
  out["family"] = record.family;
  Json params = Json::object();
  for (const auto& [k, v] : record.params) params[k] = v;
  out["params"] = std::move(params);
  out["invariants"] = to_json(record.inv);
  out["slope"] = rat_str(record.slope);
  if (record.q_f) out["q_f"] = *record.q_f;
  if (record.q_pi) out["q_pi"] = *record.q_pi;
  if (record.gamma) out["gamma"] = *record.gamma;
  if (record.conjecture_rhs) out["conjecture_rhs"] = rat_str(*record.conjecture_rhs);
  if (record.violates_conjecture) out["violates_conjecture"] = *record.violates_conjecture;
  return out;
}

Json to_json(const VerdictSummary& verdict) {
  Json out = Json::object();
  out["slope"] = rat_str(verdict.slope);
  if (verdict.conjecture_rhs) out["conjecture_rhs"] = rat_str(*verdict.conjecture_rhs);
  if (verdict.margin) out["margin"] = rat_str(*verdict.margin);
  Json scan = Json::array();
  for (const auto& row : verdict.scan) scan.push_back(to_json(row));
  out["scan"] = std::move(scan);
  out["contradictions"] = verdict.contradictions;
  out["audit_ok"] = verdict.audit_ok;
  return out;
}

std::string example_tsv_header() {
  return "family\tparams\tg\tq_f\tomega2\tchi\tslope\trhs\tmargin";
}

std::string example_tsv_row(const ExampleRecord& record) {
  std::ostringstream params;
  bool first = true;
  for (const auto& [k, v] : record.params) {
    if (!first) params << ";";
    params << k << "=" << v;
    first = false;
  }
  std::ostringstream out;
  out << record.family << "\t" << params.str() << "\t" << record.inv.g << "\t";
  if (record.q_f) out << *record.q_f;
  else out << "-";
  out << "\t" << rat_str(record.inv.omega2) << "\t" << rat_str(record.inv.chi) << "\t"
      << rat_str(record.slope) << "\t";
  if (record.conjecture_rhs) out << rat_str(*record.conjecture_rhs);
  else out << "-";
  out << "\t";
  if (record.conjecture_rhs) out << rat_str(*record.conjecture_rhs - record.slope);
  else out << "-";
  return out.str();
}

}  // namespace fibslope
