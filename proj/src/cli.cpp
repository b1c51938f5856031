#include "fibslope/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include "fibslope/json_io.hpp"

namespace fibslope {

namespace {

constexpr long kDefaultMaxG = 101;

long grid_cap() {
  if (const char* env = std::getenv("FIBRSLOPE_MAX_G")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end && *end == '\0' && value >= 2) return value;
  }
  return kDefaultMaxG;
}

std::map<std::string, long> parse_params(const std::string& text) {
  std::map<std::string, long> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find_first_of(",;", pos);
    std::string item = text.substr(pos, next == std::string::npos ? next : next - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("malformed parameter '" + item + "' (expected key=value)");
    try {
      std::size_t used = 0;
      long value = std::stol(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      out[item.substr(0, eq)] = value;
    } catch (const std::exception&) {
      throw ValidationError("malformed parameter value in '" + item + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

struct Range {
  long lo = 0, hi = 0;
};

std::map<std::string, Range> parse_ranges(const std::vector<std::string>& specs) {
  std::map<std::string, Range> out;
  for (const auto& spec : specs) {
    std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("malformed range '" + spec + "' (expected key=lo..hi)");
    std::string key = spec.substr(0, eq);
    std::string body = spec.substr(eq + 1);
    std::size_t dots = body.find("..");
    try {
      Range r;
      if (dots == std::string::npos) {
        r.lo = r.hi = std::stol(body);
      } else {
        r.lo = std::stol(body.substr(0, dots));
        r.hi = std::stol(body.substr(dots + 2));
      }
      if (r.hi < r.lo) throw std::invalid_argument(spec);
      out[key] = r;
    } catch (const std::exception&) {
      throw ValidationError("malformed range '" + spec + "'");
    }
  }
  return out;
}

long require_param(const std::map<std::string, long>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw ValidationError("missing required parameter '" + key + "'");
  return it->second;
}

ExampleRecord make_example(const std::string& family, const std::map<std::string, long>& params) {
  if (family == "5.1") return example_product_quotient(require_param(params, "g0"));
  if (family == "5.2")
    return example_pencil_cover(require_param(params, "g"), require_param(params, "gamma"));
  if (family == "5.3")
    return example_base_change(require_param(params, "g"), require_param(params, "gamma"),
                               require_param(params, "d"), require_param(params, "b0"));
  throw ValidationError("unknown family '" + family + "' (expected 5.1, 5.2 or 5.3)");
}

std::vector<std::map<std::string, long>> enumerate_grid(const std::string& family,
                                                        std::map<std::string, Range> ranges) {
  const long cap = grid_cap();
  auto range_or = [&](const std::string& key, long lo, long hi) -> Range {
    auto it = ranges.find(key);
    return it != ranges.end() ? it->second : Range{lo, hi};
  };
  std::vector<std::map<std::string, long>> points;
  if (family == "5.1") {
    Range g0 = range_or("g0", 3, cap);
    for (long v = std::max(3L, g0.lo); v <= g0.hi; ++v) points.push_back({{"g0", v}});
  } else if (family == "5.2") {
    Range g = range_or("g", 3, cap);
    Range gamma = range_or("gamma", 1, cap);
    for (long gv = std::max(3L, g.lo); gv <= g.hi; ++gv) {
      if (gv % 2 == 0) continue;
      for (long cv = std::max(1L, gamma.lo); cv <= std::min(gamma.hi, (gv + 1) / 2 - 1); ++cv)
        points.push_back({{"g", gv}, {"gamma", cv}});
    }
  } else if (family == "5.3") {
    Range g = range_or("g", 2, cap);
    Range gamma = range_or("gamma", 1, cap);
    Range d = range_or("d", 2, cap);
    Range b0 = range_or("b0", 1, 3);
    for (long gv = std::max(2L, g.lo); gv <= g.hi; ++gv)
      for (long cv = std::max(1L, gamma.lo); cv <= gamma.hi; ++cv) {
        long spread = gv + 1 - 2 * cv;
        if (spread <= 0) break;
        for (long dv = std::max(2L, d.lo); dv <= std::min(d.hi, spread); ++dv) {
          if (spread % dv != 0 || spread / dv - 1 < 1) continue;
          for (long bv = std::max(1L, b0.lo); bv <= b0.hi; ++bv)
            points.push_back({{"g", gv}, {"gamma", cv}, {"d", dv}, {"b0", bv}});
        }
      }
  } else {
    throw ValidationError("unknown family '" + family + "' (expected 5.1, 5.2 or 5.3)");
  }
  return points;
}

int cmd_invariants(const std::string& path, std::ostream& out) {
  GlobalSurfaceData data = global_surface_from_json(load_json_file(path));
  FibrationInvariants inv = relative_invariants(data);
  Json report = Json::object();
  report["invariants"] = to_json(inv);
  if (inv.chi.sign() > 0) report["slope"] = format_rational(slope(inv));
  report["classify"] = to_json(classify_basic(inv));
  out << report.dump(2) << "\n";
  return 0;
}

int cmd_double_cover(const std::string& path, const std::optional<std::string>& lambda_text,
                     std::ostream& out) {
  DoubleCoverData data = double_cover_from_json(load_json_file(path));
  FibrationInvariants inv = invariants_from_double_cover(data);
  Json report = Json::object();
  report["invariants"] = to_json(inv);
  if (inv.chi.sign() > 0) report["slope"] = format_rational(slope(inv));
  report["classify"] = to_json(classify_basic(inv));
  if (lambda_text)
    report["lambda_decomposition"] = to_json(lambda_decomposition(data, parse_rational(*lambda_text)));
  report["index_inequality"] = index_inequality_check(data);
  Json prop = Json::object();
  prop["positive_qpi"] = to_json(irregular_constraint(data, ConstraintMode::irregular()));
  if (data.q_pi && *data.q_pi >= 1)
    prop["image_genus_qpi"] =
        to_json(irregular_constraint(data, ConstraintMode::image_genus(*data.q_pi)));
  report["irregularity_constraints"] = std::move(prop);
  out << report.dump(2) << "\n";
  return 0;
}

int cmd_resolve(const std::string& path, std::ostream& out) {
  SingularityForest forest = forest_from_json(load_json_file(path));
  out << to_json(classify_singularities(forest)).dump(2) << "\n";
  return 0;
}

int cmd_xiao(const std::string& path, const std::optional<std::string>& subsequence_text,
             bool combined, std::ostream& out) {
  HNData hn = hn_from_json(load_json_file(path));
  std::optional<std::vector<int>> subsequence;
  if (subsequence_text) {
    std::vector<int> seq;
    std::size_t pos = 0;
    const std::string& text = *subsequence_text;
    while (pos < text.size()) {
      std::size_t next = text.find(',', pos);
      try {
        seq.push_back(std::stoi(text.substr(pos, next - pos)));
      } catch (const std::exception&) {
        throw ValidationError("malformed subsequence '" + text + "'");
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    subsequence = std::move(seq);
  }
  XiaoBound bound = xiao_bound(hn, subsequence);
  Json report = Json::object();
  report["chi"] = format_rational(chi_from_hn(hn));
  report.update(to_json(bound));
  if (combined) {
    // Each weight also gets a variant with the Xiao part maximized over
    // subsequences; both are valid lower bounds for omega_f^2.
    XiaoBound opt = xiao_bound(hn);
    std::vector<int> full(hn.parts.size());
    for (std::size_t i = 0; i < full.size(); ++i) full[i] = static_cast<int>(i) + 1;
    Rat xiao_full = xiao_bound(hn, full).value;
    Json grid = Json::array();
    Rat best;
    Rat best_theta;
    bool first = true;
    for (const Rat& theta : combined_weight_grid()) {
      Rat value = combined_bound(hn, theta);
      Rat value_opt = value + (Rat(1) - theta) * (opt.value - xiao_full);
      Json row = Json::object();
      row["theta"] = format_rational(theta);
      row["value"] = format_rational(value);
      row["value_optimized"] = format_rational(value_opt);
      grid.push_back(std::move(row));
      if (first || value_opt > best) {
        best = value_opt;
        best_theta = theta;
        first = false;
      }
    }
    Json combined_report = Json::object();
    combined_report["grid"] = std::move(grid);
    combined_report["best_theta"] = format_rational(best_theta);
    combined_report["best_value"] = format_rational(best);
    report["combined"] = std::move(combined_report);
  }
  out << report.dump(2) << "\n";
  return 0;
}

int cmd_bounds(const std::string& path, std::ostream& out) {
  BoundsProfile profile = bounds_profile_from_json(load_json_file(path));
  Json rows = Json::array();
  for (const auto& row : bounds_registry(profile)) rows.push_back(to_json(row));
  Json report = Json::object();
  report["reports"] = std::move(rows);
  out << report.dump(2) << "\n";
  return 0;
}

int cmd_examples(const std::string& family, const std::string& params_text, bool tsv,
                 std::ostream& out) {
  ExampleRecord record = make_example(family, parse_params(params_text));
  if (tsv) {
    out << example_tsv_header() << "\n" << example_tsv_row(record) << "\n";
  } else {
    Json arr = Json::array();
    arr.push_back(to_json(record));
    out << arr.dump(2) << "\n";
  }
  return 0;
}

int cmd_search(const std::string& family, const std::vector<std::string>& range_specs,
               unsigned jobs, bool tsv, std::ostream& out, std::ostream& err) {
  auto points = enumerate_grid(family, parse_ranges(range_specs));
  struct PointResult {
    ExampleRecord record;
    VerdictSummary verdict;
  };
  std::vector<PointResult> results(points.size());
  auto evaluate = [&](std::size_t i) {
    results[i].record = make_example(family, points[i]);
    results[i].verdict = violation_report(results[i].record);
  };
  if (jobs <= 1 || points.size() < 2) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1))
        evaluate(i);
    };
    std::vector<std::thread> pool;
    unsigned count = std::min<std::size_t>(jobs, points.size());
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  bool audit_ok = true;
  if (tsv) {
    out << example_tsv_header() << "\n";
    for (const auto& res : results) {
      out << example_tsv_row(res.record) << "\n";
      audit_ok &= res.verdict.audit_ok;
    }
  } else {
    Json arr = Json::array();
    for (const auto& res : results) {
      Json item = Json::object();
      item["record"] = to_json(res.record);
      item["verdict"] = to_json(res.verdict);
      arr.push_back(std::move(item));
      audit_ok &= res.verdict.audit_ok;
    }
    out << arr.dump(2) << "\n";
  }
  if (!audit_ok) {
    err << "internal-consistency audit failure: a certified bound exceeds an example slope\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact slope bounds and invariants for fibred surfaces"};
  app.name("fibslope");
  app.require_subcommand(1);

  std::string input_path, forest_path, hn_path, profile_path;
  std::optional<std::string> lambda_text, subsequence_text;
  std::string family, params_text;
  std::vector<std::string> range_specs;
  bool combined = false, tsv = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* invariants_cmd =
      app.add_subcommand("invariants", "relative invariants and validity flags");
  invariants_cmd->add_option("--input", input_path, "fibration record JSON")->required();

  auto* double_cover_cmd =
      app.add_subcommand("double-cover", "invariants from double-cover data");
  double_cover_cmd->add_option("--input", input_path, "double-cover record JSON")->required();
  double_cover_cmd->add_option("--lambda", lambda_text,
                               "also emit the lambda-decomposition at this rational");

  auto* resolve_cmd = app.add_subcommand("resolve", "singularity indices from a forest");
  resolve_cmd->add_option("--forest", forest_path, "singularity forest JSON")->required();

  auto* xiao_cmd = app.add_subcommand("xiao", "Harder-Narasimhan slope bounds");
  xiao_cmd->add_option("--hn", hn_path, "HN profile JSON")->required();
  xiao_cmd->add_option("--subsequence", subsequence_text,
                       "evaluate this 1-based index subsequence (comma separated)");
  xiao_cmd->add_flag("--combined", combined, "also emit the combined-bound weight grid");

  auto* bounds_cmd = app.add_subcommand("bounds", "slope bound registry for a profile");
  bounds_cmd->add_option("--profile", profile_path, "bounds profile JSON")->required();

  auto* examples_cmd = app.add_subcommand("examples", "closed-form example families");
  examples_cmd->add_option("--family", family, "5.1, 5.2 or 5.3")->required();
  examples_cmd->add_option("--params", params_text, "family parameters, e.g. g0=3")->required();
  examples_cmd->add_flag("--tsv", tsv, "tab-separated output");

  auto* search_cmd = app.add_subcommand("search", "scan a family grid with audits");
  search_cmd->add_option("--family", family, "5.1, 5.2 or 5.3")->required();
  search_cmd->add_option("--range", range_specs, "parameter range key=lo..hi (repeatable)");
  search_cmd->add_option("--jobs", jobs, "parallel evaluation threads");
  search_cmd->add_flag("--tsv", tsv, "tab-separated output");

  std::vector<std::string> argv_like;
  argv_like.reserve(args.size() + 1);
  argv_like.push_back("fibslope");
  argv_like.insert(argv_like.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_like.size());
  for (const auto& a : argv_like) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (invariants_cmd->parsed()) return cmd_invariants(input_path, out);
    if (double_cover_cmd->parsed()) return cmd_double_cover(input_path, lambda_text, out);
    if (resolve_cmd->parsed()) return cmd_resolve(forest_path, out);
    if (xiao_cmd->parsed()) return cmd_xiao(hn_path, subsequence_text, combined, out);
    if (bounds_cmd->parsed()) return cmd_bounds(profile_path, out);
    if (examples_cmd->parsed()) return cmd_examples(family, params_text, tsv, out);
    if (search_cmd->parsed()) return cmd_search(family, range_specs, jobs, tsv, out, err);
  } catch (const IOError& e) {
    err << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 1;
}

}  // namespace fibslope
