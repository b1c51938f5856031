#pragma once

/**
 * @file json_io.hpp
 * @brief JSON schemas for the input records and report serialization.
 *
 * Rationals travel as canonical strings ("p/q" or "p"); bare JSON integers
 * are accepted on input and promoted.  Serialization uses insertion-ordered
 * objects so identical inputs produce byte-identical output.
 */

#include <json.hpp>

#include <string>

#include "fibslope/bounds.hpp"
#include "fibslope/double_cover.hpp"
#include "fibslope/example_families.hpp"
#include "fibslope/invariants.hpp"
#include "fibslope/xiao.hpp"

namespace fibslope {

using Json = nlohmann::ordered_json;

/// I/O failure (missing or unreadable file), distinct from validation errors.
class IOError : public std::runtime_error {
 public:
  explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

Json load_json_file(const std::string& path);

Rat rat_from_json(const Json& v, const std::string& field);
long int_from_json(const Json& v, const std::string& field);

GlobalSurfaceData global_surface_from_json(const Json& j);
HNData hn_from_json(const Json& j);
SingularityForest forest_from_json(const Json& j);
DoubleCoverData double_cover_from_json(const Json& j);
BoundsProfile bounds_profile_from_json(const Json& j);

Json to_json(const FibrationInvariants& inv);
Json to_json(const ValidityReport& rep);
Json to_json(const SingularIndices& idx);
Json to_json(const XiaoBound& bound);
Json to_json(const AuditReport& rep);
Json to_json(const TermBreakdown& breakdown);
Json to_json(const ConstraintVerdict& verdict);
Json to_json(const SlopeBoundReport& report);
Json to_json(const ExampleRecord& record);
Json to_json(const VerdictSummary& verdict);

/// TSV row for an example record: family, params, g, q_f, omega2, chi, slope, rhs, margin.
std::string example_tsv_row(const ExampleRecord& record);
std::string example_tsv_header();

}  // namespace fibslope
