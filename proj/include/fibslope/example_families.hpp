#pragma once

/**
 * @file example_families.hpp
 * @brief Closed-form generators for the three extremal fibration families and
 *        the internal-consistency audit that scans them against every
 *        implemented slope bound.
 *
 * Family 5.1: symmetric-product quotient over an elliptic base,
 *             g = 2g0-3, q_f = (g+1)/2, slope 8 - 4/(g-1) < 8.
 * Family 5.2: double cover of a pencil, odd g, type (g, gamma),
 *             q_f = (g+1)/2, slope 8 - 4/((g+1-2gamma) gamma) < 8.
 * Family 5.3: base-changed product, q_pi = (g+1-2gamma)/d - 1, slope equal to
 *             the lambda_{g,gamma,q_pi} threshold exactly (independent of b0).
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibslope/bounds.hpp"
#include "fibslope/invariants.hpp"
#include "fibslope/rational.hpp"

namespace fibslope {

struct ExampleRecord {
  std::string family;  ///< "product_quotient", "pencil_cover", or "base_change"
  std::map<std::string, long> params;
  FibrationInvariants inv;
  Rat slope;
  std::optional<long> q_f;
  std::optional<long> q_pi;
  std::optional<long> gamma;
  std::optional<Rat> conjecture_rhs;
  std::optional<bool> violates_conjecture;
};

/// Family 5.1; requires g0 >= 3.
ExampleRecord example_product_quotient(long g0);

/// Family 5.2; requires g odd and 0 < gamma < (g+1)/2.
ExampleRecord example_pencil_cover(long g, long gamma);

/// Family 5.3; requires d >= 2, b0 >= 1, d | (g+1-2gamma), and q_pi >= 1.
ExampleRecord example_base_change(long g, long gamma, long d, long b0);

struct VerdictSummary {
  Rat slope;
  std::optional<Rat> conjecture_rhs;
  std::optional<Rat> margin;  ///< conjecture_rhs - slope
  std::vector<SlopeBoundReport> scan;
  std::vector<std::string> contradictions;
  bool audit_ok = true;  ///< no proved bound with met hypotheses exceeds the slope
};

/// Bound profile implied by a record's known structure.
BoundsProfile profile_for_example(const ExampleRecord& record);

/// Slope, conjecture margin, and the certified-bound contradiction scan.
VerdictSummary violation_report(const ExampleRecord& record);

}  // namespace fibslope
