#pragma once

/**
 * @file bounds.hpp
 * @brief Registry of the proved slope lower bounds with their hypothesis
 *        gates, plus the conjectured bound as an informational row.
 *
 * Every row evaluates its hypotheses against a numeric profile and reports
 * the bound value when they hold.  Irrational genus thresholds are decided
 * by exact integer comparisons.
 */

#include <optional>
#include <string>
#include <vector>

#include "fibslope/rational.hpp"

namespace fibslope {

struct BoundsProfile {
  long g = 0;
  std::optional<long> gamma;       ///< double-cover type, when the structure is asserted
  std::optional<long> q_pi;
  std::optional<long> q_f;
  bool h_locally_trivial = false;
  bool J0_is_curve = false;
  // Section-3 scenario assertions; absent = unknown, so the row stays unmet.
  std::optional<bool> not_double_cover;
  std::optional<bool> not_triple_cover;
  std::optional<bool> min_gamma_ge_g_over_3;
};

struct Hypothesis {
  std::string name;
  bool met = false;
};

struct SlopeBoundReport {
  std::string theorem_id;
  std::vector<Hypothesis> hypotheses;
  bool hypotheses_met = false;
  std::optional<Rat> bound;   ///< present whenever the formula is evaluable
  bool conjectural = false;   ///< excluded from the non-contradiction audit
};

/// The double-cover sub-registry only.
std::vector<SlopeBoundReport> double_cover_bounds(const BoundsProfile& profile);

/// Sections 1, 3 and 4 merged.
std::vector<SlopeBoundReport> bounds_registry(const BoundsProfile& profile);

}  // namespace fibslope
