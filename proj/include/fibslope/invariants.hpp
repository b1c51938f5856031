#pragma once

/**
 * @file invariants.hpp
 * @brief Relative invariants of a fibred surface, the slope, and the
 *        Noether identity 12*chi_f = omega_f^2 + e_f.
 *
 * A genus-g fibration over a genus-b base with global invariants
 * (chi(O_X), omega_X^2, chi_top) has relative invariants
 *   chi_f    = chi(O_X) - (g-1)(b-1)
 *   omega_f2 = omega_X^2 - 8(g-1)(b-1)
 *   e_f      = chi_top  - 4(g-1)(b-1)
 * and, when chi_f > 0, slope lambda_f = omega_f2 / chi_f in (0, 12].
 */

#include <optional>

#include "fibslope/rational.hpp"

namespace fibslope {

/// Global surface data: everything needed to derive the relative invariants.
struct GlobalSurfaceData {
  long g = 0;                  ///< fiber genus, >= 2
  long b = 0;                  ///< base genus, >= 0
  Rat chi_O;                   ///< chi(O_X)
  Rat K2;                      ///< omega_X^2
  Rat e_top;                   ///< topological Euler characteristic
  std::optional<long> q_f;     ///< relative irregularity q - b, when known
};

struct FibrationInvariants {
  long g = 0;
  std::optional<long> b;
  std::optional<long> q_f;
  Rat omega2;  ///< omega_f^2
  Rat chi;     ///< chi_f
  Rat e;       ///< e_f
};

struct ValidityReport {
  bool noether_ok = false;
  bool e_nonneg = false;
  bool chi_nonneg = false;
  bool locally_trivial = false;  ///< chi_f = 0
  bool smooth = false;           ///< e_f = 0
  bool slope_in_range = false;   ///< slope defined and 0 < lambda <= 12
};

FibrationInvariants relative_invariants(const GlobalSurfaceData& data);

/// omega_f^2 / chi_f; throws when chi_f = 0 (locally trivial) or chi_f < 0.
Rat slope(const FibrationInvariants& inv);

bool check_noether(const FibrationInvariants& inv);

struct ConjectureBound {
  Rat value;              ///< 4(g-1)/(g-q_f)
  bool in_range = false;  ///< the conjecture's hypothesis q_f < g-1
};

/// The conjectured lower bound 4(g-1)/(g-q_f); requires 0 <= q_f < g.
ConjectureBound conjecture_bound(long g, long q_f);

ValidityReport classify_basic(const FibrationInvariants& inv);

}  // namespace fibslope
