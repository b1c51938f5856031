#pragma once

/**
 * @file xiao.hpp
 * @brief Harder-Narasimhan bound machinery: the slope staircase, Xiao's
 *        subsequence inequality with an exact optimizer, second-multiplication
 *        rank bounds, the Castelnuovo degree gate, composite bounds, and the
 *        coefficient audit used by the closed-form slope thresholds.
 *
 * Conventions baked in throughout: mu_{n+1} = 0, d_{n+1} = 2g-2, and for the
 * subsequence inequality i_{k+1} = n+1.
 */

#include <optional>
#include <string>
#include <vector>

#include "fibslope/rational.hpp"

namespace fibslope {

/// Classification of the map a Harder-Narasimhan piece induces on a general fiber.
enum class ImageClass { birational, degree2, degree3, degree_ge4, unknown };

std::string image_class_name(ImageClass c);
ImageClass image_class_from_name(const std::string& name);

struct HNPart {
  long r = 0;                    ///< rank of E_i
  Rat mu;                        ///< slope mu_i
  Rat d;                         ///< moving-part degree M(E_i) . F
  ImageClass image_class = ImageClass::unknown;
  std::optional<long> gamma;     ///< image genus, for degree2
  std::optional<long> g_im;      ///< image genus, for degree3
};

/// Harder-Narasimhan profile of f_* omega_f (possibly a truncated prefix of it).
struct HNData {
  long g = 0;  ///< fiber genus
  std::vector<HNPart> parts;
};

struct HNViolation {
  int index;            ///< 1-based part index, 0 for profile-level problems
  std::string message;
};

/// All invariant violations of the profile; empty means valid.
std::vector<HNViolation> check_hn(const HNData& hn);

/// Throws ValidationError listing every violation; no-op on valid data.
void validate_hn(const HNData& hn);

/// chi_f = sum r_i (mu_i - mu_{i+1}) with mu_{n+1} = 0.
Rat chi_from_hn(const HNData& hn);

struct XiaoBound {
  Rat value;
  std::vector<int> subsequence;  ///< 1-based indices
};

/**
 * Xiao's inequality: for an index subsequence i_1 < ... < i_k,
 *   omega_f^2 >= sum_j (d_{i_j} + d_{i_{j+1}}) (mu_{i_j} - mu_{i_{j+1}}).
 * With a subsequence supplied, evaluates it; otherwise maximizes exactly over
 * all nonempty subsequences (dynamic programming over the start index) and
 * returns the lexicographically smallest maximizer.
 */
XiaoBound xiao_bound(const HNData& hn,
                     const std::optional<std::vector<int>>& subsequence = std::nullopt);

/// Exhaustive-enumeration twin of the optimizer; test oracle, O(2^n).
XiaoBound xiao_bound_exhaustive(const HNData& hn);

struct SubsheafPoint {
  long r_tilde = 0;  ///< >= 1
  Rat mu_tilde;      ///< >= 0
};

/**
 * Second-multiplication staircase: given subsheaf points with strictly
 * increasing ranks and strictly decreasing slopes,
 *   omega_f^2 + chi_f >= sum r~_i (mu~_i - mu~_{i+1}),  mu~_{k+1} = 0.
 * Returns that sum.
 */
Rat staircase_bound(const std::vector<SubsheafPoint>& points);

/**
 * Lower bound for the rank of the image of the second multiplication map:
 * 3(r-1) when the piece is birational, min{3(r-1), 2r+g0-1} otherwise,
 * floored at 2r-1 in both cases.
 */
long multiplication_rank_bound(long r, long g0, bool birational);

/**
 * Castelnuovo gate: can a degree-d linear system with s sections lie on a
 * genus-g curve?  True iff d >= g/m + (m+1)s/2 - m with m = floor((d-1)/(s-2)).
 * Requires s >= 3; d <= s-2 (m = 0) is reported infeasible.
 */
bool castelnuovo_feasible(const Rat& d, long s, long g);

/// Smallest integer degree passing castelnuovo_feasible for (s, g).
long castelnuovo_min_degree(long s, long g);

/**
 * Minimal moving-part degree forced by the image class:
 *   degree_ge4          -> 4(r-1)   (6(r-1) when the index precedes a degree-3 one)
 *   degree3             -> 3r
 *   degree2, image genus gamma -> 2 min{2(r-1), r+gamma-1}
 * birational indices go through castelnuovo_min_degree instead.
 */
Rat degree_class_min_degree(long r, ImageClass cls, std::optional<long> gamma = std::nullopt,
                            bool precedes_degree3 = false);

/**
 * Convex mix of the two bound routes:
 *   theta * [staircase over (rank bound_i, 2 mu_i) minus chi_f]
 *   + (1-theta) * [Xiao bound of the full sequence].
 * Requires theta in [0,1] and a resolved image class at every index.
 */
Rat combined_bound(const HNData& hn, const Rat& theta);

/// The weight grid the composite displays use.
const std::vector<Rat>& combined_weight_grid();

enum class SlopeScenario { non_triple_nor_double, non_double, gamma_ge_g_over_3, q_small };

/// Closed-form slope thresholds: 14(g-1)/(3(g+1)), 18(g-1)/(4g+3), or 9(g-1)/(2g).
Rat scenario_slope_bound(long g, SlopeScenario scenario);

struct AuditRow {
  std::string list_id;   ///< which coefficient list the row belongs to
  std::string row_id;
  long r = 0;
  std::optional<long> gamma;
  Rat d;                  ///< degree used for the index itself
  Rat d_next;             ///< degree used for the successor index
  Rat lhs;
  Rat rhs;
  std::string relation;   ///< ">=", ">", or "=="
  bool applicable = true; ///< proof-context hypotheses hold for this g
  bool asserted = true;   ///< counts toward the pass verdict
  bool pass = false;
};

struct AuditReport {
  long g = 0;
  std::vector<AuditRow> rows;
  bool all_pass = false;  ///< every applicable asserted row passes
};

/**
 * Exhaustive per-genus audit of the coefficient inequality lists behind the
 * closed-form slope bounds, instantiated at the minimal degrees each image
 * class allows with same-class successors at rank r+1 (boundary rows pair
 * with d_n = d_{n+1} = 2g-2).
 */
AuditReport audit_coefficients(long g);

}  // namespace fibslope
