#pragma once

/**
 * @file double_cover.hpp
 * @brief Canonical-resolution bookkeeping for double-cover fibrations and the
 *        invariant engine expressing (omega_f^2, chi_f, e_f) through the
 *        quotient fibration's invariants and the singularity indices.
 *
 * A double-cover fibration of type (g, gamma) factors through a degree-2 map
 * onto a genus-gamma fibration.  Branch-curve singularities are recorded as
 * forests of infinitely-near points; the multiplicity of a child is capped by
 * the parent's (even parent) or the parent's plus one (odd parent).  An odd
 * point of multiplicity 2k+1 whose blow-up leaves a unique singular point of
 * multiplicity 2k+2 on the exceptional curve pairs up into a (2k+1 -> 2k+1)
 * singularity; everything else lands in the even-index counters.
 *
 * gamma = 0 (rational quotient) is rejected throughout: these formulas assume
 * a positive-genus quotient.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibslope/invariants.hpp"
#include "fibslope/rational.hpp"

namespace fibslope {

struct SingNode {
  long mult = 2;  ///< multiplicity of the branch-curve singular point, >= 2
  std::vector<SingNode> children;
};

struct FiberBranchData {
  std::string fiber_id;
  long n2 = 0;  ///< isolated (-2)-curves of the branch divisor in this fiber
  std::vector<SingNode> roots;
};

struct SingularityForest {
  std::vector<FiberBranchData> fibers;
};

struct ForestViolation {
  std::string fiber_id;
  std::string path;  ///< "rootIdx.childIdx..." to the offending node
  std::string message;
};

std::vector<ForestViolation> check_forest(const SingularityForest& forest);
void validate_forest(const SingularityForest& forest);

struct SingularIndices {
  long s2_correction = 0;          ///< 2 * sum_F s_2(F)
  std::map<long, long> s_odd;      ///< k -> s_{2k+1}, k >= 1
  std::map<long, long> s_even;     ///< k -> s_{2k},   k >= 2
  long n2_total = 0;
  long minus1_curves = 0;          ///< n2_total + sum_k s_{2k+1}
  std::vector<std::string> warnings;
};

/// Walk every fiber tree and count singularity indices by type.
SingularIndices classify_singularities(const SingularityForest& forest);

/**
 * Solve (omega_h + R).R = (s_2 - 2 n_2) + sum 4k(2k+1) s_{2k+1}
 *                        + sum 2k(2k-1) s_{2k}  for s_2.
 */
Rat s2_from_geometry(const Rat& omega_h_dot_R, const Rat& R2, long n2,
                     const std::map<long, long>& s_odd, const std::map<long, long>& s_even);
Rat s2_from_geometry(const Rat& omega_h_dot_R, const Rat& R2, const SingularIndices& indices);

/**
 * T = -((g+1-2gamma) omega_h - (gamma-1) R)^2 / (gamma-1) - 2(gamma-1) n_2
 * for gamma > 1; 2(g-1) omega_h.R for gamma = 1.
 */
Rat compute_T(long g, long gamma, const Rat& omega_h2, const Rat& omega_h_dot_R,
              const Rat& R2, long n2);

/// Coefficient set of the invariant formulas for a given (g, gamma).
struct CoefficientSet {
  long g = 0, gamma = 0;
  Rat x, y, z;           ///< omega_f^2 side
  Rat xbar, ybar, zbar;  ///< chi_f side
  Rat a(long k) const;
  Rat b(long k) const;
  Rat abar(long k) const;
  Rat bbar(long k) const;
};

CoefficientSet coefficients(long g, long gamma);

struct DoubleCoverData {
  long g = 0;
  long gamma = 0;
  Rat omega_h2, chi_h, e_h;
  Rat T;
  long n2 = 0;
  Rat s2;
  std::map<long, long> s_odd;   ///< k -> s_{2k+1}
  std::map<long, long> s_even;  ///< k -> s_{2k}
  std::optional<long> q_pi;
};

std::vector<std::string> check_double_cover(const DoubleCoverData& data);
void validate_double_cover(const DoubleCoverData& data);

/// The invariant engine: exact (omega_f^2, chi_f, e_f) from quotient data.
FibrationInvariants invariants_from_double_cover(const DoubleCoverData& data);

struct Term {
  std::string name;
  std::optional<long> k;
  Rat coefficient;
  Rat value;
  Rat product;
};

struct TermBreakdown {
  Rat lambda;
  std::vector<Term> terms;
  Rat total;     ///< sum of the products
  Rat expected;  ///< (2g+1-3gamma)(omega_f^2 - lambda chi_f)
  bool identity_ok = false;
};

/// Per-term breakdown of (2g+1-3gamma)(omega_f^2 - lambda chi_f).
TermBreakdown lambda_decomposition(const DoubleCoverData& data, const Rat& lambda);

struct ConstraintMode {
  bool positive_qpi = true;          ///< otherwise image_genus mode
  long g_prime = 0;                  ///< image genus for the curve case
  static ConstraintMode irregular() { return ConstraintMode{true, 0}; }
  static ConstraintMode image_genus(long gp) { return ConstraintMode{false, gp}; }
};

struct ConstraintVerdict {
  Rat lhs, rhs, slack;  ///< slack = rhs - lhs
  bool satisfied = false;
};

/// Necessary conditions on the indices of an irregular double cover.
ConstraintVerdict irregular_constraint(const DoubleCoverData& data, const ConstraintMode& mode);

/// F(g,gamma,q_pi) = (g-1)^2 - 4(g-1)(gamma q_pi + gamma + q_pi) - 4 q_pi^2 (gamma^2-1)
Rat F_invariant(long g, long gamma, long q_pi);

/// lambda_{g,gamma,q_pi} = 8 - 4(g+1-2gamma) / ((q_pi+1)((g-1)+(q_pi-1)(gamma-1)))
Rat lambda_threshold(long g, long gamma, long q_pi);

/// T + (gamma-1)(s_2 + sum 4k(2k+1) s_{2k+1} + sum 2k(2k-1) s_{2k}) >= 0 ?
bool index_inequality_check(const DoubleCoverData& data);

// Proof coefficients of the lambda_{g,gamma,q_pi} threshold (used by the
// exhaustive sign checks).  mu/nu require g+1-2gamma > 0.
Rat threshold_xi(long g, long gamma, long q_pi, long k);
Rat threshold_eta(long g, long gamma, long q_pi, long k);
Rat threshold_mu(long g, long gamma, long q_pi, long k);
Rat threshold_nu(long g, long gamma, long q_pi, long k);
/// Closed form of mu_{q_pi}: 2(q_pi-1)/(q_pi+1) + (g-gamma)/((q_pi+1)((g-1)+(q_pi-1)(gamma-1)))
Rat threshold_mu_at_qpi_closed_form(long g, long gamma, long q_pi);

}  // namespace fibslope
