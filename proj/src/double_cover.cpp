#include "fibslope/double_cover.hpp"

#include <sstream>

namespace fibslope {

namespace {

void check_node(const SingNode& node, const std::string& fiber_id, const std::string& path,
                std::vector<ForestViolation>& out) {
  if (node.mult < 2)
    out.push_back({fiber_id, path, "multiplicity must be >= 2"});
  long cap = (node.mult % 2 == 0) ? node.mult : node.mult + 1;
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    const SingNode& child = node.children[c];
    std::string child_path = path + "." + std::to_string(c);
    if (child.mult > cap) {
      std::ostringstream msg;
      msg << "infinitely-near multiplicity " << child.mult << " exceeds the cap " << cap
          << " of its multiplicity-" << node.mult << " parent";
      out.push_back({fiber_id, child_path, msg.str()});
    }
    check_node(child, fiber_id, child_path, out);
  }
}

}  // namespace

std::vector<ForestViolation> check_forest(const SingularityForest& forest) {
  std::vector<ForestViolation> out;
  std::map<std::string, int> seen;
  for (const auto& fiber : forest.fibers) {
    if (++seen[fiber.fiber_id] == 2)
      out.push_back({fiber.fiber_id, "", "duplicate fiber_id"});
    if (fiber.n2 < 0) out.push_back({fiber.fiber_id, "", "n2 must be >= 0"});
    for (std::size_t i = 0; i < fiber.roots.size(); ++i)
      check_node(fiber.roots[i], fiber.fiber_id, std::to_string(i), out);
  }
  return out;
}

void validate_forest(const SingularityForest& forest) {
  auto violations = check_forest(forest);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid singularity forest:";
  for (const auto& v : violations) {
    msg << " [fiber " << v.fiber_id;
    if (!v.path.empty()) msg << ", node " << v.path;
    msg << "] " << v.message << ";";
  }
  throw ValidationError(msg.str());
}

namespace {

void classify_node(const SingNode& node, const std::string& fiber_id, const std::string& path,
                   SingularIndices& idx) {
  if (node.mult >= 3 && node.mult % 2 == 1) {
    long k = (node.mult - 1) / 2;
    if (node.children.size() == 1 && node.children[0].mult == node.mult + 1) {
      // (2k+1 -> 2k+1) pair: both nodes are consumed, grandchildren continue.
      idx.s_odd[k] += 1;
      for (std::size_t c = 0; c < node.children[0].children.size(); ++c)
        classify_node(node.children[0].children[c], fiber_id,
                      path + ".0." + std::to_string(c), idx);
      return;
    }
    bool has_heavy_child = false;
    for (const auto& child : node.children)
      if (child.mult == node.mult + 1) has_heavy_child = true;
    if (has_heavy_child && node.children.size() > 1) {
      std::ostringstream w;
      w << "fiber " << fiber_id << ", node " << path << ": multiplicity-" << (node.mult + 1)
        << " infinitely-near point has siblings; strict reading forms no ("
        << node.mult << " -> " << node.mult << ") pair";
      idx.warnings.push_back(w.str());
    }
  }
  if (node.mult <= 3) {
    idx.s2_correction += 2;  // an unpaired 2 or 3 is a fiber-local s_2 point
  } else {
    idx.s_even[node.mult / 2] += 1;  // multiplicity 2k or 2k+1 counts to s_{2k}
  }
  for (std::size_t c = 0; c < node.children.size(); ++c)
    classify_node(node.children[c], fiber_id, path + "." + std::to_string(c), idx);
}

}  // namespace

SingularIndices classify_singularities(const SingularityForest& forest) {
  validate_forest(forest);
  SingularIndices idx;
  for (const auto& fiber : forest.fibers) {
    idx.n2_total += fiber.n2;
    for (std::size_t i = 0; i < fiber.roots.size(); ++i)
      classify_node(fiber.roots[i], fiber.fiber_id, std::to_string(i), idx);
  }
  idx.minus1_curves = idx.n2_total;
  for (const auto& [k, count] : idx.s_odd) idx.minus1_curves += count;
  return idx;
}

Rat s2_from_geometry(const Rat& omega_h_dot_R, const Rat& R2, long n2,
                     const std::map<long, long>& s_odd, const std::map<long, long>& s_even) {
  Rat s2 = omega_h_dot_R + R2 + Rat(2 * n2);
  for (const auto& [k, count] : s_odd) s2 -= Rat(4 * k * (2 * k + 1) * count);
  for (const auto& [k, count] : s_even) s2 -= Rat(2 * k * (2 * k - 1) * count);
  return s2;
}

Rat s2_from_geometry(const Rat& omega_h_dot_R, const Rat& R2, const SingularIndices& indices) {
  return s2_from_geometry(omega_h_dot_R, R2, indices.n2_total, indices.s_odd, indices.s_even);
}

Rat compute_T(long g, long gamma, const Rat& omega_h2, const Rat& omega_h_dot_R,
              const Rat& R2, long n2) {
  if (gamma < 1)
    throw ValidationError("compute_T: gamma must be >= 1 (rational quotient out of scope)");
  if (gamma == 1) return Rat(2 * (g - 1)) * omega_h_dot_R;
  Rat c(g + 1 - 2 * gamma);
  Rat gm1(gamma - 1);
  Rat square = c * c * omega_h2 - Rat(2) * c * gm1 * omega_h_dot_R + gm1 * gm1 * R2;
  return -(square / gm1) - Rat(2) * gm1 * Rat(n2);
}

CoefficientSet coefficients(long g, long gamma) {
  if (g < 2) throw ValidationError("coefficients: g must be >= 2");
  if (gamma < 1) throw ValidationError("coefficients: gamma must be >= 1");
  CoefficientSet c;
  c.g = g;
  c.gamma = gamma;
  c.x = Rat((3 * g + 1 - 4 * gamma) * (g - 1), 2);
  c.y = Rat(3, 2);
  c.z = Rat(g - 1);
  c.xbar = Rat((g + 1 - 2 * gamma) * (g + 1 - 2 * gamma), 8);
  c.ybar = Rat(1, 8);
  c.zbar = Rat(g - gamma, 4);
  return c;
}

Rat CoefficientSet::abar(long k) const { return Rat(k * (g - 1 + (k - 1) * (gamma - 1))); }

Rat CoefficientSet::bbar(long k) const {
  return Rat(k * (g - 1 + (k - 2) * (gamma - 1)), 2);
}

Rat CoefficientSet::a(long k) const {
  return Rat(12) * abar(k) - Rat(2 * g + 1 - 3 * gamma);
}

Rat CoefficientSet::b(long k) const {
  return Rat(12) * bbar(k) - Rat(2 * (2 * g + 1 - 3 * gamma));
}

std::vector<std::string> check_double_cover(const DoubleCoverData& data) {
  std::vector<std::string> out;
  if (data.g < 2) out.push_back("g must be >= 2");
  if (data.gamma < 1)
    out.push_back("gamma must be >= 1 (rational quotient out of scope)");
  if (data.gamma >= 1 && 2 * data.g + 2 - 4 * data.gamma < 0)
    out.push_back("Hurwitz violation: 2g+2-4gamma < 0");
  if (data.gamma >= 1 && 2 * data.g + 1 - 3 * data.gamma <= 0)
    out.push_back("2g+1-3gamma must be positive");
  if (data.T.sign() < 0) out.push_back("T must be >= 0");
  if (Rat(12) * data.chi_h != data.omega_h2 + data.e_h)
    out.push_back("quotient invariants violate Noether: 12 chi_h != omega_h^2 + e_h");
  if (data.gamma == 1 && !data.omega_h2.is_zero())
    out.push_back("gamma = 1 requires omega_h^2 = 0 (relatively minimal genus-1 quotient)");
  if (data.n2 < 0) out.push_back("n2 must be >= 0");
  for (const auto& [k, count] : data.s_odd) {
    if (k < 1) out.push_back("s_odd keys must be k >= 1");
    if (count < 0) out.push_back("s_{2k+1} counts must be >= 0");
  }
  for (const auto& [k, count] : data.s_even) {
    if (k < 2) out.push_back("s_even keys must be k >= 2");
    if (count < 0) out.push_back("s_{2k} counts must be >= 0");
  }
  if (data.q_pi && *data.q_pi < 0) out.push_back("q_pi must be >= 0");
  if (out.empty() && !index_inequality_check(data))
    out.push_back("index inequality violated: T + (gamma-1)(s_2 + ...) < 0");
  return out;
}

void validate_double_cover(const DoubleCoverData& data) {
  auto violations = check_double_cover(data);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid double-cover record:";
  for (const auto& v : violations) msg << " " << v << ";";
  throw ValidationError(msg.str());
}

namespace {

Rat omega_h2_term(const DoubleCoverData& data) {
  // The gamma = 1 convention: omega_h^2/(gamma-1) reads as 0.
  if (data.gamma == 1) return Rat(0);
  return data.omega_h2 / Rat(data.gamma - 1);
}

}  // namespace

FibrationInvariants invariants_from_double_cover(const DoubleCoverData& data) {
  validate_double_cover(data);
  const long N = 2 * data.g + 1 - 3 * data.gamma;
  CoefficientSet c = coefficients(data.g, data.gamma);
  Rat W = omega_h2_term(data);

  Rat omega_sum = c.x * W + c.y * data.T + c.z * data.s2;
  Rat chi_sum = c.xbar * W + Rat(2 * N) * data.chi_h + c.ybar * data.T + c.zbar * data.s2 -
                Rat(N, 4) * Rat(data.n2);
  Rat e = Rat(2) * data.e_h + data.s2 - Rat(3 * data.n2);
  for (const auto& [k, count] : data.s_odd) {
    omega_sum += c.a(k) * Rat(count);
    chi_sum += c.abar(k) * Rat(count);
    e += Rat(count);
  }
  for (const auto& [k, count] : data.s_even) {
    omega_sum += c.b(k) * Rat(count);
    chi_sum += c.bbar(k) * Rat(count);
    e += Rat(2 * count);
  }

  FibrationInvariants inv;
  inv.g = data.g;
  inv.q_f = std::nullopt;
  inv.omega2 = omega_sum / Rat(N);
  inv.chi = chi_sum / Rat(N);
  inv.e = e;
  return inv;
}

TermBreakdown lambda_decomposition(const DoubleCoverData& data, const Rat& lambda) {
  validate_double_cover(data);
  const long g = data.g, gamma = data.gamma;
  const long N = 2 * g + 1 - 3 * gamma;
  CoefficientSet c = coefficients(g, gamma);
  TermBreakdown out;
  out.lambda = lambda;

  auto add = [&](std::string name, std::optional<long> k, Rat coef, Rat value) {
    Term t;
    t.name = std::move(name);
    t.k = k;
    t.product = coef * value;
    t.coefficient = std::move(coef);
    t.value = std::move(value);
    out.total += t.product;
    out.terms.push_back(std::move(t));
  };

  Rat c_sq(g + 1 - 2 * gamma);
  add("omega_h2_over_gamma_minus_1", std::nullopt, c.x - c_sq * c_sq * lambda / Rat(8),
      omega_h2_term(data));
  add("chi_h", std::nullopt, Rat(-2 * N) * lambda, data.chi_h);
  add("T", std::nullopt, (Rat(12) - lambda) / Rat(8), data.T);
  add("s2", std::nullopt, (Rat(4 * (g - 1)) - Rat(g - gamma) * lambda) / Rat(4), data.s2);
  add("n2", std::nullopt, Rat(N) * lambda / Rat(4), Rat(data.n2));
  for (const auto& [k, count] : data.s_odd)
    add("s_odd", k, (Rat(12) - lambda) * c.abar(k) - Rat(N), Rat(count));
  for (const auto& [k, count] : data.s_even)
    add("s_even", k, (Rat(12) - lambda) * c.bbar(k) - Rat(2 * N), Rat(count));

  FibrationInvariants inv = invariants_from_double_cover(data);
  out.expected = Rat(N) * (inv.omega2 - lambda * inv.chi);
  out.identity_ok = out.total == out.expected;
  return out;
}

ConstraintVerdict irregular_constraint(const DoubleCoverData& data, const ConstraintMode& mode) {
  validate_double_cover(data);
  if (!mode.positive_qpi && mode.g_prime < 1)
    throw ValidationError("irregular_constraint: image genus g' must be >= 1");
  const long g = data.g, gamma = data.gamma;
  const long N = 2 * g + 1 - 3 * gamma;
  const long g_prime = mode.positive_qpi ? 1 : mode.g_prime;
  CoefficientSet c = coefficients(g, gamma);
  Rat cgap(g + 1 - 2 * gamma);

  Rat lhs_inner = data.s2;
  if (!mode.positive_qpi) {
    for (const auto& [k, count] : data.s_odd)
      if (k <= g_prime - 1) lhs_inner += Rat(4 * (2 * k + 1) * k * count);
    for (const auto& [k, count] : data.s_even)
      if (k <= g_prime) lhs_inner += Rat(2 * (2 * k - 1) * k * count);
  }
  Rat lhs = Rat(2) * cgap * lhs_inner;

  Rat rhs = cgap * cgap * omega_h2_term(data) + data.T;
  for (const auto& [k, count] : data.s_odd)
    if (k >= g_prime) rhs += Rat(2) * (Rat(4) * c.abar(k) + Rat(N)) * Rat(count);
  for (const auto& [k, count] : data.s_even)
    if (k >= g_prime + 1) rhs += Rat(8) * c.bbar(k) * Rat(count);

  ConstraintVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.satisfied = lhs <= rhs;
  return v;
}

Rat F_invariant(long g, long gamma, long q_pi) {
  Rat gm1(g - 1);
  return gm1 * gm1 - Rat(4) * gm1 * Rat(gamma * q_pi + gamma + q_pi) -
         Rat(4 * q_pi * q_pi) * Rat(gamma * gamma - 1);
}

Rat lambda_threshold(long g, long gamma, long q_pi) {
  long denom = (q_pi + 1) * ((g - 1) + (q_pi - 1) * (gamma - 1));
  if (denom <= 0) throw ValidationError("lambda_threshold: nonpositive denominator");
  return Rat(8) - Rat(4 * (g + 1 - 2 * gamma)) / Rat(denom);
}

bool index_inequality_check(const DoubleCoverData& data) {
  if (data.gamma < 1) throw ValidationError("index_inequality_check: gamma must be >= 1");
  Rat inner = data.s2;
  for (const auto& [k, count] : data.s_odd) inner += Rat(4 * k * (2 * k + 1) * count);
  for (const auto& [k, count] : data.s_even) inner += Rat(2 * k * (2 * k - 1) * count);
  return (data.T + Rat(data.gamma - 1) * inner).sign() >= 0;
}

Rat threshold_xi(long g, long gamma, long q_pi, long k) {
  Rat lambda = lambda_threshold(g, gamma, q_pi);
  return Rat(k * k) * lambda - Rat((2 * k - 1) * (2 * k - 1));
}

Rat threshold_eta(long g, long gamma, long q_pi, long k) {
  Rat lambda = lambda_threshold(g, gamma, q_pi);
  return Rat(k - 1) * (Rat(k) * lambda - Rat(4 * (k - 1))) / Rat(2);
}

Rat threshold_mu(long g, long gamma, long q_pi, long k) {
  long cgap = g + 1 - 2 * gamma;
  if (cgap <= 0) throw ValidationError("threshold_mu: requires g+1-2gamma > 0");
  Rat lambda = lambda_threshold(g, gamma, q_pi);
  Rat num = (Rat(4 * k * (g - 1)) + Rat((2 * k - 1) * (2 * k - 1)) * Rat(gamma - 1)) *
                (Rat(8) - lambda) -
            Rat(cgap) * lambda;
  return num / Rat(4 * cgap);
}

Rat threshold_nu(long g, long gamma, long q_pi, long k) {
  long cgap = g + 1 - 2 * gamma;
  if (cgap <= 0) throw ValidationError("threshold_nu: requires g+1-2gamma > 0");
  Rat lambda = lambda_threshold(g, gamma, q_pi);
  Rat num = Rat(k) * Rat((g - 1) + (k - 2) * (gamma - 1)) * (Rat(8) - lambda) -
            Rat(4 * cgap);
  return num / Rat(2 * cgap);
}

Rat threshold_mu_at_qpi_closed_form(long g, long gamma, long q_pi) {
  long denom = (q_pi + 1) * ((g - 1) + (q_pi - 1) * (gamma - 1));
  if (denom <= 0)
    throw ValidationError("threshold_mu_at_qpi_closed_form: nonpositive denominator");
  return Rat(2 * (q_pi - 1), q_pi + 1) + Rat(g - gamma) / Rat(denom);
}

}  // namespace fibslope
