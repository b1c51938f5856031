#include "fibslope/example_families.hpp"

#include <sstream>

#include "fibslope/double_cover.hpp"

namespace fibslope {

namespace {

void finish(ExampleRecord& rec) {
  if (!check_noether(rec.inv))
    throw ValidationError("example family produced a non-Noether record");
  rec.slope = slope(rec.inv);
  if (rec.q_f) {
    rec.conjecture_rhs = conjecture_bound(rec.inv.g, *rec.q_f).value;
    rec.violates_conjecture = rec.slope < *rec.conjecture_rhs;
  }
}

}  // namespace

ExampleRecord example_product_quotient(long g0) {
  if (g0 < 3) throw ValidationError("example_product_quotient: g0 must be >= 3");
  ExampleRecord rec;
  rec.family = "product_quotient";
  rec.params = {{"g0", g0}};
  rec.inv.g = 2 * g0 - 3;
  rec.inv.b = 1;
  rec.q_f = g0 - 1;
  rec.inv.q_f = rec.q_f;
  rec.inv.chi = Rat((g0 - 1) * (g0 - 1) - (g0 - 1), 2);
  rec.inv.omega2 = Rat(4 * (g0 - 1) * (g0 - 1) - 5 * (g0 - 1));
  rec.inv.e = Rat(12) * rec.inv.chi - rec.inv.omega2;
  finish(rec);
  // Closed form of the slope for this family.
  if (rec.slope != Rat(8) - Rat(4, rec.inv.g - 1))
    throw ValidationError("example_product_quotient: slope closed form mismatch");
  return rec;
}

ExampleRecord example_pencil_cover(long g, long gamma) {
  if (g < 3 || g % 2 == 0)
    throw ValidationError("example_pencil_cover: g must be odd and >= 3");
  if (gamma <= 0 || 2 * gamma >= g + 1)
    throw ValidationError("example_pencil_cover: need 0 < gamma < (g+1)/2");
  ExampleRecord rec;
  rec.family = "pencil_cover";
  rec.params = {{"g", g}, {"gamma", gamma}};
  rec.gamma = gamma;
  rec.inv.g = g;
  rec.inv.b = 0;
  rec.q_f = (g + 1) / 2;
  rec.q_pi = (g + 1) / 2 - gamma;  // the auxiliary cover contributes gamma' = q_pi
  rec.inv.q_f = rec.q_f;
  long n = (g + 1 - 2 * gamma) * gamma;
  rec.inv.omega2 = Rat(8 * n - 4);
  rec.inv.chi = Rat(n);
  rec.inv.e = Rat(12) * rec.inv.chi - rec.inv.omega2;
  finish(rec);
  if (rec.slope != Rat(8) - Rat(4, n))
    throw ValidationError("example_pencil_cover: slope closed form mismatch");
  return rec;
}

ExampleRecord example_base_change(long g, long gamma, long d, long b0) {
  if (g < 2) throw ValidationError("example_base_change: g must be >= 2");
  if (gamma < 1) throw ValidationError("example_base_change: gamma must be >= 1");
  if (d < 2) throw ValidationError("example_base_change: d must be >= 2");
  if (b0 < 1) throw ValidationError("example_base_change: b0 must be >= 1");
  long spread = g + 1 - 2 * gamma;
  if (spread <= 0 || spread % d != 0) {
    std::ostringstream msg;
    msg << "example_base_change: d = " << d << " does not divide g+1-2gamma = " << spread;
    throw ValidationError(msg.str());
  }
  long q_pi = spread / d - 1;
  if (q_pi < 1) throw ValidationError("example_base_change: resulting q_pi must be >= 1");
  ExampleRecord rec;
  rec.family = "base_change";
  rec.params = {{"g", g}, {"gamma", gamma}, {"d", d}, {"b0", b0}};
  rec.gamma = gamma;
  rec.q_pi = q_pi;
  rec.inv.g = g;
  rec.inv.b = 0;
  long block = (q_pi + 1) * (gamma - 1 + d);
  rec.inv.omega2 = Rat(4 * (2 * block - d) * b0);
  rec.inv.chi = Rat(block * b0);
  rec.inv.e = Rat(12) * rec.inv.chi - rec.inv.omega2;
  finish(rec);
  // This family attains the lambda threshold exactly.
  if (rec.slope != lambda_threshold(g, gamma, q_pi))
    throw ValidationError("example_base_change: slope does not match lambda_threshold");
  return rec;
}

BoundsProfile profile_for_example(const ExampleRecord& record) {
  BoundsProfile p;
  p.g = record.inv.g;
  p.q_f = record.q_f;
  if (record.family == "pencil_cover") {
    p.gamma = record.gamma;
    p.q_pi = record.q_pi;
    p.h_locally_trivial = false;
  } else if (record.family == "base_change") {
    p.gamma = record.gamma;
    p.q_pi = record.q_pi;
    p.h_locally_trivial = true;  // the quotient fibration is a product
    p.J0_is_curve = true;        // X~ maps onto the genus-q_pi base curve
  }
  // product_quotient asserts no double-cover structure and no finite-map scenario.
  return p;
}

VerdictSummary violation_report(const ExampleRecord& record) {
  VerdictSummary out;
  out.slope = slope(record.inv);
  out.conjecture_rhs = record.conjecture_rhs;
  if (record.conjecture_rhs) out.margin = *record.conjecture_rhs - out.slope;
  out.scan = bounds_registry(profile_for_example(record));
  for (const auto& row : out.scan) {
    if (row.conjectural || !row.hypotheses_met || !row.bound) continue;
    if (*row.bound > out.slope) {
      std::ostringstream msg;
      msg << row.theorem_id << " certifies " << row.bound->str()
          << " above the example slope " << out.slope.str();
      out.contradictions.push_back(msg.str());
      out.audit_ok = false;
    }
  }
  return out;
}

}  // namespace fibslope
