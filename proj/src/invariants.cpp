#include "fibslope/invariants.hpp"

namespace fibslope {

FibrationInvariants relative_invariants(const GlobalSurfaceData& data) {
  if (data.g < 2) throw ValidationError("relative_invariants: fiber genus must be >= 2");
  if (data.b < 0) throw ValidationError("relative_invariants: base genus must be >= 0");
  if (data.q_f && *data.q_f < 0)
    throw ValidationError("relative_invariants: q_f must be >= 0");
  Rat correction = Rat((data.g - 1) * (data.b - 1));
  FibrationInvariants inv;
  inv.g = data.g;
  inv.b = data.b;
  inv.q_f = data.q_f;
  inv.chi = data.chi_O - correction;
  inv.omega2 = data.K2 - Rat(8) * correction;
  inv.e = data.e_top - Rat(4) * correction;
  return inv;
}

Rat slope(const FibrationInvariants& inv) {
  if (inv.chi.is_zero())
    throw ValidationError("slope: chi_f = 0, fibration is locally trivial (slope undefined)");
  if (inv.chi.sign() < 0)
    throw ValidationError("slope: chi_f < 0, invalid fibration data");
  return inv.omega2 / inv.chi;
}

bool check_noether(const FibrationInvariants& inv) {
  return Rat(12) * inv.chi == inv.omega2 + inv.e;
}

ConjectureBound conjecture_bound(long g, long q_f) {
  if (g < 2) throw ValidationError("conjecture_bound: g must be >= 2");
  if (q_f < 0) throw ValidationError("conjecture_bound: q_f must be >= 0");
  if (q_f >= g) throw ValidationError("conjecture_bound: q_f must be < g");
  ConjectureBound out;
  out.value = Rat(4 * (g - 1), g - q_f);
  out.in_range = q_f < g - 1;
  return out;
}

ValidityReport classify_basic(const FibrationInvariants& inv) {
  ValidityReport rep;
  rep.noether_ok = check_noether(inv);
  rep.e_nonneg = inv.e.sign() >= 0;
  rep.chi_nonneg = inv.chi.sign() >= 0;
  rep.locally_trivial = inv.chi.is_zero();
  rep.smooth = inv.e.is_zero();
  if (inv.chi.sign() > 0) {
    Rat lambda = inv.omega2 / inv.chi;
    rep.slope_in_range = lambda.sign() > 0 && lambda <= Rat(12);
  }
  return rep;
}

}  // namespace fibslope
