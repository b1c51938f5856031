#include "fibslope/xiao.hpp"

#include <algorithm>
#include <sstream>

namespace fibslope {

std::string image_class_name(ImageClass c) {
  switch (c) {
    case ImageClass::birational: return "birational";
    case ImageClass::degree2: return "degree2";
    case ImageClass::degree3: return "degree3";
    case ImageClass::degree_ge4: return "degree_ge4";
    case ImageClass::unknown: return "unknown";
  }
  return "unknown";
}

ImageClass image_class_from_name(const std::string& name) {
  if (name == "birational") return ImageClass::birational;
  if (name == "degree2") return ImageClass::degree2;
  if (name == "degree3") return ImageClass::degree3;
  if (name == "degree_ge4") return ImageClass::degree_ge4;
  if (name == "unknown") return ImageClass::unknown;
  throw ValidationError("unknown image class '" + name + "'");
}

namespace {

// Map degree for the monotonicity check; birational counts as degree 1.
int class_degree(ImageClass c) {
  switch (c) {
    case ImageClass::birational: return 1;
    case ImageClass::degree2: return 2;
    case ImageClass::degree3: return 3;
    case ImageClass::degree_ge4: return 4;
    case ImageClass::unknown: return -1;
  }
  return -1;
}

}  // namespace

std::vector<HNViolation> check_hn(const HNData& hn) {
  std::vector<HNViolation> out;
  if (hn.g < 2) out.push_back({0, "fiber genus must be >= 2"});
  if (hn.parts.empty()) {
    out.push_back({0, "profile has no parts"});
    return out;
  }
  const int n = static_cast<int>(hn.parts.size());
  Rat dmax = Rat(2 * hn.g - 2);
  for (int i = 0; i < n; ++i) {
    const HNPart& p = hn.parts[i];
    if (p.r < 1) out.push_back({i + 1, "rank must be >= 1"});
    if (i > 0 && hn.parts[i - 1].r >= p.r)
      out.push_back({i + 1, "ranks not strictly increasing"});
    if (i > 0 && !(hn.parts[i - 1].mu > p.mu))
      out.push_back({i + 1, "slopes not decreasing"});
    if (p.d.sign() < 0) out.push_back({i + 1, "d must be >= 0"});
    if (i > 0 && hn.parts[i - 1].d > p.d)
      out.push_back({i + 1, "d not nondecreasing"});
    if (p.image_class == ImageClass::degree2 && !p.gamma)
      out.push_back({i + 1, "degree2 class requires image genus gamma"});
    if (p.image_class == ImageClass::degree3 && !p.g_im)
      out.push_back({i + 1, "degree3 class requires image genus g_im"});
    if (p.gamma && *p.gamma < 0) out.push_back({i + 1, "gamma must be >= 0"});
    if (p.g_im && *p.g_im < 0) out.push_back({i + 1, "g_im must be >= 0"});
  }
  if (hn.parts.back().r > hn.g)
    out.push_back({n, "last rank exceeds the fiber genus"});
  if (hn.parts.back().mu.sign() < 0)
    out.push_back({n, "mu_n must be >= 0 (semi-positivity)"});
  if (hn.parts.back().d > dmax)
    out.push_back({n, "d_n exceeds 2g-2"});
  int prev_degree = 1000;  // classes may only move toward smaller degree
  for (int i = 0; i < n; ++i) {
    int deg = class_degree(hn.parts[i].image_class);
    if (deg < 0) continue;
    if (deg > prev_degree)
      out.push_back({i + 1, "image class degree increases along the filtration"});
    prev_degree = std::min(prev_degree, deg);
  }
  return out;
}

void validate_hn(const HNData& hn) {
  auto violations = check_hn(hn);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid HN profile:";
  for (const auto& v : violations) msg << " [part " << v.index << "] " << v.message << ";";
  throw ValidationError(msg.str());
}

Rat chi_from_hn(const HNData& hn) {
  validate_hn(hn);
  Rat total;
  const int n = static_cast<int>(hn.parts.size());
  for (int i = 0; i < n; ++i) {
    Rat mu_next = (i + 1 < n) ? hn.parts[i + 1].mu : Rat(0);
    total += Rat(hn.parts[i].r) * (hn.parts[i].mu - mu_next);
  }
  return total;
}

namespace {

struct Sentinels {
  // d and mu extended by the conventions d_{n+1} = 2g-2, mu_{n+1} = 0.
  std::vector<Rat> d, mu;
  int n;
};

Sentinels extend(const HNData& hn) {
  Sentinels s;
  s.n = static_cast<int>(hn.parts.size());
  s.d.reserve(s.n + 1);
  s.mu.reserve(s.n + 1);
  for (const auto& p : hn.parts) {
    s.d.push_back(p.d);
    s.mu.push_back(p.mu);
  }
  s.d.push_back(Rat(2 * hn.g - 2));
  s.mu.push_back(Rat(0));
  return s;
}

Rat eval_subsequence(const Sentinels& s, const std::vector<int>& seq0) {
  Rat total;
  for (std::size_t j = 0; j < seq0.size(); ++j) {
    int i = seq0[j];
    int next = (j + 1 < seq0.size()) ? seq0[j + 1] : s.n;
    total += (s.d[i] + s.d[next]) * (s.mu[i] - s.mu[next]);
  }
  return total;
}

}  // namespace

XiaoBound xiao_bound(const HNData& hn, const std::optional<std::vector<int>>& subsequence) {
  validate_hn(hn);
  Sentinels s = extend(hn);
  if (subsequence) {
    const auto& seq = *subsequence;
    if (seq.empty()) throw ValidationError("xiao_bound: subsequence must be nonempty");
    std::vector<int> seq0;
    seq0.reserve(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
      if (seq[j] < 1 || seq[j] > s.n)
        throw ValidationError("xiao_bound: subsequence index out of range");
      if (j > 0 && seq[j] <= seq[j - 1])
        throw ValidationError("xiao_bound: subsequence not strictly increasing");
      seq0.push_back(seq[j] - 1);
    }
    return {eval_subsequence(s, seq0), seq};
  }

  // best[i]: optimal value of a chain starting at i; choice[i]: the successor
  // (s.n meaning "stop here").  Ties prefer stopping, then the smaller index,
  // so reconstruction yields the lexicographically smallest maximizer.
  std::vector<Rat> best(s.n + 1);
  std::vector<int> choice(s.n + 1, s.n);
  for (int i = s.n - 1; i >= 0; --i) {
    Rat best_here = (s.d[i] + s.d[s.n]) * (s.mu[i] - s.mu[s.n]);
    int best_next = s.n;
    for (int j = i + 1; j < s.n; ++j) {
      Rat v = (s.d[i] + s.d[j]) * (s.mu[i] - s.mu[j]) + best[j];
      if (v > best_here) {
        best_here = v;
        best_next = j;
      }
    }
    best[i] = best_here;
    choice[i] = best_next;
  }
  int start = 0;
  for (int i = 1; i < s.n; ++i)
    if (best[i] > best[start]) start = i;
  XiaoBound out;
  out.value = best[start];
  for (int i = start; i != s.n; i = choice[i]) out.subsequence.push_back(i + 1);
  return out;
}

XiaoBound xiao_bound_exhaustive(const HNData& hn) {
  validate_hn(hn);
  Sentinels s = extend(hn);
  XiaoBound best;
  bool have = false;
  std::vector<int> current;
  auto consider = [&](const Rat& v) {
    std::vector<int> seq1;
    seq1.reserve(current.size());
    for (int i : current) seq1.push_back(i + 1);
    if (!have || v > best.value || (v == best.value && seq1 < best.subsequence)) {
      best.value = v;
      best.subsequence = std::move(seq1);
      have = true;
    }
  };
  // DFS over all nonempty subsequences; acc carries the internal-link sum of
  // the current chain, so each node costs O(1) rational operations.
  auto dfs = [&](auto&& self, int last, const Rat& acc) -> void {
    consider(acc + (s.d[last] + s.d[s.n]) * (s.mu[last] - s.mu[s.n]));
    for (int j = last + 1; j < s.n; ++j) {
      current.push_back(j);
      self(self, j, acc + (s.d[last] + s.d[j]) * (s.mu[last] - s.mu[j]));
      current.pop_back();
    }
  };
  for (int start = 0; start < s.n; ++start) {
    current.assign(1, start);
    dfs(dfs, start, Rat(0));
  }
  return best;
}

Rat staircase_bound(const std::vector<SubsheafPoint>& points) {
  const int k = static_cast<int>(points.size());
  for (int i = 0; i < k; ++i) {
    if (points[i].r_tilde < 1)
      throw ValidationError("staircase_bound: ranks must be >= 1");
    if (i > 0 && points[i - 1].r_tilde >= points[i].r_tilde)
      throw ValidationError("staircase_bound: r~ not strictly increasing");
    if (i > 0 && !(points[i - 1].mu_tilde > points[i].mu_tilde))
      throw ValidationError("staircase_bound: mu~ not strictly decreasing");
  }
  if (k > 0 && points.back().mu_tilde.sign() < 0)
    throw ValidationError("staircase_bound: mu~_k must be >= 0");
  Rat total;
  for (int i = 0; i < k; ++i) {
    Rat mu_next = (i + 1 < k) ? points[i + 1].mu_tilde : Rat(0);
    total += Rat(points[i].r_tilde) * (points[i].mu_tilde - mu_next);
  }
  return total;
}

long multiplication_rank_bound(long r, long g0, bool birational) {
  if (r < 1) throw ValidationError("multiplication_rank_bound: r must be >= 1");
  if (g0 < 0) throw ValidationError("multiplication_rank_bound: g0 must be >= 0");
  long value = birational ? 3 * (r - 1) : std::min(3 * (r - 1), 2 * r + g0 - 1);
  return std::max(value, 2 * r - 1);
}

bool castelnuovo_feasible(const Rat& d, long s, long g) {
  if (s < 3) throw ValidationError("castelnuovo_feasible: s must be >= 3");
  if (!d.is_integer() || d < Rat(1))
    throw ValidationError("castelnuovo_feasible: d must be an integer >= 1");
  long long dv = d.to_int();
  long long m = (dv - 1) / (s - 2);
  if (m < 1) return false;  // no nondegenerate system of such low degree
  Rat rhs = Rat(g) / Rat(m) + Rat((m + 1) * s, 2) - Rat(m);
  return d >= rhs;
}

long castelnuovo_min_degree(long s, long g) {
  if (s < 3) throw ValidationError("castelnuovo_min_degree: s must be >= 3");
  if (g < 2) throw ValidationError("castelnuovo_min_degree: g must be >= 2");
  for (long d = s - 1; d <= 8 * g + 8; ++d)
    if (castelnuovo_feasible(Rat(d), s, g)) return d;
  throw ValidationError("castelnuovo_min_degree: no feasible degree found");
}

Rat degree_class_min_degree(long r, ImageClass cls, std::optional<long> gamma,
                            bool precedes_degree3) {
  if (r < 1) throw ValidationError("degree_class_min_degree: r must be >= 1");
  switch (cls) {
    case ImageClass::degree_ge4:
      return Rat(precedes_degree3 ? 6 * (r - 1) : 4 * (r - 1));
    case ImageClass::degree3:
      return Rat(3 * r);
    case ImageClass::degree2: {
      if (!gamma || *gamma < 0)
        throw ValidationError("degree_class_min_degree: degree2 requires image genus gamma");
      return Rat(2 * std::min(2 * (r - 1), r + *gamma - 1));
    }
    case ImageClass::birational:
      throw ValidationError(
          "degree_class_min_degree: birational class is bounded by castelnuovo_feasible");
    case ImageClass::unknown:
      throw ValidationError("degree_class_min_degree: image class is unknown");
  }
  throw ValidationError("degree_class_min_degree: unreachable");
}

Rat combined_bound(const HNData& hn, const Rat& theta) {
  validate_hn(hn);
  if (theta.sign() < 0 || theta > Rat(1))
    throw ValidationError("combined_bound: weight must lie in [0,1]");
  const int n = static_cast<int>(hn.parts.size());
  std::vector<long> rt(n);
  for (int i = 0; i < n; ++i) {
    const HNPart& p = hn.parts[i];
    switch (p.image_class) {
      case ImageClass::birational:
        rt[i] = multiplication_rank_bound(p.r, 0, true);
        break;
      case ImageClass::degree2:
        rt[i] = multiplication_rank_bound(p.r, *p.gamma, false);
        break;
      case ImageClass::degree3:
        rt[i] = multiplication_rank_bound(p.r, *p.g_im, false);
        break;
      case ImageClass::degree_ge4:
        rt[i] = multiplication_rank_bound(p.r, 0, false);
        break;
      case ImageClass::unknown:
        throw ValidationError("combined_bound: image class unknown at index " +
                              std::to_string(i + 1));
    }
  }
  // The staircase needs strictly increasing ranks; a rank estimate may only be
  // lowered, so clamp right to left.
  for (int i = n - 2; i >= 0; --i) rt[i] = std::min(rt[i], rt[i + 1] - 1);
  for (int i = 0; i < n; ++i)
    if (rt[i] < 1)
      throw ValidationError("combined_bound: degenerate rank staircase");
  Rat staircase_part;  // sum (2 r~_i - r_i)(mu_i - mu_{i+1}) == staircase - chi_f
  for (int i = 0; i < n; ++i) {
    Rat mu_next = (i + 1 < n) ? hn.parts[i + 1].mu : Rat(0);
    staircase_part += Rat(2 * rt[i] - hn.parts[i].r) * (hn.parts[i].mu - mu_next);
  }
  std::vector<int> full(n);
  for (int i = 0; i < n; ++i) full[i] = i + 1;
  Rat xiao_part = xiao_bound(hn, full).value;
  return theta * staircase_part + (Rat(1) - theta) * xiao_part;
}

const std::vector<Rat>& combined_weight_grid() {
  static const std::vector<Rat> grid = {Rat(0),     Rat(1, 4), Rat(1, 3), Rat(1, 2),
                                        Rat(2, 3), Rat(3, 4), Rat(1)};
  return grid;
}

Rat scenario_slope_bound(long g, SlopeScenario scenario) {
  if (g < 2) throw ValidationError("scenario_slope_bound: g must be >= 2");
  switch (scenario) {
    case SlopeScenario::non_triple_nor_double:
      return Rat(14 * (g - 1)) / Rat(3 * (g + 1));
    case SlopeScenario::non_double:
    case SlopeScenario::gamma_ge_g_over_3:
      return Rat(18 * (g - 1)) / Rat(4 * g + 3);
    case SlopeScenario::q_small:
      return Rat(9 * (g - 1)) / Rat(2 * g);
  }
  throw ValidationError("scenario_slope_bound: unreachable");
}

namespace {

void push_row(AuditReport& rep, std::string list_id, std::string row_id, long r,
              std::optional<long> gamma, Rat d, Rat d_next, Rat lhs, Rat rhs,
              const char* relation, bool applicable, bool asserted) {
  AuditRow row;
  row.list_id = std::move(list_id);
  row.row_id = std::move(row_id);
  row.r = r;
  row.gamma = gamma;
  row.d = std::move(d);
  row.d_next = std::move(d_next);
  row.lhs = std::move(lhs);
  row.rhs = std::move(rhs);
  row.relation = relation;
  row.applicable = applicable;
  row.asserted = asserted;
  if (row.relation == ">=") row.pass = row.lhs >= row.rhs;
  else if (row.relation == ">") row.pass = row.lhs > row.rhs;
  else row.pass = row.lhs == row.rhs;
  rep.rows.push_back(std::move(row));
}

}  // namespace

AuditReport audit_coefficients(long g) {
  if (g < 2) throw ValidationError("audit_coefficients: g must be >= 2");
  AuditReport rep;
  rep.g = g;
  const Rat half(1, 2), third(1, 3), two_thirds(2, 3);
  const Rat dtop(2 * g - 2);

  // Pre-birational rows: coefficient (3r-2) from the unconditional rank floor
  // 2r-1, with the class's minimal degrees at ranks r and r+1.
  for (long r = 2; r <= g - 1; ++r) {
    {
      Rat d(4 * (r - 1)), dn(4 * r);
      Rat lhs = two_thirds * Rat(3 * r - 2) + third * (d + dn);
      push_row(rep, "thirds-mix", "pre-birational", r, std::nullopt, d, dn, lhs,
               Rat(14 * r - 8, 3), ">=", true, true);
      Rat lhs2 = half * Rat(3 * r - 2) + half * (d + dn);
      push_row(rep, "halves-mix", "pre-birational-ge4", r, std::nullopt, d, dn, lhs2,
               Rat(9 * r - 4, 2), ">", true, true);
    }
    {
      Rat d(6 * (r - 1)), dn(6 * r);
      Rat lhs = half * Rat(3 * r - 2) + half * (d + dn);
      push_row(rep, "halves-mix", "pre-birational-ge4-before-deg3", r, std::nullopt, d, dn, lhs,
               Rat(9 * r - 4, 2), ">", true, true);
      Rat cross = std::max(Rat(6 * (r - 1)), Rat(3 * (r + 1)));
      Rat lhs_cross = half * Rat(3 * r - 2) + half * (d + cross);
      push_row(rep, "halves-mix", "pre-birational-cross-deg3", r, std::nullopt, d, cross,
               lhs_cross, Rat(9 * r - 4, 2), ">", true, true);
    }
    {
      Rat d(3 * r), dn(3 * (r + 1));
      Rat lhs = half * Rat(3 * r - 2) + half * (d + dn);
      push_row(rep, "halves-mix", "pre-birational-deg3", r, std::nullopt, d, dn, lhs,
               Rat(9 * r - 4, 2), ">", true, true);
    }
  }

  // Birational rows use the Castelnuovo minimum at s = r (worst case), with
  // same-class successors at rank r+1; d_{n+1} = 2g-2 fixes the last rows.
  std::vector<Rat> cast(g + 2, Rat(0));
  for (long r = 3; r <= g; ++r) cast[r] = Rat(castelnuovo_min_degree(r, g));
  for (long r = 3; r <= g - 1; ++r) {
    Rat succ = (r + 1 <= g) ? std::max(cast[r], cast[r + 1]) : dtop;
    Rat lhs_92 = half * Rat(5 * r - 6) + half * (cast[r] + succ);
    push_row(rep, "halves-mix", "birational-mid", r, std::nullopt, cast[r], succ, lhs_92,
             Rat(9 * r - 7, 2), ">=", true, true);
    Rat lhs_143 = two_thirds * Rat(5 * r - 6) + third * (cast[r] + succ);
    // Not quoted by the bound derivations we reproduce; fails at worst-case
    // Castelnuovo degrees for small g, so reported but not asserted.
    if (r != g - 1)
      push_row(rep, "thirds-mix", "birational-mid", r, std::nullopt, cast[r], succ,
               lhs_143, Rat(14 * r - 11, 3), ">=", true, false);
  }
  if (g >= 4) {
    long r = g - 1;
    Rat lhs = two_thirds * Rat(5 * r - 6) + third * (cast[r] + dtop);
    push_row(rep, "thirds-mix", "equality-r-n-1", r, std::nullopt, cast[r], dtop, lhs,
             Rat(14 * r - 13, 3), "==", true, true);
  }
  {
    Rat lhs = two_thirds * Rat(5 * g - 6) + third * (dtop + dtop);
    push_row(rep, "thirds-mix", "equality-r-n", g, std::nullopt, dtop, dtop, lhs,
             Rat(14 * g - 16, 3), "==", true, true);
    Rat lhs2 = half * Rat(5 * g - 6) + half * (dtop + dtop);
    push_row(rep, "halves-mix", "equality-r-n", g, std::nullopt, dtop, dtop, lhs2,
             Rat(9 * g - 10, 2), "==", true, true);
  }

  // The small-irregularity rows live in a regime whose standing hypotheses force g >= 18
  // and r_{n-1} <= g-3 (or g-2 with the non-hyperelliptic degree floor).
  {
    bool applicable = g >= 18;
    for (long r = 3; r <= g - 4; ++r) {
      Rat succ = std::max(cast[r], cast[r + 1]);
      Rat lhs = half * Rat(5 * r - 6) + half * (cast[r] + succ);
      push_row(rep, "halves-mix-small-irregularity", "interior", r, std::nullopt, cast[r], succ, lhs,
               Rat(9 * r - 4, 2), ">=", applicable, true);
    }
    if (g >= 6) {
      long r = g - 3;
      Rat lhs = half * Rat(5 * r - 6) + half * (cast[r] + dtop);
      push_row(rep, "halves-mix-small-irregularity", "last-index-g-3", r, std::nullopt, cast[r], dtop, lhs,
               Rat(9 * r - 4, 2), ">=", applicable, true);
      r = g - 2;
      Rat d = std::max(cast[r], Rat(2 * r));  // non-hyperelliptic floor d >= 2r
      lhs = half * Rat(5 * r - 6) + half * (d + dtop);
      push_row(rep, "halves-mix-small-irregularity", "last-index-g-2", r, std::nullopt, d, dtop, lhs,
               Rat(9 * r - 4, 2), ">=", applicable, true);
    }
  }

  // Degree-2 rows: theta_i = min{3r-3, 2r+gamma-1} under
  // gamma >= g/3, degrees 2 min{2(r-1), r+gamma-1}.
  for (long gamma = (g + 2) / 3; 2 * gamma <= g + 1; ++gamma) {
    for (long r = 2; r <= g - gamma; ++r) {
      long theta = std::min(3 * r - 3, 2 * r + gamma - 1);
      Rat d(2 * std::min(2 * (r - 1), r + gamma - 1));
      Rat dn = std::max(d, Rat(2 * std::min(2 * r, r + gamma)));
      Rat lhs = half * Rat(2 * theta - r) + half * (d + dn);
      push_row(rep, "halves-mix-degree2", "degree2", r, gamma, d, dn, lhs, Rat(9 * r - 4, 2),
               ">=", true, true);
    }
  }

  rep.all_pass = true;
  for (const auto& row : rep.rows)
    if (row.applicable && row.asserted && !row.pass) rep.all_pass = false;
  return rep;
}

}  // namespace fibslope
