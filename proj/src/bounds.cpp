#include "fibslope/bounds.hpp"

#include "fibslope/double_cover.hpp"
#include "fibslope/invariants.hpp"
#include "fibslope/xiao.hpp"

namespace fibslope {

namespace {

struct RowBuilder {
  SlopeBoundReport row;
  explicit RowBuilder(std::string id) { row.theorem_id = std::move(id); }
  RowBuilder& hyp(std::string name, bool met) {
    row.hypotheses.push_back({std::move(name), met});
    return *this;
  }
  RowBuilder& bound(Rat b) {
    row.bound = std::move(b);
    return *this;
  }
  RowBuilder& conjectural() {
    row.conjectural = true;
    return *this;
  }
  SlopeBoundReport done() {
    row.hypotheses_met = true;
    for (const auto& h : row.hypotheses) row.hypotheses_met &= h.met;
    return row;
  }
};

}  // namespace

std::vector<SlopeBoundReport> double_cover_bounds(const BoundsProfile& p) {
  std::vector<SlopeBoundReport> out;
  const long g = p.g;
  if (g < 2) throw ValidationError("double_cover_bounds: g must be >= 2");
  const bool has_gamma = p.gamma && *p.gamma >= 1;
  const long gamma = has_gamma ? *p.gamma : 0;
  const bool hurwitz_ok = has_gamma && 2 * g + 2 - 4 * gamma >= 0;
  const bool irregular = p.q_pi && *p.q_pi >= 1;
  // q_pi > gamma+1 already forces the J_0 image to be a curve.
  const bool j0_curve = p.J0_is_curve || (irregular && has_gamma && *p.q_pi > gamma + 1);

  {
    RowBuilder b("double-cover-basic");
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("h locally trivial or g >= 4gamma+1",
          has_gamma && (p.h_locally_trivial || g >= 4 * gamma + 1));
    if (has_gamma && g - gamma > 0) b.bound(Rat(4 * (g - 1), g - gamma));
    out.push_back(b.done());
  }
  {
    RowBuilder b("irregular-double-cover-6plus");
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("irregular: q_pi >= 1", irregular);
    b.hyp("h locally trivial or F(g,gamma,1) >= 0",
          has_gamma && (p.h_locally_trivial || F_invariant(g, gamma, 1).sign() >= 0));
    if (has_gamma && g > 1) b.bound(Rat(6) + Rat(4 * (gamma - 1), g - 1));
    out.push_back(b.done());
  }
  {
    RowBuilder b("irregular-double-cover-threshold");
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("irregular: q_pi >= 1", irregular);
    b.hyp("J_0 image is a curve (flag or q_pi > gamma+1)", j0_curve);
    b.hyp("h locally trivial or F(g,gamma,q_pi) >= 0",
          has_gamma && irregular &&
              (p.h_locally_trivial || F_invariant(g, gamma, *p.q_pi).sign() >= 0));
    if (has_gamma && irregular &&
        (*p.q_pi + 1) * ((g - 1) + (*p.q_pi - 1) * (gamma - 1)) > 0)
      b.bound(lambda_threshold(g, gamma, *p.q_pi));
    out.push_back(b.done());
  }
  {
    RowBuilder b("remark-lambda-ge-6");
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("irregular: q_pi >= 1", irregular);
    b.hyp("g >= 6gamma+7", has_gamma && g >= 6 * gamma + 7);
    b.bound(Rat(6));
    out.push_back(b.done());
  }
  {
    RowBuilder b("conjecture-holds-trivial-quotient");
    bool genus_gate = has_gamma && g >= 2 * gamma + 3 &&
                      (g - 2 * gamma - 2) * (g - 2 * gamma - 2) >= 8 * gamma * gamma + 1;
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("h locally trivial", p.h_locally_trivial);
    b.hyp("g >= 2(gamma+1) + sqrt(8gamma^2+1)", genus_gate);
    b.hyp("q_f known with q_f < (g+1)/2", p.q_f.has_value() && 2 * *p.q_f < g + 1);
    if (p.q_f && *p.q_f >= 0 && *p.q_f < g) b.bound(Rat(4 * (g - 1), g - *p.q_f));
    out.push_back(b.done());
  }
  {
    RowBuilder b("conjecture-holds-nontrivial-quotient");
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("h locally non-trivial", !p.h_locally_trivial);
    b.hyp("g >= 2gamma+2q_f+1 > 6gamma+3",
          has_gamma && p.q_f.has_value() && g >= 2 * gamma + 2 * *p.q_f + 1 &&
              2 * gamma + 2 * *p.q_f + 1 > 6 * gamma + 3);
    if (p.q_f && *p.q_f >= 0 && *p.q_f < g) b.bound(Rat(4 * (g - 1), g - *p.q_f));
    out.push_back(b.done());
  }
  {
    RowBuilder b("low-genus-double-cover");
    bool gate = has_gamma && g <= 4 * gamma + 1 &&
                (g + 1 - 2 * gamma) * (g + 1 - 2 * gamma) >= 2 * (2 * g + 1 - 3 * gamma);
    b.hyp("double cover of type (g,gamma)", hurwitz_ok);
    b.hyp("g <= 4gamma+1 and (g+1-2gamma)^2 >= 2(2g+1-3gamma)", gate);
    if (has_gamma) {
      long num = 4 * (g - 1) * (3 * g + 1 - 4 * gamma);
      long den = (g + 1 - 2 * gamma) * (g + 1 - 2 * gamma) +
                 4 * gamma * (2 * g + 1 - 3 * gamma);
      if (den > 0) b.bound(Rat(num, den));
    }
    out.push_back(b.done());
  }
  return out;
}

std::vector<SlopeBoundReport> bounds_registry(const BoundsProfile& p) {
  std::vector<SlopeBoundReport> out;
  const long g = p.g;
  if (g < 2) throw ValidationError("bounds_registry: g must be >= 2");
  {
    RowBuilder b("cornalba-harris-xiao");
    b.hyp("f not locally trivial", true);
    b.bound(Rat(4 * (g - 1), g));
    out.push_back(b.done());
  }
  {
    RowBuilder b("barja-stoppino-conjecture");
    b.conjectural();
    b.hyp("q_f known", p.q_f.has_value());
    b.hyp("q_f < g-1", p.q_f.has_value() && *p.q_f < g - 1);
    if (p.q_f && *p.q_f >= 0 && *p.q_f < g) b.bound(Rat(4 * (g - 1), g - *p.q_f));
    out.push_back(b.done());
  }
  {
    RowBuilder b("not-triple-nor-double-cover");
    b.hyp("not a triple cover fibration", p.not_triple_cover.value_or(false));
    b.hyp("not a double cover fibration", p.not_double_cover.value_or(false));
    b.bound(scenario_slope_bound(g, SlopeScenario::non_triple_nor_double));
    out.push_back(b.done());
  }
  {
    RowBuilder b("not-double-cover");
    b.hyp("not a double cover fibration", p.not_double_cover.value_or(false));
    b.bound(scenario_slope_bound(g, SlopeScenario::non_double));
    out.push_back(b.done());
  }
  {
    RowBuilder b("quotient-genus-ge-g-over-3");
    b.hyp("gamma >= g/3 for every double cover structure",
          p.min_gamma_ge_g_over_3.value_or(false));
    b.bound(scenario_slope_bound(g, SlopeScenario::gamma_ge_g_over_3));
    out.push_back(b.done());
  }
  {
    RowBuilder b("small-relative-irregularity");
    b.hyp("q_f known with 9 q_f <= g", p.q_f.has_value() && 9 * *p.q_f <= g);
    if (p.q_f && *p.q_f >= 0 && *p.q_f < g) b.bound(Rat(4 * (g - 1), g - *p.q_f));
    out.push_back(b.done());
  }
  auto cover_rows = double_cover_bounds(p);
  out.insert(out.end(), cover_rows.begin(), cover_rows.end());
  return out;
}

}  // namespace fibslope
