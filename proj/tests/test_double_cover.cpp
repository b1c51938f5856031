#include <doctest.h>

#include <algorithm>
#include <random>

#include "fibslope/bounds.hpp"
#include "fibslope/double_cover.hpp"
#include "fibslope/example_families.hpp"

using namespace fibslope;

namespace {

SingNode node(long mult, std::vector<SingNode> children = {}) {
  SingNode n;
  n.mult = mult;
  n.children = std::move(children);
  return n;
}

SingularityForest one_fiber(std::vector<SingNode> roots, long n2 = 0) {
  SingularityForest forest;
  forest.fibers.push_back({"F0", n2, std::move(roots)});
  return forest;
}

// Product-quotient branch configuration: quotient is a product (all quotient
// invariants zero), branch is 8 disjoint horizontal curves with omega_h.R = 16.
DoubleCoverData product_quotient_data() {
  DoubleCoverData data;
  data.g = 7;
  data.gamma = 2;
  data.omega_h2 = Rat(0);
  data.chi_h = Rat(0);
  data.e_h = Rat(0);
  data.T = Rat(128);
  data.n2 = 0;
  data.s2 = Rat(16);
  return data;
}

}  // namespace

TEST_CASE("forest validation follows the multiplicity-decrease rule") {
  CHECK_THROWS_WITH_AS(validate_forest(one_fiber({node(4, {node(5)})})),
                       doctest::Contains("exceeds the cap"), ValidationError);
  CHECK_NOTHROW(validate_forest(one_fiber({node(3, {node(4)})})));
  CHECK_NOTHROW(validate_forest(one_fiber({node(2)})));
  CHECK_NOTHROW(validate_forest(one_fiber({node(6, {node(6), node(2)})})));
  CHECK_THROWS_AS(validate_forest(one_fiber({node(1)})), ValidationError);
  CHECK_THROWS_AS(validate_forest(one_fiber({node(3, {node(5)})})), ValidationError);
  SingularityForest dup;
  dup.fibers.push_back({"F", 0, {}});
  dup.fibers.push_back({"F", 0, {}});
  CHECK_THROWS_WITH_AS(validate_forest(dup), doctest::Contains("duplicate"), ValidationError);
}

TEST_CASE("classification of the basic pair shapes") {
  SingularIndices idx = classify_singularities(one_fiber({node(3, {node(4)})}));
  CHECK(idx.s_odd == std::map<long, long>{{1, 1}});
  CHECK(idx.s_even.empty());
  CHECK(idx.s2_correction == 0);
  CHECK(idx.minus1_curves == 1);

  idx = classify_singularities(one_fiber({node(5)}));
  CHECK(idx.s_even == std::map<long, long>{{2, 1}});  // multiplicity 5 counts to s_4
  CHECK(idx.s_odd.empty());

  idx = classify_singularities(one_fiber({node(3, {node(3)})}));
  CHECK(idx.s2_correction == 4);  // both nodes are fiber-local s_2 points
  CHECK(idx.s_odd.empty());
  CHECK(idx.s_even.empty());
}

TEST_CASE("pair formation is strict about siblings") {
  // a 2k+2 child with a sibling blocks the pair under the strict reading
  SingularIndices idx = classify_singularities(one_fiber({node(5, {node(6), node(2)})}));
  CHECK(idx.s_odd.empty());
  CHECK(idx.s_even == std::map<long, long>{{2, 1}, {3, 1}});  // the 5 and the 6
  CHECK(idx.s2_correction == 2);                              // the 2
  REQUIRE(idx.warnings.size() == 1);
  CHECK(idx.warnings[0].find("siblings") != std::string::npos);
}

TEST_CASE("pair consumes the child but not the grandchildren") {
  SingularIndices idx =
      classify_singularities(one_fiber({node(5, {node(6, {node(4), node(3)})})}));
  CHECK(idx.s_odd == std::map<long, long>{{2, 1}});   // (5 -> 5)
  CHECK(idx.s_even == std::map<long, long>{{2, 1}});  // the grandchild 4
  CHECK(idx.s2_correction == 2);                      // the grandchild 3
}

TEST_CASE("minus-one curve count and n2") {
  SingularityForest forest;
  forest.fibers.push_back({"A", 2, {node(3, {node(4)}), node(7, {node(8)})}});
  forest.fibers.push_back({"B", 1, {node(5)}});
  SingularIndices idx = classify_singularities(forest);
  CHECK(idx.n2_total == 3);
  CHECK(idx.s_odd == std::map<long, long>{{1, 1}, {3, 1}});
  CHECK(idx.minus1_curves == 5);
}

namespace {

SingNode random_node(std::mt19937_64& rng, long mult, int depth) {
  SingNode n = node(mult);
  if (depth <= 0) return n;
  int kids = static_cast<int>(rng() % 3);
  for (int i = 0; i < kids; ++i) {
    long cap = (mult % 2 == 0) ? mult : mult + 1;
    long child_mult = 2 + static_cast<long>(rng() % (cap - 1));
    n.children.push_back(random_node(rng, child_mult, depth - 1));
  }
  return n;
}

SingularityForest random_forest(std::mt19937_64& rng, int fibers) {
  SingularityForest forest;
  for (int f = 0; f < fibers; ++f) {
    FiberBranchData fiber;
    fiber.fiber_id = "F" + std::to_string(f);
    fiber.n2 = static_cast<long>(rng() % 4);
    int roots = static_cast<int>(rng() % 4);
    for (int i = 0; i < roots; ++i)
      fiber.roots.push_back(random_node(rng, 2 + static_cast<long>(rng() % 7), 3));
    forest.fibers.push_back(std::move(fiber));
  }
  return forest;
}

}  // namespace

TEST_CASE("classification is permutation invariant and additive") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    SingularityForest forest = random_forest(rng, 4);
    SingularIndices idx = classify_singularities(forest);

    long odd_sum = 0;
    for (auto& [k, c] : idx.s_odd) odd_sum += c;
    CHECK(idx.minus1_curves == idx.n2_total + odd_sum);

    SingularityForest shuffled = forest;
    std::shuffle(shuffled.fibers.begin(), shuffled.fibers.end(), rng);
    for (auto& fiber : shuffled.fibers) std::shuffle(fiber.roots.begin(), fiber.roots.end(), rng);
    SingularIndices idx2 = classify_singularities(shuffled);
    CHECK(idx.s_odd == idx2.s_odd);
    CHECK(idx.s_even == idx2.s_even);
    CHECK(idx.s2_correction == idx2.s2_correction);
    CHECK(idx.n2_total == idx2.n2_total);

    // additivity over a split into two sub-forests
    SingularityForest left, right;
    for (std::size_t i = 0; i < forest.fibers.size(); ++i)
      (i % 2 ? left : right).fibers.push_back(forest.fibers[i]);
    SingularIndices li = classify_singularities(left), ri = classify_singularities(right);
    CHECK(li.n2_total + ri.n2_total == idx.n2_total);
    CHECK(li.s2_correction + ri.s2_correction == idx.s2_correction);
    for (auto& [k, c] : idx.s_odd) CHECK(li.s_odd[k] + ri.s_odd[k] == c);
    for (auto& [k, c] : idx.s_even) CHECK(li.s_even[k] + ri.s_even[k] == c);
  }
}

TEST_CASE("s2 from geometry") {
  CHECK(s2_from_geometry(Rat(16), Rat(0), 0, {}, {}) == Rat(16));
  CHECK(s2_from_geometry(Rat(12), Rat(0), 0, {{1, 1}}, {}) == Rat(0));  // 4*1*3 = 12
  CHECK(s2_from_geometry(Rat(0), Rat(0), 0, {}, {}) == Rat(0));
  // 5.3-style configuration: 4 points of multiplicity 6 on the product quotient
  CHECK(s2_from_geometry(Rat(12), Rat(144), 0, {}, {{3, 4}}) == Rat(36));
}

TEST_CASE("compute_T") {
  CHECK(compute_T(7, 2, Rat(0), Rat(16), Rat(0), 0) == Rat(128));
  CHECK(compute_T(5, 1, Rat(0), Rat(3), Rat(0), 0) == Rat(24));  // 2(g-1) omega.R
  // proportional classes: (4 omega - R)^2 = 0 termwise
  CHECK(compute_T(7, 2, Rat(1), Rat(4), Rat(16), 0) == Rat(0));
  CHECK_THROWS_AS(compute_T(7, 0, Rat(0), Rat(0), Rat(0), 0), ValidationError);
}

TEST_CASE("coefficient set") {
  CoefficientSet c = coefficients(7, 2);
  CHECK(c.x == Rat(42));
  CHECK(c.y == Rat(3, 2));
  CHECK(c.z == Rat(6));
  CHECK(c.xbar == Rat(2));  // (g+1-2gamma)^2/8 = 16/8
  CHECK(c.ybar == Rat(1, 8));
  CHECK(c.zbar == Rat(5, 4));
  CHECK(c.abar(1) == Rat(6));
  CHECK(c.a(1) == Rat(63));
  CHECK(Rat(12) * c.ybar == c.y);
  CHECK(Rat(12) * c.zbar - c.z == Rat(2 * 7 + 1 - 3 * 2));
}

TEST_CASE("coefficient identities make Noether automatic") {
  for (long g = 2; g <= 30; ++g)
    for (long gamma = 1; 2 * gamma <= g + 1; ++gamma) {
      long N = 2 * g + 1 - 3 * gamma;
      if (N <= 0) continue;
      CoefficientSet c = coefficients(g, gamma);
      CHECK(Rat(12) * c.ybar == c.y);
      CHECK(Rat(12) * c.zbar - c.z == Rat(N));
      CHECK(Rat(12) * c.xbar - c.x == Rat(-2 * N) * Rat(gamma - 1));
      for (long k = 1; k <= 12; ++k) {
        CHECK(c.a(k) == Rat(12) * c.abar(k) - Rat(N));
        CHECK(c.b(k) == Rat(12) * c.bbar(k) - Rat(2 * N));
      }
    }
}

TEST_CASE("invariant engine on the product-quotient configuration") {
  DoubleCoverData data = product_quotient_data();
  FibrationInvariants inv = invariants_from_double_cover(data);
  CHECK(inv.omega2 == Rat(32));
  CHECK(inv.chi == Rat(4));
  CHECK(inv.e == Rat(16));
  CHECK(check_noether(inv));
  CHECK(slope(inv) == Rat(8));
  // cross-checks of the stated helpers on the same configuration
  CHECK(compute_T(7, 2, Rat(0), Rat(16), Rat(0), 0) == data.T);
  CHECK(s2_from_geometry(Rat(16), Rat(0), 0, {}, {}) == data.s2);
}

TEST_CASE("invariant engine on degenerate zero input") {
  DoubleCoverData data;
  data.g = 5;
  data.gamma = 2;
  FibrationInvariants inv = invariants_from_double_cover(data);
  CHECK(inv.omega2 == Rat(0));
  CHECK(inv.chi == Rat(0));
  CHECK(inv.e == Rat(0));
}

TEST_CASE("invariant engine on the base-change configuration") {
  // Example-5.3 shape at (g, gamma, d, b0) = (9, 2, 2, 1): trivial quotient,
  // four multiplicity-6 branch points, omega_h.R = 12, R^2 = 144.
  DoubleCoverData data;
  data.g = 9;
  data.gamma = 2;
  data.T = compute_T(9, 2, Rat(0), Rat(12), Rat(144), 0);
  CHECK(data.T == Rat(0));  // (6 omega_h - R)^2 = 0 for this product geometry
  data.s2 = s2_from_geometry(Rat(12), Rat(144), 0, {}, {{3, 4}});
  data.s_even = {{3, 4}};
  data.q_pi = 2;
  FibrationInvariants inv = invariants_from_double_cover(data);
  CHECK(inv.omega2 == Rat(64));
  CHECK(inv.chi == Rat(9));
  CHECK(check_noether(inv));
  CHECK(slope(inv) == lambda_threshold(9, 2, 2));
}

TEST_CASE("full pipeline from forest to slope") {
  // Base-change geometry at (g, gamma, d, b0) = (9, 2, 2, 1): the branch curve
  // acquires four multiplicity-6 points (the pencil base points), no pairs,
  // no isolated (-2)-curves.
  SingularityForest forest;
  forest.fibers.push_back({"F0", 0, {node(6), node(6)}});
  forest.fibers.push_back({"F1", 0, {node(6), node(6)}});
  SingularIndices idx = classify_singularities(forest);
  CHECK(idx.s_even == std::map<long, long>{{3, 4}});
  CHECK(idx.minus1_curves == 0);

  Rat omega_h_dot_R(12), R2(144);
  DoubleCoverData data;
  data.g = 9;
  data.gamma = 2;
  data.T = compute_T(9, 2, Rat(0), omega_h_dot_R, R2, idx.n2_total);
  data.s2 = s2_from_geometry(omega_h_dot_R, R2, idx);
  data.n2 = idx.n2_total;
  data.s_odd = idx.s_odd;
  data.s_even = idx.s_even;
  data.q_pi = 2;

  FibrationInvariants inv = invariants_from_double_cover(data);
  Rat lam = slope(inv);
  CHECK(lam == Rat(64, 9));
  CHECK(lam == lambda_threshold(9, 2, 2));

  // registry agrees: the irregular threshold row fires and is attained
  BoundsProfile profile;
  profile.g = 9;
  profile.gamma = 2;
  profile.q_pi = 2;
  profile.h_locally_trivial = true;
  profile.J0_is_curve = true;
  for (const auto& row : double_cover_bounds(profile))
    if (row.theorem_id == "irregular-double-cover-threshold") {
      CHECK(row.hypotheses_met);
      CHECK(*row.bound == lam);
    }

  // and the example generator produces the same record
  ExampleRecord rec = example_base_change(9, 2, 2, 1);
  CHECK(rec.inv.omega2 == inv.omega2);
  CHECK(rec.inv.chi == inv.chi);
  CHECK(rec.inv.e == inv.e);
}

TEST_CASE("hurwitz and gamma gates") {
  DoubleCoverData data = product_quotient_data();
  data.gamma = 0;
  CHECK_THROWS_AS(invariants_from_double_cover(data), ValidationError);
  data = product_quotient_data();
  data.gamma = 5;  // 2g+2-4gamma = -4
  CHECK_THROWS_WITH_AS(invariants_from_double_cover(data), doctest::Contains("Hurwitz"),
                       ValidationError);
  data = product_quotient_data();
  data.T = Rat(-1);
  CHECK_THROWS_AS(invariants_from_double_cover(data), ValidationError);
  data = product_quotient_data();
  data.e_h = Rat(1);  // breaks quotient Noether
  CHECK_THROWS_AS(invariants_from_double_cover(data), ValidationError);
}

namespace {

DoubleCoverData random_admissible(std::mt19937_64& rng) {
  DoubleCoverData data;
  data.gamma = 1 + static_cast<long>(rng() % 5);
  data.g = std::max<long>(2, 2 * data.gamma - 1) + static_cast<long>(rng() % 18);
  while (2 * data.g + 1 - 3 * data.gamma <= 0) ++data.g;
  auto small = [&](long lo, long hi) {
    return Rat(lo + static_cast<long>(rng() % (hi - lo + 1)), 1 + static_cast<long>(rng() % 3));
  };
  if (data.gamma == 1) {
    data.omega_h2 = Rat(0);
    data.chi_h = small(0, 12);
  } else {
    data.omega_h2 = small(-8, 40);
    data.chi_h = small(-4, 12);
  }
  data.e_h = Rat(12) * data.chi_h - data.omega_h2;
  data.T = small(0, 60);
  data.n2 = static_cast<long>(rng() % 4);
  if (rng() % 2) data.s_odd[1 + static_cast<long>(rng() % 4)] = static_cast<long>(rng() % 3);
  if (rng() % 2) data.s_even[2 + static_cast<long>(rng() % 4)] = static_cast<long>(rng() % 3);
  data.s2 = small(-20, 40);
  // nudge s_2 up when the index inequality fails
  if (!index_inequality_check(data)) {
    Rat inner = data.s2;
    for (auto& [k, c] : data.s_odd) inner += Rat(4 * k * (2 * k + 1) * c);
    for (auto& [k, c] : data.s_even) inner += Rat(2 * k * (2 * k - 1) * c);
    Rat deficit = -(data.T + Rat(data.gamma - 1) * inner);
    data.s2 += deficit / Rat(std::max<long>(1, data.gamma - 1)) + Rat(1);
  }
  return data;
}

}  // namespace

TEST_CASE("Noether identity holds on randomized admissible records") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 2000; ++trial) {
    DoubleCoverData data = random_admissible(rng);
    FibrationInvariants inv = invariants_from_double_cover(data);
    REQUIRE(check_noether(inv));
  }
}

TEST_CASE("lambda decomposition identity and special coefficients") {
  DoubleCoverData data = product_quotient_data();
  TermBreakdown at12 = lambda_decomposition(data, Rat(12));
  CHECK(at12.identity_ok);
  for (const auto& t : at12.terms)
    if (t.name == "T") CHECK(t.coefficient == Rat(0));

  // lambda = 4(g-1)/(g-gamma) kills the s2 coefficient
  Rat lam = Rat(4 * (7 - 1), 7 - 2);
  TermBreakdown at_bs = lambda_decomposition(data, lam);
  CHECK(at_bs.identity_ok);
  for (const auto& t : at_bs.terms)
    if (t.name == "s2") CHECK(t.coefficient == Rat(0));

  // the worked example: lambda = 8 gives total (2g+1-3gamma)(32 - 8*4) = 0
  TermBreakdown at8 = lambda_decomposition(data, Rat(8));
  CHECK(at8.total == Rat(0));
  CHECK(at8.identity_ok);
}

TEST_CASE("lambda decomposition identity on random records and lambdas") {
  std::mt19937_64 rng(20200808);
  for (int trial = 0; trial < 400; ++trial) {
    DoubleCoverData data = random_admissible(rng);
    Rat lam(static_cast<long>(rng() % 25) - 6, 1 + static_cast<long>(rng() % 4));
    TermBreakdown breakdown = lambda_decomposition(data, lam);
    REQUIRE(breakdown.identity_ok);
  }
}

TEST_CASE("irregular constraints") {
  // all singularity inputs zero: 0 <= T
  DoubleCoverData data;
  data.g = 7;
  data.gamma = 2;
  data.T = Rat(5);
  ConstraintVerdict v = irregular_constraint(data, ConstraintMode::irregular());
  CHECK(v.satisfied);
  CHECK(v.lhs == Rat(0));
  CHECK(v.rhs == Rat(5));

  // product-quotient example: equality 128 <= 128
  v = irregular_constraint(product_quotient_data(), ConstraintMode::irregular());
  CHECK(v.satisfied);
  CHECK(v.lhs == Rat(128));
  CHECK(v.rhs == Rat(128));
  CHECK(v.slack == Rat(0));

  CHECK_THROWS_AS(irregular_constraint(data, ConstraintMode::image_genus(0)), ValidationError);
}

TEST_CASE("image-genus constraint at g'=1 matches the irregular shape") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    DoubleCoverData data = random_admissible(rng);
    ConstraintVerdict a = irregular_constraint(data, ConstraintMode::irregular());
    ConstraintVerdict b = irregular_constraint(data, ConstraintMode::image_genus(1));
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
  }
}

TEST_CASE("F invariant") {
  CHECK(F_invariant(13, 1, 1) == Rat(0));    // zero iff g = 8 q_pi + 5 at gamma 1
  CHECK(F_invariant(5, 1, 1) == Rat(-32));
  for (long q = 1; q <= 6; ++q) {
    CHECK(F_invariant(8 * q + 5, 1, q) == Rat(0));
    CHECK(F_invariant(8 * q + 6, 1, q) > Rat(0));
    CHECK(F_invariant(8 * q + 4, 1, q) < Rat(0));
  }
}

TEST_CASE("lambda threshold") {
  CHECK(lambda_threshold(9, 2, 2) == Rat(64, 9));
  for (long g = 3; g <= 20; ++g)
    for (long q = 1; q <= 5; ++q)
      CHECK(lambda_threshold(g, 1, q) == Rat(8) - Rat(4, q + 1));
  // g+1-2gamma = 0 makes the correction vanish
  CHECK(lambda_threshold(9, 5, 3) == Rat(8));
  CHECK(lambda_threshold(9, 5, 1) == Rat(8));
}

TEST_CASE("index inequality check") {
  DoubleCoverData data;
  data.g = 5;
  data.gamma = 1;
  data.T = Rat(3);
  CHECK(index_inequality_check(data));  // gamma = 1 reduces to T >= 0
  data.T = Rat(-1);
  CHECK_FALSE(index_inequality_check(data));

  DoubleCoverData pq = product_quotient_data();
  CHECK(index_inequality_check(pq));  // 128 + 1*16 >= 0

  DoubleCoverData adv;
  adv.g = 7;
  adv.gamma = 2;
  adv.T = Rat(-20);
  adv.s2 = Rat(16);
  CHECK_FALSE(index_inequality_check(adv));  // -20 + 16 < 0 (also fails the T >= 0 gate)
  CHECK_THROWS_AS(validate_double_cover(adv), ValidationError);
}

TEST_CASE("threshold proof coefficients") {
  // nu_{q_pi+1} = 0 and the closed form of mu_{q_pi} are identities
  for (long g = 3; g <= 24; ++g)
    for (long gamma = 1; 2 * gamma < g + 1; ++gamma)
      for (long q_pi = 1; q_pi <= 5; ++q_pi) {
        CHECK(threshold_nu(g, gamma, q_pi, q_pi + 1) == Rat(0));
        CHECK(threshold_mu(g, gamma, q_pi, q_pi) ==
              threshold_mu_at_qpi_closed_form(g, gamma, q_pi));
      }
}
