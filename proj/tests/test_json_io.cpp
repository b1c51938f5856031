#include <doctest.h>

#include "fibslope/json_io.hpp"

using namespace fibslope;

TEST_CASE("rationals accept strings and bare integers, reject the rest") {
  CHECK(rat_from_json(Json("3/6"), "x") == Rat(1, 2));
  CHECK(rat_from_json(Json(-4), "x") == Rat(-4));
  CHECK_THROWS_AS(rat_from_json(Json(1.5), "x"), ValidationError);
  CHECK_THROWS_AS(rat_from_json(Json(true), "x"), ValidationError);
  CHECK_THROWS_AS(rat_from_json(Json("1.5"), "x"), ValidationError);
}

TEST_CASE("double-cover record parsing") {
  Json j = Json::parse(R"({
    "g": 7, "gamma": 2, "omega_h2": "0", "chi_h": 0, "e_h": "0",
    "T": "128", "n2": 0, "s2": "16", "s_odd": {"1": 2}, "s_even": {"3": 1}, "q_pi": 1
  })");
  DoubleCoverData data = double_cover_from_json(j);
  CHECK(data.g == 7);
  CHECK(data.s_odd.at(1) == 2);
  CHECK(data.s_even.at(3) == 1);
  CHECK(*data.q_pi == 1);

  Json bad = j;
  bad["s_odd"] = Json::object({{"zero", 1}});
  CHECK_THROWS_AS(double_cover_from_json(bad), ValidationError);
  bad = j;
  bad["s_even"] = Json::object({{"1", 1}});
  CHECK_THROWS_AS(double_cover_from_json(bad), ValidationError);
  bad = j;
  bad.erase("T");
  CHECK_THROWS_WITH_AS(double_cover_from_json(bad), doctest::Contains("'T'"),
                       ValidationError);
}

TEST_CASE("hn profile parsing defaults the class to unknown") {
  Json j = Json::parse(R"({
    "g": 5,
    "parts": [
      {"r": 2, "mu": "2", "d": 2, "class": "degree2", "class_params": {"gamma": 1}},
      {"r": 5, "mu": "1", "d": 8}
    ]
  })");
  HNData hn = hn_from_json(j);
  CHECK(hn.parts[0].image_class == ImageClass::degree2);
  CHECK(*hn.parts[0].gamma == 1);
  CHECK(hn.parts[1].image_class == ImageClass::unknown);
  CHECK_THROWS_AS(
      hn_from_json(Json::parse(R"({"g": 5, "parts": [{"r": 2, "mu": "2", "d": 2, "class": "nope"}]})")),
      ValidationError);
}

TEST_CASE("bounds profile parsing keeps unset scenario flags unknown") {
  BoundsProfile p = bounds_profile_from_json(Json::parse(R"({"g": 9})"));
  CHECK_FALSE(p.not_double_cover.has_value());
  CHECK_FALSE(p.h_locally_trivial);
  p = bounds_profile_from_json(
      Json::parse(R"({"g": 9, "not_double_cover": true, "h_locally_trivial": true})"));
  CHECK(p.not_double_cover.has_value());
  CHECK(*p.not_double_cover);
  CHECK(p.h_locally_trivial);
}

TEST_CASE("audit report serialization carries rows and verdicts") {
  AuditReport rep = audit_coefficients(8);
  Json j = to_json(rep);
  CHECK(j["g"] == 8);
  CHECK(j["all_pass"] == true);
  REQUIRE(j["rows"].is_array());
  CHECK(j["rows"].size() == rep.rows.size());
  bool saw_equality = false;
  for (const auto& row : j["rows"])
    if (row["row"] == "equality-r-n" && row["list"] == "thirds-mix") {
      CHECK(row["pass"] == true);
      CHECK(row["relation"] == "==");
      saw_equality = true;
    }
  CHECK(saw_equality);
}

TEST_CASE("forest serialization round trip") {
  Json j = Json::parse(R"({
    "fibers": [{"fiber_id": "F0", "n2": 2,
                "singularities": [{"mult": 5, "children": [{"mult": 6}]}]}]
  })");
  SingularityForest forest = forest_from_json(j);
  SingularIndices idx = classify_singularities(forest);
  Json out = to_json(idx);
  CHECK(out["s_odd"]["2"] == 1);
  CHECK(out["n2_total"] == 2);
  CHECK(out["minus1_curves"] == 3);
}
