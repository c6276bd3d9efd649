#include <algorithm>

#include "doctest.h"
#include "stratcat/category.hpp"

using namespace stratcat;

namespace {

nlohmann::json chain_category(bool with_table) {
  nlohmann::json data = nlohmann::json::parse(R"json({
    "poset": {
      "elements": ["a", "b", "c"],
      "leq": [["a", "b"], ["b", "c"]],
      "f": {"a": "2", "b": "1", "c": "0"}
    },
    "homs": {
      "a->b": [{"id": "t_ab", "label": ["a", "b"]}],
      "b->c": [{"id": "t_bc", "label": ["b", "c"]}],
      "a->c": [{"id": "t_ac", "label": ["a", "b", "c"]}]
    },
    "compose": {}
  })json");
  if (with_table) data["compose"]["(t_bc,t_ab)"] = "t_ac";
  return data;
}

}  // namespace

TEST_CASE("builtin example with a doubled connecting morphism") {
  StratifiedCategoryData data = builtin_example("other_sphere");
  int a = data.poset.index_of("a");
  int d = data.poset.index_of("d");
  const std::vector<int>& hom_ad = data.hom(a, d);
  REQUIRE(hom_ad.size() == 3);
  std::vector<std::string> labels;
  for (int k : hom_ad) labels.push_back(data.morphisms[k].label.label());
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::string>{"[a,b,d]", "[a,b,d]", "[a,d]"});
  CHECK(validate_category(data).ok());

  CHECK_THROWS_WITH_AS(builtin_example("nope"),
                       "unknown builtin 'nope' (available: other_sphere, round_sphere)",
                       usage_error);
}

TEST_CASE("composition lookup absorbs identities") {
  StratifiedCategoryData data = load_valid_category(chain_category(true));
  int t_ab = data.id_index.at("t_ab");
  int t_bc = data.id_index.at("t_bc");
  int t_ac = data.id_index.at("t_ac");
  int id_b = data.id_index.at("id_b");
  CHECK(compose_of(data, t_bc, t_ab) == t_ac);
  CHECK(compose_of(data, id_b, t_ab) == t_ab);
  CHECK(compose_of(data, t_bc, id_b) == t_bc);
  CHECK_THROWS_AS(compose_of(data, t_ab, t_bc), usage_error);
}

TEST_CASE("validation finds structural defects") {
  // a non-identity endomorphism is forbidden
  nlohmann::json loop = chain_category(true);
  loop["homs"]["a->a"] = {{{"id", "bad_loop"}, {"label", {"a"}}}};
  CategoryReport loop_report = validate_category(load_category(loop));
  REQUIRE_FALSE(loop_report.ok());
  CHECK(loop_report.errors.front() ==
        "morphism 'bad_loop': a single object carries only its identity");

  // composable pair without a table entry
  CategoryReport missing = validate_category(load_category(chain_category(false)));
  REQUIRE_FALSE(missing.ok());
  CHECK(missing.errors.front() == "compose (t_bc,t_ab): missing table entry");
  CHECK_THROWS_AS(load_valid_category(chain_category(false)), usage_error);

  // composite whose label is not the joined path
  nlohmann::json skewed = chain_category(true);
  skewed["homs"]["a->c"] = {{{"id", "t_ac"}, {"label", {"a", "c"}}}};
  CategoryReport skew_report = validate_category(load_category(skewed));
  REQUIRE_FALSE(skew_report.ok());
  CHECK(skew_report.errors.front() == "compose (t_bc,t_ab): label must be the joined path");
}

TEST_CASE("a grading that fails to drop is a warning, not an error") {
  nlohmann::json data = chain_category(true);
  data["grading"] = {{"a", 1}, {"b", 1}, {"c", 0}};
  CategoryReport report = validate_category(load_category(data));
  CHECK(report.ok());
  REQUIRE_FALSE(report.warnings.empty());
  CHECK(report.warnings.front() ==
        "morphism 't_ab': grading does not drop from 'a' to 'b'");
  // warnings do not block loading
  CHECK(load_valid_category(data).has_grading);
}

TEST_CASE("unbroken chains compose to direct paths") {
  StratifiedCategoryData data = builtin_example("other_sphere");
  CHECK(unbroken_check(data, {"t_ab"}));
  CHECK(unbroken_check(data, {"t_ad"}));
  // a label passing through an intermediate object records a breaking
  CHECK_FALSE(unbroken_check(data, {"t_ad_via_b_left"}));
  CHECK_FALSE(unbroken_check(data, {"t_ab", "t_bd_left"}));
  // identities are transparent
  CHECK(unbroken_check(data, {"t_ab", "id_b"}));
  CHECK_FALSE(unbroken_check(data, {"t_ab", "id_b", "t_bd_left"}));
  CHECK_THROWS_AS(unbroken_check(data, {"t_ab", "t_cb"}), usage_error);
  CHECK_THROWS_AS(unbroken_check(data, {"mystery"}), usage_error);
  CHECK_THROWS_AS(unbroken_check(data, {}), usage_error);
}

TEST_CASE("morse complex of the doubled sphere") {
  StratifiedCategoryData data = builtin_example("other_sphere");
  ChainComplex complex = morse_complex(data);
  REQUIRE(complex.generators.size() == 3);
  CHECK(complex.generators[0] == std::vector<std::string>{"d"});
  CHECK(complex.generators[1] == std::vector<std::string>{"b"});
  CHECK(complex.generators[2] == std::vector<std::string>{"a", "c"});
  CHECK(complex.boundaries[1] == std::vector<std::vector<Int>>{{Int(0)}});
  CHECK(complex.boundaries[2] == std::vector<std::vector<Int>>{{Int(1), Int(1)}});

  auto groups = integral_homology(complex);
  CHECK(format_integral(groups[0].first, groups[0].second) == "Z");
  CHECK(format_integral(groups[1].first, groups[1].second) == "0");
  CHECK(format_integral(groups[2].first, groups[2].second) == "Z");
  CHECK(mod2_homology(complex) == std::vector<int>{1, 0, 1});
}

TEST_CASE("morse complex of the round sphere") {
  StratifiedCategoryData data = builtin_example("round_sphere");
  ChainComplex complex = morse_complex(data);
  REQUIRE(complex.generators.size() == 3);
  CHECK(complex.generators[1].empty());
  for (const auto& matrix : complex.boundaries)
    for (const auto& row : matrix)
      for (const Int& entry : row) CHECK(entry == 0);
  CHECK(mod2_homology(complex) == std::vector<int>{1, 0, 1});
}

TEST_CASE("homology requires a grading") {
  StratifiedCategoryData data = load_valid_category(chain_category(true));
  CHECK_FALSE(data.has_grading);
  CHECK_THROWS_WITH_AS(morse_complex(data), "homology needs a grading on the objects",
                       usage_error);
}

TEST_CASE("coefficient functors scale the boundary") {
  StratifiedCategoryData data = builtin_example("other_sphere");
  nlohmann::json coeff_data = {
      {"dims", {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}},
      {"matrices",
       {{"t_ab", {{2}}},
        {"t_cb", {{1}}},
        {"t_bd_left", {{3}}},
        {"t_bd_right", {{3}}},
        {"t_ad", {{1}}},
        {"t_ad_via_b_left", {{6}}},
        {"t_ad_via_b_right", {{6}}},
        {"t_cd", {{1}}},
        {"t_cd_via_b_left", {{3}}},
        {"t_cd_via_b_right", {{3}}}}}};
  CoefficientFunctor coeffs = load_coefficients(data, coeff_data);
  ChainComplex complex = morse_complex(data, &coeffs);
  CHECK(complex.boundaries[2] == std::vector<std::vector<Int>>{{Int(2), Int(1)}});
  CHECK(complex.boundaries[1] == std::vector<std::vector<Int>>{{Int(0)}});
  auto groups = integral_homology(complex);
  CHECK(format_integral(groups[0].first, groups[0].second) == "Z");
  CHECK(format_integral(groups[1].first, groups[1].second) == "0");
  CHECK(format_integral(groups[2].first, groups[2].second) == "Z");

  // functoriality is enforced against the composition table
  nlohmann::json broken = coeff_data;
  broken["matrices"]["t_ad_via_b_left"] = {{5}};
  CHECK_THROWS_WITH_AS(load_coefficients(data, broken),
                       "coefficients: functoriality fails on (t_bd_left,t_ab)", usage_error);

  // shape mismatches are schema errors
  nlohmann::json thin = coeff_data;
  thin["matrices"].erase("t_cd");
  CHECK_THROWS_AS(load_coefficients(data, thin), schema_error);
}

TEST_CASE("higher-rank coefficients change the answer") {
  StratifiedCategoryData data = builtin_example("round_sphere");
  nlohmann::json coeff_data = {{"dims", {{"n", 1}, {"s", 2}}},
                               {"matrices", {{"t_ns", {{1}, {0}}}}}};
  CoefficientFunctor coeffs = load_coefficients(data, coeff_data);
  ChainComplex complex = morse_complex(data, &coeffs);
  CHECK(complex.generators[0] == std::vector<std::string>{"s#0", "s#1"});
  CHECK(complex.generators[2] == std::vector<std::string>{"n"});
  auto groups = integral_homology(complex);
  CHECK(format_integral(groups[0].first, groups[0].second) == "Z^2");
  CHECK(format_integral(groups[2].first, groups[2].second) == "Z");
}
