#include "doctest.h"
#include "stratcat/homology.hpp"

using namespace stratcat;

TEST_CASE("smith normal form produces divisible invariant factors") {
  SmithResult snf = smith_normal_form({{Int(2), Int(0)}, {Int(0), Int(3)}});
  CHECK(snf.rank == 2);
  CHECK(snf.diagonal == std::vector<Int>{Int(1), Int(6)});

  SmithResult wide = smith_normal_form({{Int(2), Int(4), Int(6)}});
  CHECK(wide.rank == 1);
  REQUIRE_FALSE(wide.diagonal.empty());
  CHECK(wide.diagonal[0] == Int(2));

  SmithResult zero = smith_normal_form({{Int(0), Int(0)}, {Int(0), Int(0)}});
  CHECK(zero.rank == 0);
}

TEST_CASE("mod 2 rank") {
  CHECK(rank_mod2({{Int(2)}}) == 0);
  CHECK(rank_mod2({{Int(1), Int(1)}, {Int(1), Int(1)}}) == 1);
  CHECK(rank_mod2({{Int(1), Int(0)}, {Int(0), Int(3)}}) == 2);
}

TEST_CASE("homology of a two-point circle") {
  ChainComplex circle;
  circle.generators = {{"p", "q"}, {"a", "b"}};
  circle.boundaries = {{}, {{Int(-1), Int(-1)}, {Int(1), Int(1)}}};
  auto groups = integral_homology(circle);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::make_pair(1, std::vector<Int>{}));
  CHECK(groups[1] == std::make_pair(1, std::vector<Int>{}));
  CHECK(mod2_homology(circle) == std::vector<int>{1, 1});
}

TEST_CASE("a doubled edge creates torsion") {
  ChainComplex cone;
  cone.generators = {{"x"}, {"e"}};
  cone.boundaries = {{}, {{Int(2)}}};
  auto groups = integral_homology(cone);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == std::make_pair(0, std::vector<Int>{Int(2)}));
  CHECK(groups[1] == std::make_pair(0, std::vector<Int>{}));
  // mod 2 the doubled edge vanishes, so both groups survive
  CHECK(mod2_homology(cone) == std::vector<int>{1, 1});
}

TEST_CASE("homology does not depend on the generator order") {
  ChainComplex a;
  a.generators = {{"p", "q"}, {"e"}};
  a.boundaries = {{}, {{Int(0)}, {Int(2)}}};
  ChainComplex b;
  b.generators = {{"q", "p"}, {"e"}};
  b.boundaries = {{}, {{Int(2)}, {Int(0)}}};
  CHECK(integral_homology(a) == integral_homology(b));
  CHECK(mod2_homology(a) == mod2_homology(b));
}

TEST_CASE("boundary squared is checked") {
  ChainComplex bad;
  bad.generators = {{"p"}, {"x"}, {"e"}};
  bad.boundaries = {{}, {{Int(1)}}, {{Int(1)}}};
  CHECK_THROWS_WITH_AS(integral_homology(bad), "boundary squared is nonzero from degree 2",
                       usage_error);
}

TEST_CASE("a complex with no differentials is its own homology") {
  ChainComplex point;
  point.generators = {{"x"}};
  point.boundaries = {{}};
  auto groups = integral_homology(point);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0] == std::make_pair(1, std::vector<Int>{}));
  CHECK(format_integral(groups[0].first, groups[0].second) == "Z");
}

TEST_CASE("group formatting") {
  CHECK(format_integral(0, {}) == "0");
  CHECK(format_integral(1, {}) == "Z");
  CHECK(format_integral(2, {}) == "Z^2");
  CHECK(format_integral(1, {Int(2)}) == "Z + Z/2");
  CHECK(format_integral(0, {Int(2), Int(4)}) == "Z/2 + Z/4");
  CHECK(format_mod2(0) == "0");
  CHECK(format_mod2(1) == "Z/2");
  CHECK(format_mod2(2) == "(Z/2)^2");
}
