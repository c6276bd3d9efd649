#include "doctest.h"
#include "json.hpp"
#include "stratcat/poset.hpp"

using namespace stratcat;
using nlohmann::json;

namespace {

json chain_abc() {
  return json::parse(R"({
    "elements": ["a", "b", "c"],
    "leq": [["a", "b"], ["b", "c"]],
    "f": {"a": "2", "b": "1", "c": "0"}
  })");
}

}  // namespace

TEST_CASE("loading closes the order reflexively and transitively") {
  FinitePoset poset = load_valid_poset(chain_abc());
  REQUIRE(poset.size() == 3);
  CHECK(poset.leq(0, 0));
  CHECK(poset.leq(0, 2));  // derived from a <= b <= c
  CHECK(poset.lt(0, 2));
  CHECK_FALSE(poset.leq(2, 0));
  CHECK(poset.f[0] == Rat(2));
  CHECK(poset.index_of("b") == 1);
  CHECK(poset.index_of("missing") == -1);
}

TEST_CASE("schema problems are reported as such") {
  json bad = chain_abc();
  bad.erase("f");
  CHECK_THROWS_AS(load_poset(bad), schema_error);

  bad = chain_abc();
  bad["leq"].push_back({"a", "nope"});
  CHECK_THROWS_AS(load_poset(bad), schema_error);

  bad = chain_abc();
  bad["f"]["a"] = "two";
  CHECK_THROWS_AS(load_poset(bad), schema_error);

  bad = chain_abc();
  bad["elements"].push_back("a");
  CHECK_THROWS_AS(load_poset(bad), schema_error);
}

TEST_CASE("order violations are semantic, not schema") {
  json cyclic = chain_abc();
  cyclic["leq"].push_back({"c", "a"});
  FinitePoset poset = load_poset(cyclic);
  PosetReport report = validate_poset(poset);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().find("antisymmetry") == 0);
  CHECK_THROWS_AS(load_valid_poset(cyclic), usage_error);

  json flat = chain_abc();
  flat["f"]["b"] = "2";  // a < b needs f(a) > f(b)
  report = validate_poset(load_poset(flat));
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().find("height") == 0);
}

TEST_CASE("chain posets and up-sets") {
  FinitePoset chain = chain_poset(4);
  REQUIRE(chain.size() == 4);
  CHECK(chain.elements[0] == "c0");
  CHECK(chain.f[0] == Rat(3));
  CHECK(chain.f[3] == Rat(0));
  CHECK(chain.lt(0, 3));
  CHECK(up_set(chain, 1) == std::vector<int>{1, 2, 3});
  CHECK(validate_poset(chain).ok());
}

TEST_CASE("round trip through json keeps the order") {
  FinitePoset poset = load_valid_poset(chain_abc());
  FinitePoset again = load_valid_poset(poset_to_json(poset));
  CHECK(again.elements == poset.elements);
  CHECK(again.f == poset.f);
  CHECK(again.closure == poset.closure);
}

TEST_CASE("poset enumeration matches the labeled transitive relation counts") {
  // 1, 3, 19, 219, 4231 labeled posets on 1..5 elements
  CHECK(enumerate_posets(1).size() == 1);
  CHECK(enumerate_posets(2).size() == 1 + 3);
  CHECK(enumerate_posets(3).size() == 1 + 3 + 19);
  CHECK(enumerate_posets(4).size() == 1 + 3 + 19 + 219);
  std::vector<FinitePoset> all = enumerate_posets(5);
  CHECK(all.size() == 1 + 3 + 19 + 219 + 4231);
  for (std::size_t k = 0; k < all.size(); k += 997) CHECK(validate_poset(all[k]).ok());
}
