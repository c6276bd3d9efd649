#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "stratcat/common.hpp"

namespace stratcat {

// Finite poset with a strictly decreasing rational height function:
// a < b implies f(a) > f(b). The order is stored reflexively and
// transitively closed.
struct FinitePoset {
  std::vector<std::string> elements;
  std::vector<Rat> f;
  std::vector<std::vector<char>> closure;

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(const std::string& label) const;
  bool leq(int a, int b) const { return closure[a][b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
};

struct PosetReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Parses {"elements": [...], "leq": [["a","b"], ...], "f": {"a": "2/1", ...}}
// and closes the order. Shape problems (duplicate labels, unknown labels,
// non-rational heights) throw schema_error; order violations are left for
// validate_poset to report.
FinitePoset load_poset(const nlohmann::json& data);

// Reports antisymmetry violations (cycles), strict-decrease violations of f,
// and confirms every up-set is closed upwards.
PosetReport validate_poset(const FinitePoset& poset);

// load_poset + validate_poset, throwing usage_error on any violation.
FinitePoset load_valid_poset(const nlohmann::json& data);

nlohmann::json poset_to_json(const FinitePoset& poset);

std::vector<int> up_set(const FinitePoset& poset, int a);

// c0 < c1 < ... < c_{count-1} with f(ck) = count-1-k.
FinitePoset chain_poset(int count);

// Every labeled poset on 1..max_elements elements, with the canonical
// height f(a) = number of elements strictly above a.
std::vector<FinitePoset> enumerate_posets(int max_elements);

}  // namespace stratcat
