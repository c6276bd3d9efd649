#include "stratcat/poset.hpp"

#include <algorithm>
#include <set>

namespace stratcat {

int FinitePoset::index_of(const std::string& label) const {
  for (int k = 0; k < size(); ++k)
    if (elements[k] == label) return k;
  return -1;
}

namespace {

void close_reflexive_transitive(std::vector<std::vector<char>>& rel) {
  int n = static_cast<int>(rel.size());
  for (int a = 0; a < n; ++a) rel[a][a] = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (rel[a][k])
        for (int b = 0; b < n; ++b)
          if (rel[k][b]) rel[a][b] = 1;
}

}  // namespace

FinitePoset load_poset(const nlohmann::json& data) {
  if (!data.is_object()) throw schema_error("poset: expected an object");
  if (!data.contains("elements") || !data["elements"].is_array())
    throw schema_error("poset: missing 'elements' array");
  if (!data.contains("leq") || !data["leq"].is_array())
    throw schema_error("poset: missing 'leq' array");
  if (!data.contains("f") || !data["f"].is_object())
    throw schema_error("poset: missing 'f' object");

  FinitePoset poset;
  std::set<std::string> seen;
  for (const auto& item : data["elements"]) {
    if (!item.is_string()) throw schema_error("poset: element labels must be strings");
    std::string label = item.get<std::string>();
    if (!seen.insert(label).second) throw schema_error("poset: duplicate label '" + label + "'");
    poset.elements.push_back(label);
  }
  if (poset.elements.empty()) throw schema_error("poset: no elements");

  poset.f.resize(poset.elements.size());
  for (int k = 0; k < poset.size(); ++k) {
    const std::string& label = poset.elements[k];
    if (!data["f"].contains(label)) throw schema_error("poset: missing height for '" + label + "'");
    const auto& value = data["f"][label];
    if (!value.is_string()) throw schema_error("poset: height of '" + label + "' must be a rational string");
    poset.f[k] = parse_rat(value.get<std::string>());
  }
  for (auto it = data["f"].begin(); it != data["f"].end(); ++it)
    if (poset.index_of(it.key()) < 0) throw schema_error("poset: height for unknown label '" + it.key() + "'");

  poset.closure.assign(poset.size(), std::vector<char>(poset.size(), 0));
  for (const auto& pair : data["leq"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      throw schema_error("poset: leq entries must be [\"a\",\"b\"] pairs");
    int a = poset.index_of(pair[0].get<std::string>());
    int b = poset.index_of(pair[1].get<std::string>());
    if (a < 0 || b < 0) throw schema_error("poset: leq pair with unknown label");
    poset.closure[a][b] = 1;
  }
  close_reflexive_transitive(poset.closure);
  return poset;
}

PosetReport validate_poset(const FinitePoset& poset) {
  PosetReport report;
  int n = poset.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (poset.leq(a, b) && poset.leq(b, a))
        report.violations.push_back("antisymmetry: '" + poset.elements[a] + "' and '" +
                                    poset.elements[b] + "' lie on a cycle");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && poset.leq(a, b) && !poset.leq(b, a) && !(poset.f[a] > poset.f[b]))
        report.violations.push_back("height: f('" + poset.elements[a] + "') = " + format_rat(poset.f[a]) +
                                    " must exceed f('" + poset.elements[b] + "') = " + format_rat(poset.f[b]));
  // Up-sets must be closed upwards; with a transitively closed order this is a
  // consistency check of the closure itself.
  for (int a = 0; a < n; ++a) {
    std::vector<int> ups = up_set(poset, a);
    for (int b : ups)
      for (int c = 0; c < n; ++c)
        if (poset.leq(b, c) && std::find(ups.begin(), ups.end(), c) == ups.end())
          report.violations.push_back("up-set of '" + poset.elements[a] + "' is not closed upwards");
  }
  return report;
}

FinitePoset load_valid_poset(const nlohmann::json& data) {
  FinitePoset poset = load_poset(data);
  PosetReport report = validate_poset(poset);
  if (!report.ok()) throw usage_error("invalid poset: " + report.violations.front());
  return poset;
}

nlohmann::json poset_to_json(const FinitePoset& poset) {
  nlohmann::json data;
  data["elements"] = poset.elements;
  nlohmann::json pairs = nlohmann::json::array();
  for (int a = 0; a < poset.size(); ++a)
    for (int b = 0; b < poset.size(); ++b)
      if (a != b && poset.leq(a, b))
        pairs.push_back({poset.elements[a], poset.elements[b]});
  data["leq"] = pairs;
  nlohmann::json heights = nlohmann::json::object();
  for (int k = 0; k < poset.size(); ++k) heights[poset.elements[k]] = format_rat(poset.f[k]);
  data["f"] = heights;
  return data;
}

std::vector<int> up_set(const FinitePoset& poset, int a) {
  std::vector<int> ups;
  for (int b = 0; b < poset.size(); ++b)
    if (poset.leq(a, b)) ups.push_back(b);
  return ups;
}

FinitePoset chain_poset(int count) {
  FinitePoset poset;
  for (int k = 0; k < count; ++k) {
    poset.elements.push_back("c" + std::to_string(k));
    poset.f.push_back(Rat(count - 1 - k));
  }
  poset.closure.assign(count, std::vector<char>(count, 0));
  for (int a = 0; a < count; ++a)
    for (int b = a; b < count; ++b) poset.closure[a][b] = 1;
  return poset;
}

std::vector<FinitePoset> enumerate_posets(int max_elements) {
  std::vector<FinitePoset> all;
  for (int n = 1; n <= max_elements; ++n) {
    int pairs = n * (n - 1) / 2;
    long long total = 1;
    for (int k = 0; k < pairs; ++k) total *= 3;
    for (long long code = 0; code < total; ++code) {
      std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
      long long rest = code;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          int choice = static_cast<int>(rest % 3);
          rest /= 3;
          if (choice == 1) rel[a][b] = 1;
          if (choice == 2) rel[b][a] = 1;
        }
      for (int a = 0; a < n; ++a) rel[a][a] = 1;
      bool transitive = true;
      for (int a = 0; a < n && transitive; ++a)
        for (int b = 0; b < n && transitive; ++b)
          if (rel[a][b])
            for (int c = 0; c < n; ++c)
              if (rel[b][c] && !rel[a][c]) {
                transitive = false;
                break;
              }
      if (!transitive) continue;
      FinitePoset poset;
      for (int k = 0; k < n; ++k) poset.elements.push_back("p" + std::to_string(k));
      poset.closure = rel;
      poset.f.resize(n);
      for (int a = 0; a < n; ++a) {
        int above = 0;
        for (int b = 0; b < n; ++b)
          if (b != a && rel[a][b]) ++above;
        poset.f[a] = Rat(above);
      }
      all.push_back(std::move(poset));
    }
  }
  return all;
}

}  // namespace stratcat
