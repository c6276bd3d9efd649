#include "stratcat/sequences.hpp"

#include <algorithm>

namespace stratcat {

namespace {

std::string bracket_label(const FinitePoset* poset, const std::vector<int>& entries) {
  std::vector<std::string> names;
  for (int e : entries) names.push_back(poset->elements[e]);
  return "[" + join(names, ",") + "]";
}

}  // namespace

std::string IncreasingSequence::label() const { return bracket_label(poset, entries); }
std::string StrictSequence::label() const { return bracket_label(poset, entries); }

IncreasingSequence make_sequence(const FinitePoset& poset, const std::vector<std::string>& labels) {
  std::vector<int> entries;
  for (const std::string& name : labels) {
    int k = poset.index_of(name);
    if (k < 0) throw schema_error("sequence: unknown label '" + name + "'");
    entries.push_back(k);
  }
  return make_sequence_by_index(poset, std::move(entries));
}

IncreasingSequence make_sequence_by_index(const FinitePoset& poset, std::vector<int> entries) {
  if (entries.empty()) throw usage_error("sequence: must be nonempty");
  for (std::size_t k = 0; k + 1 < entries.size(); ++k)
    if (!poset.leq(entries[k], entries[k + 1]))
      throw usage_error("sequence: entries must be weakly increasing");
  IncreasingSequence seq;
  seq.poset = &poset;
  seq.entries = std::move(entries);
  return seq;
}

std::vector<SequenceMorphism> sequence_maps(const IncreasingSequence& source,
                                            const IncreasingSequence& target) {
  if (source.poset != target.poset) throw usage_error("sequence_maps: different posets");
  int n = static_cast<int>(source.entries.size());
  int m = static_cast<int>(target.entries.size());
  std::vector<SequenceMorphism> morphisms;
  std::vector<int> map(n, 0);
  auto extend = [&](auto&& self, int k) -> void {
    if (k == n) {
      morphisms.push_back({source, target, map});
      return;
    }
    int start = k == 0 ? 0 : map[k - 1];
    for (int v = start; v < m; ++v)
      if (target.entries[v] == source.entries[k]) {
        map[k] = v;
        self(self, k + 1);
      }
  };
  extend(extend, 0);
  return morphisms;
}

SequenceMorphism identity_morphism(const IncreasingSequence& seq) {
  std::vector<int> map(seq.entries.size());
  for (std::size_t k = 0; k < map.size(); ++k) map[k] = static_cast<int>(k);
  return {seq, seq, map};
}

SequenceMorphism compose(const SequenceMorphism& second, const SequenceMorphism& first) {
  if (!(first.target == second.source)) throw usage_error("compose: morphisms not composable");
  std::vector<int> map(first.map.size());
  for (std::size_t k = 0; k < map.size(); ++k) map[k] = second.map[first.map[k]];
  return {first.source, second.target, map};
}

bool is_injective(const SequenceMorphism& phi) {
  for (std::size_t k = 0; k + 1 < phi.map.size(); ++k)
    if (phi.map[k] == phi.map[k + 1]) return false;
  return true;
}

StrictSequence condense(const IncreasingSequence& seq) {
  return condense_entries(*seq.poset, seq.entries);
}

StrictSequence condense_entries(const FinitePoset& poset, const std::vector<int>& entries) {
  StrictSequence out;
  out.poset = &poset;
  for (int e : entries)
    if (out.entries.empty() || out.entries.back() != e) out.entries.push_back(e);
  for (std::size_t k = 0; k + 1 < out.entries.size(); ++k)
    if (!poset.lt(out.entries[k], out.entries[k + 1]))
      throw usage_error("condense: entries must be weakly increasing");
  return out;
}

StrictSequence path_compose_condense(const StrictSequence& first, const StrictSequence& second) {
  if (first.poset != second.poset) throw usage_error("path composition: different posets");
  if (first.entries.empty() || second.entries.empty())
    throw usage_error("path composition: empty path");
  if (first.entries.back() != second.entries.front())
    throw usage_error("path composition: endpoint mismatch");
  std::vector<int> entries = first.entries;
  entries.insert(entries.end(), second.entries.begin() + 1, second.entries.end());
  return condense_entries(*first.poset, entries);
}

bool subsequence(const std::vector<int>& needle, const std::vector<int>& hay) {
  std::size_t k = 0;
  for (int h : hay) {
    if (k < needle.size() && needle[k] == h) ++k;
  }
  return k == needle.size();
}

PathHom path_hom(const FinitePoset& poset, int a, int b) {
  PathHom hom;
  if (!poset.leq(a, b)) return hom;
  std::vector<int> current{a};
  auto extend = [&](auto&& self, int last) -> void {
    if (last == b) {
      StrictSequence path;
      path.poset = &poset;
      path.entries = current;
      hom.elements.push_back(path);
      if (last == a) return;  // [a] itself is the only path when a == b
    }
    if (last == b && a != b) return;
    for (int next = 0; next < poset.size(); ++next)
      if (poset.lt(last, next) && poset.leq(next, b)) {
        current.push_back(next);
        self(self, next);
        current.pop_back();
      }
  };
  extend(extend, a);
  std::sort(hom.elements.begin(), hom.elements.end(),
            [](const StrictSequence& x, const StrictSequence& y) { return x.entries < y.entries; });
  int count = static_cast<int>(hom.elements.size());
  hom.leq.assign(count, std::vector<char>(count, 0));
  for (int x = 0; x < count; ++x)
    for (int y = 0; y < count; ++y)
      if (subsequence(hom.elements[y].entries, hom.elements[x].entries)) hom.leq[x][y] = 1;
  StrictSequence top = maximal_path(poset, a, b);
  for (int x = 0; x < count; ++x)
    if (hom.elements[x] == top) hom.maximal = x;
  return hom;
}

StrictSequence maximal_path(const FinitePoset& poset, int a, int b) {
  if (!poset.leq(a, b)) throw usage_error("maximal path: endpoints not comparable");
  StrictSequence path;
  path.poset = &poset;
  path.entries = a == b ? std::vector<int>{a} : std::vector<int>{a, b};
  return path;
}

CubePoset cube_poset(int n, int i, int j) {
  if (n < 0 || i < 0 || j > n || i > j) throw usage_error("cube poset: need 0 <= i <= j <= n");
  CubePoset cube;
  cube.n = n;
  cube.i = i;
  cube.j = j;
  unsigned base = (1u << i) | (1u << j);
  int middle = j - i - 1;
  int count = middle > 0 ? (1 << middle) : 1;
  for (int code = 0; code < count; ++code) {
    unsigned mask = base;
    for (int k = 0; k < middle; ++k)
      if ((code >> k) & 1) mask |= 1u << (i + 1 + k);
    cube.elements.push_back(mask);
  }
  std::sort(cube.elements.begin(), cube.elements.end());
  int expected = i == j ? 1 : (1 << (j - i - 1));
  SC_CHECK(static_cast<int>(cube.elements.size()) == expected, "cube poset size");
  // The coordinate projections (bit tests strictly between i and j) are
  // jointly an order isomorphism with the componentwise order.
  for (unsigned a : cube.elements)
    for (unsigned b : cube.elements) {
      bool componentwise = true;
      for (int k = i + 1; k < j; ++k)
        if (CubePoset::contains(a, k) && !CubePoset::contains(b, k)) componentwise = false;
      SC_CHECK(CubePoset::leq(a, b) == componentwise, "cube poset coordinate order");
    }
  return cube;
}

std::vector<IncreasingSequence> all_increasing_sequences(const FinitePoset& poset, int max_length) {
  std::vector<IncreasingSequence> all;
  std::vector<int> current;
  auto extend = [&](auto&& self) -> void {
    if (!current.empty()) {
      IncreasingSequence seq;
      seq.poset = &poset;
      seq.entries = current;
      all.push_back(seq);
    }
    if (static_cast<int>(current.size()) == max_length + 1) return;
    int last = current.empty() ? -1 : current.back();
    for (int next = 0; next < poset.size(); ++next) {
      if (last >= 0 && !poset.leq(last, next)) continue;
      current.push_back(next);
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  std::sort(all.begin(), all.end(), [](const IncreasingSequence& x, const IncreasingSequence& y) {
    if (x.entries.size() != y.entries.size()) return x.entries.size() < y.entries.size();
    return x.entries < y.entries;
  });
  return all;
}

}  // namespace stratcat
