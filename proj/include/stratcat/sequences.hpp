#pragma once

#include "stratcat/poset.hpp"

namespace stratcat {

// Weakly increasing tuple a_0 <= a_1 <= ... <= a_n of poset elements.
// The length is n (the number of steps), so a single element has length 0.
struct IncreasingSequence {
  const FinitePoset* poset = nullptr;
  std::vector<int> entries;

  int length() const { return static_cast<int>(entries.size()) - 1; }
  std::string label() const;
  bool operator==(const IncreasingSequence& other) const {
    return poset == other.poset && entries == other.entries;
  }
};

// Strictly increasing tuple; the condensed image of an increasing sequence.
struct StrictSequence {
  const FinitePoset* poset = nullptr;
  std::vector<int> entries;

  int length() const { return static_cast<int>(entries.size()) - 1; }
  std::string label() const;
  bool operator==(const StrictSequence& other) const {
    return poset == other.poset && entries == other.entries;
  }
};

IncreasingSequence make_sequence(const FinitePoset& poset, const std::vector<std::string>& labels);
IncreasingSequence make_sequence_by_index(const FinitePoset& poset, std::vector<int> entries);

// Monotone map phi with target.entries[phi[k]] == source.entries[k].
struct SequenceMorphism {
  IncreasingSequence source;
  IncreasingSequence target;
  std::vector<int> map;

  bool operator==(const SequenceMorphism& other) const {
    return source == other.source && target == other.target && map == other.map;
  }
};

// All morphisms source -> target.
std::vector<SequenceMorphism> sequence_maps(const IncreasingSequence& source,
                                            const IncreasingSequence& target);
SequenceMorphism identity_morphism(const IncreasingSequence& seq);
// second after first; requires first.target == second.source.
SequenceMorphism compose(const SequenceMorphism& second, const SequenceMorphism& first);
bool is_injective(const SequenceMorphism& phi);

// Ordered distinct entries.
StrictSequence condense(const IncreasingSequence& seq);
StrictSequence condense_entries(const FinitePoset& poset, const std::vector<int>& entries);

// Concatenation of a path a->b with a path b->c, sharing the midpoint once.
StrictSequence path_compose_condense(const StrictSequence& first, const StrictSequence& second);

// The path poset from a to b: strict sequences a = x_0 < ... < x_k = b,
// ordered by reverse refinement (x <= y iff y is a subsequence of x).
struct PathHom {
  std::vector<StrictSequence> elements;
  std::vector<std::vector<char>> leq;
  int maximal = -1;
};
PathHom path_hom(const FinitePoset& poset, int a, int b);
bool subsequence(const std::vector<int>& needle, const std::vector<int>& hay);
StrictSequence maximal_path(const FinitePoset& poset, int a, int b);

// The poset of break patterns between slots i and j at width n: subsets
// E of {0..n} with i,j in E and E inside [i,j], ordered by inclusion.
// Elements are bitmasks; composition of composable patterns is union.
struct CubePoset {
  int n = 0, i = 0, j = 0;
  std::vector<unsigned> elements;
  static bool leq(unsigned a, unsigned b) { return (a & b) == a; }
  static bool contains(unsigned mask, int k) { return ((mask >> k) & 1u) != 0; }
};
CubePoset cube_poset(int n, int i, int j);

// Lengths 0..max_length over a poset, in a deterministic order.
std::vector<IncreasingSequence> all_increasing_sequences(const FinitePoset& poset, int max_length);

}  // namespace stratcat
