#pragma once

#include <map>
#include <string>
#include <vector>

#include "stratcat/category.hpp"
#include "stratcat/poset.hpp"

namespace stratcat {

// A simplex in normal form: a strictly decreasing degeneracy word (outermost
// first) applied to a nondegenerate base simplex. The base lives in dimension
// dim - word.size() and is identified by its index there.
struct SimplexRef {
  std::vector<int> word;
  int dim = 0;
  int idx = 0;

  bool operator==(const SimplexRef& other) const = default;
  bool operator<(const SimplexRef& other) const {
    if (dim != other.dim) return dim < other.dim;
    if (idx != other.idx) return idx < other.idx;
    return word < other.word;
  }
  bool is_degenerate() const { return !word.empty(); }
  int base_dim() const { return dim - static_cast<int>(word.size()); }
};

// A finite simplicial set: named nondegenerate simplices per dimension and,
// for each of them, its ordered faces (which may be degenerate).
struct FiniteSimplicialSet {
  std::vector<std::vector<std::string>> nondeg;
  std::vector<std::vector<std::vector<SimplexRef>>> faces;

  int top_dim() const { return static_cast<int>(nondeg.size()) - 1; }
};

// Normal form of s_m applied outside the given word.
std::vector<int> word_insert(std::vector<int> word, int m);

SimplexRef nondeg_ref(int dim, int idx);
SimplexRef face_of(const FiniteSimplicialSet& set, const SimplexRef& ref, int i);
SimplexRef degeneracy_of(const FiniteSimplicialSet& set, const SimplexRef& ref, int i);

// Every simplex of the given dimension, degenerate ones included.
std::vector<SimplexRef> all_simplices(const FiniteSimplicialSet& set, int dim);

// The action of a monotone map phi : [m] -> [ref.dim] on ref, giving a
// simplex of dimension m (faces for skipped values, degeneracies for repeats).
SimplexRef restrict_along(const FiniteSimplicialSet& set, const SimplexRef& ref,
                          const std::vector<int>& phi);
SimplexRef vertex_of(const FiniteSimplicialSet& set, const SimplexRef& ref, int k);

std::string simplex_label(const FiniteSimplicialSet& set, const SimplexRef& ref);

// Subset-family shapes inside the standard n-simplex.
FiniteSimplicialSet make_simplex(int n);
FiniteSimplicialSet make_boundary(int n);
FiniteSimplicialSet make_horn(int n, int k);
FiniteSimplicialSet make_spine(int n);
// kind is one of "simplex", "boundary", "horn", "spine"; k is the horn slot.
FiniteSimplicialSet make_shape(const std::string& kind, int n, int k = -1);

// Nerves: strict chains of a poset; identity-free composable chains of a
// category (faces compose adjacent morphisms).
FiniteSimplicialSet poset_nerve(const FinitePoset& poset);
FiniteSimplicialSet category_nerve(const StratifiedCategoryData& data);

// A horn boundary datum: one facet per slot other than k.
struct HornAssignment {
  int n = 0;
  int k = 0;
  std::map<int, SimplexRef> facets;
};

// All fillers of a compatible assignment; incompatible facet data throws
// usage_error naming the first clashing pair.
std::vector<SimplexRef> horn_fillers(const FiniteSimplicialSet& set, const HornAssignment& horn);

// Sweeps every horn of dimension 1..max_dim over every compatible facet
// assignment. Inner horns must fill uniquely for the certificate; outer horns
// affect only the Kan flag.
struct NerveCertificate {
  bool inner_fillers_exist = true;
  bool inner_fillers_unique = true;
  bool is_kan = true;
  std::string inner_witness;
  std::string kan_witness;
};
NerveCertificate infinity_check(const FiniteSimplicialSet& set, int max_dim);

// The restriction of dim-simplices to their spine (consecutive edges) must be
// a bijection onto endpoint-compatible edge tuples.
struct SpineCheck {
  bool injective = true;
  bool surjective = true;
  std::string witness;
};
SpineCheck spine_extension_check(const FiniteSimplicialSet& set, int dim);

// Vertex strata must be monotone along edges (usage_error otherwise); the
// fiber keeps exactly the simplices all of whose vertices sit in the given
// stratum, reindexed.
FiniteSimplicialSet stratum_fiber(const FiniteSimplicialSet& set, const FinitePoset& poset,
                                  const std::vector<int>& vertex_stratum, int stratum);

}  // namespace stratcat
