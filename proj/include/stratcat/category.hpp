#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stratcat/homology.hpp"
#include "stratcat/poset.hpp"
#include "stratcat/sequences.hpp"

namespace stratcat {

// A morphism of a stratified category: endpoints in the object poset, a
// strict path label recording which strata the morphism passes through, and
// an integer weight used by the boundary operator.
struct Morphism {
  std::string id;
  int src = 0;
  int dst = 0;
  StrictSequence label;
  Int weight = Int(1);
  bool is_identity = false;
};

// A finite category over a poset of objects, given by generators-with-table:
// every hom set is listed explicitly and composition of non-identity
// morphisms is a lookup table. Identities are synthesized as "id_<object>".
struct StratifiedCategoryData {
  FinitePoset poset;
  std::vector<Morphism> morphisms;
  std::map<std::string, int> id_index;
  std::map<std::pair<int, int>, std::vector<int>> homs;
  std::map<std::pair<int, int>, int> compose_table;  // (g index, f index) -> g o f index
  std::vector<int> identity_index;                   // by object
  std::vector<long long> grading;                    // by object; meaningful iff has_grading
  bool has_grading = false;

  const Morphism* find(const std::string& id) const;
  const std::vector<int>& hom(int src, int dst) const;
};

struct CategoryReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Parses {"poset": {...}, "homs": {"a->b": [{"id","label","weight"}...]},
// "compose": {"(g,f)": "h"}, "grading": {"a": 2, ...}}. Shape problems throw
// schema_error; semantic violations are left for validate_category.
StratifiedCategoryData load_category(const nlohmann::json& data);

// Checks that homs respect the order, single-object homs hold only the
// identity, the composition table is total on composable pairs, associative
// and unital, and that labels compose by path concatenation. A grading must
// strictly drop along non-identity morphisms; violations are warnings.
CategoryReport validate_category(const StratifiedCategoryData& data);

// load_category + validate_category, throwing usage_error on any error.
StratifiedCategoryData load_valid_category(const nlohmann::json& data);

// g o f through the table, with identities absorbed. Throws usage_error when
// the pair is not composable or the table has no entry.
int compose_of(const StratifiedCategoryData& data, int g, int f);

// Built-in examples: "other_sphere" (two 2-cells over a figure with one
// 1-cell whose two attaching weights cancel) and "round_sphere" (one 2-cell,
// one 0-cell, no boundary). Unknown names throw usage_error.
StratifiedCategoryData builtin_example(const std::string& name);

// A composable chain is unbroken when the composite of every contiguous
// sub-chain carries the maximal (two-entry) path label. Identity links are
// transparent.
bool unbroken_check(const StratifiedCategoryData& data, const std::vector<std::string>& chain_ids);

// Functor coefficients: a free-module rank per object and a matrix per
// non-identity morphism (dim(dst) x dim(src)); identities act as identity
// matrices. Loading checks shapes; functoriality against the composition
// table throws usage_error when violated.
struct CoefficientFunctor {
  std::vector<int> dims;                                          // by object
  std::map<std::string, std::vector<std::vector<Int>>> matrices;  // by morphism id
};
CoefficientFunctor load_coefficients(const StratifiedCategoryData& data,
                                     const nlohmann::json& json_data);

// The Morse complex of a graded category: one generator block per object in
// its grading degree, boundary blocks summing weight * G(m) over the
// morphisms dropping exactly one degree. Requires a nonnegative grading.
// Null coefficients mean the constant rank-one functor.
ChainComplex morse_complex(const StratifiedCategoryData& data,
                           const CoefficientFunctor* coeffs = nullptr);

}  // namespace stratcat
