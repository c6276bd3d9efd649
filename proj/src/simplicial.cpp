#include "stratcat/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "stratcat/common.hpp"

namespace stratcat {

namespace {

std::string join_ints(const std::vector<int>& values, const std::string& sep) {
  std::ostringstream out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out << sep;
    out << values[k];
  }
  return out.str();
}

void validate_ref(const FiniteSimplicialSet& set, const SimplexRef& ref, const char* where) {
  int base = ref.base_dim();
  if (base < 0 || base > set.top_dim())
    throw usage_error(std::string(where) + ": base dimension out of range");
  if (ref.idx < 0 || ref.idx >= static_cast<int>(set.nondeg[base].size()))
    throw usage_error(std::string(where) + ": simplex index out of range");
  int prev = ref.dim;
  for (int entry : ref.word) {
    if (entry < 0 || entry >= prev)
      throw usage_error(std::string(where) + ": degeneracy word is not in normal form");
    prev = entry;
  }
}

// Builds the complex of all nonempty subsets of {0..n} passing the filter.
FiniteSimplicialSet subset_complex(int n, const std::function<bool(const std::vector<int>&)>& keep) {
  SC_CHECK(n >= 0 && n <= 20, "subset complex dimension out of range");
  std::vector<std::vector<std::vector<int>>> by_dim;
  for (int size = 1; size <= n + 1; ++size) {
    std::vector<std::vector<int>> level;
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      std::vector<int> verts;
      for (int v = 0; v <= n; ++v)
        if (mask & (1u << v)) verts.push_back(v);
      if (keep(verts)) level.push_back(verts);
    }
    by_dim.push_back(level);
  }
  while (by_dim.size() > 1 && by_dim.back().empty()) by_dim.pop_back();

  FiniteSimplicialSet set;
  set.nondeg.resize(by_dim.size());
  set.faces.resize(by_dim.size());
  std::map<std::vector<int>, int> index_of;
  for (std::size_t d = 0; d < by_dim.size(); ++d) {
    set.faces[d].resize(by_dim[d].size());
    for (std::size_t i = 0; i < by_dim[d].size(); ++i) {
      index_of[by_dim[d][i]] = static_cast<int>(i);
      set.nondeg[d].push_back("[" + join_ints(by_dim[d][i], ",") + "]");
    }
  }
  for (std::size_t d = 1; d < by_dim.size(); ++d)
    for (std::size_t i = 0; i < by_dim[d].size(); ++i)
      for (std::size_t drop = 0; drop < by_dim[d][i].size(); ++drop) {
        std::vector<int> sub = by_dim[d][i];
        sub.erase(sub.begin() + drop);
        auto found = index_of.find(sub);
        SC_CHECK(found != index_of.end(), "shape family is not closed under faces");
        set.faces[d][i].push_back(SimplexRef{{}, static_cast<int>(d) - 1, found->second});
      }
  return set;
}

}  // namespace

std::vector<int> word_insert(std::vector<int> word, int m) {
  std::size_t pos = 0;
  while (pos < word.size() && m <= word[pos]) {
    ++word[pos];
    ++pos;
  }
  word.insert(word.begin() + pos, m);
  return word;
}

SimplexRef nondeg_ref(int dim, int idx) { return SimplexRef{{}, dim, idx}; }

SimplexRef face_of(const FiniteSimplicialSet& set, const SimplexRef& ref, int i) {
  validate_ref(set, ref, "face");
  if (ref.dim == 0) throw usage_error("face: a vertex has no faces");
  if (i < 0 || i > ref.dim) throw usage_error("face: index out of range");

  int face = i;
  std::vector<int> out;
  const std::vector<int>& w = ref.word;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    int s = w[pos];
    if (face < s) {
      out.push_back(s - 1);
    } else if (face == s || face == s + 1) {
      out.insert(out.end(), w.begin() + pos + 1, w.end());
      return SimplexRef{out, ref.dim - 1, ref.idx};
    } else {
      out.push_back(s);
      --face;
    }
  }
  int base = ref.base_dim();
  SC_CHECK(base >= 1, "face map reached a vertex base");
  const SimplexRef& base_face = set.faces[base][ref.idx][face];
  std::vector<int> combined = base_face.word;
  for (auto it = out.rbegin(); it != out.rend(); ++it) combined = word_insert(combined, *it);
  return SimplexRef{combined, ref.dim - 1, base_face.idx};
}

SimplexRef degeneracy_of(const FiniteSimplicialSet& set, const SimplexRef& ref, int i) {
  validate_ref(set, ref, "degeneracy");
  if (i < 0 || i > ref.dim) throw usage_error("degeneracy: index out of range");
  return SimplexRef{word_insert(ref.word, i), ref.dim + 1, ref.idx};
}

std::vector<SimplexRef> all_simplices(const FiniteSimplicialSet& set, int dim) {
  if (dim < 0) throw usage_error("all_simplices: dimension must be nonnegative");
  if (dim > 20) throw usage_error("all_simplices: dimension out of supported range");
  std::vector<SimplexRef> out;
  for (int r = 0; r <= dim; ++r) {
    int base = dim - r;
    if (base > set.top_dim()) continue;
    if (set.nondeg[base].empty()) continue;
    std::vector<std::vector<int>> words;
    if (r == 0) {
      words.push_back({});
    } else {
      for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        std::vector<int> word;
        for (int b = dim - 1; b >= 0; --b)
          if (mask & (1u << b)) word.push_back(b);
        words.push_back(word);
      }
    }
    for (const auto& word : words)
      for (int idx = 0; idx < static_cast<int>(set.nondeg[base].size()); ++idx)
        out.push_back(SimplexRef{word, dim, idx});
  }
  return out;
}

SimplexRef restrict_along(const FiniteSimplicialSet& set, const SimplexRef& ref,
                          const std::vector<int>& phi) {
  validate_ref(set, ref, "restrict");
  if (phi.empty()) throw usage_error("restrict: the map must have at least one entry");
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (phi[k] < 0 || phi[k] > ref.dim) throw usage_error("restrict: map value out of range");
    if (k > 0 && phi[k] < phi[k - 1]) throw usage_error("restrict: map must be monotone");
  }

  std::vector<char> hit(ref.dim + 1, 0);
  for (int v : phi) hit[v] = 1;
  SimplexRef current = ref;
  for (int v = ref.dim; v >= 0; --v)
    if (!hit[v]) current = face_of(set, current, v);
  for (std::size_t k = 0; k + 1 < phi.size(); ++k)
    if (phi[k] == phi[k + 1]) current = degeneracy_of(set, current, static_cast<int>(k));
  SC_CHECK(current.dim == static_cast<int>(phi.size()) - 1, "restriction has the wrong dimension");
  return current;
}

SimplexRef vertex_of(const FiniteSimplicialSet& set, const SimplexRef& ref, int k) {
  if (k < 0 || k > ref.dim) throw usage_error("vertex: index out of range");
  return restrict_along(set, ref, {k});
}

std::string simplex_label(const FiniteSimplicialSet& set, const SimplexRef& ref) {
  validate_ref(set, ref, "label");
  std::string name = set.nondeg[ref.base_dim()][ref.idx];
  if (ref.word.empty()) return name;
  std::string out;
  for (int entry : ref.word) out += "s" + std::to_string(entry);
  return out + "(" + name + ")";
}

FiniteSimplicialSet make_simplex(int n) {
  if (n < 0) throw usage_error("simplex dimension must be nonnegative");
  return subset_complex(n, [](const std::vector<int>&) { return true; });
}

FiniteSimplicialSet make_boundary(int n) {
  if (n < 1) throw usage_error("boundary needs dimension at least 1");
  return subset_complex(
      n, [n](const std::vector<int>& verts) { return static_cast<int>(verts.size()) <= n; });
}

FiniteSimplicialSet make_horn(int n, int k) {
  if (n < 1) throw usage_error("horn needs dimension at least 1");
  if (k < 0 || k > n) throw usage_error("horn slot must lie between 0 and n");
  return subset_complex(n, [n, k](const std::vector<int>& verts) {
    std::vector<char> present(n + 1, 0);
    for (int v : verts) present[v] = 1;
    for (int v = 0; v <= n; ++v)
      if (v != k && !present[v]) return true;
    return false;
  });
}

FiniteSimplicialSet make_spine(int n) {
  if (n < 0) throw usage_error("spine dimension must be nonnegative");
  return subset_complex(
      n, [](const std::vector<int>& verts) { return verts.back() - verts.front() <= 1; });
}

FiniteSimplicialSet make_shape(const std::string& kind, int n, int k) {
  if (kind == "simplex") return make_simplex(n);
  if (kind == "boundary") return make_boundary(n);
  if (kind == "horn") return make_horn(n, k);
  if (kind == "spine") return make_spine(n);
  throw usage_error("unknown shape '" + kind + "' (available: simplex, boundary, horn, spine)");
}

FiniteSimplicialSet poset_nerve(const FinitePoset& poset) {
  std::vector<std::vector<std::vector<int>>> chains;
  std::vector<std::vector<int>> level;
  for (int v = 0; v < poset.size(); ++v) level.push_back({v});
  while (!level.empty()) {
    chains.push_back(level);
    std::vector<std::vector<int>> next;
    for (const auto& chain : level)
      for (int v = 0; v < poset.size(); ++v)
        if (poset.lt(chain.back(), v)) {
          auto grown = chain;
          grown.push_back(v);
          next.push_back(grown);
        }
    level = std::move(next);
  }
  if (chains.empty()) chains.push_back({});

  FiniteSimplicialSet set;
  set.nondeg.resize(chains.size());
  set.faces.resize(chains.size());
  std::vector<std::map<std::vector<int>, int>> index_of(chains.size());
  for (std::size_t d = 0; d < chains.size(); ++d) {
    set.faces[d].resize(chains[d].size());
    for (std::size_t i = 0; i < chains[d].size(); ++i) {
      index_of[d][chains[d][i]] = static_cast<int>(i);
      if (d == 0) {
        set.nondeg[d].push_back(poset.elements[chains[d][i].front()]);
        continue;
      }
      std::vector<std::string> labels;
      for (int v : chains[d][i]) labels.push_back(poset.elements[v]);
      set.nondeg[d].push_back("[" + join(labels, ",") + "]");
    }
  }
  for (std::size_t d = 1; d < chains.size(); ++d)
    for (std::size_t i = 0; i < chains[d].size(); ++i)
      for (std::size_t drop = 0; drop <= d; ++drop) {
        std::vector<int> sub = chains[d][i];
        sub.erase(sub.begin() + drop);
        auto found = index_of[d - 1].find(sub);
        SC_CHECK(found != index_of[d - 1].end(), "nerve chain face is missing");
        set.faces[d][i].push_back(SimplexRef{{}, static_cast<int>(d) - 1, found->second});
      }
  return set;
}

FiniteSimplicialSet category_nerve(const StratifiedCategoryData& data) {
  CategoryReport report = validate_category(data);
  if (!report.errors.empty())
    throw usage_error("nerve needs a valid category: " + report.errors.front());

  std::vector<int> arrows;
  for (int m = 0; m < static_cast<int>(data.morphisms.size()); ++m)
    if (!data.morphisms[m].is_identity) arrows.push_back(m);

  // chains[d] for d >= 1: composable runs of d non-identity morphisms
  std::vector<std::vector<std::vector<int>>> chains;
  std::vector<std::vector<int>> level;
  for (int m : arrows) level.push_back({m});
  while (!level.empty()) {
    chains.push_back(level);
    std::vector<std::vector<int>> next;
    for (const auto& chain : level)
      for (int m : arrows)
        if (data.morphisms[chain.back()].dst == data.morphisms[m].src) {
          auto grown = chain;
          grown.push_back(m);
          next.push_back(grown);
        }
    level = std::move(next);
  }

  FiniteSimplicialSet set;
  set.nondeg.resize(chains.size() + 1);
  set.faces.resize(chains.size() + 1);
  for (int v = 0; v < data.poset.size(); ++v) set.nondeg[0].push_back(data.poset.elements[v]);
  set.faces[0].resize(set.nondeg[0].size());
  std::vector<std::map<std::vector<int>, int>> index_of(chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c) {
    std::size_t d = c + 1;
    set.faces[d].resize(chains[c].size());
    for (std::size_t i = 0; i < chains[c].size(); ++i) {
      index_of[c][chains[c][i]] = static_cast<int>(i);
      std::vector<std::string> ids;
      for (int m : chains[c][i]) ids.push_back(data.morphisms[m].id);
      set.nondeg[d].push_back("(" + join(ids, ",") + ")");
    }
  }
  for (std::size_t c = 0; c < chains.size(); ++c) {
    std::size_t d = c + 1;
    for (std::size_t i = 0; i < chains[c].size(); ++i) {
      const std::vector<int>& chain = chains[c][i];
      for (std::size_t face = 0; face <= d; ++face) {
        if (d == 1) {
          int vert = face == 0 ? data.morphisms[chain[0]].dst : data.morphisms[chain[0]].src;
          set.faces[d][i].push_back(SimplexRef{{}, 0, vert});
          continue;
        }
        std::vector<int> sub;
        if (face == 0) {
          sub.assign(chain.begin() + 1, chain.end());
        } else if (face == d) {
          sub.assign(chain.begin(), chain.end() - 1);
        } else {
          sub = chain;
          int composite = compose_of(data, chain[face], chain[face - 1]);
          SC_CHECK(!data.morphisms[composite].is_identity, "composite face is an identity");
          sub[face - 1] = composite;
          sub.erase(sub.begin() + face);
        }
        auto found = index_of[c - 1].find(sub);
        SC_CHECK(found != index_of[c - 1].end(), "nerve chain face is missing");
        set.faces[d][i].push_back(SimplexRef{{}, static_cast<int>(d) - 1, found->second});
      }
    }
  }
  return set;
}

std::vector<SimplexRef> horn_fillers(const FiniteSimplicialSet& set, const HornAssignment& horn) {
  if (horn.n < 1) throw usage_error("horn needs dimension at least 1");
  if (horn.k < 0 || horn.k > horn.n) throw usage_error("horn slot must lie between 0 and n");
  for (int m = 0; m <= horn.n; ++m) {
    if (m == horn.k) {
      if (horn.facets.count(m)) throw usage_error("horn assignment fills the missing slot");
      continue;
    }
    auto found = horn.facets.find(m);
    if (found == horn.facets.end())
      throw usage_error("horn assignment is missing slot " + std::to_string(m));
    validate_ref(set, found->second, "horn facet");
    if (found->second.dim != horn.n - 1)
      throw usage_error("horn facet at slot " + std::to_string(m) + " has the wrong dimension");
  }
  for (const auto& [m, facet] : horn.facets)
    for (const auto& [m2, facet2] : horn.facets) {
      if (m2 >= m) break;
      if (!(face_of(set, facet, m2) == face_of(set, facet2, m - 1)))
        throw usage_error("horn facets at slots " + std::to_string(m2) + " and " +
                          std::to_string(m) + " do not share their face");
    }

  std::vector<SimplexRef> fillers;
  for (const SimplexRef& x : all_simplices(set, horn.n)) {
    bool match = true;
    for (const auto& [m, facet] : horn.facets)
      if (!(face_of(set, x, m) == facet)) {
        match = false;
        break;
      }
    if (match) fillers.push_back(x);
  }
  return fillers;
}

NerveCertificate infinity_check(const FiniteSimplicialSet& set, int max_dim) {
  if (max_dim < 1) throw usage_error("horn sweep needs dimension at least 1");
  NerveCertificate cert;

  for (int n = 1; n <= max_dim; ++n) {
    std::vector<SimplexRef> candidates = all_simplices(set, n - 1);
    std::vector<std::vector<SimplexRef>> cand_faces(candidates.size());
    if (n >= 2)
      for (std::size_t c = 0; c < candidates.size(); ++c)
        for (int j = 0; j <= n - 1; ++j)
          cand_faces[c].push_back(face_of(set, candidates[c], j));

    std::vector<SimplexRef> pool = all_simplices(set, n);
    std::vector<std::vector<SimplexRef>> pool_faces(pool.size());
    for (std::size_t x = 0; x < pool.size(); ++x)
      for (int m = 0; m <= n; ++m) pool_faces[x].push_back(face_of(set, pool[x], m));

    // boundary tuple (all faces except slot k) -> filler count, per k
    for (int k = 0; k <= n; ++k) {
      bool inner = 0 < k && k < n;
      if (!inner && !cert.is_kan) continue;
      if (inner && !cert.inner_fillers_exist && !cert.inner_fillers_unique && !cert.is_kan)
        continue;

      std::map<std::vector<SimplexRef>, int> filler_count;
      for (std::size_t x = 0; x < pool.size(); ++x) {
        std::vector<SimplexRef> key;
        for (int m = 0; m <= n; ++m)
          if (m != k) key.push_back(pool_faces[x][m]);
        ++filler_count[key];
      }

      std::vector<int> slots;
      for (int m = 0; m <= n; ++m)
        if (m != k) slots.push_back(m);

      std::vector<int> chosen(slots.size(), -1);
      std::function<void(std::size_t)> sweep = [&](std::size_t pos) {
        if (!cert.is_kan && (!inner || (!cert.inner_fillers_exist && !cert.inner_fillers_unique)))
          return;
        if (pos == slots.size()) {
          std::vector<SimplexRef> key;
          for (int c : chosen) key.push_back(candidates[c]);
          auto found = filler_count.find(key);
          int count = found == filler_count.end() ? 0 : found->second;
          std::string where = "horn (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
          if (count == 0) {
            if (inner && cert.inner_fillers_exist) {
              cert.inner_fillers_exist = false;
              cert.inner_witness = where + " on facet " + simplex_label(set, key.front()) +
                                   " and onward has no filler";
            }
            if (cert.is_kan) {
              cert.is_kan = false;
              cert.kan_witness = where + " on facet " + simplex_label(set, key.front()) +
                                 " and onward has no filler";
            }
          } else if (count > 1 && inner && cert.inner_fillers_unique) {
            cert.inner_fillers_unique = false;
            cert.inner_witness = where + " has " + std::to_string(count) + " fillers";
          }
          return;
        }
        int m = slots[pos];
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          bool fits = true;
          // shared face of the slot-m and slot-m2 facets, m2 < m
          for (std::size_t prev = 0; prev < pos && fits; ++prev) {
            int m2 = slots[prev];
            fits = cand_faces[c][m2] == cand_faces[chosen[prev]][m - 1];
          }
          if (!fits) continue;
          chosen[pos] = static_cast<int>(c);
          sweep(pos + 1);
        }
      };
      sweep(0);
    }
  }
  if (cert.is_kan) cert.kan_witness = "all horns through dimension " + std::to_string(max_dim) + " fill";
  if (cert.inner_fillers_exist && cert.inner_fillers_unique)
    cert.inner_witness = "inner horns through dimension " + std::to_string(max_dim) +
                         " fill uniquely";
  return cert;
}

SpineCheck spine_extension_check(const FiniteSimplicialSet& set, int dim) {
  if (dim < 1) throw usage_error("spine check needs dimension at least 1");
  SpineCheck check;

  std::vector<SimplexRef> edges = all_simplices(set, 1);
  std::map<SimplexRef, std::vector<std::size_t>> by_source;
  std::vector<std::pair<SimplexRef, SimplexRef>> ends(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    ends[e] = {face_of(set, edges[e], 1), face_of(set, edges[e], 0)};
    by_source[ends[e].first].push_back(e);
  }

  std::set<std::vector<SimplexRef>> compatible;
  std::function<void(std::vector<std::size_t>&)> grow = [&](std::vector<std::size_t>& tuple) {
    if (tuple.size() == static_cast<std::size_t>(dim)) {
      std::vector<SimplexRef> key;
      for (std::size_t e : tuple) key.push_back(edges[e]);
      compatible.insert(key);
      return;
    }
    if (tuple.empty()) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        tuple.push_back(e);
        grow(tuple);
        tuple.pop_back();
      }
      return;
    }
    auto found = by_source.find(ends[tuple.back()].second);
    if (found == by_source.end()) return;
    for (std::size_t e : found->second) {
      tuple.push_back(e);
      grow(tuple);
      tuple.pop_back();
    }
  };
  std::vector<std::size_t> tuple;
  grow(tuple);

  std::map<std::vector<SimplexRef>, SimplexRef> image;
  for (const SimplexRef& x : all_simplices(set, dim)) {
    std::vector<SimplexRef> key;
    for (int i = 0; i + 1 <= dim; ++i) key.push_back(restrict_along(set, x, {i, i + 1}));
    auto [found, inserted] = image.try_emplace(key, x);
    if (!inserted && !(found->second == x)) {
      check.injective = false;
      check.witness = simplex_label(set, found->second) + " and " + simplex_label(set, x) +
                      " share a spine";
    }
    SC_CHECK(compatible.count(key) == 1, "a spine restriction is not endpoint-compatible");
  }
  if (image.size() != compatible.size()) {
    check.surjective = false;
    for (const auto& key : compatible)
      if (!image.count(key)) {
        check.witness = "no simplex restricts to the spine starting at " +
                        simplex_label(set, key.front());
        break;
      }
  }
  if (check.injective && check.surjective)
    check.witness = "spine restriction is a bijection in dimension " + std::to_string(dim);
  return check;
}

FiniteSimplicialSet stratum_fiber(const FiniteSimplicialSet& set, const FinitePoset& poset,
                                  const std::vector<int>& vertex_stratum, int stratum) {
  if (vertex_stratum.size() != set.nondeg[0].size())
    throw usage_error("stratification must assign every vertex a stratum");
  for (int s : vertex_stratum)
    if (s < 0 || s >= poset.size()) throw usage_error("stratification names an unknown stratum");
  if (stratum < 0 || stratum >= poset.size()) throw usage_error("unknown fiber stratum");

  if (set.top_dim() >= 1)
    for (std::size_t e = 0; e < set.nondeg[1].size(); ++e) {
      SimplexRef edge = nondeg_ref(1, static_cast<int>(e));
      int src = vertex_stratum[face_of(set, edge, 1).idx];
      int dst = vertex_stratum[face_of(set, edge, 0).idx];
      if (!poset.leq(src, dst))
        throw usage_error("stratification is not monotone along edge '" + set.nondeg[1][e] + "'");
    }

  std::vector<std::vector<int>> keep_index(set.nondeg.size());
  FiniteSimplicialSet fiber;
  fiber.nondeg.resize(set.nondeg.size());
  fiber.faces.resize(set.nondeg.size());
  for (std::size_t d = 0; d < set.nondeg.size(); ++d) {
    keep_index[d].assign(set.nondeg[d].size(), -1);
    for (std::size_t i = 0; i < set.nondeg[d].size(); ++i) {
      SimplexRef ref = nondeg_ref(static_cast<int>(d), static_cast<int>(i));
      bool inside = true;
      for (int v = 0; v <= static_cast<int>(d) && inside; ++v)
        inside = vertex_stratum[vertex_of(set, ref, v).idx] == stratum;
      if (!inside) continue;
      keep_index[d][i] = static_cast<int>(fiber.nondeg[d].size());
      fiber.nondeg[d].push_back(set.nondeg[d][i]);
      fiber.faces[d].emplace_back();
    }
  }
  for (std::size_t d = 1; d < set.nondeg.size(); ++d)
    for (std::size_t i = 0; i < set.nondeg[d].size(); ++i) {
      if (keep_index[d][i] < 0) continue;
      for (const SimplexRef& face : set.faces[d][i]) {
        int mapped = keep_index[face.base_dim()][face.idx];
        SC_CHECK(mapped >= 0, "fiber face escaped the stratum");
        fiber.faces[d][keep_index[d][i]].push_back(SimplexRef{face.word, face.dim, mapped});
      }
    }
  while (fiber.nondeg.size() > 1 && fiber.nondeg.back().empty()) {
    fiber.nondeg.pop_back();
    fiber.faces.pop_back();
  }
  return fiber;
}

}  // namespace stratcat
