#include <algorithm>

#include "doctest.h"
#include "stratcat/simplicial.hpp"

using namespace stratcat;

namespace {

FinitePoset fork_poset() {
  nlohmann::json data = nlohmann::json::parse(R"json({
    "elements": ["x", "y", "z"],
    "leq": [["x", "y"], ["x", "z"]],
    "f": {"x": "1", "y": "0", "z": "0"}
  })json");
  return load_valid_poset(data);
}

FinitePoset discrete_poset() {
  nlohmann::json data = {{"elements", {"p", "q"}},
                         {"leq", nlohmann::json::array()},
                         {"f", {{"p", "0"}, {"q", "0"}}}};
  return load_valid_poset(data);
}

StratifiedCategoryData thin_chain_category() {
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
    "compose": {"(t_bc,t_ab)": "t_ac"}
  })json");
  return load_valid_category(data);
}

std::string vertex_name(const FiniteSimplicialSet& set, const SimplexRef& ref, int k) {
  return set.nondeg[0][vertex_of(set, ref, k).idx];
}

}  // namespace

TEST_CASE("standard shapes") {
  FiniteSimplicialSet full = make_simplex(2);
  CHECK(full.top_dim() == 2);
  CHECK(full.nondeg[0].size() == 3);
  CHECK(full.nondeg[1].size() == 3);
  CHECK(full.nondeg[2].size() == 1);
  CHECK(simplex_label(full, nondeg_ref(2, 0)) == "[0,1,2]");

  FiniteSimplicialSet boundary = make_boundary(2);
  CHECK(boundary.top_dim() == 1);
  CHECK(boundary.nondeg[0].size() == 3);
  CHECK(boundary.nondeg[1].size() == 3);

  FiniteSimplicialSet spine = make_spine(3);
  CHECK(spine.top_dim() == 1);
  CHECK(spine.nondeg[0].size() == 4);
  CHECK(spine.nondeg[1].size() == 3);

  FiniteSimplicialSet horn = make_horn(2, 1);
  CHECK(horn.top_dim() == 1);
  CHECK(horn.nondeg[1].size() == 2);

  CHECK(make_shape("simplex", 2).nondeg == full.nondeg);
  CHECK(make_shape("horn", 2, 1).nondeg == horn.nondeg);
  CHECK_THROWS_AS(make_boundary(0), usage_error);
  CHECK_THROWS_AS(make_horn(2, 5), usage_error);
  CHECK_THROWS_AS(make_horn(2, -1), usage_error);
  CHECK_THROWS_AS(make_shape("weird", 2), usage_error);
}

TEST_CASE("simplicial identities hold in a nerve") {
  FiniteSimplicialSet nerve = poset_nerve(chain_poset(3));
  for (int dim = 0; dim <= 3; ++dim)
    for (const SimplexRef& x : all_simplices(nerve, dim)) {
      for (int j = 0; j <= dim; ++j) {
        for (int i = 0; i < j; ++i) {
          if (dim >= 2)
            CHECK(face_of(nerve, face_of(nerve, x, j), i) ==
                  face_of(nerve, face_of(nerve, x, i), j - 1));
          CHECK(degeneracy_of(nerve, degeneracy_of(nerve, x, j), i) ==
                degeneracy_of(nerve, degeneracy_of(nerve, x, i), j + 1));
        }
        CHECK(degeneracy_of(nerve, degeneracy_of(nerve, x, j), j) ==
              degeneracy_of(nerve, degeneracy_of(nerve, x, j), j + 1));
        // face through degeneracy
        SimplexRef up = degeneracy_of(nerve, x, j);
        CHECK(face_of(nerve, up, j) == x);
        CHECK(face_of(nerve, up, j + 1) == x);
        for (int i = 0; i <= dim + 1; ++i) {
          if (i < j) CHECK(face_of(nerve, up, i) == degeneracy_of(nerve, face_of(nerve, x, i), j - 1));
          if (i > j + 1 && dim >= 1)
            CHECK(face_of(nerve, up, i) == degeneracy_of(nerve, face_of(nerve, x, i - 1), j));
        }
      }
    }
}

TEST_CASE("nerve of a chain poset") {
  FiniteSimplicialSet nerve = poset_nerve(chain_poset(3));
  REQUIRE(nerve.top_dim() == 2);
  CHECK(nerve.nondeg[0] == std::vector<std::string>{"c0", "c1", "c2"});
  CHECK(nerve.nondeg[1] ==
        std::vector<std::string>{"[c0,c1]", "[c0,c2]", "[c1,c2]"});
  CHECK(nerve.nondeg[2] == std::vector<std::string>{"[c0,c1,c2]"});
  // faces of the top simplex drop one chain entry each
  SimplexRef top = nondeg_ref(2, 0);
  CHECK(face_of(nerve, top, 0) == nondeg_ref(1, 2));
  CHECK(face_of(nerve, top, 1) == nondeg_ref(1, 1));
  CHECK(face_of(nerve, top, 2) == nondeg_ref(1, 0));
}

TEST_CASE("horn fillers in nerves") {
  FiniteSimplicialSet nerve = poset_nerve(chain_poset(3));
  HornAssignment inner;
  inner.n = 2;
  inner.k = 1;
  inner.facets = {{0, nondeg_ref(1, 2)}, {2, nondeg_ref(1, 0)}};
  std::vector<SimplexRef> fillers = horn_fillers(nerve, inner);
  REQUIRE(fillers.size() == 1);
  CHECK(fillers[0] == nondeg_ref(2, 0));

  // the fork has no composite for its outer horn
  FinitePoset fork = fork_poset();
  FiniteSimplicialSet fork_nerve = poset_nerve(fork);
  REQUIRE(fork_nerve.nondeg[1] == std::vector<std::string>{"[x,y]", "[x,z]"});
  HornAssignment outer;
  outer.n = 2;
  outer.k = 0;
  outer.facets = {{1, nondeg_ref(1, 1)}, {2, nondeg_ref(1, 0)}};
  CHECK(horn_fillers(fork_nerve, outer).empty());

  // a vertex horn is filled by the degenerate edge
  FiniteSimplicialSet point = make_simplex(0);
  HornAssignment tip;
  tip.n = 1;
  tip.k = 0;
  tip.facets = {{1, nondeg_ref(0, 0)}};
  std::vector<SimplexRef> loops = horn_fillers(point, tip);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].is_degenerate());
}

TEST_CASE("horn assignments are validated") {
  FiniteSimplicialSet nerve = poset_nerve(chain_poset(3));
  HornAssignment clash;
  clash.n = 2;
  clash.k = 1;
  clash.facets = {{0, nondeg_ref(1, 2)}, {2, nondeg_ref(1, 1)}};
  CHECK_THROWS_AS(horn_fillers(nerve, clash), usage_error);

  HornAssignment sparse;
  sparse.n = 2;
  sparse.k = 1;
  sparse.facets = {{0, nondeg_ref(1, 2)}};
  CHECK_THROWS_AS(horn_fillers(nerve, sparse), usage_error);

  HornAssignment overfull;
  overfull.n = 2;
  overfull.k = 1;
  overfull.facets = {{0, nondeg_ref(1, 2)}, {1, nondeg_ref(1, 1)}, {2, nondeg_ref(1, 0)}};
  CHECK_THROWS_AS(horn_fillers(nerve, overfull), usage_error);
}

TEST_CASE("horn sweep certificates") {
  NerveCertificate chain_cert = infinity_check(poset_nerve(chain_poset(3)), 3);
  CHECK(chain_cert.inner_fillers_exist);
  CHECK(chain_cert.inner_fillers_unique);
  CHECK_FALSE(chain_cert.is_kan);
  CHECK_FALSE(chain_cert.kan_witness.empty());

  NerveCertificate fork_cert = infinity_check(poset_nerve(fork_poset()), 2);
  CHECK(fork_cert.inner_fillers_exist);
  CHECK(fork_cert.inner_fillers_unique);
  CHECK_FALSE(fork_cert.is_kan);

  NerveCertificate discrete_cert = infinity_check(poset_nerve(discrete_poset()), 3);
  CHECK(discrete_cert.inner_fillers_exist);
  CHECK(discrete_cert.inner_fillers_unique);
  CHECK(discrete_cert.is_kan);

  NerveCertificate category_cert = infinity_check(category_nerve(builtin_example("other_sphere")), 3);
  CHECK(category_cert.inner_fillers_exist);
  CHECK(category_cert.inner_fillers_unique);
  CHECK_FALSE(category_cert.is_kan);
}

TEST_CASE("spine restriction is a bijection exactly for nerves") {
  for (int dim = 2; dim <= 4; ++dim) {
    SpineCheck check = spine_extension_check(poset_nerve(chain_poset(4)), dim);
    CHECK(check.injective);
    CHECK(check.surjective);
  }
  for (int dim = 2; dim <= 3; ++dim) {
    SpineCheck check = spine_extension_check(category_nerve(builtin_example("other_sphere")), dim);
    CHECK(check.injective);
    CHECK(check.surjective);
  }
  // the hollow triangle has no filler for its one interesting edge pair
  SpineCheck hollow = spine_extension_check(make_boundary(2), 2);
  CHECK(hollow.injective);
  CHECK_FALSE(hollow.surjective);
}

TEST_CASE("nerve of a thin category matches the poset nerve") {
  FiniteSimplicialSet from_poset = poset_nerve(chain_poset(3));
  StratifiedCategoryData thin = thin_chain_category();
  FiniteSimplicialSet from_category = category_nerve(thin);

  REQUIRE(from_category.top_dim() == from_poset.top_dim());
  for (int d = 0; d <= from_poset.top_dim(); ++d)
    CHECK(from_category.nondeg[d].size() == from_poset.nondeg[d].size());

  // the unique 2-simplex has the same vertex table in both nerves, with the
  // middle face given by the composite
  auto endpoints = [](const FiniteSimplicialSet& set) {
    std::vector<std::pair<int, int>> table;
    SimplexRef top = nondeg_ref(2, 0);
    for (int i = 0; i <= 2; ++i) {
      SimplexRef edge = face_of(set, top, i);
      table.emplace_back(vertex_of(set, edge, 0).idx, vertex_of(set, edge, 1).idx);
    }
    return table;
  };
  auto chain_names = [](const FiniteSimplicialSet& set) {
    std::vector<std::string> out;
    for (int k = 0; k < 3; ++k) out.push_back(vertex_name(set, nondeg_ref(2, 0), k));
    return out;
  };
  CHECK(endpoints(from_category) == endpoints(from_poset));
  CHECK(chain_names(from_category) == std::vector<std::string>{"a", "b", "c"});
  CHECK(chain_names(from_poset) == std::vector<std::string>{"c0", "c1", "c2"});
}

TEST_CASE("category nerve requires a valid category") {
  nlohmann::json data = nlohmann::json::parse(R"json({
    "poset": {
      "elements": ["a", "b", "c"],
      "leq": [["a", "b"], ["b", "c"]],
      "f": {"a": "2", "b": "1", "c": "0"}
    },
    "homs": {
      "a->b": [{"id": "t_ab", "label": ["a", "b"]}],
      "b->c": [{"id": "t_bc", "label": ["b", "c"]}]
    },
    "compose": {}
  })json");
  CHECK_THROWS_AS(category_nerve(load_category(data)), usage_error);
}

TEST_CASE("restriction along monotone vertex maps") {
  FiniteSimplicialSet full = make_simplex(2);
  SimplexRef top = nondeg_ref(2, 0);
  CHECK(restrict_along(full, top, {0, 1}) == face_of(full, top, 2));
  CHECK(restrict_along(full, top, {1, 2}) == face_of(full, top, 0));
  CHECK(restrict_along(full, top, {0, 0, 2}) ==
        degeneracy_of(full, restrict_along(full, top, {0, 2}), 0));
  for (int k = 0; k <= 2; ++k)
    CHECK(restrict_along(full, top, {k}) == vertex_of(full, top, k));
  CHECK_THROWS_AS(restrict_along(full, top, {1, 0}), usage_error);
  CHECK_THROWS_AS(restrict_along(full, top, {0, 5}), usage_error);
}

TEST_CASE("stratum fibers keep the simplices inside one stratum") {
  FinitePoset chain = chain_poset(2);
  FiniteSimplicialSet full = make_simplex(2);
  FiniteSimplicialSet lower = stratum_fiber(full, chain, {0, 0, 1}, 0);
  REQUIRE(lower.top_dim() == 1);
  CHECK(lower.nondeg[0].size() == 2);
  CHECK(lower.nondeg[1].size() == 1);

  FiniteSimplicialSet upper = stratum_fiber(full, chain, {0, 0, 1}, 1);
  CHECK(upper.top_dim() == 0);
  CHECK(upper.nondeg[0].size() == 1);

  FiniteSimplicialSet edge = make_simplex(1);
  CHECK_THROWS_AS(stratum_fiber(edge, chain, {1, 0}, 0), usage_error);
  CHECK_THROWS_AS(stratum_fiber(full, chain, {0, 0}, 0), usage_error);
  CHECK_THROWS_AS(stratum_fiber(full, chain, {0, 0, 1}, 7), usage_error);
}
