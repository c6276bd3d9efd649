#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stratcat/common.hpp"
#include "stratcat/sequences.hpp"

namespace stratcat {

// A bounded rational polyhedron kept with an explicit vertex list and its
// combinatorial face lattice (faces as sorted vertex-index sets, including
// the empty face and the whole polytope).
struct RationalPolytope {
  int ambient_dim = 0;
  std::vector<std::vector<Rat>> normals;  // row r: <normals[r], x> <= bounds[r]
  std::vector<Rat> bounds;
  std::vector<std::vector<Rat>> vertices;
  std::vector<std::vector<int>> faces;
};

bool polytope_contains(const RationalPolytope& poly, const std::vector<Rat>& x);
std::vector<int> tight_rows(const RationalPolytope& poly, const std::vector<Rat>& x);
int rank_of_rows(const RationalPolytope& poly, const std::vector<int>& rows);

// Face lattice as the intersection closure of the given facet vertex-sets,
// plus the empty face and the full vertex set.
std::vector<std::vector<int>> face_lattice(int vertex_count,
                                           const std::vector<std::vector<int>>& facets);

// The level polytope of a width-n cylinder in a band below slot `band`:
// coordinates x_1..x_{n-1} in [0,1] with the low block x_1..x_band and the
// high block x_{band+1}..x_{n-1} each summing to at most 1.  Vertices are
// tagged by pairs (j,k) with 0 <= j <= band < k <= n; slots 0 and n act as
// sentinels carrying no coordinate.
RationalPolytope build_collapse_polytope(int n, int band);
std::vector<std::pair<int, int>> collapse_vertex_tags(int n, int band);

// The retraction of the coordinate cube onto the level polytope, evaluated
// at a 0/1 point: keep only the highest 1 of the low block and the lowest 1
// of the high block, zeroing the rest of each block.  skip_low_zeroing
// disables the low-block cleanup (a deliberately broken variant for tests).
std::vector<Rat> q_vertex(int n, int band, const std::vector<int>& v,
                          bool skip_low_zeroing = false);

// Multilinear (Bernstein) representation of a point of the cube as a convex
// combination of all 0/1 points: coefficient of v is the product of t_j over
// v_j = 1 and (1 - t_j) over v_j = 0.
struct CRepresentation {
  std::vector<std::vector<int>> points;
  std::vector<Rat> coeffs;
};
CRepresentation c_representation(const std::vector<Rat>& t);

// Multilinear extension of a function defined on the 0/1 points of the
// dim-cube, using the representation above.
using VertexFunction = std::function<std::vector<Rat>(const std::vector<int>&)>;
std::vector<Rat> extend_over_vertices(int dim, const VertexFunction& g,
                                      const std::vector<Rat>& t);

// The multilinear extension of q_vertex: the piecewise-linear retraction of
// the cube onto the level polytope.
std::vector<Rat> qbar(int n, int band, const std::vector<Rat>& t,
                      bool skip_low_zeroing = false);

// The fiber of the height function over a level s strictly inside a band of
// the sequence, cut out of the geometric simplex on the sequence's slots.
// Vertices are tagged by pairs (j,k) with f(a_j) > s > f(a_k); the face
// lattice is generated by the coordinate facets t_r >= 0.
RationalPolytope simplex_fiber(const IncreasingSequence& seq, const Rat& s);
std::vector<std::pair<int, int>> fiber_vertex_tags(const IncreasingSequence& seq, const Rat& s);

// Combinatorial equivalence: the vertex bijection carries the face family of
// one polytope exactly onto the face family of the other.
bool comb_equiv(const RationalPolytope& a, const RationalPolytope& b,
                const std::vector<int>& vertex_bijection);

// Convenience: compare the level polytope with the simplex fiber at the
// midpoint of the given band under the tag-matching vertex bijection.
bool collapse_fiber_equivalent(const IncreasingSequence& seq, int band);

// First boundary point of `poly` hit by the ray from p (inside) through q.
std::vector<Rat> ray_hit(const RationalPolytope& poly, const std::vector<Rat>& p,
                         const std::vector<Rat>& q);

// Determinant audit of the retraction's linearization classes.  The strict
// family has, per column j, either the bare unit diagonal or a single -1
// above the diagonal (low block) or below it (high block); every member must
// have determinant exactly 1.  The dominance-boundary family relaxes the -1
// to any off-diagonal row, staying weakly diagonally dominant by columns;
// determinants stay nonnegative and 0 is attained once the size exceeds 1.
struct JacobianAudit {
  int n = 0;
  int band = 0;
  long long family_count = 0;
  bool all_unit = false;
  Int min_det;
  Int max_det;
  long long boundary_count = 0;
  bool boundary_all_nonneg = false;
  bool boundary_zero_attained = false;
  Int boundary_min_det;
};
JacobianAudit jacobian_class_audit(int n, int band);

Int bareiss_det(std::vector<std::vector<Int>> m);

// One verification line, CLI-shaped.
struct CheckLine {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string witness;
};

// The lemma battery for the retraction over one band of a sequence: nine
// named predicate suites checked over all grid tuples plus all 0/1 points.
// Relation-aware suites sample the quotient at the band midpoint.
std::vector<CheckLine> verify_qbar_lemmas(const IncreasingSequence& seq, int band,
                                          const std::vector<Rat>& grid,
                                          bool skip_low_zeroing = false);

}  // namespace stratcat
