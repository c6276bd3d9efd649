#pragma once

#include "stratcat/sequences.hpp"

namespace stratcat {

// A point of the (i,j) morphism cube at width n: interior coordinates
// t_{i+1}, ..., t_{j-1} in [0,1]. The endpoint slots i and j are implicit
// breaks (coordinate 1). A coordinate equal to 1 marks a break at its slot.
struct CubePoint {
  int n = 0;
  int i = 0;
  int j = 0;
  std::vector<Rat> coords;

  bool operator==(const CubePoint& other) const = default;
  std::string label() const;
};

CubePoint make_cube_point(int n, int i, int j, std::vector<Rat> coords);
CubePoint full_cube_point(int n, std::vector<Rat> coords);

enum class CubeMapKind { face, compose, degeneracy };

// Coface r in [0,n]: carries the (i,j) cube at width n-1 into width n.
// Slots strictly between the shifted endpoints gain a 0 at slot r; an
// endpoint-side coface only shifts the endpoints.
CubePoint cube_face(int n, int r, const CubePoint& p);

// Codegeneracy r in [0,n]: carries the (i,j) cube at width n+1 onto width n
// by merging slots r and r+1 (max of the two coordinates; a coordinate
// merged into an endpoint sentinel is dropped).
CubePoint cube_degeneracy(int n, int r, const CubePoint& p);

// Composition with a break: p in (i,k) and q in (k,j) glue to (i,j) with
// coordinate 1 at slot k.
CubePoint cube_compose(const CubePoint& p, const CubePoint& q);

// Uniform entry point for the face/degeneracy generators ('compose' goes
// through cube_compose since it is binary).
CubePoint structural_cube_map(CubeMapKind kind, int n, int index, const CubePoint& p);

// Independent closed form: the image of p under the cube functor applied to a
// monotone map phi : [p.n] -> [m]. Each target slot receives the maximum of
// its fiber's coordinates (0 when the fiber is empty).
CubePoint apply_monotone_fibers(const CubePoint& p, const std::vector<int>& phi, int m);

// Splits p at its breaks into break-free pieces; recompose glues them back.
std::vector<std::pair<std::pair<int, int>, CubePoint>> unbroken_decomposition(const CubePoint& p);
CubePoint recompose(const std::vector<std::pair<std::pair<int, int>, CubePoint>>& pieces);

// A point of the leveled cylinder over a sequence: interior coordinates
// t_1..t_{n-1} plus a level s in [f(a_n), f(a_0)].
struct LeveledPoint {
  IncreasingSequence seq;
  std::vector<Rat> coords;
  Rat s;

  bool operator==(const LeveledPoint& other) const = default;
  std::string label() const;
};

LeveledPoint make_leveled_point(const IncreasingSequence& seq, std::vector<Rat> coords, Rat s);
bool level_in_range(const IncreasingSequence& seq, const Rat& s);

// Condensed subsequence at the break slots (sentinels included).
StrictSequence breaking_sequence(const IncreasingSequence& seq, const std::vector<Rat>& coords);

// The stratum of a leveled point: walk the breaks and locate the level.
int stratum_of(const LeveledPoint& x);

// Class representative of x under the level relation: zero everything outside
// the window spanned by the nearest breaks around the level; a break inside a
// critical plateau collapses the class to the single break at the plateau start.
LeveledPoint canonical_form(const LeveledPoint& x);
bool same_class(const LeveledPoint& x, const LeveledPoint& y);

// The cylinder functor on a sequence morphism: structural-map composites for
// the epi-mono factorization of phi, break-extension at the image endpoints,
// then canonical form.
LeveledPoint ca_structural_map(const SequenceMorphism& phi, const LeveledPoint& x);

// All interior-coordinate tuples (size max(n-1, 0)) with entries from grid.
std::vector<std::vector<Rat>> interior_grid_points(int n, const std::vector<Rat>& grid);

// Critical values of the sequence plus the midpoints of its bands, descending.
std::vector<Rat> level_samples(const IncreasingSequence& seq);

// Partition of interior_grid_points(n, grid) at level s as class ids:
// closure_classes by breadth-first closure of the generating relation,
// canonical_classes by grouping canonical forms. Ids are normalized to the
// smallest member index of each class.
std::vector<int> closure_classes(const IncreasingSequence& seq, const std::vector<Rat>& grid,
                                 const Rat& s);
std::vector<int> canonical_classes(const IncreasingSequence& seq, const std::vector<Rat>& grid,
                                   const Rat& s);

}  // namespace stratcat
