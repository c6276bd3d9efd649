#include "stratcat/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "stratcat/cube.hpp"

namespace stratcat {

namespace {

Rat dot(const std::vector<Rat>& row, const std::vector<Rat>& x) {
  Rat sum(0);
  for (std::size_t k = 0; k < row.size(); ++k) sum += row[k] * x[k];
  return sum;
}

int matrix_rank(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat factor = m[r][c] / m[rank][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= factor * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<int>> unit_tuples(int dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(dim, 0);
  auto extend = [&](auto&& self, int k) -> void {
    if (k == dim) {
      out.push_back(current);
      return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      current[k] = bit;
      self(self, k + 1);
    }
  };
  extend(extend, 0);
  return out;
}

std::string tuple_label(const std::vector<Rat>& t) {
  std::vector<std::string> parts;
  for (const Rat& c : t) parts.push_back(format_rat(c));
  return "(" + join(parts, ",") + ")";
}

}  // namespace

bool polytope_contains(const RationalPolytope& poly, const std::vector<Rat>& x) {
  if (static_cast<int>(x.size()) != poly.ambient_dim)
    throw usage_error("polytope membership: wrong ambient dimension");
  for (std::size_t r = 0; r < poly.normals.size(); ++r)
    if (dot(poly.normals[r], x) > poly.bounds[r]) return false;
  return true;
}

std::vector<int> tight_rows(const RationalPolytope& poly, const std::vector<Rat>& x) {
  if (static_cast<int>(x.size()) != poly.ambient_dim)
    throw usage_error("polytope tight rows: wrong ambient dimension");
  std::vector<int> rows;
  for (std::size_t r = 0; r < poly.normals.size(); ++r)
    if (dot(poly.normals[r], x) == poly.bounds[r]) rows.push_back(static_cast<int>(r));
  return rows;
}

int rank_of_rows(const RationalPolytope& poly, const std::vector<int>& rows) {
  std::vector<std::vector<Rat>> m;
  for (int r : rows) m.push_back(poly.normals.at(r));
  return matrix_rank(std::move(m));
}

std::vector<std::vector<int>> face_lattice(int vertex_count,
                                           const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> faces;
  for (std::vector<int> f : facets) {
    std::sort(f.begin(), f.end());
    faces.insert(std::move(f));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(faces.begin(), faces.end());
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        std::vector<int> meet;
        std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(),
                              current[b].end(), std::back_inserter(meet));
        if (faces.insert(std::move(meet)).second) grew = true;
      }
  }
  faces.insert(std::vector<int>{});
  std::vector<int> full(vertex_count);
  std::iota(full.begin(), full.end(), 0);
  faces.insert(std::move(full));
  std::vector<std::vector<int>> out(faces.begin(), faces.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::pair<int, int>> collapse_vertex_tags(int n, int band) {
  if (n < 1 || band < 0 || band > n - 1)
    throw usage_error("collapse polytope: need n >= 1 and 0 <= band <= n-1");
  std::vector<std::pair<int, int>> tags;
  for (int j = 0; j <= band; ++j)
    for (int k = band + 1; k <= n; ++k) tags.push_back({j, k});
  return tags;
}

RationalPolytope build_collapse_polytope(int n, int band) {
  std::vector<std::pair<int, int>> tags = collapse_vertex_tags(n, band);
  int d = n - 1;
  RationalPolytope poly;
  poly.ambient_dim = d;
  for (int k = 0; k < d; ++k) {
    std::vector<Rat> low(d, Rat(0)), high(d, Rat(0));
    low[k] = Rat(-1);
    high[k] = Rat(1);
    poly.normals.push_back(std::move(low));
    poly.bounds.push_back(Rat(0));
    poly.normals.push_back(std::move(high));
    poly.bounds.push_back(Rat(1));
  }
  if (band >= 1) {
    std::vector<Rat> row(d, Rat(0));
    for (int k = 1; k <= band; ++k) row[k - 1] = Rat(1);
    poly.normals.push_back(std::move(row));
    poly.bounds.push_back(Rat(1));
  }
  if (band <= n - 2) {
    std::vector<Rat> row(d, Rat(0));
    for (int k = band + 1; k <= n - 1; ++k) row[k - 1] = Rat(1);
    poly.normals.push_back(std::move(row));
    poly.bounds.push_back(Rat(1));
  }

  for (const auto& [j, k] : tags) {
    std::vector<Rat> v(d, Rat(0));
    if (1 <= j && j <= d) v[j - 1] = Rat(1);
    if (1 <= k && k <= d) v[k - 1] = Rat(1);
    poly.vertices.push_back(std::move(v));
  }

  // The vertex list must be exactly the 0/1 points of the polytope, each
  // tight on a full-rank set of rows.
  std::set<std::vector<Rat>> claimed(poly.vertices.begin(), poly.vertices.end());
  SC_CHECK(claimed.size() == poly.vertices.size(), "collapse polytope: duplicate vertices");
  std::set<std::vector<Rat>> lattice_points;
  for (const auto& bits : unit_tuples(d)) {
    std::vector<Rat> x(bits.begin(), bits.end());
    if (polytope_contains(poly, x)) lattice_points.insert(std::move(x));
  }
  SC_CHECK(claimed == lattice_points, "collapse polytope: vertex set mismatch");
  for (const auto& v : poly.vertices)
    SC_CHECK(rank_of_rows(poly, tight_rows(poly, v)) == d,
             "collapse polytope: vertex certificate rank");

  std::vector<std::vector<int>> facets;
  for (std::size_t r = 0; r < poly.normals.size(); ++r) {
    std::vector<int> facet;
    for (std::size_t idx = 0; idx < poly.vertices.size(); ++idx)
      if (dot(poly.normals[r], poly.vertices[idx]) == poly.bounds[r])
        facet.push_back(static_cast<int>(idx));
    facets.push_back(std::move(facet));
  }
  poly.faces = face_lattice(static_cast<int>(poly.vertices.size()), facets);
  return poly;
}

std::vector<Rat> q_vertex(int n, int band, const std::vector<int>& v, bool skip_low_zeroing) {
  if (n < 1 || band < 0 || band > n - 1)
    throw usage_error("vertex retraction: need n >= 1 and 0 <= band <= n-1");
  int d = n - 1;
  if (static_cast<int>(v.size()) != d) throw usage_error("vertex retraction: wrong tuple size");
  for (int bit : v)
    if (bit != 0 && bit != 1) throw usage_error("vertex retraction: tuple must be 0/1");
  std::vector<Rat> out(v.begin(), v.end());
  int k1 = 0;
  for (int j = 1; j <= band; ++j)
    if (v[j - 1] == 1) k1 = j;
  if (k1 > 0 && !skip_low_zeroing)
    for (int j = 1; j < k1; ++j) out[j - 1] = Rat(0);
  int k2 = 0;
  for (int j = n - 1; j >= band + 1; --j)
    if (v[j - 1] == 1) k2 = j;
  if (k2 > 0)
    for (int j = k2 + 1; j <= n - 1; ++j) out[j - 1] = Rat(0);
  return out;
}

CRepresentation c_representation(const std::vector<Rat>& t) {
  for (const Rat& c : t)
    if (c < 0 || c > 1) throw usage_error("cube representation: coordinates must lie in [0,1]");
  CRepresentation rep;
  rep.points = unit_tuples(static_cast<int>(t.size()));
  for (const auto& v : rep.points) {
    Rat coeff(1);
    for (std::size_t j = 0; j < t.size(); ++j) coeff *= v[j] ? t[j] : Rat(1) - t[j];
    rep.coeffs.push_back(std::move(coeff));
  }
  return rep;
}

std::vector<Rat> extend_over_vertices(int dim, const VertexFunction& g, const std::vector<Rat>& t) {
  if (static_cast<int>(t.size()) != dim) throw usage_error("extension: wrong tuple size");
  CRepresentation rep = c_representation(t);
  std::vector<Rat> sum;
  for (std::size_t idx = 0; idx < rep.points.size(); ++idx) {
    if (rep.coeffs[idx] == 0) continue;
    std::vector<Rat> value = g(rep.points[idx]);
    if (sum.empty()) sum.assign(value.size(), Rat(0));
    SC_CHECK(value.size() == sum.size(), "extension: value dimensions disagree");
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += rep.coeffs[idx] * value[j];
  }
  return sum;
}

std::vector<Rat> qbar(int n, int band, const std::vector<Rat>& t, bool skip_low_zeroing) {
  return extend_over_vertices(
      n - 1, [&](const std::vector<int>& v) { return q_vertex(n, band, v, skip_low_zeroing); }, t);
}

namespace {

int band_of_level(const IncreasingSequence& seq, const Rat& s) {
  const FinitePoset& poset = *seq.poset;
  for (int i = 0; i + 1 <= seq.length(); ++i)
    if (poset.f[seq.entries[i + 1]] < s && s < poset.f[seq.entries[i]]) return i;
  throw usage_error("fiber: level must lie strictly inside a band");
}

}  // namespace

std::vector<std::pair<int, int>> fiber_vertex_tags(const IncreasingSequence& seq, const Rat& s) {
  int band = band_of_level(seq, s);
  std::vector<std::pair<int, int>> tags;
  for (int j = 0; j <= band; ++j)
    for (int k = band + 1; k <= seq.length(); ++k) tags.push_back({j, k});
  return tags;
}

RationalPolytope simplex_fiber(const IncreasingSequence& seq, const Rat& s) {
  const FinitePoset& poset = *seq.poset;
  int n = seq.length();
  std::vector<std::pair<int, int>> tags = fiber_vertex_tags(seq, s);
  int ambient = n + 1;
  RationalPolytope poly;
  poly.ambient_dim = ambient;
  for (int r = 0; r < ambient; ++r) {
    std::vector<Rat> row(ambient, Rat(0));
    row[r] = Rat(-1);
    poly.normals.push_back(std::move(row));
    poly.bounds.push_back(Rat(0));
  }
  std::vector<Rat> ones(ambient, Rat(1));
  std::vector<Rat> heights;
  for (int r = 0; r < ambient; ++r) heights.push_back(poset.f[seq.entries[r]]);
  auto negated = [](std::vector<Rat> row) {
    for (Rat& c : row) c = -c;
    return row;
  };
  poly.normals.push_back(ones);
  poly.bounds.push_back(Rat(1));
  poly.normals.push_back(negated(ones));
  poly.bounds.push_back(Rat(-1));
  poly.normals.push_back(heights);
  poly.bounds.push_back(s);
  poly.normals.push_back(negated(heights));
  poly.bounds.push_back(-s);

  for (const auto& [j, k] : tags) {
    const Rat& fj = poset.f[seq.entries[j]];
    const Rat& fk = poset.f[seq.entries[k]];
    Rat lambda = (s - fk) / (fj - fk);
    std::vector<Rat> v(ambient, Rat(0));
    v[j] = lambda;
    v[k] = Rat(1) - lambda;
    SC_CHECK(polytope_contains(poly, v), "fiber: claimed vertex escapes the polytope");
    SC_CHECK(rank_of_rows(poly, tight_rows(poly, v)) == ambient, "fiber: vertex certificate rank");
    poly.vertices.push_back(std::move(v));
  }

  std::vector<std::vector<int>> facets;
  for (int r = 0; r < ambient; ++r) {
    std::vector<int> facet;
    for (std::size_t idx = 0; idx < poly.vertices.size(); ++idx)
      if (poly.vertices[idx][r] == 0) facet.push_back(static_cast<int>(idx));
    facets.push_back(std::move(facet));
  }
  poly.faces = face_lattice(static_cast<int>(poly.vertices.size()), facets);
  return poly;
}

bool comb_equiv(const RationalPolytope& a, const RationalPolytope& b,
                const std::vector<int>& vertex_bijection) {
  std::size_t count = a.vertices.size();
  if (b.vertices.size() != count || vertex_bijection.size() != count) return false;
  std::vector<char> hit(count, 0);
  for (int image : vertex_bijection) {
    if (image < 0 || image >= static_cast<int>(count) || hit[image]) return false;
    hit[image] = 1;
  }
  std::set<std::vector<int>> mapped, target(b.faces.begin(), b.faces.end());
  for (const auto& face : a.faces) {
    std::vector<int> image;
    for (int idx : face) image.push_back(vertex_bijection[idx]);
    std::sort(image.begin(), image.end());
    mapped.insert(std::move(image));
  }
  return mapped == target;
}

bool collapse_fiber_equivalent(const IncreasingSequence& seq, int band) {
  const FinitePoset& poset = *seq.poset;
  int n = seq.length();
  if (band < 0 || band >= n) throw usage_error("band out of range");
  const Rat& f_hi = poset.f[seq.entries[band]];
  const Rat& f_lo = poset.f[seq.entries[band + 1]];
  if (!(f_lo < f_hi)) throw usage_error("band is degenerate at this slot");
  Rat s = (f_hi + f_lo) / 2;

  RationalPolytope model = build_collapse_polytope(n, band);
  std::vector<std::pair<int, int>> model_tags = collapse_vertex_tags(n, band);
  RationalPolytope fiber = simplex_fiber(seq, s);
  std::vector<std::pair<int, int>> fiber_tags = fiber_vertex_tags(seq, s);

  std::map<std::pair<int, int>, int> fiber_index;
  for (std::size_t idx = 0; idx < fiber_tags.size(); ++idx)
    fiber_index[fiber_tags[idx]] = static_cast<int>(idx);
  std::vector<int> bijection;
  for (const auto& tag : model_tags) {
    auto it = fiber_index.find(tag);
    if (it == fiber_index.end()) return false;
    bijection.push_back(it->second);
  }
  return comb_equiv(model, fiber, bijection);
}

std::vector<Rat> ray_hit(const RationalPolytope& poly, const std::vector<Rat>& p,
                         const std::vector<Rat>& q) {
  if (!polytope_contains(poly, p)) throw usage_error("ray: origin must lie in the polytope");
  if (p == q) throw usage_error("ray: needs two distinct points");
  std::vector<Rat> dir(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) dir[k] = q[k] - p[k];
  bool found = false;
  Rat best(0);
  for (std::size_t r = 0; r < poly.normals.size(); ++r) {
    Rat den = dot(poly.normals[r], dir);
    if (den <= 0) continue;
    Rat lambda = (poly.bounds[r] - dot(poly.normals[r], p)) / den;
    if (!found || lambda < best) {
      best = lambda;
      found = true;
    }
  }
  if (!found) throw usage_error("ray: never leaves the polytope");
  std::vector<Rat> hit(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) hit[k] = p[k] + best * dir[k];
  return hit;
}

Int bareiss_det(std::vector<std::vector<Int>> m) {
  int size = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != size) throw usage_error("determinant: matrix not square");
  if (size == 0) return Int(1);
  Int sign(1), prev(1);
  for (int k = 0; k + 1 < size; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (m[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row == -1) return Int(0);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int r = k + 1; r < size; ++r)
      for (int c = k + 1; c < size; ++c) m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
    prev = m[k][k];
  }
  return sign * m[size - 1][size - 1];
}

JacobianAudit jacobian_class_audit(int n, int band) {
  if (n < 1 || band < 0 || band > n - 1)
    throw usage_error("linearization audit: need n >= 1 and 0 <= band <= n-1");
  int size = n - 1;
  JacobianAudit audit;
  audit.n = n;
  audit.band = band;
  audit.min_det = Int(1);
  audit.max_det = Int(1);
  audit.boundary_min_det = Int(1);

  // choices[j] holds, for column j+1, the admissible rows of a single -1
  // entry; 0 encodes the bare diagonal column.
  auto run_family = [&](const std::vector<std::vector<int>>& choices,
                        const std::function<void(const Int&)>& record) {
    std::vector<std::size_t> counter(choices.size(), 0);
    while (true) {
      std::vector<std::vector<Int>> m(size, std::vector<Int>(size, Int(0)));
      for (int j = 0; j < size; ++j) {
        m[j][j] = Int(1);
        int row = choices[j][counter[j]];
        if (row > 0) m[row - 1][j] = Int(-1);
      }
      record(bareiss_det(std::move(m)));
      int pos = 0;
      while (pos < size && ++counter[pos] == choices[pos].size()) counter[pos++] = 0;
      if (pos == size) break;
      if (size == 0) break;
    }
  };

  std::vector<std::vector<int>> strict_choices(size), boundary_choices(size);
  for (int j = 1; j <= size; ++j) {
    strict_choices[j - 1].push_back(0);
    if (j <= band)
      for (int r = 1; r < j; ++r) strict_choices[j - 1].push_back(r);
    else
      for (int r = j + 1; r <= size; ++r) strict_choices[j - 1].push_back(r);
    boundary_choices[j - 1].push_back(0);
    for (int r = 1; r <= size; ++r)
      if (r != j) boundary_choices[j - 1].push_back(r);
  }

  bool first = true;
  audit.all_unit = true;
  run_family(strict_choices, [&](const Int& det) {
    ++audit.family_count;
    if (first) {
      audit.min_det = audit.max_det = det;
      first = false;
    } else {
      audit.min_det = std::min(audit.min_det, det);
      audit.max_det = std::max(audit.max_det, det);
    }
    if (det != 1) audit.all_unit = false;
  });

  bool boundary_first = true;
  audit.boundary_all_nonneg = true;
  run_family(boundary_choices, [&](const Int& det) {
    ++audit.boundary_count;
    if (boundary_first) {
      audit.boundary_min_det = det;
      boundary_first = false;
    } else {
      audit.boundary_min_det = std::min(audit.boundary_min_det, det);
    }
    if (det < 0) audit.boundary_all_nonneg = false;
    if (det == 0) audit.boundary_zero_attained = true;
  });
  return audit;
}

namespace {

struct LemmaContext {
  const IncreasingSequence& seq;
  int n;
  int band;
  bool skip;
  Rat s;
  std::vector<std::vector<Rat>> samples;
  std::vector<std::vector<Rat>> images;
  std::vector<std::vector<Rat>> reps;
  RationalPolytope poly;
  std::string case_name;
};

CheckLine line_for(const LemmaContext& ctx, const std::string& suite, bool pass,
                   std::string witness) {
  if (pass && witness.empty())
    witness = "checked " + std::to_string(ctx.samples.size()) + " samples";
  return CheckLine{suite, ctx.case_name, pass, std::move(witness)};
}

CheckLine check_zero_coordinate(const LemmaContext& ctx) {
  for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
    const auto& t = ctx.samples[k];
    const auto& image = ctx.images[k];
    bool has_one = std::find(t.begin(), t.end(), Rat(1)) != t.end();
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] == 0 && image[j] != 0)
        return line_for(ctx, "zero_coordinate", false,
                        "t=" + tuple_label(t) + ": coordinate " + std::to_string(j + 1) +
                            " maps to " + format_rat(image[j]));
      if (!has_one && image[j] == 0 && t[j] != 0)
        return line_for(ctx, "zero_coordinate", false,
                        "t=" + tuple_label(t) + ": image zero at coordinate " +
                            std::to_string(j + 1) + " without a zero input");
    }
  }
  return line_for(ctx, "zero_coordinate", true, "");
}

CheckLine check_hyperplane_membership(const LemmaContext& ctx) {
  if (ctx.band < 1 && ctx.band > ctx.n - 2)
    return line_for(ctx, "hyperplane_membership", true, "vacuous: both blocks are empty");
  for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
    const auto& t = ctx.samples[k];
    const auto& image = ctx.images[k];
    if (ctx.band >= 1) {
      bool low_one = false;
      Rat low_sum(0);
      for (int j = 1; j <= ctx.band; ++j) {
        low_one = low_one || t[j - 1] == 1;
        low_sum += image[j - 1];
      }
      if (low_one != (low_sum == 1))
        return line_for(ctx, "hyperplane_membership", false,
                        "t=" + tuple_label(t) + ": low block sum " + format_rat(low_sum));
    }
    if (ctx.band <= ctx.n - 2) {
      bool high_one = false;
      Rat high_sum(0);
      for (int j = ctx.band + 1; j <= ctx.n - 1; ++j) {
        high_one = high_one || t[j - 1] == 1;
        high_sum += image[j - 1];
      }
      if (high_one != (high_sum == 1))
        return line_for(ctx, "hyperplane_membership", false,
                        "t=" + tuple_label(t) + ": high block sum " + format_rat(high_sum));
    }
  }
  return line_for(ctx, "hyperplane_membership", true, "");
}

CheckLine check_boundary_to_boundary(const LemmaContext& ctx) {
  for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
    const auto& t = ctx.samples[k];
    bool on_boundary = false;
    for (const Rat& c : t) on_boundary = on_boundary || c == 0 || c == 1;
    if (!on_boundary) continue;
    if (!polytope_contains(ctx.poly, ctx.images[k]) || tight_rows(ctx.poly, ctx.images[k]).empty())
      return line_for(ctx, "boundary_to_boundary", false,
                      "t=" + tuple_label(t) + ": image " + tuple_label(ctx.images[k]) +
                          " is not on the boundary");
  }
  return line_for(ctx, "boundary_to_boundary", true, "");
}

CheckLine check_prefix_zeros(const LemmaContext& ctx) {
  for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
    const auto& t = ctx.samples[k];
    const auto& image = ctx.images[k];
    int k1 = 0;
    for (int j = 1; j <= ctx.band; ++j)
      if (t[j - 1] == 1) k1 = j;
    for (int j = 1; j < k1; ++j)
      if (image[j - 1] != 0)
        return line_for(ctx, "prefix_zeros", false,
                        "t=" + tuple_label(t) + ": coordinate " + std::to_string(j) +
                            " survives below the last low break");
    int k2 = 0;
    for (int j = ctx.n - 1; j >= ctx.band + 1; --j)
      if (t[j - 1] == 1) k2 = j;
    if (k2 > 0)
      for (int j = k2 + 1; j <= ctx.n - 1; ++j)
        if (image[j - 1] != 0)
          return line_for(ctx, "prefix_zeros", false,
                          "t=" + tuple_label(t) + ": coordinate " + std::to_string(j) +
                              " survives above the first high break");
  }
  return line_for(ctx, "prefix_zeros", true, "");
}

CheckLine check_extremal_index_nonzero(const LemmaContext& ctx) {
  for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
    const auto& t = ctx.samples[k];
    const auto& image = ctx.images[k];
    int k1 = 0;
    for (int j = 1; j <= ctx.band; ++j)
      if (t[j - 1] == 1) k1 = j;
    if (k1 > 0 && image[k1 - 1] == 0)
      return line_for(ctx, "extremal_index_nonzero", false,
                      "t=" + tuple_label(t) + ": image vanishes at the last low break " +
                          std::to_string(k1));
    int k2 = 0;
    for (int j = ctx.n - 1; j >= ctx.band + 1; --j)
      if (t[j - 1] == 1) k2 = j;
    if (k2 > 0 && image[k2 - 1] == 0)
      return line_for(ctx, "extremal_index_nonzero", false,
                      "t=" + tuple_label(t) + ": image vanishes at the first high break " +
                          std::to_string(k2));
  }
  return line_for(ctx, "extremal_index_nonzero", true, "");
}

CheckLine check_collision_on_face(const LemmaContext& ctx) {
  for (std::size_t a = 0; a < ctx.samples.size(); ++a)
    for (std::size_t b = a + 1; b < ctx.samples.size(); ++b) {
      if (ctx.images[a] != ctx.images[b]) continue;
      bool shared = false;
      for (std::size_t j = 0; j < ctx.samples[a].size(); ++j) {
        const Rat& u = ctx.samples[a][j];
        if (u == ctx.samples[b][j] && (u == 0 || u == 1)) shared = true;
      }
      if (!shared)
        return line_for(ctx, "collision_on_face", false,
                        "t=" + tuple_label(ctx.samples[a]) + " and t'=" +
                            tuple_label(ctx.samples[b]) + " collide without a shared 0/1 face");
    }
  return line_for(ctx, "collision_on_face", true, "");
}

CheckLine check_relation_compatibility(const LemmaContext& ctx) {
  for (std::size_t a = 0; a < ctx.samples.size(); ++a)
    for (std::size_t b = a + 1; b < ctx.samples.size(); ++b) {
      if (ctx.reps[a] != ctx.reps[b]) continue;
      if (ctx.images[a] != ctx.images[b])
        return line_for(ctx, "relation_compatibility", false,
                        "related points " + tuple_label(ctx.samples[a]) + " and " +
                            tuple_label(ctx.samples[b]) + " have distinct images");
    }
  return line_for(ctx, "relation_compatibility", true, "");
}

CheckLine check_quotient_injectivity(const LemmaContext& ctx) {
  for (std::size_t a = 0; a < ctx.samples.size(); ++a)
    for (std::size_t b = a + 1; b < ctx.samples.size(); ++b) {
      if (ctx.images[a] != ctx.images[b]) continue;
      if (ctx.reps[a] != ctx.reps[b])
        return line_for(ctx, "quotient_injectivity", false,
                        "unrelated points " + tuple_label(ctx.samples[a]) + " and " +
                            tuple_label(ctx.samples[b]) + " share the image " +
                            tuple_label(ctx.images[a]));
    }
  return line_for(ctx, "quotient_injectivity", true, "");
}

CheckLine check_collapsed_face(const LemmaContext& ctx) {
  const auto& entries = ctx.seq.entries;
  int n = ctx.n;
  int high_top = ctx.band + 1;
  while (high_top + 1 <= n && entries[high_top + 1] == entries[ctx.band + 1]) ++high_top;
  int low_bottom = ctx.band;
  while (low_bottom - 1 >= 0 && entries[low_bottom - 1] == entries[ctx.band]) --low_bottom;

  std::vector<std::string> notes;
  if (high_top == n) {
    notes.push_back("high side vacuous: plateau reaches the end sentinel");
  } else {
    for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
      const auto& t = ctx.samples[k];
      bool hypothesis = false;
      for (int j = ctx.band + 1; j <= high_top; ++j) hypothesis = hypothesis || t[j - 1] == 1;
      if (!hypothesis) continue;
      Rat high_sum(0);
      for (int j = ctx.band + 1; j <= n - 1; ++j) high_sum += ctx.images[k][j - 1];
      bool tail_zero = true;
      for (int j = high_top + 1; j <= n - 1; ++j) tail_zero = tail_zero && ctx.images[k][j - 1] == 0;
      if (high_sum != 1 || !tail_zero)
        return line_for(ctx, "collapsed_face", false,
                        "t=" + tuple_label(t) + ": image misses the collapsed high face");
    }
    // Every vertex of the collapsed face has a 0/1 preimage satisfying the
    // hypothesis.
    for (int j = 0; j <= ctx.band; ++j)
      for (int k = ctx.band + 1; k <= high_top; ++k) {
        std::vector<int> u(n - 1, 0);
        if (j >= 1) u[j - 1] = 1;
        u[k - 1] = 1;
        std::vector<Rat> expected(u.begin(), u.end());
        if (q_vertex(n, ctx.band, u, ctx.skip) != expected)
          return line_for(ctx, "collapsed_face", false,
                          "collapsed high face vertex (" + std::to_string(j) + "," +
                              std::to_string(k) + ") has no fixed 0/1 preimage");
      }
    notes.push_back("high face covered up to slot " + std::to_string(high_top));
  }

  if (low_bottom == 0) {
    notes.push_back("low side vacuous: plateau reaches the start sentinel");
  } else {
    for (std::size_t k = 0; k < ctx.samples.size(); ++k) {
      const auto& t = ctx.samples[k];
      bool hypothesis = false;
      for (int j = low_bottom; j <= ctx.band; ++j) hypothesis = hypothesis || t[j - 1] == 1;
      if (!hypothesis) continue;
      Rat low_sum(0);
      for (int j = 1; j <= ctx.band; ++j) low_sum += ctx.images[k][j - 1];
      bool head_zero = true;
      for (int j = 1; j < low_bottom; ++j) head_zero = head_zero && ctx.images[k][j - 1] == 0;
      if (low_sum != 1 || !head_zero)
        return line_for(ctx, "collapsed_face", false,
                        "t=" + tuple_label(t) + ": image misses the collapsed low face");
    }
    for (int j = low_bottom; j <= ctx.band; ++j)
      for (int k = ctx.band + 1; k <= n; ++k) {
        std::vector<int> u(n - 1, 0);
        u[j - 1] = 1;
        if (k <= n - 1) u[k - 1] = 1;
        std::vector<Rat> expected(u.begin(), u.end());
        if (q_vertex(n, ctx.band, u, ctx.skip) != expected)
          return line_for(ctx, "collapsed_face", false,
                          "collapsed low face vertex (" + std::to_string(j) + "," +
                              std::to_string(k) + ") has no fixed 0/1 preimage");
      }
    notes.push_back("low face covered down to slot " + std::to_string(low_bottom));
  }
  return line_for(ctx, "collapsed_face", true, join(notes, "; "));
}

}  // namespace

std::vector<CheckLine> verify_qbar_lemmas(const IncreasingSequence& seq, int band,
                                          const std::vector<Rat>& grid, bool skip_low_zeroing) {
  const FinitePoset& poset = *seq.poset;
  int n = seq.length();
  if (band < 0 || band >= n) throw usage_error("band out of range");
  const Rat& f_hi = poset.f[seq.entries[band]];
  const Rat& f_lo = poset.f[seq.entries[band + 1]];
  if (!(f_lo < f_hi)) throw usage_error("band is degenerate at this slot");

  LemmaContext ctx{seq,
                   n,
                   band,
                   skip_low_zeroing,
                   (f_hi + f_lo) / 2,
                   {},
                   {},
                   {},
                   build_collapse_polytope(n, band),
                   seq.label() + " band " + std::to_string(band)};

  ctx.samples = interior_grid_points(n, grid);
  std::set<std::vector<Rat>> seen(ctx.samples.begin(), ctx.samples.end());
  for (const auto& bits : unit_tuples(n - 1)) {
    std::vector<Rat> t(bits.begin(), bits.end());
    if (seen.insert(t).second) ctx.samples.push_back(std::move(t));
  }
  for (const auto& t : ctx.samples) {
    ctx.images.push_back(qbar(n, band, t, skip_low_zeroing));
    ctx.reps.push_back(canonical_form(make_leveled_point(seq, t, ctx.s)).coords);
  }

  return {check_zero_coordinate(ctx),      check_hyperplane_membership(ctx),
          check_boundary_to_boundary(ctx), check_prefix_zeros(ctx),
          check_extremal_index_nonzero(ctx), check_collision_on_face(ctx),
          check_relation_compatibility(ctx), check_quotient_injectivity(ctx),
          check_collapsed_face(ctx)};
}

}  // namespace stratcat
