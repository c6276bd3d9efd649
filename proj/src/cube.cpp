#include "stratcat/cube.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stratcat {

namespace {

std::string coords_label(const std::vector<Rat>& coords) {
  std::vector<std::string> parts;
  for (const Rat& c : coords) parts.push_back(format_rat(c));
  return "(" + join(parts, ",") + ")";
}

void check_unit(const std::vector<Rat>& coords, const char* where) {
  for (const Rat& c : coords)
    if (c < 0 || c > 1) throw usage_error(std::string(where) + ": coordinates must lie in [0,1]");
}

// Sentinel-extended coordinates T_0..T_n with T at the cube endpoints = 1.
std::vector<Rat> with_sentinels(const IncreasingSequence& seq, const std::vector<Rat>& coords) {
  int n = seq.length();
  std::vector<Rat> t(n + 1, Rat(1));
  for (int k = 1; k < n; ++k) t[k] = coords[k - 1];
  return t;
}

}  // namespace

std::string CubePoint::label() const {
  return "w" + std::to_string(n) + "(" + std::to_string(i) + "," + std::to_string(j) + ")" +
         coords_label(coords);
}

std::string LeveledPoint::label() const {
  return seq.label() + coords_label(coords) + "@" + format_rat(s);
}

CubePoint make_cube_point(int n, int i, int j, std::vector<Rat> coords) {
  if (!(0 <= i && i <= j && j <= n)) throw usage_error("cube point: need 0 <= i <= j <= n");
  int interior = std::max(j - i - 1, 0);
  if (static_cast<int>(coords.size()) != interior)
    throw usage_error("cube point: expected " + std::to_string(interior) + " coordinates");
  check_unit(coords, "cube point");
  CubePoint p;
  p.n = n;
  p.i = i;
  p.j = j;
  p.coords = std::move(coords);
  return p;
}

CubePoint full_cube_point(int n, std::vector<Rat> coords) {
  return make_cube_point(n, 0, n, std::move(coords));
}

CubePoint cube_face(int n, int r, const CubePoint& p) {
  if (p.n != n - 1) throw usage_error("cube face: point has wrong width");
  if (r < 0 || r > n) throw usage_error("cube face: index out of range");
  CubePoint out = p;
  out.n = n;
  if (r <= p.i) {
    out.i = p.i + 1;
    out.j = p.j + 1;
  } else if (r > p.j) {
    // endpoints and coordinates unchanged
  } else {
    out.j = p.j + 1;
    out.coords.insert(out.coords.begin() + (r - p.i - 1), Rat(0));
  }
  return out;
}

CubePoint cube_degeneracy(int n, int r, const CubePoint& p) {
  if (p.n != n + 1) throw usage_error("cube degeneracy: point has wrong width");
  if (r < 0 || r > n) throw usage_error("cube degeneracy: index out of range");
  CubePoint out = p;
  out.n = n;
  if (r < p.i) {
    out.i = p.i - 1;
    out.j = p.j - 1;
  } else if (r >= p.j) {
    // endpoints and coordinates unchanged
  } else {
    out.j = p.j - 1;
    if (out.coords.empty()) return out;  // slots i and i+1 merge with no interior
    if (r == p.i) {
      out.coords.erase(out.coords.begin());
    } else if (r == p.j - 1) {
      out.coords.pop_back();
    } else {
      int idx = r - p.i - 1;
      out.coords[idx] = std::max(out.coords[idx], out.coords[idx + 1]);
      out.coords.erase(out.coords.begin() + idx + 1);
    }
  }
  return out;
}

CubePoint cube_compose(const CubePoint& p, const CubePoint& q) {
  if (p.n != q.n) throw usage_error("cube compose: widths differ");
  if (p.j != q.i) throw usage_error("cube compose: endpoints do not meet");
  if (p.i == p.j) return q;
  if (q.i == q.j) return p;
  CubePoint out;
  out.n = p.n;
  out.i = p.i;
  out.j = q.j;
  out.coords = p.coords;
  out.coords.push_back(Rat(1));
  out.coords.insert(out.coords.end(), q.coords.begin(), q.coords.end());
  return out;
}

CubePoint structural_cube_map(CubeMapKind kind, int n, int index, const CubePoint& p) {
  switch (kind) {
    case CubeMapKind::face:
      return cube_face(n, index, p);
    case CubeMapKind::degeneracy:
      return cube_degeneracy(n, index, p);
    case CubeMapKind::compose:
      throw usage_error("structural cube map: composition is binary, use cube_compose");
  }
  throw usage_error("structural cube map: unknown kind");
}

CubePoint apply_monotone_fibers(const CubePoint& p, const std::vector<int>& phi, int m) {
  if (static_cast<int>(phi.size()) != p.n + 1)
    throw usage_error("monotone image: map must be defined on all slots");
  for (std::size_t k = 0; k + 1 < phi.size(); ++k)
    if (phi[k] > phi[k + 1]) throw usage_error("monotone image: map must be monotone");
  if (phi.front() < 0 || phi.back() > m) throw usage_error("monotone image: values out of range");
  CubePoint out;
  out.n = m;
  out.i = phi[p.i];
  out.j = phi[p.j];
  for (int slot = out.i + 1; slot < out.j; ++slot) {
    Rat value(0);
    for (int k = p.i + 1; k < p.j; ++k)
      if (phi[k] == slot) value = std::max(value, p.coords[k - p.i - 1]);
    out.coords.push_back(value);
  }
  return out;
}

std::vector<std::pair<std::pair<int, int>, CubePoint>> unbroken_decomposition(const CubePoint& p) {
  std::vector<int> breaks{p.i};
  for (int k = p.i + 1; k < p.j; ++k)
    if (p.coords[k - p.i - 1] == 1) breaks.push_back(k);
  if (p.j != p.i) breaks.push_back(p.j);
  std::vector<std::pair<std::pair<int, int>, CubePoint>> pieces;
  if (p.i == p.j) {
    pieces.push_back({{p.i, p.j}, p});
    return pieces;
  }
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    int lo = breaks[b], hi = breaks[b + 1];
    std::vector<Rat> coords(p.coords.begin() + (lo - p.i - 1) + 1,
                            p.coords.begin() + (hi - p.i - 1));
    pieces.push_back({{lo, hi}, make_cube_point(p.n, lo, hi, std::move(coords))});
  }
  return pieces;
}

CubePoint recompose(const std::vector<std::pair<std::pair<int, int>, CubePoint>>& pieces) {
  if (pieces.empty()) throw usage_error("recompose: no pieces");
  CubePoint out = pieces.front().second;
  for (std::size_t b = 1; b < pieces.size(); ++b) out = cube_compose(out, pieces[b].second);
  return out;
}

LeveledPoint make_leveled_point(const IncreasingSequence& seq, std::vector<Rat> coords, Rat s) {
  int n = seq.length();
  if (static_cast<int>(coords.size()) != std::max(n - 1, 0))
    throw usage_error("leveled point: expected " + std::to_string(std::max(n - 1, 0)) +
                      " coordinates");
  check_unit(coords, "leveled point");
  LeveledPoint x;
  x.seq = seq;
  x.coords = std::move(coords);
  x.s = std::move(s);
  if (!level_in_range(seq, x.s)) throw usage_error("leveled point: level outside the cylinder");
  return x;
}

bool level_in_range(const IncreasingSequence& seq, const Rat& s) {
  const FinitePoset& poset = *seq.poset;
  return poset.f[seq.entries.back()] <= s && s <= poset.f[seq.entries.front()];
}

StrictSequence breaking_sequence(const IncreasingSequence& seq, const std::vector<Rat>& coords) {
  int n = seq.length();
  if (static_cast<int>(coords.size()) != std::max(n - 1, 0))
    throw usage_error("breaking sequence: wrong coordinate count");
  std::vector<Rat> t = with_sentinels(seq, coords);
  std::vector<int> broken;
  for (int k = 0; k <= n; ++k)
    if (t[k] == 1) broken.push_back(seq.entries[k]);
  return condense_entries(*seq.poset, broken);
}

namespace {

// The level window of s along the sequence: for a critical level the plateau
// [p,q] with f = s (lo=p, hi=q); for a band f(a_{i+1}) < s < f(a_i) the pair
// lo=i+1, hi=i.
std::pair<int, int> level_window(const IncreasingSequence& seq, const Rat& s) {
  const FinitePoset& poset = *seq.poset;
  int n = seq.length();
  if (!level_in_range(seq, s)) throw usage_error("level outside the cylinder");
  for (int p = 0; p <= n;) {
    int q = p;
    while (q + 1 <= n && seq.entries[q + 1] == seq.entries[p]) ++q;
    if (poset.f[seq.entries[p]] == s) return {p, q};
    p = q + 1;
  }
  for (int i = 0; i < n; ++i) {
    if (poset.f[seq.entries[i + 1]] < s && s < poset.f[seq.entries[i]]) return {i + 1, i};
  }
  throw usage_error("level does not meet the sequence");
}

}  // namespace

int stratum_of(const LeveledPoint& x) {
  const FinitePoset& poset = *x.seq.poset;
  int n = x.seq.length();
  std::vector<Rat> t = with_sentinels(x.seq, x.coords);
  if (x.s == poset.f[x.seq.entries.front()]) return x.seq.entries.front();
  std::vector<int> breaks;
  for (int k = 0; k <= n; ++k)
    if (t[k] == 1) breaks.push_back(k);
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const Rat& upper = poset.f[x.seq.entries[breaks[b]]];
    const Rat& lower = poset.f[x.seq.entries[breaks[b + 1]]];
    if (lower <= x.s && x.s < upper) return x.seq.entries[breaks[b + 1]];
  }
  throw internal_error("stratum: level not located between breaks");
}

LeveledPoint canonical_form(const LeveledPoint& x) {
  int n = x.seq.length();
  auto [lo, hi] = level_window(x.seq, x.s);
  std::vector<Rat> t = with_sentinels(x.seq, x.coords);
  int window_max = -1, window_min = n + 1;
  for (int k = 0; k <= n; ++k)
    if (t[k] == 1) {
      if (k <= hi) window_max = std::max(window_max, k);
      if (k >= lo) window_min = std::min(window_min, k);
    }
  LeveledPoint out = x;
  std::fill(out.coords.begin(), out.coords.end(), Rat(0));
  if (window_min <= window_max) {
    // A break lies in the critical plateau: the whole level collapses onto the
    // single break at the plateau start.
    if (0 < lo && lo < n) out.coords[lo - 1] = Rat(1);
    return out;
  }
  for (int k = window_max; k <= window_min; ++k)
    if (0 < k && k < n) out.coords[k - 1] = t[k];
  return out;
}

bool same_class(const LeveledPoint& x, const LeveledPoint& y) {
  if (!(x.seq == y.seq) || x.s != y.s) return false;
  return canonical_form(x).coords == canonical_form(y).coords;
}

LeveledPoint ca_structural_map(const SequenceMorphism& phi, const LeveledPoint& x) {
  if (!(phi.source == x.seq)) throw usage_error("cylinder map: point not over the source");
  int n = x.seq.length();
  int m = phi.target.length();
  if (!level_in_range(phi.target, x.s))
    throw internal_error("cylinder map: image level escapes the target cylinder");

  CubePoint point = full_cube_point(n, x.coords);
  std::vector<int> current = phi.map;

  // Epi part: merge equal neighbors from the right so earlier indices stay valid.
  for (int k = static_cast<int>(current.size()) - 2; k >= 0; --k)
    if (current[k] == current[k + 1]) {
      point = cube_degeneracy(point.n - 1, k, point);
      current.erase(current.begin() + k + 1);
    }
  // Mono part: insert the missing target slots in increasing order.
  std::vector<char> hit(m + 1, 0);
  for (int v : current) hit[v] = 1;
  for (int r = 0; r <= m; ++r)
    if (!hit[r]) point = cube_face(point.n + 1, r, point);
  SC_CHECK(point.n == m && point.i == phi.map.front() && point.j == phi.map.back(),
           "cylinder map: composite endpoints");

  // Extend to the full cube: breaks at the image endpoints, zeros outside.
  std::vector<Rat> full(std::max(m - 1, 0), Rat(0));
  if (0 < point.i && point.i < m) full[point.i - 1] = Rat(1);
  if (0 < point.j && point.j < m) full[point.j - 1] = Rat(1);
  for (int slot = point.i + 1; slot < point.j; ++slot)
    full[slot - 1] = point.coords[slot - point.i - 1];
  return canonical_form(make_leveled_point(phi.target, std::move(full), x.s));
}

std::vector<std::vector<Rat>> interior_grid_points(int n, const std::vector<Rat>& grid) {
  int size = std::max(n - 1, 0);
  std::vector<std::vector<Rat>> points;
  std::vector<Rat> current(size, Rat(0));
  auto extend = [&](auto&& self, int k) -> void {
    if (k == size) {
      points.push_back(current);
      return;
    }
    for (const Rat& g : grid) {
      current[k] = g;
      self(self, k + 1);
    }
  };
  extend(extend, 0);
  return points;
}

std::vector<Rat> level_samples(const IncreasingSequence& seq) {
  const FinitePoset& poset = *seq.poset;
  std::vector<Rat> values;
  for (int e : seq.entries) values.push_back(poset.f[e]);
  std::sort(values.begin(), values.end(), std::greater<Rat>());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Rat> samples;
  for (std::size_t k = 0; k < values.size(); ++k) {
    samples.push_back(values[k]);
    if (k + 1 < values.size()) samples.push_back((values[k] + values[k + 1]) / 2);
  }
  return samples;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::vector<int> normalize_partition(std::vector<int> parent) {
  for (int k = 0; k < static_cast<int>(parent.size()); ++k) find_root(parent, k);
  std::map<int, int> smallest;
  for (int k = 0; k < static_cast<int>(parent.size()); ++k) {
    int root = find_root(parent, k);
    if (!smallest.count(root)) smallest[root] = k;
  }
  std::vector<int> ids(parent.size());
  for (int k = 0; k < static_cast<int>(parent.size()); ++k) ids[k] = smallest[find_root(parent, k)];
  return ids;
}

}  // namespace

std::vector<int> closure_classes(const IncreasingSequence& seq, const std::vector<Rat>& grid,
                                 const Rat& s) {
  const FinitePoset& poset = *seq.poset;
  int n = seq.length();
  std::vector<std::vector<Rat>> points = interior_grid_points(n, grid);
  std::vector<std::vector<Rat>> extended;
  extended.reserve(points.size());
  for (const auto& p : points) extended.push_back(with_sentinels(seq, p));

  std::vector<int> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto related = [&](const std::vector<Rat>& t, const std::vector<Rat>& u) {
    for (int m = 0; m <= n; ++m) {
      if (t[m] != 1 || u[m] != 1) continue;
      if (poset.f[seq.entries[m]] < s) continue;
      for (int l = m; l <= n; ++l) {
        if (t[l] != 1 || u[l] != 1) continue;
        if (poset.f[seq.entries[l]] > s) continue;
        bool middle_equal = true;
        for (int k = m; k <= l; ++k)
          if (t[k] != u[k]) {
            middle_equal = false;
            break;
          }
        if (middle_equal) return true;
      }
    }
    return false;
  };
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      int ra = find_root(parent, static_cast<int>(a));
      int rb = find_root(parent, static_cast<int>(b));
      if (ra == rb) continue;
      if (related(extended[a], extended[b])) parent[ra] = rb;
    }
  return normalize_partition(std::move(parent));
}

std::vector<int> canonical_classes(const IncreasingSequence& seq, const std::vector<Rat>& grid,
                                   const Rat& s) {
  int n = seq.length();
  std::vector<std::vector<Rat>> points = interior_grid_points(n, grid);
  std::map<std::vector<Rat>, int> first_seen;
  std::vector<int> ids(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    LeveledPoint x = make_leveled_point(seq, points[k], s);
    std::vector<Rat> rep = canonical_form(x).coords;
    auto [it, inserted] = first_seen.try_emplace(rep, static_cast<int>(k));
    ids[k] = it->second;
  }
  return ids;
}

}  // namespace stratcat
