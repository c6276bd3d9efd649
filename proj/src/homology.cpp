#include "stratcat/homology.hpp"

#include <algorithm>

namespace stratcat {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

void check_rectangular(const std::vector<std::vector<Int>>& m) {
  for (const auto& row : m)
    if (row.size() != m.front().size()) throw usage_error("matrix rows have unequal lengths");
}

}  // namespace

SmithResult smith_normal_form(std::vector<std::vector<Int>> m) {
  SmithResult result;
  if (m.empty() || m.front().empty()) return result;
  check_rectangular(m);
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m.front().size());

  for (int t = 0; t < rows && t < cols; ++t) {
    bool pivot_settled = false;
    while (!pivot_settled) {
      int pr = -1, pc = -1;
      for (int r = t; r < rows; ++r)
        for (int c = t; c < cols; ++c) {
          if (m[r][c] == 0) continue;
          if (pr == -1 || abs_int(m[r][c]) < abs_int(m[pr][pc])) {
            pr = r;
            pc = c;
          }
        }
      if (pr == -1) {
        result.rank = t;
        return result;
      }
      std::swap(m[t], m[pr]);
      for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);

      bool clean = true;
      for (int r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        Int q = m[r][t] / m[t][t];
        for (int c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) {
          std::swap(m[t], m[r]);
          clean = false;
        }
      }
      if (!clean) continue;
      for (int c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        Int q = m[t][c] / m[t][t];
        for (int r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) {
          for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][c]);
          clean = false;
        }
      }
      if (!clean) continue;

      // Divisibility of the remaining block by the pivot; fold an offending
      // row in and restart this pivot.
      pivot_settled = true;
      for (int r = t + 1; r < rows && pivot_settled; ++r)
        for (int c = t + 1; c < cols && pivot_settled; ++c)
          if (m[r][c] % m[t][t] != 0) {
            for (int cc = t; cc < cols; ++cc) m[t][cc] += m[r][cc];
            pivot_settled = false;
          }
    }
    if (m[t][t] < 0)
      for (int c = t; c < cols; ++c) m[t][c] = -m[t][c];
    result.diagonal.push_back(m[t][t]);
    result.rank = t + 1;
  }
  return result;
}

int rank_mod2(const std::vector<std::vector<Int>>& m) {
  if (m.empty() || m.front().empty()) return 0;
  check_rectangular(m);
  std::vector<std::vector<int>> bits(m.size(), std::vector<int>(m.front().size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.front().size(); ++c)
      bits[r][c] = static_cast<int>(abs_int(m[r][c]) % 2);
  int rows = static_cast<int>(bits.size());
  int cols = static_cast<int>(bits.front().size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (bits[r][c]) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(bits[rank], bits[pivot]);
    for (int r = 0; r < rows; ++r)
      if (r != rank && bits[r][c])
        for (int cc = c; cc < cols; ++cc) bits[r][cc] ^= bits[rank][cc];
    ++rank;
  }
  return rank;
}

namespace {

void check_shapes(const ChainComplex& complex) {
  if (complex.boundaries.size() != complex.generators.size())
    throw usage_error("chain complex: one boundary matrix per degree expected");
  for (std::size_t k = 0; k < complex.generators.size(); ++k) {
    std::size_t rows = k == 0 ? 0 : complex.generators[k - 1].size();
    std::size_t cols = complex.generators[k].size();
    const auto& matrix = complex.boundaries[k];
    if (k == 0) {
      if (!matrix.empty()) throw usage_error("chain complex: degree 0 has no boundary");
      continue;
    }
    if (rows == 0) {
      if (!matrix.empty()) throw usage_error("chain complex: boundary lands in an empty degree");
      continue;
    }
    if (matrix.size() != rows)
      throw usage_error("chain complex: boundary row count mismatch in degree " +
                        std::to_string(k));
    for (const auto& row : matrix)
      if (row.size() != cols)
        throw usage_error("chain complex: boundary column count mismatch in degree " +
                          std::to_string(k));
  }
}

}  // namespace

void validate_boundary_squared(const ChainComplex& complex) {
  check_shapes(complex);
  for (std::size_t k = 1; k + 1 < complex.generators.size(); ++k) {
    const auto& lower = complex.boundaries[k];
    const auto& upper = complex.boundaries[k + 1];
    if (lower.empty() || upper.empty()) continue;
    std::size_t rows = lower.size();
    std::size_t mid = complex.generators[k].size();
    std::size_t cols = complex.generators[k + 1].size();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Int sum(0);
        for (std::size_t q = 0; q < mid; ++q) sum += lower[r][q] * upper[q][c];
        if (sum != 0)
          throw usage_error("boundary squared is nonzero from degree " + std::to_string(k + 1));
      }
  }
}

std::vector<std::pair<int, std::vector<Int>>> integral_homology(const ChainComplex& complex) {
  validate_boundary_squared(complex);
  std::size_t degrees = complex.generators.size();
  std::vector<std::pair<int, std::vector<Int>>> result(degrees);
  for (std::size_t k = 0; k < degrees; ++k) {
    int dim = static_cast<int>(complex.generators[k].size());
    int rank_out = k == 0 ? 0 : smith_normal_form(complex.boundaries[k]).rank;
    SmithResult incoming;
    if (k + 1 < degrees) incoming = smith_normal_form(complex.boundaries[k + 1]);
    int free_rank = dim - rank_out - incoming.rank;
    SC_CHECK(free_rank >= 0, "homology: negative free rank");
    std::vector<Int> torsion;
    for (const Int& factor : incoming.diagonal)
      if (factor > 1) torsion.push_back(factor);
    result[k] = {free_rank, std::move(torsion)};
  }
  return result;
}

std::vector<int> mod2_homology(const ChainComplex& complex) {
  validate_boundary_squared(complex);
  std::size_t degrees = complex.generators.size();
  std::vector<int> result(degrees);
  for (std::size_t k = 0; k < degrees; ++k) {
    int dim = static_cast<int>(complex.generators[k].size());
    int rank_out = k == 0 ? 0 : rank_mod2(complex.boundaries[k]);
    int rank_in = k + 1 < degrees ? rank_mod2(complex.boundaries[k + 1]) : 0;
    result[k] = dim - rank_out - rank_in;
    SC_CHECK(result[k] >= 0, "homology: negative dimension");
  }
  return result;
}

std::string format_integral(int free_rank, const std::vector<Int>& torsion) {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const Int& factor : torsion) parts.push_back("Z/" + factor.str());
  if (parts.empty()) return "0";
  return join(parts, " + ");
}

std::string format_mod2(int dim) {
  if (dim == 0) return "0";
  if (dim == 1) return "Z/2";
  return "(Z/2)^" + std::to_string(dim);
}

}  // namespace stratcat
