#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stratcat/common.hpp"

namespace stratcat {

// A nonnegatively graded chain complex of free abelian groups.  boundaries[k]
// sends degree k to degree k-1 and is stored row-major with one row per
// degree k-1 generator; boundaries[0] is empty.
struct ChainComplex {
  std::vector<std::vector<std::string>> generators;
  std::vector<std::vector<std::vector<Int>>> boundaries;
};

struct SmithResult {
  std::vector<Int> diagonal;  // nonnegative invariant factors, each dividing the next
  int rank = 0;
};

SmithResult smith_normal_form(std::vector<std::vector<Int>> m);
int rank_mod2(const std::vector<std::vector<Int>>& m);

// Throws usage_error naming the lowest degree whose composite boundary fails.
void validate_boundary_squared(const ChainComplex& complex);

// Per-degree integral homology: free rank plus the torsion factors (each > 1).
std::vector<std::pair<int, std::vector<Int>>> integral_homology(const ChainComplex& complex);

// Per-degree dimension over the two-element field.
std::vector<int> mod2_homology(const ChainComplex& complex);

std::string format_integral(int free_rank, const std::vector<Int>& torsion);
std::string format_mod2(int dim);

}  // namespace stratcat
