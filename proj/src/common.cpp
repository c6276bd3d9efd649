#include "stratcat/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace stratcat {

Rat parse_rat(const std::string& text) {
  auto fail = [&] { throw schema_error("not a rational literal: '" + text + "'"); };
  std::string s = text;
  if (s.empty()) fail();
  std::size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits_ok = [](const std::string& part, bool sign_allowed) {
    if (part.empty()) return false;
    std::size_t start = 0;
    if (sign_allowed && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + start, part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits_ok(num, true) || !digits_ok(den, false)) fail();
  Int p(num), q(den);
  if (q == 0) fail();
  return Rat(p, q);
}

std::string format_rat(const Rat& value) {
  Int p = boost::multiprecision::numerator(value);
  Int q = boost::multiprecision::denominator(value);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

std::vector<Rat> default_grid() {
  return {Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)};
}

std::vector<Rat> parse_grid(const std::string& csv) {
  std::vector<Rat> grid;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) grid.push_back(parse_rat(item));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || grid.front() != 0 || grid.back() != 1)
    throw usage_error("grid must contain 0 and 1: '" + csv + "'");
  for (const Rat& g : grid)
    if (g < 0 || g > 1) throw usage_error("grid values must lie in [0,1]: '" + csv + "'");
  return grid;
}

std::vector<Rat> active_grid() {
  const char* env = std::getenv("STRATCAT_GRID");
  if (env != nullptr && *env != '\0') return parse_grid(env);
  return default_grid();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += sep;
    out += parts[k];
  }
  return out;
}

}  // namespace stratcat
