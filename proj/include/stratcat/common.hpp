#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace stratcat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Input data is malformed: bad JSON shape, bad rational literal, unknown label.
struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input used outside an operation's stated precondition.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A postcondition the library guarantees failed to hold.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SC_CHECK(cond, msg)                                                              \
  do {                                                                                   \
    if (!(cond)) throw ::stratcat::internal_error(std::string("postcondition: ") + (msg)); \
  } while (0)

Rat parse_rat(const std::string& text);
std::string format_rat(const Rat& value);

std::vector<Rat> default_grid();
std::vector<Rat> parse_grid(const std::string& csv);
// STRATCAT_GRID environment override, else the default grid.
std::vector<Rat> active_grid();

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace stratcat
