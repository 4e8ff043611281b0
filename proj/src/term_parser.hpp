#pragma once

// Prefix-term reader shared by the signal grammar and the config loader:
//   term   := number | name | name '(' term (',' term)* ')'

#include <string>
#include <string_view>
#include <vector>

namespace dads::detail {

struct Term {
  std::string name;  // empty for a number
  double number = 0.0;
  std::vector<Term> args;

  bool is_number() const { return name.empty(); }
};

Term parse_term(std::string_view text);

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

/// Comma separated numbers, e.g. "0, 1.5, 2".
std::vector<double> parse_number_list(std::string_view text);

}  // namespace dads::detail
