#pragma once

#include "nadiv/algebra.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nadiv::cli {

/// Parse failure; `position` is a 0-based offset into the expression.
class DslError : public AlgebraError {
 public:
  DslError(const std::string& msg, std::size_t position)
      : AlgebraError(msg + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

/// Expression tree: a name with optional arguments, a number, or an
/// @file reference.
struct DslNode {
  enum class Kind { call, number, file };
  Kind kind = Kind::call;
  std::string name;
  double number = 0.0;
  std::vector<DslNode> args;
  std::size_t position = 0;
};

/// Grammar:
///   expr  := name [ '(' arg { ',' arg } ')' ] | '@' path
///   arg   := expr | number
/// Names: R C Cstar H O Hplus and the constructions mut plus cd gcd
/// isotope quad jform osborn4 table1 table4 table5 table7.
DslNode parse_dsl(std::string_view text);

/// Canonical text of a tree (numbers in shortest round-trip form).
std::string dsl_text(const DslNode& node);

/// Builds the algebra; its provenance is the canonical text.
Algebra evaluate_dsl(const DslNode& node);
Algebra build_from_dsl(std::string_view text);

}  // namespace nadiv::cli
