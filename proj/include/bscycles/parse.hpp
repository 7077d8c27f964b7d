#pragma once

#include "bscycles/multipoly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace bscycles {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Polynomial over Q in x, y, z (or t alone for one-variable input).
/// Grammar: sums, products, unary signs, parentheses, `^` with a
/// nonnegative integer exponent, integer and p/q literals. The arity is the
/// highest variable index used: "y" alone has arity 2.
MultiPoly parse_poly(std::string_view src);

/// Inverse of parse_poly up to term order: x, y, z names.
std::string format_poly(const MultiPoly& f);

}  // namespace bscycles
