#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bscycles {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// max(bits(numerator), bits(denominator)).
std::size_t bit_length(const Rational& q);

Integer floor(const Rational& q);

/// q - floor(q), in [0, 1).
Rational fractional_part(const Rational& q);

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// Thrown whenever a configured work or size budget is exhausted. Callers
/// that surface exit codes map this to "budget exhaustion".
class ResourceBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bscycles
