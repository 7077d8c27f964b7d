#pragma once

// Template definitions for weyl.hpp.

#include <vector>

namespace bscycles {

namespace detail {

/// C(b, k) * c! / (c - k)! for k = 0..min(b, c).
std::vector<Integer> leibniz_coefficients(unsigned b, unsigned c);

}  // namespace detail

template <typename Sink>
void weyl_monomial_product(std::size_t arity, const WeylMonomial& left,
                           const WeylMonomial& right, const Rational& scale,
                           Sink&& sink) {
  std::array<std::vector<Integer>, kMaxArity> factors;
  std::size_t count = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    factors[i] = detail::leibniz_coefficients(left.d(i), right.x(i));
    count *= factors[i].size();
  }
  WeylMonomial base = left * right;
  if (count == 1) {
    sink(base, scale);
    return;
  }
  std::array<std::size_t, kMaxArity> k{};
  for (std::size_t iter = 0; iter < count; ++iter) {
    WeylMonomial m = base;
    Integer coeff = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      m.x(i) = std::uint16_t(m.x(i) - k[i]);
      m.d(i) = std::uint16_t(m.d(i) - k[i]);
      coeff *= factors[i][k[i]];
    }
    sink(m, scale * Rational(coeff));
    for (std::size_t i = 0; i < arity; ++i) {
      if (++k[i] < factors[i].size()) break;
      k[i] = 0;
    }
  }
}

}  // namespace bscycles
