#pragma once

#include "bscycles/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bscycles {

class NotDivisible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sparse multivariate polynomial over Q in at most kMaxVars variables.
///
/// The arity is fixed at construction; exponent slots past the arity are
/// always zero. Zero coefficients are never stored. Terms iterate in
/// lexicographic order of the exponent vector.
class MultiPoly {
 public:
  static constexpr std::size_t kMaxVars = 4;
  using Exponents = std::array<std::uint16_t, kMaxVars>;
  using TermMap = std::map<Exponents, Rational>;

  explicit MultiPoly(std::size_t arity = 0);

  static MultiPoly constant(std::size_t arity, const Rational& c);
  static MultiPoly variable(std::size_t arity, std::size_t index);
  static MultiPoly monomial(std::size_t arity, const Exponents& e,
                            const Rational& c);

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of x^e (zero when absent).
  Rational coefficient(const Exponents& e) const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(std::size_t var) const;

  void add_term(const Exponents& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned exponent) const;
  MultiPoly derivative(std::size_t var) const;

  /// Replace variable `var` by `value`. Arity is preserved.
  MultiPoly substitute(std::size_t var, const Rational& value) const;

  /// p(..., v + shift, ...).
  MultiPoly shift(std::size_t var, const Rational& shift) const;

  /// Same polynomial viewed in `arity` >= arity() variables.
  MultiPoly extend(std::size_t arity) const;

  /// Multiply by the monomial x^e.
  MultiPoly times_monomial(const Exponents& e, const Rational& c) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t arity_;
  TermMap terms_;
};

/// Exact quotient a / b; throws NotDivisible when b does not divide a.
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b);

/// Returns true and writes the quotient when b divides a.
bool try_exact_div(const MultiPoly& a, const MultiPoly& b, MultiPoly* quotient);

}  // namespace bscycles
