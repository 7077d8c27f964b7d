#pragma once

#include "bscycles/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bscycles {

/// Dense univariate polynomial in s over Q, ascending coefficients.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class SPoly {
 public:
  SPoly() = default;
  explicit SPoly(std::vector<Rational> coefficients);

  static SPoly constant(const Rational& c);
  static SPoly s();
  /// s - root
  static SPoly linear_factor(const Rational& root);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return int(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
  }

  SPoly& operator+=(const SPoly& other);
  SPoly& operator-=(const SPoly& other);
  SPoly& operator*=(const Rational& c);
  friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
  friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
  friend SPoly operator*(SPoly a, const Rational& c) { return a *= c; }
  friend SPoly operator*(const Rational& c, SPoly a) { return a *= c; }
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  friend bool operator==(const SPoly&, const SPoly&) = default;

  SPoly pow(unsigned exponent) const;
  SPoly monic() const;
  SPoly derivative() const;
  /// p(s + c)
  SPoly shift(const Rational& c) const;
  Rational evaluate(const Rational& at) const;

  /// Euclidean division; divisor nonzero.
  std::pair<SPoly, SPoly> divmod(const SPoly& divisor) const;

  std::string to_string(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

SPoly gcd(SPoly a, SPoly b);

/// c with c * a == 1 modulo m; requires gcd(a, m) == 1.
SPoly inverse_mod(const SPoly& a, const SPoly& m);

struct RationalRoot {
  Rational root;
  int multiplicity;
  friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

struct RootDecomposition {
  std::vector<RationalRoot> roots;  // ascending by root
  SPoly residual;                   // no rational roots
};

/// p = residual * prod (s - r_i)^{m_i}. Requires p nonzero.
RootDecomposition rational_roots(const SPoly& p);

/// Multiplicity of `root` in p (0 when not a root).
int root_multiplicity(const SPoly& p, const Rational& root);

}  // namespace bscycles
