#pragma once

#include "bscycles/multipoly.hpp"
#include "bscycles/rational.hpp"
#include "bscycles/spoly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bscycles {

inline constexpr std::size_t kMaxArity = 3;

/// x^a d^b s^c stored as one exponent array: slots [0, 3) hold x,
/// [3, 6) hold the derivations and slot 6 holds s.
struct WeylMonomial {
  static constexpr std::size_t kSlots = 2 * kMaxArity + 1;
  static constexpr std::size_t kS = 2 * kMaxArity;
  std::array<std::uint16_t, kSlots> e{};

  std::uint16_t x(std::size_t i) const { return e[i]; }
  std::uint16_t d(std::size_t i) const { return e[kMaxArity + i]; }
  std::uint16_t s() const { return e[kS]; }
  std::uint16_t& x(std::size_t i) { return e[i]; }
  std::uint16_t& d(std::size_t i) { return e[kMaxArity + i]; }
  std::uint16_t& s() { return e[kS]; }

  int xd_degree() const;
  int total_degree() const { return xd_degree() + s(); }
  bool is_pure_s() const { return xd_degree() == 0; }

  /// Commutative divisibility.
  bool divides(const WeylMonomial& other) const;
  WeylMonomial operator*(const WeylMonomial& other) const;  // exponent sum
  WeylMonomial operator/(const WeylMonomial& other) const;  // requires divides
  static WeylMonomial lcm(const WeylMonomial& a, const WeylMonomial& b);

  auto operator<=>(const WeylMonomial&) const = default;
};

/// Element of the Weyl algebra D_n[s] over Q in normal order: every term is
/// c * x^a d^b s^k with the x's written left of the derivations. s is
/// central. Terms with zero coefficients are never stored.
class WeylElem {
 public:
  using TermMap = std::map<WeylMonomial, Rational>;

  explicit WeylElem(std::size_t arity = 1);

  static WeylElem constant(std::size_t arity, const Rational& c);
  static WeylElem x(std::size_t arity, std::size_t i);
  static WeylElem d(std::size_t arity, std::size_t i);
  static WeylElem s(std::size_t arity);
  static WeylElem monomial(std::size_t arity, const WeylMonomial& m, const Rational& c);
  /// Multiplication operator by a polynomial in x (arity n) or in (x, s)
  /// (arity n + 1, last variable s).
  static WeylElem from_poly(std::size_t arity, const MultiPoly& p);
  static WeylElem from_spoly(std::size_t arity, const SPoly& p);

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int xd_degree() const;  // -1 for zero
  int s_degree() const;   // -1 for zero

  /// True when every term is a pure power of s.
  bool is_central() const;
  /// The element as a polynomial in s; requires is_central().
  SPoly to_spoly() const;

  void add_term(const WeylMonomial& m, const Rational& c);

  WeylElem& operator+=(const WeylElem& other);
  WeylElem& operator-=(const WeylElem& other);
  WeylElem& operator*=(const Rational& c);
  friend WeylElem operator+(WeylElem a, const WeylElem& b) { return a += b; }
  friend WeylElem operator-(WeylElem a, const WeylElem& b) { return a -= b; }
  friend WeylElem operator*(WeylElem a, const Rational& c) { return a *= c; }
  friend WeylElem operator*(const Rational& c, WeylElem a) { return a *= c; }
  WeylElem operator-() const { return *this * Rational(-1); }
  friend bool operator==(const WeylElem& a, const WeylElem& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  WeylElem pow(unsigned k) const;

  /// s -> s + c in every coefficient.
  WeylElem shift_s(const Rational& c) const;
  /// s -> c (the result has no s).
  WeylElem eval_s(const Rational& c) const;

  std::string to_string() const;

 private:
  std::size_t arity_;
  TermMap terms_;
};

/// Normally ordered product under d_i x_i = x_i d_i + 1.
WeylElem weyl_mul(const WeylElem& a, const WeylElem& b);
inline WeylElem operator*(const WeylElem& a, const WeylElem& b) { return weyl_mul(a, b); }

/// Expansion of (x^a d^b) * (x^c d^e) (s parts added) as terms,
/// coefficient scaled by `scale`; calls sink(monomial, coefficient).
template <typename Sink>
void weyl_monomial_product(std::size_t arity, const WeylMonomial& left,
                           const WeylMonomial& right, const Rational& scale,
                           Sink&& sink);

/// Default variable names: x, y, z (t for the single-variable case when
/// requested by the caller).
std::vector<std::string> default_variable_names(std::size_t arity);

}  // namespace bscycles

#include "bscycles/weyl_impl.hpp"
