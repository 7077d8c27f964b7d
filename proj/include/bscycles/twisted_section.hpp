#pragma once

#include "bscycles/multipoly.hpp"
#include "bscycles/weyl.hpp"

#include <memory>

namespace bscycles {

/// A hypersurface f in n <= 3 variables, shared by reference between the
/// sections that live over it.
struct Hypersurface {
  MultiPoly f;        // arity n
  MultiPoly f_xs;     // f viewed in (x, s), arity n + 1
  std::size_t n = 0;

  static std::shared_ptr<const Hypersurface> make(const MultiPoly& f);
};

using HypersurfacePtr = std::shared_ptr<const Hypersurface>;

/// p(x, s) * f^(s - m) in j_*(O_U[s] f^s). Canonical form: f does not
/// divide p whenever m > 0.
class TwistedSection {
 public:
  TwistedSection(HypersurfacePtr f, MultiPoly numerator, int fpower);

  /// f^(s + k) for any integer k.
  static TwistedSection power(HypersurfacePtr f, int k);
  static TwistedSection zero(HypersurfacePtr f);

  const MultiPoly& numerator() const { return numerator_; }
  int fpower() const { return fpower_; }
  const HypersurfacePtr& hypersurface() const { return f_; }
  bool is_zero() const { return numerator_.is_zero(); }

  /// Numerator after rewriting over f^(s - m) with m >= fpower().
  MultiPoly numerator_at(int m) const;

  TwistedSection& operator+=(const TwistedSection& other);
  TwistedSection operator+(const TwistedSection& other) const {
    TwistedSection r = *this;
    return r += other;
  }
  friend bool operator==(const TwistedSection& a, const TwistedSection& b);

  std::string to_string() const;

 private:
  void canonicalize();

  HypersurfacePtr f_;
  MultiPoly numerator_;  // arity n + 1, last variable s
  int fpower_;
};

/// Action of D_n[s] on j_*(O_U[s] f^s):
///   d_i (p f^(s-m)) = (f d_i p + (s - m) p d_i f) f^(s-m-1).
TwistedSection apply(const WeylElem& op, const TwistedSection& u);

/// Numerator with s specialized to `a` and fpower shifted by `k`.
struct SpecializedSection {
  MultiPoly numerator;  // arity n
  int fpower;
};
SpecializedSection eval_at_s(const TwistedSection& u, const Rational& a, int k);

}  // namespace bscycles
