#include "bscycles/spoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bscycles {

SPoly::SPoly(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

SPoly SPoly::constant(const Rational& c) { return SPoly({c}); }
SPoly SPoly::s() { return SPoly({Rational(0), Rational(1)}); }
SPoly SPoly::linear_factor(const Rational& root) {
  return SPoly({-root, Rational(1)});
}

void SPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

SPoly& SPoly::operator+=(const SPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

SPoly& SPoly::operator-=(const SPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

SPoly& SPoly::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  if (a.is_zero() || b.is_zero()) return SPoly();
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return SPoly(std::move(r));
}

SPoly SPoly::pow(unsigned exponent) const {
  SPoly result = constant(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

SPoly SPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

SPoly SPoly::derivative() const {
  if (coeffs_.size() <= 1) return SPoly();
  std::vector<Rational> r(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * int(i);
  return SPoly(std::move(r));
}

SPoly SPoly::shift(const Rational& c) const {
  // Horner in the shifted variable.
  SPoly result;
  const SPoly lin({c, Rational(1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    result = result * lin + constant(*it);
  return result;
}

Rational SPoly::evaluate(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

std::pair<SPoly, SPoly> SPoly::divmod(const SPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("SPoly division by zero");
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {SPoly(), *this};
  std::vector<Rational> quot(std::size_t(degree() - dd + 1));
  for (int i = degree(); i >= dd; --i) {
    const Rational c = rem[std::size_t(i)] / divisor.leading();
    quot[std::size_t(i - dd)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[std::size_t(i - dd + j)] -= c * divisor.coeffs_[std::size_t(j)];
  }
  return {SPoly(std::move(quot)), SPoly(std::move(rem))};
}

std::string SPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[std::size_t(i)];
    if (c == 0) continue;
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) {
      out << bscycles::to_string(mag);
      if (i > 0) out << "*";
    }
    if (i > 0) out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

SPoly gcd(SPoly a, SPoly b) {
  while (!b.is_zero()) {
    SPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

SPoly inverse_mod(const SPoly& a, const SPoly& m) {
  // Extended Euclid tracking only the coefficient of a.
  SPoly r0 = m, r1 = a.divmod(m).second;
  SPoly t0, t1 = SPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    SPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.degree() != 0) throw std::domain_error("inverse_mod: not coprime");
  return (t0 * (Rational(1) / r0.leading())).divmod(m).second;
}

int root_multiplicity(const SPoly& p, const Rational& root) {
  if (p.is_zero()) throw std::domain_error("root_multiplicity of zero");
  int mult = 0;
  SPoly cur = p;
  const SPoly lin = SPoly::linear_factor(root);
  while (cur.degree() >= 1 && cur.evaluate(root) == 0) {
    cur = cur.divmod(lin).first;
    ++mult;
  }
  return mult;
}

namespace {

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::vector<SPoly> sturm_sequence(const SPoly& p) {
  std::vector<SPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    SPoly r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(r * Rational(-1));
  }
  return seq;
}

int sign_changes(const std::vector<SPoly>& seq, const Rational& at) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    const int sg = sign(q.evaluate(at));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

}  // namespace

RootDecomposition rational_roots(const SPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
  RootDecomposition out;
  // Square-free part carries exactly the distinct roots.
  SPoly sqfree = p.degree() >= 1 ? p.divmod(gcd(p, p.derivative())).first.monic()
                                 : SPoly::constant(Rational(1));
  std::vector<Rational> found;
  if (sqfree.degree() >= 1) {
    // Clear denominators: every rational root has denominator dividing
    // the leading coefficient of the primitive integer polynomial.
    Integer lcm_den = 1;
    for (const auto& c : sqfree.coefficients())
      lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(c));
    const Integer lead = boost::multiprecision::numerator(sqfree.leading() * Rational(lcm_den));
    const Rational grid = Rational(1) / Rational(abs(lead));

    Rational bound = 1;  // Cauchy bound
    for (int i = 0; i < sqfree.degree(); ++i) {
      const Rational c = sqfree.coefficients()[std::size_t(i)];
      bound = std::max(bound, Rational(1) + (c < 0 ? Rational(-c) : c));
    }
    const auto seq = sturm_sequence(sqfree);
    // Work stack of half-open intervals (lo, hi].
    std::vector<std::pair<Rational, Rational>> stack{{-bound - 1, bound + 1}};
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      const int count = sign_changes(seq, lo) - sign_changes(seq, hi);
      if (count == 0) continue;
      if (count == 1 && hi - lo < grid) {
        // Candidates k*grid in (lo, hi].
        const Integer k_lo = floor(lo / grid) + 1;
        const Integer k_hi = floor(hi / grid);
        for (Integer k = k_lo; k <= k_hi; ++k) {
          const Rational r = Rational(k) * grid;
          if (sqfree.evaluate(r) == 0) found.push_back(r);
        }
        continue;
      }
      const Rational mid = (lo + hi) / 2;
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
    }
  }
  std::sort(found.begin(), found.end());
  SPoly residual = p;
  for (const auto& r : found) {
    const int m = root_multiplicity(residual, r);
    residual = residual.divmod(SPoly::linear_factor(r).pow(unsigned(m))).first;
    out.roots.push_back({r, m});
  }
  out.residual = residual;
  return out;
}

}  // namespace bscycles
