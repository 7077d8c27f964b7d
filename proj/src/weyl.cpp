#include "bscycles/weyl.hpp"

#include <sstream>
#include <stdexcept>

namespace bscycles {

namespace detail {

std::vector<Integer> leibniz_coefficients(unsigned b, unsigned c) {
  const unsigned top = b < c ? b : c;
  std::vector<Integer> out(top + 1);
  Integer binom = 1, falling = 1;
  for (unsigned k = 0; k <= top; ++k) {
    out[k] = binom * falling;
    binom = binom * (b - k) / (k + 1);
    falling *= (c - k);
  }
  return out;
}

}  // namespace detail

int WeylMonomial::xd_degree() const {
  int d = 0;
  for (std::size_t i = 0; i < kS; ++i) d += e[i];
  return d;
}

bool WeylMonomial::divides(const WeylMonomial& other) const {
  for (std::size_t i = 0; i < kSlots; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

WeylMonomial WeylMonomial::operator*(const WeylMonomial& other) const {
  WeylMonomial r;
  for (std::size_t i = 0; i < kSlots; ++i) r.e[i] = std::uint16_t(e[i] + other.e[i]);
  return r;
}

WeylMonomial WeylMonomial::operator/(const WeylMonomial& other) const {
  WeylMonomial r;
  for (std::size_t i = 0; i < kSlots; ++i) r.e[i] = std::uint16_t(e[i] - other.e[i]);
  return r;
}

WeylMonomial WeylMonomial::lcm(const WeylMonomial& a, const WeylMonomial& b) {
  WeylMonomial r;
  for (std::size_t i = 0; i < kSlots; ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
  return r;
}

WeylElem::WeylElem(std::size_t arity) : arity_(arity) {
  if (arity == 0 || arity > kMaxArity)
    throw std::invalid_argument("Weyl algebra arity must be 1.." + std::to_string(kMaxArity));
}

WeylElem WeylElem::constant(std::size_t arity, const Rational& c) {
  WeylElem r(arity);
  r.add_term(WeylMonomial{}, c);
  return r;
}

WeylElem WeylElem::x(std::size_t arity, std::size_t i) {
  WeylMonomial m;
  m.x(i) = 1;
  return monomial(arity, m, Rational(1));
}

WeylElem WeylElem::d(std::size_t arity, std::size_t i) {
  WeylMonomial m;
  m.d(i) = 1;
  return monomial(arity, m, Rational(1));
}

WeylElem WeylElem::s(std::size_t arity) {
  WeylMonomial m;
  m.s() = 1;
  return monomial(arity, m, Rational(1));
}

WeylElem WeylElem::monomial(std::size_t arity, const WeylMonomial& m, const Rational& c) {
  WeylElem r(arity);
  r.add_term(m, c);
  return r;
}

WeylElem WeylElem::from_poly(std::size_t arity, const MultiPoly& p) {
  if (p.arity() != arity && p.arity() != arity + 1)
    throw std::invalid_argument("from_poly: arity mismatch");
  const bool with_s = p.arity() == arity + 1;
  WeylElem r(arity);
  for (const auto& [e, c] : p.terms()) {
    WeylMonomial m;
    for (std::size_t i = 0; i < arity; ++i) m.x(i) = e[i];
    if (with_s) m.s() = e[arity];
    r.add_term(m, c);
  }
  return r;
}

WeylElem WeylElem::from_spoly(std::size_t arity, const SPoly& p) {
  WeylElem r(arity);
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    WeylMonomial m;
    m.s() = std::uint16_t(i);
    r.add_term(m, p.coefficients()[i]);
  }
  return r;
}

int WeylElem::xd_degree() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, m.xd_degree());
  return best;
}

int WeylElem::s_degree() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, int(m.s()));
  return best;
}

bool WeylElem::is_central() const {
  for (const auto& [m, c] : terms_)
    if (!m.is_pure_s()) return false;
  return true;
}

SPoly WeylElem::to_spoly() const {
  if (!is_central()) throw std::logic_error("to_spoly on non-central element");
  std::vector<Rational> coeffs(std::size_t(s_degree() + 1));
  for (const auto& [m, c] : terms_) coeffs[m.s()] = c;
  return SPoly(std::move(coeffs));
}

void WeylElem::add_term(const WeylMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WeylElem& WeylElem::operator+=(const WeylElem& other) {
  if (other.arity_ != arity_) throw std::invalid_argument("WeylElem arity mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

WeylElem& WeylElem::operator-=(const WeylElem& other) {
  if (other.arity_ != arity_) throw std::invalid_argument("WeylElem arity mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

WeylElem& WeylElem::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

WeylElem WeylElem::pow(unsigned k) const {
  WeylElem r = constant(arity_, Rational(1));
  for (unsigned i = 0; i < k; ++i) r = weyl_mul(r, *this);
  return r;
}

WeylElem WeylElem::shift_s(const Rational& c) const {
  if (c == 0) return *this;
  WeylElem r(arity_);
  for (const auto& [m, coeff] : terms_) {
    // (s + c)^k expanded binomially.
    Rational binom = 1, cpow = 1;
    const unsigned k = m.s();
    std::vector<Rational> powers(k + 1);
    for (unsigned j = 0; j <= k; ++j) {
      powers[j] = cpow;
      cpow *= c;
    }
    for (unsigned j = 0; j <= k; ++j) {
      WeylMonomial t = m;
      t.s() = std::uint16_t(k - j);
      r.add_term(t, coeff * binom * powers[j]);
      binom = binom * Rational(k - j) / Rational(j + 1);
    }
  }
  return r;
}

WeylElem WeylElem::eval_s(const Rational& c) const {
  WeylElem r(arity_);
  for (const auto& [m, coeff] : terms_) {
    WeylMonomial t = m;
    t.s() = 0;
    Rational v = coeff;
    for (unsigned j = 0; j < m.s(); ++j) v *= c;
    r.add_term(t, v);
  }
  return r;
}

std::vector<std::string> default_variable_names(std::size_t arity) {
  static const char* names[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arity; ++i) out.emplace_back(names[i]);
  return out;
}

std::string WeylElem::to_string() const {
  if (terms_.empty()) return "0";
  const auto names = default_variable_names(arity_);
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool bare = m.total_degree() == 0;
    if (mag != 1 || bare) {
      out << bscycles::to_string(mag);
      if (!bare) out << "*";
    }
    std::vector<std::string> factors;
    auto put = [&](const std::string& v, unsigned e) {
      if (e == 0) return;
      factors.push_back(e == 1 ? v : v + "^" + std::to_string(e));
    };
    for (std::size_t i = 0; i < arity_; ++i) put(names[i], m.x(i));
    for (std::size_t i = 0; i < arity_; ++i) put("d" + names[i], m.d(i));
    put("s", m.s());
    for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "*" : "") << factors[i];
  }
  return out.str();
}

WeylElem weyl_mul(const WeylElem& a, const WeylElem& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("weyl_mul arity mismatch");
  WeylElem r(a.arity());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      weyl_monomial_product(a.arity(), ma, mb, ca * cb,
                            [&](const WeylMonomial& m, const Rational& c) { r.add_term(m, c); });
  return r;
}

}  // namespace bscycles
