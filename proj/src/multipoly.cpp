#include "bscycles/multipoly.hpp"

#include <sstream>

namespace bscycles {

MultiPoly::MultiPoly(std::size_t arity) : arity_(arity) {
  if (arity > kMaxVars)
    throw std::invalid_argument("MultiPoly arity exceeds kMaxVars");
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(Exponents{}, c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw std::out_of_range("variable index");
  Exponents e{};
  e[index] = 1;
  return monomial(arity, e, Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t arity, const Exponents& e,
                              const Rational& c) {
  MultiPoly p(arity);
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < arity_; ++i) d += e[i];
    best = std::max(best, d);
  }
  return best;
}

int MultiPoly::degree_in(std::size_t var) const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, int(e[var]));
  return best;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.arity_ != arity_) throw std::invalid_argument("arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (other.arity_ != arity_) throw std::invalid_argument("arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("arity mismatch");
  MultiPoly r(a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MultiPoly::Exponents e{};
      for (std::size_t i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result = constant(arity_, Rational(1));
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] = 0;
    Rational factor = 1;
    for (unsigned k = 0; k < e[var]; ++k) factor *= value;
    r.add_term(d, c * factor);
  }
  return r;
}

MultiPoly MultiPoly::shift(std::size_t var, const Rational& shift) const {
  if (shift == 0) return *this;
  const MultiPoly linear =
      variable(arity_, var) + constant(arity_, shift);
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    r += linear.pow(e[var]).times_monomial(rest, c);
  }
  return r;
}

MultiPoly MultiPoly::extend(std::size_t arity) const {
  if (arity < arity_) throw std::invalid_argument("cannot shrink arity");
  MultiPoly r(arity);
  r.terms_ = terms_;
  return r;
}

MultiPoly MultiPoly::times_monomial(const Exponents& e, const Rational& c) const {
  MultiPoly r(arity_);
  if (c == 0) return r;
  for (const auto& [t, coeff] : terms_) {
    Exponents d{};
    for (std::size_t i = 0; i < arity_; ++i) d[i] = t[i] + e[i];
    r.terms_.emplace_hint(r.terms_.end(), d, coeff * c);
  }
  return r;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest lexicographic term first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    for (std::size_t i = 0; i < arity_; ++i) has_var = has_var || e[i] > 0;
    if (mag != 1 || !has_var) {
      out << bscycles::to_string(mag);
      if (has_var) out << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << names.at(i);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

bool try_exact_div(const MultiPoly& a, const MultiPoly& b, MultiPoly* quotient) {
  if (a.arity() != b.arity()) throw std::invalid_argument("arity mismatch");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const std::size_t n = a.arity();
  MultiPoly q(n);
  MultiPoly rem = a;
  const auto& [lead_e, lead_c] = *b.terms().rbegin();
  // Lex-leading term division; if b | a every remainder leading term is
  // divisible by lead(b).
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().rbegin();
    MultiPoly::Exponents d{};
    for (std::size_t i = 0; i < n; ++i) {
      if (re[i] < lead_e[i]) return false;
      d[i] = re[i] - lead_e[i];
    }
    const Rational c = rc / lead_c;
    q.add_term(d, c);
    rem -= b.times_monomial(d, c);
  }
  if (quotient) *quotient = std::move(q);
  return true;
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly q;
  if (!try_exact_div(a, b, &q)) throw NotDivisible("polynomial is not divisible");
  return q;
}

}  // namespace bscycles
