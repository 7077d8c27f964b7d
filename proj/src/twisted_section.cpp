#include "bscycles/twisted_section.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace bscycles {

std::shared_ptr<const Hypersurface> Hypersurface::make(const MultiPoly& f) {
  if (f.arity() == 0 || f.arity() > kMaxArity)
    throw std::invalid_argument("hypersurface arity must be 1..3");
  auto h = std::make_shared<Hypersurface>();
  h->f = f;
  h->n = f.arity();
  h->f_xs = f.extend(f.arity() + 1);
  return h;
}

TwistedSection::TwistedSection(HypersurfacePtr f, MultiPoly numerator, int fpower)
    : f_(std::move(f)), numerator_(std::move(numerator)), fpower_(fpower) {
  if (!f_) throw std::invalid_argument("TwistedSection without hypersurface");
  if (numerator_.arity() != f_->n + 1)
    throw std::invalid_argument("TwistedSection numerator must live in (x, s)");
  if (fpower_ < 0) throw std::invalid_argument("TwistedSection fpower must be >= 0");
  canonicalize();
}

TwistedSection TwistedSection::power(HypersurfacePtr f, int k) {
  const std::size_t arity = f->n + 1;
  if (k >= 0) {
    MultiPoly num = f->f_xs.pow(unsigned(k));
    return TwistedSection(std::move(f), std::move(num), 0);
  }
  return TwistedSection(std::move(f), MultiPoly::constant(arity, Rational(1)), -k);
}

TwistedSection TwistedSection::zero(HypersurfacePtr f) {
  const std::size_t arity = f->n + 1;
  return TwistedSection(std::move(f), MultiPoly(arity), 0);
}

void TwistedSection::canonicalize() {
  if (numerator_.is_zero()) {
    fpower_ = 0;
    return;
  }
  MultiPoly q;
  while (fpower_ > 0 && try_exact_div(numerator_, f_->f_xs, &q)) {
    numerator_ = std::move(q);
    --fpower_;
  }
}

MultiPoly TwistedSection::numerator_at(int m) const {
  if (m < fpower_) throw std::invalid_argument("numerator_at: target power too small");
  return numerator_ * f_->f_xs.pow(unsigned(m - fpower_));
}

TwistedSection& TwistedSection::operator+=(const TwistedSection& other) {
  if (f_ != other.f_ && !(f_->f == other.f_->f))
    throw std::invalid_argument("adding sections over different hypersurfaces");
  const int m = std::max(fpower_, other.fpower_);
  numerator_ = numerator_at(m) + other.numerator_at(m);
  fpower_ = m;
  canonicalize();
  return *this;
}

bool operator==(const TwistedSection& a, const TwistedSection& b) {
  // Canonical forms are unique.
  return a.fpower_ == b.fpower_ && a.numerator_ == b.numerator_;
}

std::string TwistedSection::to_string() const {
  auto names = default_variable_names(f_->n);
  names.push_back("s");
  return "(" + numerator_.to_string(names) + ")*f^(s-" + std::to_string(fpower_) + ")";
}

namespace {

TwistedSection apply_derivation(const TwistedSection& u, std::size_t i) {
  const auto& h = *u.hypersurface();
  const std::size_t arity = h.n + 1;
  const int m = u.fpower();
  const MultiPoly& p = u.numerator();
  // s - m as a polynomial in (x, s).
  const MultiPoly s_minus_m =
      MultiPoly::variable(arity, h.n) - MultiPoly::constant(arity, Rational(m));
  MultiPoly num = h.f_xs * p.derivative(i) + s_minus_m * p * h.f_xs.derivative(i);
  return TwistedSection(u.hypersurface(), std::move(num), m + 1);
}

}  // namespace

TwistedSection apply(const WeylElem& op, const TwistedSection& u) {
  const auto& h = u.hypersurface();
  if (op.arity() != h->n) throw std::invalid_argument("apply: arity mismatch");
  const std::size_t n = h->n;
  // d^b u for each derivation multi-index b, memoized; d^b u is built from
  // d^(b - e_i) u where i is the first nonzero slot.
  using Index = std::array<std::uint16_t, kMaxArity>;
  std::map<Index, TwistedSection> derived;
  derived.emplace(Index{}, u);
  std::function<const TwistedSection&(const Index&)> derive =
      [&](const Index& b) -> const TwistedSection& {
    auto it = derived.find(b);
    if (it != derived.end()) return it->second;
    std::size_t i = 0;
    while (b[i] == 0) ++i;
    Index prev = b;
    prev[i] -= 1;
    TwistedSection value = apply_derivation(derive(prev), i);
    return derived.emplace(b, std::move(value)).first->second;
  };

  int target = 0;
  std::vector<std::pair<const TwistedSection*, std::pair<WeylMonomial, Rational>>> pieces;
  for (const auto& [mono, c] : op.terms()) {
    Index b{};
    for (std::size_t i = 0; i < n; ++i) b[i] = mono.d(i);
    const TwistedSection& du = derive(b);
    target = std::max(target, du.fpower());
    pieces.push_back({&du, {mono, c}});
  }
  MultiPoly total(n + 1);
  for (const auto& [du, term] : pieces) {
    const auto& [mono, c] = term;
    MultiPoly::Exponents e{};
    for (std::size_t i = 0; i < n; ++i) e[i] = mono.x(i);
    e[n] = mono.s();
    total += du->numerator_at(target).times_monomial(e, c);
  }
  return TwistedSection(h, std::move(total), target);
}

SpecializedSection eval_at_s(const TwistedSection& u, const Rational& a, int k) {
  const std::size_t n = u.hypersurface()->n;
  const MultiPoly specialized = u.numerator().substitute(n, a);
  MultiPoly reduced(n);
  for (const auto& [e, c] : specialized.terms()) reduced.add_term(e, c);
  return {std::move(reduced), u.fpower() + k};
}

}  // namespace bscycles
