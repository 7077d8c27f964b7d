#include "doctest.h"

#include "bscycles/twisted_section.hpp"
#include "bscycles/weyl.hpp"

#include <random>

using namespace bscycles;

namespace {

WeylElem X(std::size_t n, std::size_t i = 0) { return WeylElem::x(n, i); }
WeylElem D(std::size_t n, std::size_t i = 0) { return WeylElem::d(n, i); }
WeylElem S(std::size_t n) { return WeylElem::s(n); }
WeylElem C(std::size_t n, const Rational& c) { return WeylElem::constant(n, c); }

WeylElem random_op(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> e(0, 2), coeff(-3, 3), count(1, 3);
  WeylElem r(n);
  const int k = count(rng);
  for (int t = 0; t < k; ++t) {
    WeylMonomial m;
    for (std::size_t i = 0; i < n; ++i) {
      m.x(i) = std::uint16_t(e(rng));
      m.d(i) = std::uint16_t(e(rng));
    }
    m.s() = std::uint16_t(e(rng) % 2);
    r.add_term(m, Rational(coeff(rng)));
  }
  return r;
}

MultiPoly poly_x(std::size_t n, std::size_t i = 0) { return MultiPoly::variable(n, i); }

}  // namespace

TEST_CASE("weyl_mul examples") {
  CHECK(D(1) * X(1) == X(1) * D(1) + C(1, 1));
  WeylMonomial xd;
  xd.x(0) = 1;
  xd.d(0) = 1;
  CHECK((D(1) * X(1)).terms().count(xd) == 1);
  CHECK(S(1) * D(1) == D(1) * S(1));
  CHECK(D(1).pow(2) * X(1) == X(1) * D(1).pow(2) + C(1, 2) * D(1));
  // different variables commute
  CHECK(D(2, 1) * X(2, 0) == X(2, 0) * D(2, 1));
}

TEST_CASE("weyl_mul associativity on random triples") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const WeylElem a = random_op(rng, n), b = random_op(rng, n), c = random_op(rng, n);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("apply examples") {
  auto fx = Hypersurface::make(poly_x(1));
  const auto fs = TwistedSection::power(fx, 0);
  const auto r = apply(D(1), fs);
  CHECK(r.fpower() == 1);
  CHECK(r.numerator() == MultiPoly::variable(2, 1));  // s * x^(s-1)

  CHECK(apply(D(1) * X(1) - X(1) * D(1), fs) == fs);

  auto fx2 = Hypersurface::make(poly_x(1).pow(2));
  const auto r2 = apply(D(1), TwistedSection::power(fx2, 0));
  // 2 s x (x^2)^(s-1)
  CHECK(r2.fpower() == 1);
  CHECK(r2.numerator() == MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1) * Rational(2));

  // (1/4) d^2 (x^2)^(s+1) = (s+1)(s+1/2) (x^2)^s
  const auto lhs = apply(C(1, Rational(1, 4)) * D(1).pow(2), TwistedSection::power(fx2, 1));
  const MultiPoly s = MultiPoly::variable(2, 1), one = MultiPoly::constant(2, Rational(1));
  const auto rhs = TwistedSection(fx2, (s + one) * (s + Rational(1, 2) * one), 0);
  CHECK(lhs == rhs);
}

TEST_CASE("eval_at_s examples") {
  auto fx = Hypersurface::make(poly_x(1));
  const MultiPoly s = MultiPoly::variable(2, 1);
  auto e = eval_at_s(TwistedSection(fx, s, 1), 2, 0);
  CHECK(e.numerator == MultiPoly::constant(1, 2));
  CHECK(e.fpower == 1);
  CHECK(eval_at_s(TwistedSection::zero(fx), 5, 0).numerator.is_zero());
  CHECK(eval_at_s(TwistedSection(fx, s * s + s, 0), -1, 0).numerator.is_zero());
}

TEST_CASE("apply is a module action and output is canonical") {
  std::mt19937 rng(9);
  const std::vector<MultiPoly> fs = {
      poly_x(1).pow(2),
      poly_x(2, 0) * poly_x(2, 1),
      poly_x(2, 0).pow(2) + poly_x(2, 1).pow(3),
  };
  for (int trial = 0; trial < 45; ++trial) {
    const auto& f = fs[trial % fs.size()];
    auto h = Hypersurface::make(f);
    const std::size_t n = f.arity();
    const WeylElem a = random_op(rng, n), b = random_op(rng, n);
    const auto u = TwistedSection::power(h, int(trial % 3) - 1);
    const auto ab = apply(a * b, u);
    CHECK(ab == apply(a, apply(b, u)));
    if (ab.fpower() > 0) {
      MultiPoly q;
      CHECK_FALSE(try_exact_div(ab.numerator(), h->f_xs, &q));
    }
  }
}
