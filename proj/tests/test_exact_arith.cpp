#include "doctest.h"

#include "bscycles/linear_solve.hpp"
#include "bscycles/multipoly.hpp"
#include "bscycles/spoly.hpp"

#include <random>

using namespace bscycles;

namespace {

MultiPoly x1() { return MultiPoly::variable(1, 0); }
MultiPoly one1() { return MultiPoly::constant(1, Rational(1)); }

MultiPoly random_poly(std::mt19937& rng, std::size_t arity, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg), coeff(-4, 4);
  MultiPoly p(arity);
  for (int t = 0; t < terms; ++t) {
    MultiPoly::Exponents e{};
    for (std::size_t i = 0; i < arity; ++i) e[i] = std::uint16_t(deg(rng));
    p.add_term(e, Rational(coeff(rng)));
  }
  return p;
}

SPoly sp(std::initializer_list<Rational> c) { return SPoly(std::vector<Rational>(c)); }

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(to_string(Rational(4)) == "4");
  CHECK(parse_rational("-5/6") == Rational(-5, 6));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(floor(Rational(-5, 6)) == -1);
  CHECK(fractional_part(Rational(-5, 6)) == Rational(1, 6));
}

TEST_CASE("poly_arith examples") {
  const MultiPoly a = x1() + one1(), b = x1() - one1();
  CHECK(a * b == x1().pow(2) - one1());
  CHECK(exact_div(x1().pow(2) - one1(), a) == b);
  CHECK_THROWS_AS(exact_div(x1().pow(2) + one1(), a), NotDivisible);
}

TEST_CASE("exact_div round trip on random polynomials") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t arity = 1 + trial % 3;
    MultiPoly a = random_poly(rng, arity, 3, 4);
    MultiPoly b = random_poly(rng, arity, 2, 3);
    if (b.is_zero()) continue;
    CHECK(exact_div(a * b, b) == a);
  }
}

TEST_CASE("rational_roots examples") {
  // (s + 1)(s + 1/2) = s^2 + 3/2 s + 1/2
  auto d = rational_roots(sp({Rational(1, 2), Rational(3, 2), 1}));
  REQUIRE(d.roots.size() == 2);
  CHECK(d.roots[0] == RationalRoot{-1, 1});
  CHECK(d.roots[1] == RationalRoot{Rational(-1, 2), 1});
  CHECK(d.residual == SPoly::constant(1));

  d = rational_roots(sp({1, 0, 1}));
  CHECK(d.roots.empty());
  CHECK(d.residual == sp({1, 0, 1}));

  d = rational_roots(sp({1, 2, 1}));
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0] == RationalRoot{-1, 2});
  CHECK(d.residual == SPoly::constant(1));
}

TEST_CASE("rational_roots reconstruction") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6), mult(1, 3), count(0, 3);
  for (int trial = 0; trial < 80; ++trial) {
    SPoly p = SPoly::constant(Rational(den(rng)));
    // a random irreducible-ish quadratic residual every few trials
    if (trial % 4 == 0) p = p * sp({2, 0, 1});
    const int k = count(rng);
    for (int i = 0; i < k; ++i)
      p = p * SPoly::linear_factor(Rational(num(rng), den(rng))).pow(unsigned(mult(rng)));
    const auto d = rational_roots(p);
    SPoly rebuilt = d.residual;
    for (const auto& r : d.roots) rebuilt = rebuilt * SPoly::linear_factor(r.root).pow(r.multiplicity);
    CHECK(rebuilt == p);
    CHECK(rational_roots(d.residual).roots.empty());
    for (std::size_t i = 1; i < d.roots.size(); ++i) CHECK(d.roots[i - 1].root < d.roots[i].root);
  }
}

TEST_CASE("spoly helpers") {
  const SPoly p = sp({1, 1});  // s + 1
  CHECK(p.shift(2) == sp({3, 1}));
  CHECK(p.evaluate(-1) == 0);
  const SPoly m = sp({0, 0, 1});  // s^2
  const SPoly inv = inverse_mod(p, m);
  CHECK((inv * p).divmod(m).second == SPoly::constant(1));
  CHECK(root_multiplicity(sp({1, 2, 1}), -1) == 2);
  CHECK(root_multiplicity(sp({1, 2, 1}), 1) == 0);
}

TEST_CASE("solve_linear_exact examples") {
  QMatrix a = QMatrix::Identity(2, 2);
  QVector b(2);
  b << 1, 2;
  auto sol = solve_linear_exact(a, b);
  REQUIRE(sol);
  CHECK(sol->particular(0) == 1);
  CHECK(sol->particular(1) == 2);
  CHECK(sol->nullspace.empty());

  QMatrix row(1, 2);
  row << 1, 1;
  QVector zero = QVector::Zero(1);
  sol = solve_linear_exact(row, zero);
  REQUIRE(sol);
  CHECK(sol->nullspace.size() == 1);

  QMatrix col(2, 1);
  col << 1, 1;
  QVector rhs(2);
  rhs << 0, 1;
  CHECK_FALSE(solve_linear_exact(col, rhs).has_value());
}

TEST_CASE("solve_linear_exact random systems verify by substitution") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-3, 3), dim(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = dim(rng), c = dim(rng);
    QMatrix a(r, c);
    QVector x(c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = entry(rng);
    for (int j = 0; j < c; ++j) x(j) = entry(rng);
    const QVector b = a * x;
    auto sol = solve_linear_exact(a, b);
    REQUIRE(sol);
    CHECK(is_exact_zero(QVector(a * sol->particular - b)));
    for (const auto& v : sol->nullspace) CHECK(is_exact_zero(QVector(a * v)));
  }
}
