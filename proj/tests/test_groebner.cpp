#include "doctest.h"

#include "bscycles/groebner.hpp"
#include "bscycles/linear_solve.hpp"

#include <random>

using namespace bscycles;

namespace {

WeylElem X(std::size_t n, std::size_t i = 0) { return WeylElem::x(n, i); }
WeylElem D(std::size_t n, std::size_t i = 0) { return WeylElem::d(n, i); }
WeylElem S(std::size_t n) { return WeylElem::s(n); }
WeylElem C(std::size_t n, const Rational& c) { return WeylElem::constant(n, c); }
FreeModElem V(const WeylElem& e) { return FreeModElem::scalar(e); }

const TermOrder kElim = TermOrder::elimination();

WeylElem random_op(std::mt19937& rng, std::size_t n, int max_e) {
  std::uniform_int_distribution<int> e(0, max_e), coeff(-3, 3), count(1, 3);
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

}  // namespace

TEST_CASE("buchberger examples") {
  auto g = left_ideal({X(1), D(1)}, TermOrder::degrevlex());
  CHECK(g.is_unit());
  REQUIRE(g.size() == 1);
  CHECK(g.generators()[0][0] == C(1, 1));

  g = left_ideal({D(1)}, TermOrder::degrevlex());
  REQUIRE(g.size() == 1);
  CHECK(g.generators()[0][0] == D(1));

  // Left ideal: x*d = d*x - 1 is -1 modulo I, so x*d - s leaves s + 1.
  g = left_ideal({X(1) * D(1) - S(1), X(1)}, kElim);
  CHECK(intersect_center(g) == SPoly({1, 1}));
  CHECK(g.contains(S(1) + C(1, 1)));
  CHECK_FALSE(g.contains(S(1)));
}

TEST_CASE("normal_form examples") {
  const auto g = left_ideal({X(1)}, TermOrder::degrevlex());
  CHECK(g.normal_form(V(X(1) * D(1) + C(1, 1))).is_zero());
  CHECK(g.normal_form(V(X(1) * D(1))) == V(C(1, -1)));
  CHECK(g.normal_form(V(WeylElem(1))).is_zero());
  for (const auto& gen : g.generators()) CHECK(g.normal_form(gen).is_zero());
}

TEST_CASE("intersect_center examples") {
  CHECK(intersect_center(left_ideal({S(1) - C(1, 3)}, kElim)) == SPoly({-3, 1}));
  CHECK(intersect_center(left_ideal({D(1)}, kElim)).is_zero());
  CHECK(intersect_center(left_ideal({X(1) * D(1) - S(1), D(1)}, kElim)) == SPoly::s());
  // Annihilator of x^s plus x: the b-function of x.
  CHECK(intersect_center(left_ideal({X(1) * D(1) - S(1), X(1)}, kElim)) == SPoly({1, 1}));
}

TEST_CASE("kernel examples") {
  auto k = kernel({V(C(1, 1))}, 1, {}, 1);
  CHECK(k.size() == 0);
  k = kernel({V(WeylElem(1))}, 1, {}, 1);
  REQUIRE(k.size() == 1);
  CHECK(k.generators()[0] == V(C(1, 1)));
  k = kernel({V(X(1))}, 1, {V(X(1).pow(2))}, 1);
  REQUIRE(k.size() == 1);
  CHECK(k.generators()[0] == V(X(1)));
}

// Ideals of the shape met in practice: annihilators plus powers of f.
std::vector<std::vector<WeylElem>> structured_ideals() {
  const WeylElem x = X(2, 0), y = X(2, 1), dx = D(2, 0), dy = D(2, 1), s = S(2);
  return {
      {X(1) * D(1) - C(1, 2) * S(1), X(1).pow(2)},
      {X(1) * D(1) - C(1, 3) * S(1) + C(1, 3), X(1).pow(3), (S(1) + C(1, 1)).pow(2)},
      {x * dx - s, y * dy - s, x * y},
      {x * dx + y * dy - C(2, 2) * s, y * dx - x * dy, x * x + y * y},
      {C(2, 3) * x * dx + C(2, 2) * y * dy - C(2, 6) * s, C(2, 3) * y * y * dx - C(2, 2) * x * dy},
  };
}

TEST_CASE("ideal membership of random left combinations") {
  std::mt19937 rng(17);
  const auto ideals = structured_ideals();
  for (int trial = 0; trial < 20; ++trial) {
    const auto& gens = ideals[trial % ideals.size()];
    const std::size_t n = gens[0].arity();
    const auto g = left_ideal(gens, trial % 2 ? kElim : TermOrder::degrevlex());
    for (const auto& gen : gens) CHECK(g.contains(gen));
    WeylElem c(n);
    for (const auto& gen : gens) c += random_op(rng, n, 2) * gen;
    CHECK(g.contains(c));
    // normal form is idempotent and differs from the input by an ideal element
    const WeylElem probe = random_op(rng, n, 2);
    const FreeModElem nf = g.normal_form(V(probe));
    CHECK(g.normal_form(nf) == nf);
    CHECK(g.contains(V(probe) - nf));
  }
}

TEST_CASE("buchberger is deterministic") {
  for (const auto& gens : structured_ideals()) {
    const auto a = left_ideal(gens, TermOrder::degrevlex());
    const auto b = left_ideal(gens, TermOrder::degrevlex());
    CHECK(a.generators() == b.generators());
    // input order does not change the reduced basis
    std::vector<WeylElem> reversed(gens.rbegin(), gens.rend());
    CHECK(left_ideal(reversed, TermOrder::degrevlex()).generators() == a.generators());
  }
}

TEST_CASE("elimination soundness") {
  const std::vector<std::vector<WeylElem>> ideals = {
      {X(1) * D(1) - C(1, 2) * S(1), X(1).pow(2)},
      {X(2, 0) * D(2, 0) - S(2), X(2, 1) * D(2, 1) - S(2), X(2, 0) * X(2, 1)},
  };
  for (const auto& gens : ideals) {
    const auto g = left_ideal(gens, kElim);
    const SPoly b = intersect_center(g);
    REQUIRE_FALSE(b.is_zero());
    CHECK(g.contains(WeylElem::from_spoly(gens[0].arity(), b)));
  }
}

TEST_CASE("budget exhaustion is reported") {
  GroebnerBudget tiny;
  tiny.max_pairs = 1;
  CHECK_THROWS_AS(left_ideal({X(2, 0) * D(2, 0) - S(2), X(2, 1) * D(2, 1) - S(2),
                              X(2, 0) * X(2, 1)},
                             kElim, tiny),
                  ResourceBudgetExceeded);
}

// Brute-force check: no syzygy of degree <= 2 outside the returned kernel.
TEST_CASE("kernel agrees with degree-bounded syzygy search") {
  const std::size_t n = 1;
  std::vector<FreeModElem> images = {V(X(1) * D(1)), V(X(1).pow(2))};
  const std::vector<FreeModElem> rels = {V(D(1).pow(2))};
  const auto k = kernel(images, 1, rels, n);
  for (const auto& z : k.generators()) {
    FreeModElem img = combine(z.components(), images);
    CHECK(left_ideal({D(1).pow(2)}, TermOrder::degrevlex()).contains(img));
  }
  // monomials of total degree <= 2 in (x, d)
  std::vector<WeylMonomial> monos;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      WeylMonomial m;
      m.x(0) = std::uint16_t(a);
      m.d(0) = std::uint16_t(b);
      monos.push_back(m);
    }
  // unknowns: coefficients of a_1, a_2 over monos, and of a relation multiplier
  // c over monos of degree <= 3; equation a_1 img1 + a_2 img2 - c rel = 0.
  std::vector<WeylMonomial> rel_monos;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      WeylMonomial m;
      m.x(0) = std::uint16_t(a);
      m.d(0) = std::uint16_t(b);
      rel_monos.push_back(m);
    }
  std::vector<WeylElem> columns;
  for (std::size_t which = 0; which < 2; ++which)
    for (const auto& m : monos)
      columns.push_back(WeylElem::monomial(n, m, 1) * images[which][0]);
  for (const auto& m : rel_monos) columns.push_back(WeylElem::monomial(n, m, -1) * rels[0][0]);
  std::map<WeylMonomial, std::size_t> row_index;
  for (const auto& c : columns)
    for (const auto& [m, v] : c.terms()) row_index.emplace(m, row_index.size());
  QMatrix a = QMatrix::Zero(Eigen::Index(row_index.size()), Eigen::Index(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [m, v] : columns[j].terms()) a(Eigen::Index(row_index[m]), Eigen::Index(j)) = v;
  const auto null = nullspace(a);
  CHECK_FALSE(null.empty());
  for (const auto& v : null) {
    FreeModElem z(n, 2);
    for (std::size_t which = 0; which < 2; ++which)
      for (std::size_t i = 0; i < monos.size(); ++i)
        z[which].add_term(monos[i], v(Eigen::Index(which * monos.size() + i)));
    CHECK(k.contains(z));
  }
}
