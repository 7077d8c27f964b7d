#include "doctest.h"

#include "bscycles/jordan.hpp"
#include "bscycles/parse.hpp"

#include <chrono>
#include <random>

using namespace bscycles;

namespace {

QMatrix qmat(std::initializer_list<std::initializer_list<Rational>> rows) {
  QMatrix m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

const SymScalar tau = SymScalar::tau();

}  // namespace

TEST_CASE("SymScalar arithmetic") {
  const SymScalar a({Rational(1), Rational(2)}, Rational(1, 2));
  const SymScalar b({Rational(0), Rational(-1)}, Rational(1, 2));
  CHECK((a + b) == SymScalar({Rational(1), Rational(1)}, Rational(1, 2)));
  CHECK((a * b).exponent() == Rational(1));
  CHECK((a * b).tau_coeffs() == std::vector<Rational>{0, -1, -2});
  CHECK((a - a).is_zero());
  CHECK((a - a).exponent() == 0);
  CHECK((SymScalar() + a) == a);
  CHECK_THROWS_AS(a + SymScalar(1), std::domain_error);
  CHECK(SymScalar::exp_neg_tau(Rational(1, 3)) * SymScalar::exp_neg_tau(Rational(-1, 3)) ==
        SymScalar(1));
  CHECK(a.to_json().dump() == R"({"exp_neg_tau":"1/2","tau":["1","2"]})");
}

TEST_CASE("connection_matrix examples") {
  CHECK(connection_matrix(Rational(2, 7), 1).matrix == qmat({{Rational(2, 7)}}));
  CHECK(connection_matrix(0, 2).matrix == qmat({{0, 1}, {0, 0}}));
  const auto j = connection_matrix(Rational(1, 2), 3);
  CHECK(j.matrix == Rational(1, 2) * QMatrix::Identity(3, 3) + qmat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(is_exact_zero(matrix_power(j.nilpotent(), 3)));
  CHECK_THROWS_AS(connection_matrix(0, 0), std::invalid_argument);
}

TEST_CASE("monodromy examples") {
  const Rational a(1, 3);
  auto t = monodromy(a, 1);
  CHECK(t(0, 0) == SymScalar::exp_neg_tau(a));
  t = monodromy(0, 2);
  CHECK(t(0, 0) == SymScalar(1));
  CHECK(t(0, 1) == -tau);
  CHECK(t(1, 0) == SymScalar(0));
  CHECK(t(1, 1) == SymScalar(1));
  // third order: entry (0, 2) is tau^2 / 2
  t = monodromy(0, 3);
  CHECK(t(0, 2) == SymScalar({0, 0, Rational(1, 2)}, 0));
  CHECK(log_unipotent_part(monodromy(a, 3), a) ==
        to_sym(connection_matrix(a, 3).nilpotent()) * (-tau));
}

TEST_CASE("property: monodromy exactness for m <= 6") {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& a : {Rational(0), Rational(1, 2), Rational(1, 3), Rational(5, 6)})
    for (int m = 1; m <= 6; ++m) {
      INFO("alpha=" << to_string(a) << " m=" << m);
      const auto c = check_monodromy(a, m);
      CHECK(c.annihilated);
      CHECK(c.order_exact);
      CHECK(c.log_unipotent);
      CHECK(c.direct_system);
    }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("phi_infty_check examples") {
  const Rational a(1, 2);
  auto r = phi_infty_check(2, qmat({{a, 1}, {0, a}}), a, 4);
  CHECK(r.kernel_dim == 2);
  CHECK(r.nilpotency == 2);
  CHECK(r.window_surjective);
  CHECK(r.pass());

  r = phi_infty_check(2, (a + 1) * QMatrix::Identity(2, 2), a);
  CHECK(r.alpha_dim == 0);
  CHECK(r.kernel_dim == 0);
  CHECK(r.truncation == 2);
  CHECK(r.pass());

  r = phi_infty_check(1, qmat({{a}}), a);
  CHECK(r.kernel_dim == 1);
  CHECK(r.nilpotency == 1);
  CHECK(r.pass());

  // default truncation is r + 2; below r + 1 is rejected
  CHECK(phi_infty_check(2, qmat({{0, 1}, {0, 0}}), 0).truncation == 4);
  CHECK_THROWS_AS(phi_infty_check(2, qmat({{0, 1}, {0, 0}}), 0, 2), TruncationTooSmall);
  CHECK(phi_infty_check(2, qmat({{0, 1}, {0, 0}}), 0, 3).pass());
  CHECK_THROWS_AS(phi_infty_check(3, qmat({{0}}), 0), std::invalid_argument);
}

TEST_CASE("property: phi_infty_check on 200 random instances") {
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<int> entry(-3, 3), size(1, 5), pick(0, 2), coin(0, 1);
  const Rational alphas[] = {0, 1, -1};
  int with_eigen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = size(rng);
    const Rational a = alphas[pick(rng)];
    QMatrix phi(d, d);
    // half the instances upper triangular with alpha forced onto the diagonal
    const bool structured = coin(rng) == 1;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        phi(i, j) = (structured && j < i) ? Rational(0) : Rational(entry(rng));
    if (structured)
      for (int i = 0; i < d; ++i)
        if (coin(rng) == 1) phi(i, i) = a;
    INFO("trial " << trial);
    const auto r = phi_infty_check(d, phi, a);
    CHECK(r.pass());
    CHECK(r.kernel_dim == r.alpha_dim);
    if (r.alpha_dim > 0) ++with_eigen;
  }
  CHECK(with_eigen >= 50);
}

TEST_CASE("btwist_annihilation examples") {
  CHECK(btwist_annihilation(make_context(parse_poly("x")), 0, 1));
  CHECK(btwist_annihilation(make_context(parse_poly("x")), Rational(1, 3), 2));
  CHECK(btwist_annihilation(make_context(parse_poly("x^2")), 0, 2));
  // the polynomial in S: b(S - alpha)^m
  CHECK(btwist_polynomial(SPoly::linear_factor(-1), Rational(1, 3), 2) ==
        SPoly::linear_factor(Rational(-2, 3)).pow(2));
}

TEST_CASE("twisted action matrix") {
  const auto ctx = make_context(parse_poly("x"));
  const TwistedJordanModule mod(ctx, Rational(1, 2), 3);
  // S e_2 = (s + 1/2) e_2 - e_1
  const auto comps = mod.act(SPoly::s(), 2);
  CHECK(comps[2] == WeylElem::s(1) + WeylElem::constant(1, Rational(1, 2)));
  CHECK(comps[1] == WeylElem::constant(1, -1));
  CHECK(comps[0].is_zero());
  // S^2 e_2 = (s + 1/2)^2 e_2 - 2 (s + 1/2) e_1 + e_0
  const auto sq = mod.act(SPoly::s().pow(2), 2);
  CHECK(sq[0] == WeylElem::constant(1, 1));
  CHECK(sq[1] == WeylElem::constant(1, -2) * (WeylElem::s(1) + WeylElem::constant(1, Rational(1, 2))));
}

TEST_CASE("property: btwist annihilation on the catalog grid, with a designed failure") {
  int failures_below = 0;
  for (const auto& f : {"x", "x^2", "x^3", "x^4", "x*y", "x^2 + y^2", "x^2 + y^3"}) {
    const auto ctx = make_context(parse_poly(f));
    for (const auto& a : {Rational(0), Rational(1, 2), Rational(1, 3)})
      for (int m = 1; m <= 3; ++m) {
        INFO(f << " alpha=" << to_string(a) << " m=" << m);
        CHECK(btwist_annihilation(ctx, a, m));
        if (!btwist_annihilation(ctx, a, m, m - 1)) ++failures_below;
      }
  }
  CHECK(failures_below >= 1);
  // multiple root: x*y has b = (s+1)^2; exponent m - 1 fails at m = 2
  CHECK_FALSE(btwist_annihilation(make_context(parse_poly("x*y")), 0, 2, 1));
}

TEST_CASE("monodromy correspondence") {
  auto r = monodromy_correspondence_report(*make_context(parse_poly("x")), 0);
  CHECK(r.nonzero);
  CHECK(r.unipotent_order == 1);
  CHECK(r.order_matches);
  CHECK(r.example_scalar);
  auto j = r.to_json();
  CHECK(j["lambda"]["exp2pii"] == "0");

  r = monodromy_correspondence_report(*make_context(parse_poly("x^2")), Rational(1, 2));
  CHECK(r.unipotent_order == 1);
  j = r.to_json();
  CHECK(j["half_integer"] == true);
  CHECK(j["monodromy_scalar"]["exp_neg_tau"] == "1/2");

  r = monodromy_correspondence_report(*make_context(parse_poly("x*y")), 0);
  CHECK(r.unipotent_order == 2);
  CHECK(r.order_matches);
}
