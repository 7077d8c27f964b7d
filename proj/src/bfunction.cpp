#include "bscycles/bfunction.hpp"

#include "bscycles/linear_solve.hpp"
#include "bscycles/parse.hpp"
#include "bscycles/twisted_section.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace bscycles {

DegreeBounds default_bounds(const MultiPoly& f) {
  const int d = f.total_degree();
  return {3 * d, d};
}

namespace {

// b(s) as a polynomial in (x, s).
MultiPoly spoly_in_xs(const SPoly& b, std::size_t n) {
  MultiPoly r(n + 1);
  for (std::size_t j = 0; j < b.coefficients().size(); ++j) {
    MultiPoly::Exponents e{};
    e[n] = std::uint16_t(j);
    r.add_term(e, b.coefficients()[j]);
  }
  return r;
}

// x^a d^b s^e with |a| + |b| <= degree and e <= s_degree, ordered by
// (x, d)-degree, then s-degree, then exponents.
std::vector<WeylMonomial> operator_monomials(std::size_t n, int degree, int s_degree) {
  std::vector<WeylMonomial> out;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < n; ++i) slots.push_back(i);
  for (std::size_t i = 0; i < n; ++i) slots.push_back(kMaxArity + i);
  WeylMonomial m;
  // Enumerate exponent vectors of the 2n slots with sum <= degree.
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == slots.size()) {
      for (int e = 0; e <= s_degree; ++e) {
        m.s() = std::uint16_t(e);
        out.push_back(m);
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      m.e[slots[k]] = std::uint16_t(v);
      rec(k + 1, left - v);
    }
    m.e[slots[k]] = 0;
  };
  rec(0, degree);
  std::stable_sort(out.begin(), out.end(), [](const WeylMonomial& a, const WeylMonomial& b) {
    if (a.xd_degree() != b.xd_degree()) return a.xd_degree() < b.xd_degree();
    if (a.s() != b.s()) return a.s() < b.s();
    return a < b;
  });
  return out;
}

// d^b applied to a fixed section, memoized over derivation multi-indices.
class DerivativeTable {
 public:
  explicit DerivativeTable(TwistedSection base) { table_.emplace(Key{}, std::move(base)); }

  const TwistedSection& get(const WeylMonomial& m, std::size_t n) {
    Key k{};
    for (std::size_t i = 0; i < n; ++i) k[i] = m.d(i);
    return get(k, n);
  }

 private:
  using Key = std::array<std::uint16_t, kMaxArity>;

  const TwistedSection& get(const Key& k, std::size_t n) {
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
    std::size_t i = 0;
    while (k[i] == 0) ++i;
    Key prev = k;
    prev[i] -= 1;
    TwistedSection next = apply(WeylElem::d(n, i), get(prev, n));
    return table_.emplace(k, std::move(next)).first->second;
  }

  std::map<Key, TwistedSection> table_;
};

// Numerator of x^a s^e d^b u over f^(s - target).
MultiPoly column_numerator(const WeylMonomial& m, const TwistedSection& du, int target,
                           std::size_t n) {
  MultiPoly::Exponents e{};
  for (std::size_t i = 0; i < n; ++i) e[i] = m.x(i);
  e[n] = m.s();
  return du.numerator_at(target).times_monomial(e, Rational(1));
}

// Sparse linear system: one row per (x, s) exponent, one column per unknown.
class ColumnSystem {
 public:
  void add_column(std::size_t column, const MultiPoly& p) {
    for (const auto& [e, c] : p.terms()) rows_[e][column] += c;
    columns_ = std::max(columns_, column + 1);
  }

  SparseEchelon echelon() const {
    SparseEchelon ech(columns_);
    for (const auto& [e, row] : rows_) {
      SparseVector clean;
      for (const auto& [c, v] : row)
        if (v != 0) clean.emplace(c, v);
      if (!clean.empty()) ech.add_row(std::move(clean));
    }
    return ech;
  }

 private:
  std::map<MultiPoly::Exponents, std::map<std::size_t, Rational>> rows_;
  std::size_t columns_ = 0;
};

void require_input(const MultiPoly& f) {
  if (f.arity() == 0 || f.arity() > kMaxArity)
    throw std::invalid_argument("f must have 1..3 variables");
  if (f.total_degree() < 1) throw std::invalid_argument("f must be nonconstant");
}

}  // namespace

bool verify_certificate(const BCertificate& cert) {
  if (cert.b.is_zero() || cert.P.arity() != cert.f.arity()) return false;
  auto h = Hypersurface::make(cert.f);
  const TwistedSection lhs = apply(cert.P, TwistedSection::power(h, 1));
  const TwistedSection rhs(h, spoly_in_xs(cert.b, h->n), 0);
  return lhs == rhs;
}

BCertificate ansatz_bfunction(const MultiPoly& f, std::optional<DegreeBounds> bounds) {
  require_input(f);
  const DegreeBounds limit = bounds.value_or(default_bounds(f));
  const std::size_t n = f.arity();
  auto h = Hypersurface::make(f);
  DerivativeTable table(TwistedSection::power(h, 1));

  for (int d = 1; d <= limit.op_total_degree; ++d) {
    const auto monos = operator_monomials(n, d, limit.s_degree);
    int target = 0;
    for (const auto& m : monos) target = std::max(target, table.get(m, n).fpower());
    ColumnSystem system;
    for (std::size_t j = 0; j < monos.size(); ++j)
      system.add_column(j, column_numerator(monos[j], table.get(monos[j], n), target, n));
    // -s^j f^target columns for the unknown b; P f^(s+1) has s-degree at
    // most s_degree + d.
    const int max_b = limit.s_degree + d;
    const MultiPoly ft = h->f_xs.pow(unsigned(target));
    const std::size_t base = monos.size();
    for (int j = 0; j <= max_b; ++j) {
      MultiPoly::Exponents e{};
      e[n] = std::uint16_t(j);
      system.add_column(base + std::size_t(j), ft.times_monomial(e, Rational(-1)));
    }
    const SparseEchelon ech = system.echelon();
    for (int j = 0; j <= max_b; ++j) {
      const std::size_t col = base + std::size_t(j);
      if (ech.is_pivot(col)) continue;
      const auto x = ech.dependency(col);
      BCertificate cert;
      cert.f = f;
      std::vector<Rational> bc(std::size_t(j) + 1);
      for (int i = 0; i <= j; ++i) bc[std::size_t(i)] = x[base + std::size_t(i)];
      cert.b = SPoly(std::move(bc));
      cert.P = WeylElem(n);
      for (std::size_t i = 0; i < monos.size(); ++i) cert.P.add_term(monos[i], x[i]);
      cert.bounds = {d, limit.s_degree};
      cert.backend = "ansatz";
      cert.verified = verify_certificate(cert);
      if (!cert.verified) throw std::logic_error("ansatz certificate failed re-verification");
      return cert;
    }
  }
  throw NotFoundWithinBounds("no functional equation within operator degree " +
                             std::to_string(limit.op_total_degree) + " and s-degree " +
                             std::to_string(limit.s_degree));
}

std::vector<WeylElem> annihilator_search(const MultiPoly& f, int op_degree, int s_degree) {
  require_input(f);
  const std::size_t n = f.arity();
  auto h = Hypersurface::make(f);
  DerivativeTable table(TwistedSection::power(h, 0));
  const auto monos = operator_monomials(n, op_degree, s_degree);
  int target = 0;
  for (const auto& m : monos) target = std::max(target, table.get(m, n).fpower());
  ColumnSystem system;
  for (std::size_t j = 0; j < monos.size(); ++j)
    system.add_column(j, column_numerator(monos[j], table.get(monos[j], n), target, n));
  const SparseEchelon ech = system.echelon();
  std::vector<WeylElem> out;
  const auto f_s = TwistedSection::power(h, 0);
  for (const auto& v : ech.nullspace()) {
    WeylElem op(n);
    for (std::size_t i = 0; i < monos.size(); ++i) op.add_term(monos[i], v[i]);
    if (!apply(op, f_s).is_zero()) throw std::logic_error("annihilator failed verification");
    out.push_back(std::move(op));
  }
  return out;
}

SPoly groebner_bfunction(const MultiPoly& f, const GroebnerBudget& budget) {
  require_input(f);
  const std::size_t n = f.arity();
  auto gens = annihilator_search(f, std::max(2, f.total_degree()), 1);
  gens.push_back(WeylElem::from_poly(n, f));
  return intersect_center(left_ideal(gens, TermOrder::elimination(), budget));
}

LambdaSet lambda_set(const SPoly& b) {
  LambdaSet out;
  if (b.is_zero()) return out;
  const auto decomposition = rational_roots(b);
  out.unresolved = decomposition.residual.monic();
  std::map<Rational, LambdaClass> classes;
  for (const auto& r : decomposition.roots) {
    const Rational rep = fractional_part(r.root);
    auto& c = classes[rep];
    c.representative = rep;
    c.offsets.push_back(floor(r.root));
    c.multiplicities.push_back(r.multiplicity);
  }
  for (auto& [rep, c] : classes) out.classes.push_back(std::move(c));
  return out;
}

int stabilization_bound(const SPoly& b, const Rational& alpha) {
  if (b.is_zero()) return 0;
  int best = 0;
  for (const auto& r : rational_roots(b).roots) {
    const Rational diff = alpha - r.root;
    if (!is_integer(diff)) continue;
    const Integer d = boost::multiprecision::abs(numerator(diff));
    best = std::max(best, d.convert_to<int>() + 1);
  }
  return best;
}

SymmetryReport root_symmetry_check(const SPoly& b) {
  SymmetryReport report;
  if (b.is_zero()) return report;
  const auto roots = rational_roots(b).roots;
  for (const auto& r : roots) {
    const Rational target = fractional_part(-r.root);
    const bool found = std::any_of(roots.begin(), roots.end(), [&](const RationalRoot& q) {
      return fractional_part(q.root) == target;
    });
    if (!found) {
      report.pass = false;
      report.violations.push_back(r.root);
    }
  }
  return report;
}

nlohmann::json spoly_to_json(const SPoly& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : p.coefficients()) j.push_back(to_string(c));
  return j;
}

SPoly spoly_from_json(const nlohmann::json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(parse_rational(v.get<std::string>()));
  return SPoly(std::move(c));
}

nlohmann::json weyl_to_json(const WeylElem& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : e.terms()) {
    nlohmann::json t;
    t["c"] = to_string(c);
    std::vector<int> xs, ds;
    for (std::size_t i = 0; i < e.arity(); ++i) {
      xs.push_back(m.x(i));
      ds.push_back(m.d(i));
    }
    t["x"] = xs;
    t["d"] = ds;
    t["s"] = m.s();
    terms.push_back(std::move(t));
  }
  return terms;
}

WeylElem weyl_from_json(const nlohmann::json& j, std::size_t arity) {
  WeylElem e(arity);
  for (const auto& t : j) {
    WeylMonomial m;
    const auto xs = t.at("x").get<std::vector<int>>();
    const auto ds = t.at("d").get<std::vector<int>>();
    if (xs.size() != arity || ds.size() != arity)
      throw std::invalid_argument("operator term arity mismatch");
    for (std::size_t i = 0; i < arity; ++i) {
      if (xs[i] < 0 || ds[i] < 0) throw std::invalid_argument("negative exponent");
      m.x(i) = std::uint16_t(xs[i]);
      m.d(i) = std::uint16_t(ds[i]);
    }
    const int s = t.at("s").get<int>();
    if (s < 0) throw std::invalid_argument("negative exponent");
    m.s() = std::uint16_t(s);
    e.add_term(m, parse_rational(t.at("c").get<std::string>()));
  }
  return e;
}

nlohmann::json certificate_to_json(const BCertificate& cert) {
  nlohmann::json j;
  j["f"] = format_poly(cert.f);
  j["b"] = spoly_to_json(cert.b);
  j["P"] = weyl_to_json(cert.P);
  j["bounds"] = {{"op_total_degree", cert.bounds.op_total_degree},
                 {"s_degree", cert.bounds.s_degree}};
  j["backend"] = cert.backend;
  j["verified"] = cert.verified;
  return j;
}

BCertificate certificate_from_json(const nlohmann::json& j) {
  BCertificate cert;
  cert.f = parse_poly(j.at("f").get<std::string>());
  cert.b = spoly_from_json(j.at("b"));
  cert.P = weyl_from_json(j.at("P"), cert.f.arity());
  cert.bounds = {j.at("bounds").at("op_total_degree").get<int>(),
                 j.at("bounds").at("s_degree").get<int>()};
  cert.backend = j.at("backend").get<std::string>();
  cert.verified = verify_certificate(cert);
  return cert;
}

}  // namespace bscycles
