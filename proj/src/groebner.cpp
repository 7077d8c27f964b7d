#include "bscycles/groebner.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace bscycles {

using detail::GPoly;
using detail::GTerm;
using detail::ModTerm;

// ---------------------------------------------------------------- FreeModElem

FreeModElem::FreeModElem(std::size_t arity, std::size_t rank)
    : arity_(arity), components_(rank, WeylElem(arity)) {}

FreeModElem::FreeModElem(std::vector<WeylElem> components)
    : arity_(components.empty() ? 1 : components.front().arity()),
      components_(std::move(components)) {
  for (const auto& c : components_)
    if (c.arity() != arity_) throw std::invalid_argument("FreeModElem arity mismatch");
}

FreeModElem FreeModElem::unit(std::size_t arity, std::size_t rank, std::size_t i) {
  FreeModElem r(arity, rank);
  r.components_.at(i) = WeylElem::constant(arity, Rational(1));
  return r;
}

bool FreeModElem::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const WeylElem& c) { return c.is_zero(); });
}

FreeModElem& FreeModElem::operator+=(const FreeModElem& other) {
  if (other.rank() != rank()) throw std::invalid_argument("FreeModElem rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i) components_[i] += other.components_[i];
  return *this;
}

FreeModElem& FreeModElem::operator-=(const FreeModElem& other) {
  if (other.rank() != rank()) throw std::invalid_argument("FreeModElem rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i) components_[i] -= other.components_[i];
  return *this;
}

FreeModElem operator*(const WeylElem& r, const FreeModElem& v) {
  FreeModElem out(v.arity(), v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) out[i] = weyl_mul(r, v[i]);
  return out;
}

std::string FreeModElem::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rank(); ++i) out << (i ? ", " : "") << components_[i].to_string();
  out << "]";
  return out.str();
}

FreeModElem combine(const std::vector<WeylElem>& coefficients,
                    const std::vector<FreeModElem>& images) {
  if (coefficients.size() != images.size() || images.empty())
    throw std::invalid_argument("combine: size mismatch");
  FreeModElem out(images.front().arity(), images.front().rank());
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!coefficients[i].is_zero()) out += coefficients[i] * images[i];
  return out;
}

// ------------------------------------------------------------------ TermOrder

namespace {

// Variable slots in order x_0.., d_0.., s for a given arity.
const std::vector<std::size_t>& variable_slots(std::size_t arity) {
  static const auto table = [] {
    std::array<std::vector<std::size_t>, kMaxArity + 1> t;
    for (std::size_t n = 0; n <= kMaxArity; ++n) {
      for (std::size_t i = 0; i < n; ++i) t[n].push_back(i);
      for (std::size_t i = 0; i < n; ++i) t[n].push_back(kMaxArity + i);
      t[n].push_back(WeylMonomial::kS);
    }
    return t;
  }();
  return table.at(arity);
}

int revlex(const WeylMonomial& a, const WeylMonomial& b, const std::vector<std::size_t>& slots,
           std::size_t count) {
  for (std::size_t j = count; j-- > 0;) {
    const auto ea = a.e[slots[j]], eb = b.e[slots[j]];
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

}  // namespace

int TermOrder::compare(const WeylMonomial& a, const WeylMonomial& b, std::size_t arity) const {
  const auto& slots = variable_slots(arity);
  if (!weights.empty()) {
    if (weights.size() != slots.size())
      throw std::invalid_argument("term order weights must cover x, d and s");
    long wa = 0, wb = 0;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      wa += long(weights[j]) * a.e[slots[j]];
      wb += long(weights[j]) * b.e[slots[j]];
    }
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  if (kind == MonomialOrder::kDegRevLex) {
    const int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    return revlex(a, b, slots, slots.size());
  }
  const int da = a.xd_degree(), db = b.xd_degree();
  if (da != db) return da < db ? -1 : 1;
  if (int c = revlex(a, b, slots, slots.size() - 1); c != 0) return c;
  if (a.s() != b.s()) return a.s() < b.s() ? -1 : 1;
  return 0;
}

// ------------------------------------------------------------ polynomial core

namespace {

struct Ctx {
  std::size_t arity;
  TermOrder order;

  // Position over term, lower positions ranked higher.
  int cmp(const ModTerm& a, const ModTerm& b) const {
    if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
    return order.compare(a.mono, b.mono, arity);
  }
  bool less(const GTerm& a, const GTerm& b) const { return cmp(a.key, b.key) < 0; }

  void normalize(GPoly& p) const {
    std::sort(p.begin(), p.end(), [this](const GTerm& a, const GTerm& b) { return less(a, b); });
    GPoly out;
    out.reserve(p.size());
    for (auto& t : p) {
      if (!out.empty() && out.back().key == t.key) {
        out.back().coeff += t.coeff;
        if (out.back().coeff == 0) out.pop_back();
      } else if (t.coeff != 0) {
        out.push_back(std::move(t));
      }
    }
    p = std::move(out);
  }

  // a + c * b, with both inputs sorted.
  GPoly axpy(const GPoly& a, const Rational& c, const GPoly& b) const {
    GPoly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int k;
      if (i == a.size()) k = 1;
      else if (j == b.size()) k = -1;
      else k = cmp(a[i].key, b[j].key);
      if (k < 0) {
        out.push_back(a[i++]);
      } else if (k > 0) {
        out.push_back({b[j].key, c * b[j].coeff});
        ++j;
      } else {
        Rational v = a[i].coeff + c * b[j].coeff;
        if (v != 0) out.push_back({a[i].key, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // (monomial q) * p, left multiplication in the Weyl algebra.
  GPoly mul_left(const WeylMonomial& q, const GPoly& p) const {
    GPoly out;
    out.reserve(p.size());
    for (const auto& t : p) {
      weyl_monomial_product(arity, q, t.key.mono, t.coeff,
                            [&](const WeylMonomial& m, const Rational& c) {
                              out.push_back({{t.key.pos, m}, c});
                            });
    }
    normalize(out);
    return out;
  }

  GPoly from_elem(const FreeModElem& e) const {
    GPoly p;
    for (std::size_t i = 0; i < e.rank(); ++i)
      for (const auto& [m, c] : e[i].terms()) p.push_back({{std::uint32_t(i), m}, c});
    normalize(p);
    return p;
  }

  FreeModElem to_elem(const GPoly& p, std::size_t rank) const {
    FreeModElem e(arity, rank);
    for (const auto& t : p) e[t.key.pos].add_term(t.key.mono, t.coeff);
    return e;
  }

  void make_monic(GPoly& p) const {
    if (p.empty()) return;
    const Rational lc = p.back().coeff;
    if (lc == 1) return;
    for (auto& t : p) t.coeff /= lc;
  }
};

bool lead_divides(const ModTerm& a, const ModTerm& b) {
  return a.pos == b.pos && a.mono.divides(b.mono);
}

// Full reduction of g by `basis`; `skip` excludes one index (used for
// tail reduction of a basis against itself).
GPoly normal_form(const Ctx& ctx, GPoly g, const std::vector<GPoly>& basis,
                  std::size_t skip = std::size_t(-1)) {
  GPoly remainder;  // collected in descending order
  while (!g.empty()) {
    const GTerm lead = g.back();
    const GPoly* reducer = nullptr;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i == skip || basis[i].empty()) continue;
      if (lead_divides(basis[i].back().key, lead.key)) {
        reducer = &basis[i];
        break;
      }
    }
    if (!reducer) {
      remainder.push_back(lead);
      g.pop_back();
      continue;
    }
    const WeylMonomial q = lead.key.mono / reducer->back().key.mono;
    const GPoly qr = ctx.mul_left(q, *reducer);
    // Leading term of q * r is q * lm(r) with coefficient lc(r).
    g = ctx.axpy(g, -lead.coeff / qr.back().coeff, qr);
  }
  std::reverse(remainder.begin(), remainder.end());
  return remainder;
}

std::size_t max_bits(const GPoly& p) {
  std::size_t b = 0;
  for (const auto& t : p) b = std::max(b, bit_length(t.coeff));
  return b;
}

struct Pair {
  std::size_t i, j;
  int sugar;
  ModTerm lcm;
};

}  // namespace

// -------------------------------------------------------------- GroebnerBasis

GroebnerBasis::GroebnerBasis(std::size_t arity, std::size_t rank, TermOrder order,
                             std::vector<GPoly> polys)
    : arity_(arity), rank_(rank), order_(std::move(order)), polys_(std::move(polys)) {
  Ctx ctx{arity_, order_};
  for (const auto& p : polys_) generators_.push_back(ctx.to_elem(p, rank_));
}

bool GroebnerBasis::is_unit() const {
  std::vector<bool> seen(rank_, false);
  for (const auto& p : polys_)
    if (p.back().key.mono == WeylMonomial{}) seen[p.back().key.pos] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

FreeModElem GroebnerBasis::normal_form(const FreeModElem& e) const {
  if (e.rank() != rank_) throw std::invalid_argument("normal_form: rank mismatch");
  Ctx ctx{arity_, order_};
  return ctx.to_elem(bscycles::normal_form(ctx, ctx.from_elem(e), polys_), rank_);
}

bool GroebnerBasis::is_contained_in(const GroebnerBasis& other) const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const FreeModElem& g) { return other.contains(g); });
}

// ---------------------------------------------------------------- buchberger

GroebnerBasis buchberger(const std::vector<FreeModElem>& gens, std::size_t arity,
                         std::size_t rank, const TermOrder& order,
                         const GroebnerBudget& budget) {
  Ctx ctx{arity, order};
  std::vector<GPoly> basis;
  std::vector<int> sugar;
  std::vector<Pair> pairs;
  std::size_t processed = 0;

  auto degree_of = [](const GPoly& p) {
    int d = 0;
    for (const auto& t : p) d = std::max(d, t.key.mono.total_degree());
    return d;
  };

  auto check_bits = [&](const GPoly& p) {
    if (max_bits(p) > budget.max_coefficient_bits)
      throw ResourceBudgetExceeded("Groebner basis coefficient size exceeds budget");
  };

  auto insert = [&](GPoly h, int s) {
    ctx.make_monic(h);
    check_bits(h);
    const std::size_t t = basis.size();
    const ModTerm lt = h.back().key;
    // Chain criterion (Gebauer-Moeller B_k): drop (i, j) when lt divides
    // lcm(i, j) and the lcms with t both differ from it.
    std::vector<Pair> kept;
    for (const auto& p : pairs) {
      if (lt.pos == p.lcm.pos && lt.mono.divides(p.lcm.mono)) {
        const auto li = WeylMonomial::lcm(basis[p.i].back().key.mono, lt.mono);
        const auto lj = WeylMonomial::lcm(basis[p.j].back().key.mono, lt.mono);
        if (!(li == p.lcm.mono) && !(lj == p.lcm.mono)) continue;
      }
      kept.push_back(p);
    }
    pairs = std::move(kept);
    for (std::size_t i = 0; i < t; ++i) {
      const ModTerm li = basis[i].back().key;
      if (li.pos != lt.pos) continue;
      const WeylMonomial l = WeylMonomial::lcm(li.mono, lt.mono);
      const int si = sugar[i] + (l / li.mono).total_degree();
      const int st = s + (l / lt.mono).total_degree();
      pairs.push_back({i, t, std::max(si, st), {lt.pos, l}});
    }
    basis.push_back(std::move(h));
    sugar.push_back(s);
  };

  for (const auto& g : gens) {
    if (g.rank() != rank) throw std::invalid_argument("buchberger: generator rank mismatch");
    GPoly h = normal_form(ctx, ctx.from_elem(g), basis);
    if (h.empty()) continue;
    const int s = degree_of(h);
    insert(std::move(h), s);
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      const int c = ctx.cmp(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    const Pair p = *best;
    pairs.erase(best);
    if (++processed > budget.max_pairs)
      throw ResourceBudgetExceeded("Groebner basis pair budget exhausted");

    const GPoly& gi = basis[p.i];
    const GPoly& gj = basis[p.j];
    GPoly si = ctx.mul_left(p.lcm.mono / gi.back().key.mono, gi);
    GPoly sj = ctx.mul_left(p.lcm.mono / gj.back().key.mono, gj);
    GPoly spoly = ctx.axpy(si, -si.back().coeff / sj.back().coeff, sj);
    GPoly h = normal_form(ctx, std::move(spoly), basis);
    if (!h.empty()) insert(std::move(h), p.sugar);
  }

  // Minimal basis: drop elements whose leading term is divisible by
  // another's (equal leading terms keep the earliest).
  std::vector<GPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const ModTerm& a = basis[j].back().key;
      const ModTerm& b = basis[i].back().key;
      if (lead_divides(a, b) && (!(a == b) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    GPoly lead{minimal[i].back()};
    GPoly tail(minimal[i].begin(), minimal[i].end() - 1);
    GPoly reduced = normal_form(ctx, std::move(tail), minimal, i);
    reduced.push_back(lead.front());
    ctx.make_monic(reduced);
    check_bits(reduced);
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const GPoly& a, const GPoly& b) {
    return ctx.cmp(a.back().key, b.back().key) < 0;
  });
  return GroebnerBasis(arity, rank, order, std::move(minimal));
}

GroebnerBasis left_ideal(const std::vector<WeylElem>& gens, const TermOrder& order,
                         const GroebnerBudget& budget) {
  if (gens.empty()) throw std::invalid_argument("left_ideal needs generators");
  std::vector<FreeModElem> v;
  for (const auto& g : gens) v.push_back(FreeModElem::scalar(g));
  return buchberger(v, gens.front().arity(), 1, order, budget);
}

SPoly intersect_center(const GroebnerBasis& ideal) {
  if (ideal.rank() != 1 || ideal.order().kind != MonomialOrder::kEliminateXD ||
      !ideal.order().weights.empty())
    throw std::invalid_argument("intersect_center needs a rank-one elimination basis");
  for (const auto& g : ideal.generators())
    if (g[0].is_central()) return g[0].to_spoly().monic();
  return SPoly();
}

GroebnerBasis kernel(const std::vector<FreeModElem>& images, std::size_t target_rank,
                     const std::vector<FreeModElem>& target_relations, std::size_t arity,
                     const TermOrder& order, const GroebnerBudget& budget) {
  const std::size_t r = images.size();
  const std::size_t total = target_rank + r;
  std::vector<FreeModElem> rows;
  for (std::size_t i = 0; i < r; ++i) {
    if (images[i].rank() != target_rank) throw std::invalid_argument("kernel: image rank");
    FreeModElem row(arity, total);
    for (std::size_t c = 0; c < target_rank; ++c) row[c] = images[i][c];
    row[target_rank + i] = WeylElem::constant(arity, Rational(1));
    rows.push_back(std::move(row));
  }
  for (const auto& n : target_relations) {
    if (n.rank() != target_rank) throw std::invalid_argument("kernel: relation rank");
    FreeModElem row(arity, total);
    for (std::size_t c = 0; c < target_rank; ++c) row[c] = n[c];
    rows.push_back(std::move(row));
  }
  const GroebnerBasis big = buchberger(rows, arity, total, order, budget);
  std::vector<FreeModElem> syz;
  for (std::size_t k = 0; k < big.size(); ++k) {
    if (big.polys()[k].back().key.pos < target_rank) continue;
    const FreeModElem& g = big.generators()[k];
    FreeModElem proj(arity, r);
    for (std::size_t i = 0; i < r; ++i) proj[i] = g[target_rank + i];
    syz.push_back(std::move(proj));
  }
  if (syz.empty()) return GroebnerBasis(arity, r, order, {});
  return buchberger(syz, arity, r, order, budget);
}

}  // namespace bscycles
