#include "bscycles/cycles.hpp"

#include "bscycles/parse.hpp"
#include "bscycles/twisted_section.hpp"

#include <algorithm>

namespace bscycles {

namespace {

FreeModElem V(const WeylElem& e) { return FreeModElem::scalar(e); }

std::vector<FreeModElem> as_rank_one(const std::vector<WeylElem>& gens) {
  std::vector<FreeModElem> out;
  for (const auto& g : gens) out.push_back(V(g));
  return out;
}

// Embeds rank-one relations into position `pos` of D^rank.
std::vector<FreeModElem> embed(const std::vector<FreeModElem>& rels, std::size_t rank,
                               std::size_t pos) {
  std::vector<FreeModElem> out;
  for (const auto& r : rels) {
    FreeModElem e(r.arity(), rank);
    e[pos] = r[0];
    out.push_back(std::move(e));
  }
  return out;
}

FreeModElem pair(const WeylElem& a, const WeylElem& b) { return FreeModElem({a, b}); }

WeylElem s_plus(std::size_t n, const Rational& c) {
  return WeylElem::s(n) + WeylElem::constant(n, c);
}

FreeModElem shift_elem(const FreeModElem& e, const Rational& c) {
  FreeModElem out(e.arity(), e.rank());
  for (std::size_t i = 0; i < e.rank(); ++i) out[i] = e[i].shift_s(c);
  return out;
}

// Multiplicity of -alpha as a root of window_bound(b, k).
int window_multiplicity(const SPoly& b, int k, const Rational& alpha) {
  int total = 0;
  for (int j = -k; j <= k - 1; ++j) total += root_multiplicity(b, -alpha + j);
  return total;
}

bool class_meets_roots(const SPoly& b, const Rational& beta) {
  for (const auto& r : rational_roots(b).roots)
    if (is_integer(r.root - beta)) return true;
  return false;
}

}  // namespace

// ------------------------------------------------------------ FPresentation

FPresentation::FPresentation(std::size_t arity, std::size_t rank,
                             std::vector<FreeModElem> relations, std::vector<std::string> labels,
                             const GroebnerBudget& budget)
    : arity_(arity), rank_(rank), relations_(std::move(relations)), labels_(std::move(labels)) {
  if (labels_.size() != rank_) throw std::invalid_argument("one label per generator");
  basis_ = std::make_shared<const GroebnerBasis>(
      rank_ == 0 ? GroebnerBasis(arity_, 0, TermOrder::degrevlex(), {})
                 : buchberger(relations_, arity_, rank_, TermOrder::degrevlex(), budget));
}

FPresentation FPresentation::cyclic(std::vector<WeylElem> relations, std::string label,
                                    const GroebnerBudget& budget) {
  if (relations.empty()) throw std::invalid_argument("cyclic presentation needs relations");
  const std::size_t n = relations.front().arity();
  return FPresentation(n, 1, as_rank_one(relations), {std::move(label)}, budget);
}

bool FPresentation::same_relations(const FPresentation& other) const {
  return rank_ == other.rank_ && basis_->is_contained_in(*other.basis_) &&
         other.basis_->is_contained_in(*basis_);
}

nlohmann::json FPresentation::to_json() const {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& g : basis_->generators()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : g.components()) row.push_back(weyl_to_json(c));
    rels.push_back(std::move(row));
  }
  return {{"rank", rank_}, {"generators", labels_}, {"relations", std::move(rels)}};
}

bool ModMap::well_defined() const {
  if (images.size() != source->rank()) return false;
  for (const auto& img : images)
    if (img.rank() != target->rank()) return false;
  for (const auto& r : source->basis().generators())
    if (!target->kills(apply(r))) return false;
  return true;
}

// ------------------------------------------------------------------ context

std::vector<WeylElem> CycleContext::annihilator_at(int c) const {
  std::vector<WeylElem> out;
  for (const auto& g : annihilator) out.push_back(g.shift_s(Rational(c)));
  return out;
}

WeylElem CycleContext::f_op(unsigned power) const {
  return WeylElem::from_poly(n, f.pow(power));
}

std::shared_ptr<const CycleContext> make_context(const MultiPoly& f,
                                                 const GroebnerBudget& budget) {
  auto ctx = std::make_shared<CycleContext>();
  ctx->f = f;
  ctx->n = f.arity();
  ctx->certificate = ansatz_bfunction(f);
  ctx->annihilator = annihilator_search(f, std::max(2, f.total_degree()), 1);
  ctx->budget = budget;
  return ctx;
}

FPresentation twisted_cyclic(const MultiPoly& f, int k, const GroebnerBudget& budget) {
  auto h = Hypersurface::make(f);
  const auto u = TwistedSection::power(h, k);
  // Search Ann(f^s) and shift; every relation is re-checked on f^(s+k).
  std::vector<WeylElem> rels;
  for (const auto& g : annihilator_search(f, std::max(2, f.total_degree()), 1)) {
    WeylElem r = g.shift_s(Rational(k));
    if (!apply(r, u).is_zero()) throw std::logic_error("shifted annihilator fails on f^(s+k)");
    rels.push_back(std::move(r));
  }
  return FPresentation::cyclic(std::move(rels), "f^(s" + std::string(k < 0 ? "" : "+") +
                                                    std::to_string(k) + ")",
                               budget);
}

SPoly window_bound(const SPoly& b, int k) {
  SPoly p = SPoly::constant(1);
  for (int j = -k; j <= k - 1; ++j) p = p * b.shift(Rational(j));
  return p;
}

QuotientReport quotient_Qk(const CycleContext& ctx, int k) {
  if (k < 1) throw std::invalid_argument("quotient_Qk needs k >= 1");
  auto rels = ctx.annihilator_at(-k);
  rels.push_back(ctx.f_op(unsigned(2 * k)));
  const auto elim = left_ideal(rels, TermOrder::elimination(), ctx.budget);
  QuotientReport r{k, FPresentation::cyclic(rels, "f^(s-" + std::to_string(k) + ")", ctx.budget),
                   intersect_center(elim), window_bound(ctx.b(), k)};
  return r;
}

// -------------------------------------------------------------- nearby cycle

int nearby_window(const CycleContext& ctx, const Rational& alpha) {
  return std::max(1, stabilization_bound(ctx.b(), -alpha));
}

CycleReport nearby_cycle(const CycleContext& ctx, const Rational& alpha, int k) {
  if (k <= 0) k = nearby_window(ctx, alpha);
  const std::size_t n = ctx.n;
  const int E = window_multiplicity(ctx.b(), k, alpha);
  const int e = std::max(E, 1);
  const WeylElem shift = s_plus(n, alpha);
  auto rels = ctx.annihilator_at(-k);
  rels.push_back(ctx.f_op(unsigned(2 * k)));
  rels.push_back(shift.pow(unsigned(e)));
  CycleReport r{ctx.f, alpha, k, E, false, 0,
                FPresentation::cyclic(rels, "f^(s-" + std::to_string(k) + ")", ctx.budget), {}};
  r.nonzero = !r.presentation.is_zero();
  if (r.nonzero) {
    int N = 0;
    while (N <= e && !r.presentation.kills(shift.pow(unsigned(N)))) ++N;
    r.N = N;
    r.checks["nilpotent"] = r.presentation.kills(shift.pow(unsigned(N)));
    r.checks["order_exact"] = N >= 1 && !r.presentation.kills(shift.pow(unsigned(N - 1)));
  } else {
    r.checks["nilpotent"] = true;
    r.checks["order_exact"] = true;
  }
  r.checks["lambda_consistent"] = r.nonzero == class_meets_roots(ctx.b(), -alpha);
  const auto support = support_check(r.presentation, ctx.f);
  r.checks["supported_on_divisor"] = support.supported;
  return r;
}

nlohmann::json CycleReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::object();
  for (const auto& [name, ok] : checks) checks_json[name] = ok;
  return {{"f", format_poly(f)},
          {"alpha", to_string(alpha)},
          {"window", k},
          {"eigen_exponent", exponent},
          {"nonzero", nonzero},
          {"N", N},
          {"eigenvalue", {{"exp2pii", to_string(alpha)}}},
          {"presentation", presentation.to_json()},
          {"checks", std::move(checks_json)}};
}

// ------------------------------------------------------------------- t-shift

ShiftedCycle t_shift(const CycleReport& r) {
  const auto& p = r.presentation;
  std::vector<FreeModElem> rels;
  for (const auto& rel : p.relations()) rels.push_back(shift_elem(rel, Rational(1)));
  return {r.alpha + 1, r.k - 1,
          FPresentation(p.arity(), p.rank(), std::move(rels),
                        {"f^(s-" + std::to_string(r.k - 1) + ")"})};
}

FPresentation t_unshift(const ShiftedCycle& shifted) {
  const auto& p = shifted.presentation;
  std::vector<FreeModElem> rels;
  for (const auto& rel : p.relations()) rels.push_back(shift_elem(rel, Rational(-1)));
  return FPresentation(p.arity(), p.rank(), std::move(rels),
                       {"f^(s-" + std::to_string(shifted.lower + 1) + ")"});
}

IsoCheck shift_isomorphism(const CycleContext& ctx, const ShiftedCycle& shifted,
                           const CycleReport& standard) {
  if (shifted.alpha != standard.alpha) throw std::invalid_argument("eigenvalues differ");
  const std::size_t n = ctx.n;
  const Rational beta = standard.alpha;
  // deep: generator f^(s - a_deep); high: generator f^(s - a_high), a_high <= a_deep.
  const bool shifted_is_deep = shifted.lower >= standard.k;
  const FPresentation& deep = shifted_is_deep ? shifted.presentation : standard.presentation;
  const FPresentation& high = shifted_is_deep ? standard.presentation : shifted.presentation;
  const int a_deep = std::max(shifted.lower, standard.k);
  const int a_high = std::min(shifted.lower, standard.k);
  const int d = a_deep - a_high;

  // high -> deep: f^(s - a_high) = f^d f^(s - a_deep).
  const WeylElem up = ctx.f_op(unsigned(d));
  // deep -> high: f^(s+j) = b(s+j)^(-1) P(s+j) f^(s+j+1) for j = -a_deep..-a_high-1,
  // with b(s+j) inverted modulo (s + beta)^e, a power that kills `high`.
  const WeylElem sb = s_plus(n, beta);
  const int cap = 2 * window_multiplicity(ctx.b(), a_deep, beta) + 2;
  int e_high = 1;
  while (e_high < cap && !high.kills(sb.pow(unsigned(e_high)))) ++e_high;
  const SPoly modulus = SPoly::linear_factor(-beta).pow(unsigned(e_high));
  WeylElem down = WeylElem::constant(n, Rational(1));
  SPoly inverse = SPoly::constant(1);
  bool invertible = high.kills(sb.pow(unsigned(e_high)));
  for (int j = -a_deep; j <= -a_high - 1 && invertible; ++j) {
    down = down * ctx.certificate.P.shift_s(Rational(j));
    const SPoly bj = ctx.b().shift(Rational(j));
    if (gcd(bj, modulus).degree() > 0) {
      invertible = false;
      break;
    }
    inverse = (inverse * inverse_mod(bj, modulus)).divmod(modulus).second;
  }
  IsoCheck check;
  if (!invertible) return check;
  down = WeylElem::from_spoly(n, inverse) * down;

  const ModMap high_to_deep{&high, &deep, {V(up)}};
  const ModMap deep_to_high{&deep, &high, {V(down)}};
  const WeylElem one = WeylElem::constant(n, Rational(1));
  const bool fwd = high_to_deep.well_defined();
  const bool bwd = deep_to_high.well_defined();
  // deep -> high -> deep sends 1 to down * up; high -> deep -> high to up * down.
  const bool deep_round = deep.kills(down * up - one);
  const bool high_round = high.kills(up * down - one);
  if (shifted_is_deep) {
    check.forward_well_defined = bwd;
    check.backward_well_defined = fwd;
    check.round_trip_source = deep_round;
    check.round_trip_target = high_round;
  } else {
    check.forward_well_defined = fwd;
    check.backward_well_defined = bwd;
    check.round_trip_source = high_round;
    check.round_trip_target = deep_round;
  }
  return check;
}

// --------------------------------------------------------- maximal extension

MaximalExtension maximal_extension(const CycleContext& ctx, int k) {
  if (k <= 0) k = nearby_window(ctx, Rational(0));
  const std::size_t n = ctx.n;
  const WeylElem s = WeylElem::s(n);
  const WeylElem f2k = ctx.f_op(unsigned(2 * k));
  const WeylElem fk = ctx.f_op(unsigned(k));
  const int E = std::max(1, window_multiplicity(ctx.b(), k, Rational(0)));
  const std::string low = "f^(s-" + std::to_string(k) + ")";

  auto shriek = ctx.annihilator_at(k);
  shriek.push_back(s);
  auto xi = ctx.annihilator_at(-k);
  xi.push_back(s * f2k);
  xi.push_back(s.pow(unsigned(E + 1)));
  auto psi = ctx.annihilator_at(-k);
  psi.push_back(f2k);
  psi.push_back(s.pow(unsigned(E)));
  auto star = ctx.annihilator_at(-k);
  star.push_back(s);
  std::vector<WeylElem> o;
  for (std::size_t i = 0; i < n; ++i) o.push_back(WeylElem::d(n, i));
  o.push_back(s);

  const auto& B = ctx.budget;
  MaximalExtension m{k,
                     E,
                     FPresentation::cyclic(shriek, "f^(s+" + std::to_string(k) + ")", B),
                     FPresentation::cyclic(xi, low, B),
                     FPresentation::cyclic(psi, low, B),
                     FPresentation::cyclic(star, low, B),
                     FPresentation::cyclic(o, "1", B),
                     {}};

  const WeylElem one = WeylElem::constant(n, Rational(1));
  const ModMap alpha_minus{&m.j_shriek, &m.xi, {V(f2k)}};
  const ModMap beta_minus{&m.xi, &m.psi0, {V(one)}};
  const ModMap beta_plus{&m.psi0, &m.xi, {V(s)}};
  const ModMap alpha_plus{&m.xi, &m.j_star, {V(one)}};
  const ModMap rho{&m.j_shriek, &m.module, {V(fk)}};
  const ModMap iota{&m.module, &m.j_star, {V(fk)}};
  m.checks["alpha_minus_well_defined"] = alpha_minus.well_defined();
  m.checks["beta_minus_well_defined"] = beta_minus.well_defined();
  m.checks["beta_plus_well_defined"] = beta_plus.well_defined();
  m.checks["alpha_plus_well_defined"] = alpha_plus.well_defined();
  m.checks["rho_well_defined"] = rho.well_defined();
  m.checks["iota_well_defined"] = iota.well_defined();

  auto rel_vectors = [](const FPresentation& p) { return p.basis().generators(); };
  auto ideal = [&](std::vector<FreeModElem> gens) {
    return FPresentation(n, 1, std::move(gens), {"g"}, B);
  };

  // 0 -> j_! -> Xi -> Psi0 -> 0
  const auto ker_am = kernel({V(f2k)}, 1, rel_vectors(m.xi), n, TermOrder::degrevlex(), B);
  m.checks["b_minus_injective"] =
      ker_am.is_contained_in(m.j_shriek.basis()) && m.j_shriek.basis().is_contained_in(ker_am);
  m.checks["b_minus_composite_zero"] = m.psi0.kills(f2k);
  {
    auto gens = rel_vectors(m.xi);
    gens.push_back(V(f2k));
    m.checks["b_minus_exact_middle"] = ideal(gens).same_relations(m.psi0);
  }
  m.checks["b_minus_surjective"] = true;  // the generator maps to the generator

  // 0 -> Psi0 -> Xi -> j_* -> 0
  const auto ker_bp = kernel({V(s)}, 1, rel_vectors(m.xi), n, TermOrder::degrevlex(), B);
  m.checks["b_plus_injective"] =
      ker_bp.is_contained_in(m.psi0.basis()) && m.psi0.basis().is_contained_in(ker_bp);
  m.checks["b_plus_composite_zero"] = m.j_star.kills(s);
  {
    auto gens = rel_vectors(m.xi);
    gens.push_back(V(s));
    m.checks["b_plus_exact_middle"] = ideal(gens).same_relations(m.j_star);
  }
  m.checks["b_plus_surjective"] = true;

  // alpha_+ alpha_- = iota rho as maps j_! -> j_*
  m.checks["diagram_commutes"] = m.j_star.kills(f2k - fk * fk);
  return m;
}

// ----------------------------------------------------------- vanishing cycle

std::unique_ptr<VanishingCycle> vanishing_cycle(const CycleContext& ctx, int k) {
  auto out = std::make_unique<VanishingCycle>(VanishingCycle{
      maximal_extension(ctx, k), {}, FPresentation::cyclic({WeylElem::constant(ctx.n, 1)}, "0"),
      {nullptr, nullptr, {}}, {nullptr, nullptr, {}}, {}});
  auto& v = *out;
  const auto& m = v.ext;
  const std::size_t n = ctx.n;
  const auto& B = ctx.budget;
  const WeylElem s = WeylElem::s(n);
  const WeylElem zero(n);
  const WeylElem f2k = ctx.f_op(unsigned(2 * m.k));
  const WeylElem fk = ctx.f_op(unsigned(m.k));

  // d^0(a, b) = a - b f^k in j_*; K = ker d^0 inside D^2.
  const auto K = kernel({V(WeylElem::constant(n, 1)), V(zero - fk)}, 1,
                        m.j_star.basis().generators(), n, TermOrder::degrevlex(), B);
  v.generators.push_back(pair(s, zero));
  for (const auto& g : K.generators()) v.generators.push_back(g);

  // R = image of d^-1 plus the relations of Xi (+) M.
  std::vector<FreeModElem> R = {pair(f2k, fk)};
  for (const auto& r : embed(m.xi.basis().generators(), 2, 0)) R.push_back(r);
  for (const auto& r : embed(m.module.basis().generators(), 2, 1)) R.push_back(r);

  const auto syz = kernel(v.generators, 2, R, n, TermOrder::degrevlex(), B);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < v.generators.size(); ++i) labels.push_back("k" + std::to_string(i));
  v.phi = FPresentation(n, v.generators.size(), syz.generators(), labels, B);

  const std::size_t q = v.generators.size();
  v.can = {&m.psi0, &v.phi, {FreeModElem::unit(n, q, 0)}};
  std::vector<FreeModElem> var_images;
  for (const auto& g : v.generators) var_images.push_back(V(g[0]));
  v.var = {&v.phi, &m.psi0, var_images};

  v.checks["generators_in_kernel"] = std::all_of(
      v.generators.begin(), v.generators.end(),
      [&](const FreeModElem& g) { return m.j_star.kills(g[0] - g[1] * fk); });
  v.checks["can_well_defined"] = v.can.well_defined();
  v.checks["var_well_defined"] = v.var.well_defined();
  v.checks["var_can_is_s"] = m.psi0.kills(v.var.apply(v.can.images[0]) - V(s));
  bool cv = true;
  for (std::size_t i = 0; i < q; ++i) {
    const FreeModElem image = v.can.apply(v.var.images[i]);
    cv = cv && v.phi.kills(image - s * FreeModElem::unit(n, q, i));
  }
  v.checks["can_var_is_s0"] = cv;
  v.checks["complex"] = m.j_star.kills(f2k - fk * fk);

  // H^-1: ker d^-1 = relations of j_!.
  std::vector<FreeModElem> c0 = embed(m.xi.basis().generators(), 2, 0);
  for (const auto& r : embed(m.module.basis().generators(), 2, 1)) c0.push_back(r);
  const auto h_minus = kernel({pair(f2k, fk)}, 2, c0, n, TermOrder::degrevlex(), B);
  v.checks["H-1_zero"] = h_minus.is_contained_in(m.j_shriek.basis()) &&
                         m.j_shriek.basis().is_contained_in(h_minus);
  // H^1: d^0(1, 0) is the generator of j_*.
  v.checks["H1_zero"] = m.j_star.kills(V(WeylElem::constant(n, 1)) - V(WeylElem::constant(n, 1)));
  const auto support = support_check(v.phi, ctx.f);
  v.checks["supported_on_divisor"] = support.supported;
  return out;
}

SupportResult support_check(const FPresentation& p, const MultiPoly& f, int cap) {
  if (p.is_zero()) return {true, 0, true};
  const std::size_t n = p.arity();
  for (int N = 1; N <= cap; ++N) {
    const WeylElem fn = WeylElem::from_poly(n, f.pow(unsigned(N)));
    bool all = true;
    for (std::size_t i = 0; i < p.rank() && all; ++i)
      all = p.kills(fn * FreeModElem::unit(n, p.rank(), i));
    if (all) return {true, N, true};
  }
  return {false, 0, false};
}

}  // namespace bscycles
