#include "bscycles/jordan.hpp"

#include "bscycles/parse.hpp"

#include <sstream>

namespace bscycles {

// ---------------------------------------------------------------- SymScalar

SymScalar::SymScalar(const Rational& c) : coeffs_{c} { trim(); }

SymScalar::SymScalar(std::vector<Rational> tau_coeffs, const Rational& exp_neg_tau)
    : coeffs_(std::move(tau_coeffs)), exponent_(exp_neg_tau) {
  trim();
}

SymScalar SymScalar::tau() { return SymScalar({Rational(0), Rational(1)}, Rational(0)); }

SymScalar SymScalar::exp_neg_tau(const Rational& a) { return SymScalar({Rational(1)}, a); }

void SymScalar::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) exponent_ = 0;
}

SymScalar& SymScalar::operator+=(const SymScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (exponent_ != o.exponent_)
    throw std::domain_error("sum of terms with different exp(-tau a) factors");
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

SymScalar& SymScalar::operator-=(const SymScalar& o) { return *this += -o; }

SymScalar& SymScalar::operator*=(const SymScalar& o) {
  if (is_zero() || o.is_zero()) return *this = SymScalar();
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  exponent_ += o.exponent_;
  trim();
  return *this;
}

nlohmann::json SymScalar::to_json() const {
  nlohmann::json tau = nlohmann::json::array();
  for (const auto& c : coeffs_) tau.push_back(bscycles::to_string(c));
  return {{"tau", std::move(tau)}, {"exp_neg_tau", bscycles::to_string(exponent_)}};
}

std::string SymScalar::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  out << "(";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << bscycles::to_string(coeffs_[i]);
    if (i >= 1) out << "*tau";
    if (i >= 2) out << "^" << i;
  }
  out << ")";
  if (exponent_ != 0) out << "*exp(-tau*" << bscycles::to_string(exponent_) << ")";
  return out.str();
}

bool is_zero(const SymMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

SymMatrix to_sym(const QMatrix& m) {
  SymMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = SymScalar(m(i, j));
  return out;
}

nlohmann::json to_json(const SymMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_json());
    rows.push_back(std::move(row));
  }
  return rows;
}

// --------------------------------------------------------------- monodromy

QMatrix JordanBlockMat::nilpotent() const {
  return matrix - alpha * QMatrix::Identity(m, m);
}

JordanBlockMat connection_matrix(const Rational& alpha, int m) {
  if (m < 1) throw std::invalid_argument("block size must be at least 1");
  QMatrix j = alpha * QMatrix::Identity(m, m);
  for (int l = 1; l < m; ++l) j(l - 1, l) = 1;
  return {m, alpha, j};
}

SymMatrix monodromy(const Rational& alpha, int m) {
  const SymMatrix n = to_sym(connection_matrix(alpha, m).nilpotent()) * (-SymScalar::tau());
  SymMatrix term = SymMatrix::Identity(m, m);
  SymMatrix sum = term;
  for (int k = 1; k < m; ++k) {
    term = (term * n).eval() * SymScalar(Rational(1, k));
    sum += term;
  }
  return sum * SymScalar::exp_neg_tau(alpha);
}

SymMatrix log_unipotent_part(const SymMatrix& t, const Rational& alpha) {
  const Eigen::Index m = t.rows();
  const SymMatrix tu = t * SymScalar::exp_neg_tau(-alpha);
  const SymMatrix u = tu - SymMatrix::Identity(m, m);
  SymMatrix power = SymMatrix::Identity(m, m);
  SymMatrix sum = SymMatrix::Zero(m, m);
  for (Eigen::Index k = 1; k <= m; ++k) {
    power = (power * u).eval();
    const Rational c = Rational(k % 2 == 1 ? 1 : -1, int(k));
    sum += power * SymScalar(c);
  }
  return sum;
}

MonodromyCheck check_monodromy(const Rational& alpha, int m) {
  MonodromyCheck c;
  const SymMatrix t = monodromy(alpha, m);
  const SymMatrix diff = t - SymMatrix::Identity(m, m) * SymScalar::exp_neg_tau(alpha);
  SymMatrix power = SymMatrix::Identity(m, m);
  for (int k = 1; k < m; ++k) power = (power * diff).eval();
  // power = diff^(m-1); the identity stands in for diff^0 when m = 1
  c.order_exact = !is_zero(power);
  c.annihilated = is_zero((power * diff).eval());
  const SymMatrix expected =
      to_sym(connection_matrix(alpha, m).nilpotent()) * (-SymScalar::tau());
  c.log_unipotent = log_unipotent_part(t, alpha) == expected;
  c.direct_system = monodromy(alpha, m + 1).topLeftCorner(m, m) == t;
  return c;
}

// ------------------------------------------------------- twisted module

TwistedJordanModule::TwistedJordanModule(std::shared_ptr<const CycleContext> ctx,
                                         const Rational& alpha, int m)
    : ctx_(std::move(ctx)), alpha_(alpha), m_(m), base_([&] {
        if (m < 1) throw std::invalid_argument("block size must be at least 1");
        auto rels = ctx_->annihilator;
        rels.push_back(ctx_->f_op(1));
        return FPresentation::cyclic(rels, "f^s", ctx_->budget);
      }()) {}

std::vector<WeylElem> TwistedJordanModule::act(const SPoly& p, int l) const {
  std::vector<WeylElem> out(std::size_t(m_), WeylElem(ctx_->n));
  SPoly derivative = p;
  Rational factorial = 1;
  for (int i = 0; i <= l; ++i) {
    if (i > 0) {
      derivative = derivative.derivative();
      factorial *= i;
    }
    const Rational c = (i % 2 == 0 ? Rational(1) : Rational(-1)) / factorial;
    out[std::size_t(l - i)] = WeylElem::from_spoly(ctx_->n, derivative.shift(alpha_) * c);
  }
  return out;
}

bool TwistedJordanModule::annihilates(const SPoly& p) const {
  for (int l = 0; l < m_; ++l)
    for (const auto& component : act(p, l))
      if (!base_.kills(component)) return false;
  return true;
}

SPoly btwist_polynomial(const SPoly& b, const Rational& alpha, int exponent) {
  return b.shift(-alpha).pow(unsigned(exponent));
}

bool btwist_annihilation(std::shared_ptr<const CycleContext> ctx, const Rational& alpha, int m,
                         int exponent) {
  const SPoly p = btwist_polynomial(ctx->b(), alpha, exponent);
  return TwistedJordanModule(std::move(ctx), alpha, m).annihilates(p);
}

// ------------------------------------------------------------ phi_infinity

namespace {

int rank_of(const QMatrix& a) { return int(a.cols()) - int(nullspace(a).size()); }

QMatrix columns(const std::vector<QVector>& vs, Eigen::Index rows) {
  QMatrix out(rows, Eigen::Index(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) out.col(Eigen::Index(j)) = vs[j];
  return out;
}

// Basis of the column space, from pivot columns.
std::vector<QVector> column_basis(const QMatrix& a) {
  std::vector<QVector> basis;
  int r = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    basis.push_back(a.col(j));
    const int next = rank_of(columns(basis, a.rows()));
    if (next == r) basis.pop_back();
    else r = next;
  }
  return basis;
}

}  // namespace

nlohmann::json PhiInftyReport::to_json() const {
  return {{"dim", dim},
          {"alpha_dim", alpha_dim},
          {"nilpotency", nilpotency},
          {"truncation", truncation},
          {"kernel_dim", kernel_dim},
          {"kernel_iso", kernel_iso},
          {"window_surjective", window_surjective},
          {"pass", pass()}};
}

PhiInftyReport phi_infty_check(int w_dim, const QMatrix& phi, const Rational& alpha,
                               int truncation) {
  if (w_dim < 1 || phi.rows() != w_dim || phi.cols() != w_dim)
    throw std::invalid_argument("phi must be a square matrix of size dim W");
  const Eigen::Index d = w_dim;
  const QMatrix nil = phi - alpha * QMatrix::Identity(d, d);

  PhiInftyReport r;
  r.dim = w_dim;
  // Fitting decomposition: W_alpha = ker N^d, complement = im N^d.
  const QMatrix nd = matrix_power(nil, unsigned(d));
  const auto alpha_basis = nullspace(nd);
  const auto perp_basis = column_basis(nd);
  r.alpha_dim = int(alpha_basis.size());
  while (r.nilpotency < d &&
         rank_of(matrix_power(nil, unsigned(r.nilpotency))) != rank_of(nd))
    ++r.nilpotency;

  const int M = truncation <= 0 ? r.nilpotency + 2 : truncation;
  if (M < r.nilpotency + 1)
    throw TruncationTooSmall("truncation " + std::to_string(M) + " below nilpotency order + 1");
  r.truncation = M;

  const Eigen::Index big = d * M;
  QMatrix op = QMatrix::Zero(big, big);
  for (int k = 0; k < M; ++k) {
    op.block(k * d, k * d, d, d) = nil;
    if (k > 0) op.block((k - 1) * d, k * d, d, d) = -QMatrix::Identity(d, d);
  }
  auto place = [&](const QVector& w, int k) {
    QVector v = QVector::Zero(big);
    v.segment(k * d, d) = w;
    return v;
  };

  r.kernel_dim = int(nullspace(op).size());
  std::vector<QVector> images;
  bool in_kernel = true;
  for (const auto& w : alpha_basis) {
    QVector v = QVector::Zero(big);
    QVector power = w;
    for (int i = 0; i < M; ++i) {
      v += place(power, i);
      power = nil * power;
    }
    in_kernel = in_kernel && is_exact_zero(op * v);
    images.push_back(std::move(v));
  }
  r.kernel_iso = in_kernel && (images.empty() || rank_of(columns(images, big)) == r.alpha_dim) &&
                 r.kernel_dim == r.alpha_dim;

  // Preimages of e_a (x) e_j, splitting e_a = w_alpha + w_perp.
  QMatrix split(d, d);
  {
    std::vector<QVector> all = alpha_basis;
    all.insert(all.end(), perp_basis.begin(), perp_basis.end());
    split = columns(all, d);
  }
  const QMatrix perp = columns(perp_basis, d);
  const QMatrix nil_on_perp = nil * perp;
  auto inverse_on_perp = [&](const QVector& v) {
    const auto sol = solve_linear_exact(nil_on_perp, v);
    if (!sol) throw std::logic_error("phi - alpha not invertible on the complement");
    return QVector(perp * sol->particular);
  };

  bool surjective = true;
  const int window = M - 1 - r.nilpotency;
  for (Eigen::Index a = 0; a < d && surjective; ++a) {
    const QVector e = QMatrix::Identity(d, d).col(a);
    const auto coords = solve_linear_exact(split, e);
    if (!coords) throw std::logic_error("W is not the sum of W_alpha and its complement");
    QVector wa = QVector::Zero(d), wp = QVector::Zero(d);
    for (int i = 0; i < r.alpha_dim; ++i) wa += coords->particular(i) * alpha_basis[i];
    for (std::size_t i = 0; i < perp_basis.size(); ++i)
      wp += coords->particular(r.alpha_dim + Eigen::Index(i)) * perp_basis[i];
    for (int j = 0; j <= window && surjective; ++j) {
      QVector x = QVector::Zero(big);
      // W_alpha part: -sum_{i > j} (phi - alpha)^(i-j-1) w e_i
      QVector power = wa;
      for (int i = j + 1; i < M; ++i) {
        x -= place(power, i);
        power = nil * power;
      }
      // complement: sum_{i=1}^{j+1} (phi - alpha)^(-i) w e_(j-i+1)
      QVector inv = wp;
      for (int i = 1; i <= j + 1 && !perp_basis.empty(); ++i) {
        inv = inverse_on_perp(inv);
        x += place(inv, j - i + 1);
      }
      surjective = op * x == place(e, j);
    }
  }
  r.window_surjective = surjective;
  return r;
}

// ------------------------------------------------ monodromy correspondence

nlohmann::json MonodromyCorrespondence::to_json() const {
  const bool half = !is_integer(alpha) && is_integer(2 * alpha);
  return {{"f", format_poly(f)},
          {"alpha", bscycles::to_string(alpha)},
          {"nonzero", nonzero},
          {"lambda", {{"exp2pii", bscycles::to_string(alpha)}}},
          {"monodromy_scalar", SymScalar::exp_neg_tau(alpha).to_json()},
          {"lambda_candidates",
           {SymScalar::exp_neg_tau(-alpha).to_json(), SymScalar::exp_neg_tau(alpha).to_json()}},
          {"half_integer", half},
          {"convention",
           "Psi_alpha is the generalized (-alpha)-eigenspace of s; the local system t^alpha has "
           "monodromy exp(-tau*alpha) while the eigenvalue label is exp(tau*alpha); both are "
           "listed"},
          {"unipotent_order", unipotent_order},
          {"checks", {{"order_matches", order_matches}, {"example_scalar", example_scalar}}}};
}

MonodromyCorrespondence monodromy_correspondence_report(const CycleContext& ctx,
                                                        const Rational& alpha) {
  MonodromyCorrespondence r;
  r.f = ctx.f;
  r.alpha = alpha;
  const auto cycle = nearby_cycle(ctx, alpha);
  r.nonzero = cycle.nonzero;
  r.unipotent_order = cycle.N;
  if (cycle.nonzero) {
    // T = lambda exp(-tau (s + alpha)) on Psi_alpha has the nilpotent's order.
    const auto check = check_monodromy(alpha, cycle.N);
    r.order_matches = check.annihilated && check.order_exact;
  } else {
    r.order_matches = true;
  }
  const SymMatrix scalar = monodromy(alpha, 1);
  r.example_scalar = scalar(0, 0) == SymScalar::exp_neg_tau(alpha);
  return r;
}

}  // namespace bscycles
