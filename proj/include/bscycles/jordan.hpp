#pragma once

#include "bscycles/cycles.hpp"
#include "bscycles/linear_solve.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>
#include <vector>

namespace bscycles {

/// p(tau) * exp(-tau * a) with tau a formal symbol for 2 pi i. The exponent
/// of zero is normalized to 0 so zero adds to anything.
class SymScalar {
 public:
  SymScalar() = default;
  SymScalar(int c) : SymScalar(Rational(c)) {}
  SymScalar(const Rational& c);
  SymScalar(std::vector<Rational> tau_coeffs, const Rational& exp_neg_tau);

  static SymScalar tau();
  /// exp(-tau * a)
  static SymScalar exp_neg_tau(const Rational& a);

  const std::vector<Rational>& tau_coeffs() const { return coeffs_; }
  const Rational& exponent() const { return exponent_; }
  bool is_zero() const { return coeffs_.empty(); }
  int tau_degree() const { return int(coeffs_.size()) - 1; }

  /// Throws std::domain_error when nonzero terms carry different exponents.
  SymScalar& operator+=(const SymScalar& o);
  SymScalar& operator-=(const SymScalar& o);
  SymScalar& operator*=(const SymScalar& o);
  friend SymScalar operator+(SymScalar a, const SymScalar& b) { return a += b; }
  friend SymScalar operator-(SymScalar a, const SymScalar& b) { return a -= b; }
  friend SymScalar operator*(SymScalar a, const SymScalar& b) { return a *= b; }
  SymScalar operator-() const { return *this * SymScalar(-1); }
  friend bool operator==(const SymScalar&, const SymScalar&) = default;

  /// {"tau": [c0, c1, ..], "exp_neg_tau": "a"}
  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
  Rational exponent_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const SymScalar& x) {
  return os << x.to_string();
}

using SymMatrix = Matrix<SymScalar>;

bool is_zero(const SymMatrix& m);
SymMatrix to_sym(const QMatrix& m);
nlohmann::json to_json(const SymMatrix& m);

/// J = alpha I + J0, the matrix of t nabla on e_0..e_(m-1), where
/// t nabla e_l = alpha e_l + e_(l-1).
struct JordanBlockMat {
  int m = 1;
  Rational alpha;
  QMatrix matrix;

  QMatrix nilpotent() const;  // J0
};

JordanBlockMat connection_matrix(const Rational& alpha, int m);

/// exp(-tau J) = exp(-tau alpha) sum_k (-tau J0)^k / k!
SymMatrix monodromy(const Rational& alpha, int m);

/// (T - lambda I)^m = 0 and (T - lambda I)^(m-1) != 0, lambda = exp(-tau alpha).
struct MonodromyCheck {
  bool annihilated = false;
  bool order_exact = false;
  bool log_unipotent = false;    // log T_u = -tau J0
  bool direct_system = false;    // T_m is the top-left block of T_(m+1)
  bool ok() const { return annihilated && order_exact && log_unipotent && direct_system; }
};
MonodromyCheck check_monodromy(const Rational& alpha, int m);

/// log T_u by the terminating series sum (-1)^(k+1) (T_u - I)^k / k, with
/// T_u = exp(tau alpha) T.
SymMatrix log_unipotent_part(const SymMatrix& t, const Rational& alpha);

/// N^(alpha,0)_m / N^(alpha,-1)_m = sum_l B e_l with B = D[s] f^s / D[s] f^(s+1)
/// and twisted action S (eta e_l) = (s + alpha) eta e_l - eta e_(l-1).
class TwistedJordanModule {
 public:
  TwistedJordanModule(std::shared_ptr<const CycleContext> ctx, const Rational& alpha, int m);

  const FPresentation& base() const { return base_; }
  int m() const { return m_; }
  const Rational& alpha() const { return alpha_; }

  /// Components (in e_0..e_(m-1)) of p(S) e_l:
  /// sum_i (-1)^i p^(i)(s + alpha) / i! e_(l-i).
  std::vector<WeylElem> act(const SPoly& p, int l) const;
  /// p(S) kills every e_l.
  bool annihilates(const SPoly& p) const;

 private:
  std::shared_ptr<const CycleContext> ctx_;
  Rational alpha_;
  int m_;
  FPresentation base_;
};

/// b(S - alpha)^exponent on the module above: the b-function identity of
/// eta = f^s read through S = s + alpha - J0. Holds with exponent = m.
bool btwist_annihilation(std::shared_ptr<const CycleContext> ctx, const Rational& alpha, int m,
                         int exponent);
inline bool btwist_annihilation(std::shared_ptr<const CycleContext> ctx, const Rational& alpha,
                                int m) {
  return btwist_annihilation(std::move(ctx), alpha, m, m);
}
/// b(S - alpha)^exponent as a polynomial in S.
SPoly btwist_polynomial(const SPoly& b, const Rational& alpha, int exponent);

class TruncationTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PhiInftyReport {
  int dim = 0;
  int alpha_dim = 0;      // dim W_alpha
  int nilpotency = 0;     // r: order of phi - alpha on W_alpha
  int truncation = 0;     // M
  int kernel_dim = 0;
  bool kernel_iso = false;         // w -> sum (phi - alpha)^i w e_i onto the kernel
  bool window_surjective = false;  // w e_j in the image for j <= M - 1 - r
  bool pass() const { return kernel_dim == alpha_dim && kernel_iso && window_surjective; }
  nlohmann::json to_json() const;
};

/// Truncation of phi_inf(w e_k) = (phi - alpha) w e_k - w e_(k-1) to
/// e_0..e_(M-1). truncation <= 0 selects r + 2.
PhiInftyReport phi_infty_check(int w_dim, const QMatrix& phi, const Rational& alpha,
                               int truncation = 0);

/// Eigenvalue and unipotent-order bookkeeping for Psi_alpha.
struct MonodromyCorrespondence {
  MultiPoly f;
  Rational alpha;
  bool nonzero = false;
  int unipotent_order = 0;        // N from (s + alpha)^N = 0
  bool order_matches = false;     // (T - lambda)^N = 0, (T - lambda)^(N-1) != 0
  bool example_scalar = false;    // t^alpha on C[t, 1/t]: monodromy exp(-tau alpha)
  nlohmann::json to_json() const;
};
MonodromyCorrespondence monodromy_correspondence_report(const CycleContext& ctx,
                                                        const Rational& alpha);

}  // namespace bscycles

namespace Eigen {
template <>
struct NumTraits<bscycles::SymScalar> : GenericNumTraits<bscycles::SymScalar> {
  using Real = bscycles::SymScalar;
  using NonInteger = bscycles::SymScalar;
  using Nested = bscycles::SymScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static int digits10() { return 0; }
};
}  // namespace Eigen
