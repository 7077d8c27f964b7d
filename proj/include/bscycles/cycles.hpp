#pragma once

#include "bscycles/bfunction.hpp"
#include "bscycles/groebner.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bscycles {

/// Finitely presented left D_n[s]-module: D^rank modulo the submodule
/// generated by `relations`, with a frozen Groebner basis of that submodule.
class FPresentation {
 public:
  FPresentation(std::size_t arity, std::size_t rank, std::vector<FreeModElem> relations,
                std::vector<std::string> labels, const GroebnerBudget& budget = {});
  /// Cyclic module D[s] / (left ideal).
  static FPresentation cyclic(std::vector<WeylElem> relations, std::string label,
                              const GroebnerBudget& budget = {});

  std::size_t arity() const { return arity_; }
  std::size_t rank() const { return rank_; }
  const std::vector<FreeModElem>& relations() const { return relations_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const GroebnerBasis& basis() const { return *basis_; }

  bool is_zero() const { return rank_ == 0 || basis_->is_unit(); }
  /// e is zero in the module.
  bool kills(const FreeModElem& e) const { return basis_->contains(e); }
  bool kills(const WeylElem& e) const { return kills(FreeModElem::scalar(e)); }

  /// Same relation module: mutual containment of the frozen bases.
  bool same_relations(const FPresentation& other) const;

  nlohmann::json to_json() const;

 private:
  std::size_t arity_;
  std::size_t rank_;
  std::vector<FreeModElem> relations_;
  std::vector<std::string> labels_;
  std::shared_ptr<const GroebnerBasis> basis_;
};

/// Module map given by the images of the source generators in the target's
/// free module; a relation sum r_i e_i maps to sum r_i images[i].
struct ModMap {
  const FPresentation* source;
  const FPresentation* target;
  std::vector<FreeModElem> images;

  FreeModElem apply(const FreeModElem& e) const { return combine(e.components(), images); }
  /// Relations map into relations.
  bool well_defined() const;
};

/// Everything known about f that the constructions need.
struct CycleContext {
  MultiPoly f;
  std::size_t n = 0;
  BCertificate certificate;         // b and P
  std::vector<WeylElem> annihilator;  // generators of Ann(f^s)
  GroebnerBudget budget;

  const SPoly& b() const { return certificate.b; }
  /// Generators of Ann(f^(s+c)): s -> s + c in Ann(f^s).
  std::vector<WeylElem> annihilator_at(int c) const;
  WeylElem f_op(unsigned power = 1) const;
};

/// Computes b (ansatz, verified) and Ann(f^s) (annihilator search).
std::shared_ptr<const CycleContext> make_context(const MultiPoly& f,
                                                 const GroebnerBudget& budget = {});

/// D[s] f^(s+k) as D[s] / Ann(f^(s+k)), with Ann found by a degree-bounded
/// nullspace search of P -> apply(P, f^(s+k)).
FPresentation twisted_cyclic(const MultiPoly& f, int k, const GroebnerBudget& budget = {});

/// D[s] f^(s-k) / D[s] f^(s+k), generator f^(s-k), and the minimal
/// polynomial of s on it.
struct QuotientReport {
  int k = 0;
  FPresentation presentation;
  SPoly minimal_polynomial;  // via elimination
  SPoly product_bound;       // prod_{j=-k}^{k-1} b(s + j)
};
QuotientReport quotient_Qk(const CycleContext& ctx, int k);

/// prod_{j=-k}^{k-1} b(s + j)
SPoly window_bound(const SPoly& b, int k);

struct CycleReport {
  MultiPoly f;
  Rational alpha;
  int k = 0;          // window f^(s-k) / f^(s+k)
  int exponent = 0;   // E: exponent of (s + alpha) used for the eigenspace
  bool nonzero = false;
  int N = 0;          // nilpotency order of s + alpha
  FPresentation presentation;
  std::map<std::string, bool> checks;

  nlohmann::json to_json() const;
};

/// Default window: max(1, stabilization_bound(b, -alpha)).
int nearby_window(const CycleContext& ctx, const Rational& alpha);

/// Psi_alpha = generalized (-alpha)-eigenspace of s on Q_k, presented as
/// D[s] / (Ann(f^(s-k)) + D[s] f^(2k) + D[s] (s + alpha)^E) where E is the
/// multiplicity of -alpha in window_bound(b, k). Factors of b without
/// rational roots never meet a rational alpha, so they need no treatment.
CycleReport nearby_cycle(const CycleContext& ctx, const Rational& alpha, int k = 0);

/// t f^(s+j) = f^(s+j+1): substitutes s -> s + 1 in the relations. The
/// result presents Psi_(alpha+1) on the window f^(s-k+1) / f^(s+k+1).
struct ShiftedCycle {
  Rational alpha;       // alpha + 1
  int lower = 0;        // generator f^(s - lower)
  FPresentation presentation;
};
ShiftedCycle t_shift(const CycleReport& r);
/// s -> s - 1, the inverse substitution.
FPresentation t_unshift(const ShiftedCycle& shifted);

/// Explicit isomorphism between the shifted presentation (generator
/// f^(s - shifted.lower)) and the standard report for alpha + 1 (generator
/// f^(s - standard.k)): one direction multiplies by a power of f, the
/// other inverts the functional equation modulo (s + alpha + 1)^E.
struct IsoCheck {
  bool forward_well_defined = false;
  bool backward_well_defined = false;
  bool round_trip_source = false;
  bool round_trip_target = false;
  bool ok() const {
    return forward_well_defined && backward_well_defined && round_trip_source && round_trip_target;
  }
};
IsoCheck shift_isomorphism(const CycleContext& ctx, const ShiftedCycle& shifted,
                           const CycleReport& standard);

/// Models used around the maximal extension, all at alpha = 0 with a
/// common window k:
///   j_!  = D[s] / (Ann(f^(s+k)) + s)          generator f^(s+k)
///   Xi   = D[s] / (Ann(f^(s-k)) + s f^(2k) + s^(E+1))   generator f^(s-k)
///   Psi0 = D[s] / (Ann(f^(s-k)) + f^(2k) + s^E)
///   j_*  = D[s] / (Ann(f^(s-k)) + s)          generator f^(s-k)
///   M    = O = D[s] / (d_1, .., d_n, s)
struct MaximalExtension {
  int k = 0;
  int exponent = 0;
  FPresentation j_shriek, xi, psi0, j_star, module;
  std::map<std::string, bool> checks;
};
MaximalExtension maximal_extension(const CycleContext& ctx, int k = 0);

/// phi = H^0 of j_! -> Xi (+) M -> j_*, with can and var.
struct VanishingCycle {
  MaximalExtension ext;
  std::vector<FreeModElem> generators;  // elements of D^2 = Xi (+) M, first is (s, 0)
  FPresentation phi;
  ModMap can;  // Psi0 -> phi
  ModMap var;  // phi -> Psi0
  std::map<std::string, bool> checks;
};
/// Returned by pointer: the maps refer to presentations owned by the
/// object.
std::unique_ptr<VanishingCycle> vanishing_cycle(const CycleContext& ctx, int k = 0);

struct SupportResult {
  bool supported = false;   // some f^N kills every generator
  int N = 0;                // least such N
  bool conclusive = true;   // false when the cap was hit first
};
SupportResult support_check(const FPresentation& p, const MultiPoly& f, int cap = 8);

}  // namespace bscycles
