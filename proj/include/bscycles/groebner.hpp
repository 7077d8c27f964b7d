#pragma once

#include "bscycles/spoly.hpp"
#include "bscycles/weyl.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bscycles {

/// Element of the free left module D_n[s]^r.
class FreeModElem {
 public:
  FreeModElem(std::size_t arity, std::size_t rank);
  explicit FreeModElem(std::vector<WeylElem> components);
  /// Rank-one element.
  static FreeModElem scalar(const WeylElem& e) { return FreeModElem({e}); }
  /// i-th standard basis vector.
  static FreeModElem unit(std::size_t arity, std::size_t rank, std::size_t i);

  std::size_t arity() const { return arity_; }
  std::size_t rank() const { return components_.size(); }
  const std::vector<WeylElem>& components() const { return components_; }
  const WeylElem& operator[](std::size_t i) const { return components_[i]; }
  WeylElem& operator[](std::size_t i) { return components_[i]; }
  bool is_zero() const;

  FreeModElem& operator+=(const FreeModElem& other);
  FreeModElem& operator-=(const FreeModElem& other);
  friend FreeModElem operator+(FreeModElem a, const FreeModElem& b) { return a += b; }
  friend FreeModElem operator-(FreeModElem a, const FreeModElem& b) { return a -= b; }
  friend bool operator==(const FreeModElem&, const FreeModElem&) = default;

  /// Left multiplication by a ring element, componentwise.
  friend FreeModElem operator*(const WeylElem& r, const FreeModElem& v);

  std::string to_string() const;

 private:
  std::size_t arity_;
  std::vector<WeylElem> components_;
};

/// a1 * r1 + ... : the image of sum a_i e_i under e_i -> images[i].
FreeModElem combine(const std::vector<WeylElem>& coefficients,
                    const std::vector<FreeModElem>& images);

enum class MonomialOrder {
  kDegRevLex,    // graded reverse lex over (x, d, s)
  kEliminateXD,  // (x, d) block first, then s: exposes intersections with Q[s]
};

/// Monomial order on D_n[s], extended to free modules position-over-term
/// with lower positions ranked higher. Optional nonnegative weights over
/// the 2n + 1 variables (x, d, s) are compared before the base order.
struct TermOrder {
  MonomialOrder kind = MonomialOrder::kDegRevLex;
  std::vector<int> weights;

  static TermOrder degrevlex() { return {}; }
  static TermOrder elimination() { return {MonomialOrder::kEliminateXD, {}}; }

  /// -1, 0, 1 as a < b, a == b, a > b.
  int compare(const WeylMonomial& a, const WeylMonomial& b, std::size_t arity) const;
};

struct GroebnerBudget {
  std::size_t max_pairs = 100000;
  std::size_t max_coefficient_bits = 10000;
};

namespace detail {

struct ModTerm {
  std::uint32_t pos;
  WeylMonomial mono;
  bool operator==(const ModTerm&) const = default;
};

struct GTerm {
  ModTerm key;
  Rational coeff;
};

/// Terms sorted ascending in the term order: the leading term is back().
using GPoly = std::vector<GTerm>;

}  // namespace detail

/// Reduced left Groebner basis of a submodule of D_n[s]^r.
class GroebnerBasis {
 public:
  GroebnerBasis(std::size_t arity, std::size_t rank, TermOrder order,
                std::vector<detail::GPoly> polys);

  std::size_t arity() const { return arity_; }
  std::size_t rank() const { return rank_; }
  const TermOrder& order() const { return order_; }
  bool reduced() const { return true; }

  const std::vector<FreeModElem>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  bool is_unit() const;  // submodule is everything (rank one) / contains e_i for all i
  FreeModElem normal_form(const FreeModElem& e) const;
  bool contains(const FreeModElem& e) const { return normal_form(e).is_zero(); }
  bool contains(const WeylElem& e) const { return contains(FreeModElem::scalar(e)); }

  /// Submodule inclusion this <= other.
  bool is_contained_in(const GroebnerBasis& other) const;

  const std::vector<detail::GPoly>& polys() const { return polys_; }

 private:
  std::size_t arity_;
  std::size_t rank_;
  TermOrder order_;
  std::vector<detail::GPoly> polys_;
  std::vector<FreeModElem> generators_;
};

/// Buchberger's algorithm for left submodules (sugar selection, chain
/// criterion). Output is reduced, monic and sorted by leading term, hence
/// deterministic. Throws ResourceBudgetExceeded.
GroebnerBasis buchberger(const std::vector<FreeModElem>& gens, std::size_t arity,
                         std::size_t rank, const TermOrder& order,
                         const GroebnerBudget& budget = {});

/// Left ideal convenience wrapper.
GroebnerBasis left_ideal(const std::vector<WeylElem>& gens, const TermOrder& order,
                         const GroebnerBudget& budget = {});

/// Monic generator of I intersected with Q[s]; zero when that intersection
/// is trivial. Requires a rank-one basis under the elimination order.
SPoly intersect_center(const GroebnerBasis& ideal);

/// Syzygies of the map D^r -> D^p / N sending e_i to images[i], where N is
/// generated by target_relations. Computed by elimination on D^(p + r).
GroebnerBasis kernel(const std::vector<FreeModElem>& images, std::size_t target_rank,
                     const std::vector<FreeModElem>& target_relations, std::size_t arity,
                     const TermOrder& order = {}, const GroebnerBudget& budget = {});

}  // namespace bscycles
