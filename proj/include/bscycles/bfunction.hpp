#pragma once

#include "bscycles/groebner.hpp"
#include "bscycles/multipoly.hpp"
#include "bscycles/spoly.hpp"
#include "bscycles/weyl.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bscycles {

class NotFoundWithinBounds : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// op_total_degree bounds the (x, d)-degree of P; s_degree its degree in s.
struct DegreeBounds {
  int op_total_degree = 0;
  int s_degree = 0;
  friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

/// deg(f) * 3 and deg(f).
DegreeBounds default_bounds(const MultiPoly& f);

/// Functional equation P f^(s+1) = b(s) f^s. `bounds` are the bounds the
/// search actually exhausted: b has least degree among all P within them.
struct BCertificate {
  MultiPoly f;
  SPoly b;
  WeylElem P;
  DegreeBounds bounds;
  std::string backend;
  bool verified = false;
};

/// Re-applies P to f^(s+1) through the module action and compares with
/// b f^s. Independent of how the certificate was found.
bool verify_certificate(const BCertificate& cert);

/// Linear ansatz over Weyl monomials, deepening the operator degree up to
/// bounds.op_total_degree. Throws NotFoundWithinBounds.
BCertificate ansatz_bfunction(const MultiPoly& f, std::optional<DegreeBounds> bounds = {});

/// Degree-truncated annihilator of f^s found as the nullspace of
/// P -> apply(P, f^s) over operators with (x, d)-degree <= op_degree and
/// s-degree <= s_degree. Returned as left ideal generators.
std::vector<WeylElem> annihilator_search(const MultiPoly& f, int op_degree, int s_degree);

/// Monic generator of (Ann(f^s) + D[s] f) intersected with Q[s], using
/// annihilator_search with (max(2, deg f), 1). When the annihilator search is
/// truncated too early the result is a multiple of b.
SPoly groebner_bfunction(const MultiPoly& f, const GroebnerBudget& budget = {});

/// Roots of b grouped into classes modulo Z.
struct LambdaClass {
  Rational representative;  // in [0, 1)
  std::vector<Integer> offsets;  // root = representative + offset, ascending
  std::vector<int> multiplicities;
};

struct LambdaSet {
  std::vector<LambdaClass> classes;  // ascending by representative
  SPoly unresolved;                  // factor without rational roots
};

LambdaSet lambda_set(const SPoly& b);

/// max over roots r of b with r = alpha (mod Z) of |alpha - r| + 1; 0 when
/// no root is congruent to alpha.
int stabilization_bound(const SPoly& b, const Rational& alpha);

struct SymmetryReport {
  bool pass = true;
  std::vector<Rational> violations;  // roots r with no root in -r + Z
};

/// Every rational root r must have some root in -r + Z.
SymmetryReport root_symmetry_check(const SPoly& b);

/// Coefficients ascending as "p/q" strings.
nlohmann::json spoly_to_json(const SPoly& p);
SPoly spoly_from_json(const nlohmann::json& j);
/// Term list [{"c": "p/q", "x": [..], "d": [..], "s": k}, ...] in a fixed order.
nlohmann::json weyl_to_json(const WeylElem& e);
WeylElem weyl_from_json(const nlohmann::json& j, std::size_t arity);

/// {f, b, P, bounds, backend, verified}
nlohmann::json certificate_to_json(const BCertificate& cert);
/// Parses and re-verifies; `verified` reflects the fresh check, not the
/// stored flag.
BCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace bscycles
