#pragma once

// Exact evaluation of the Fitzpatrick function of a monotone linear relation:
//
//   F_A(x, x*) = sup over graph points (a, a*) of <x, a*> + <a, x*> - <a, a*>.
//
// In graph coordinates a = G c the supremum is the constrained quadratic
// maximization sup_c b^T c - c^T Q c handled by numkernel, with
// b_i = <x, a*_i> + <a_i, x*> and Q the symmetrized pairing Gram.
// The value is finite exactly when b lies in ran(Q); on graph points it
// reproduces the inner product <x, x*>.

#include "numkernel.hpp"
#include "relation.hpp"

#include <stdexcept>

namespace monorel {

/// Precomputed graph data for repeated Fitzpatrick evaluations: the
/// orthonormal graph basis G = [X; Y] and the Gram
/// Q_ij = (<a_i, a*_j> + <a_j, a*_i>) / 2 of the pairing in graph coordinates.
/// Q is PSD within tolerance iff the relation is monotone.
class GraphForm {
 public:
  explicit GraphForm(LinearRelation relation)
      : relation_(std::move(relation)),
        x_(relation_.x_block()),
        y_(relation_.xstar_block()),
        q_(0.5 * (x_.transpose() * y_ + y_.transpose() * x_)) {}

  [[nodiscard]] const LinearRelation& relation() const { return relation_; }
  [[nodiscard]] const Matrix& gram() const { return q_; }

  /// Linear coefficients of the supremum for the query (x, x*).
  [[nodiscard]] Vector linear_coefficients(const Vector& x, const Vector& xstar) const {
    if (x.size() != relation_.n() || xstar.size() != relation_.n())
      throw std::invalid_argument("GraphForm: query vector length mismatch");
    return y_.transpose() * x + x_.transpose() * xstar;
  }

  [[nodiscard]] SupResult evaluate(const Vector& x, const Vector& xstar) const {
    return sup_linear_minus_quadratic_diag(q_, linear_coefficients(x, xstar), relation_.tol());
  }

 private:
  LinearRelation relation_;
  Matrix x_;
  Matrix y_;
  Matrix q_;
};

/// Fitzpatrick value with residual diagnostics. Rejects non-monotone
/// relations (the Gram fails the PSD test) with an explicit diagnostic.
inline SupResult fitzpatrick_eval(const LinearRelation& a, const Vector& x, const Vector& xstar) {
  if (!is_monotone(a))
    throw std::invalid_argument(
        "fitzpatrick_eval: relation is not monotone (pairing form is not PSD on the graph)");
  return GraphForm(a).evaluate(x, xstar);
}

inline FitzValue fitzpatrick_value(const LinearRelation& a, const Vector& x, const Vector& xstar) {
  return fitzpatrick_eval(a, x, xstar).value;
}

inline bool in_dom_fitz(const LinearRelation& a, const Vector& x, const Vector& xstar) {
  return fitzpatrick_value(a, x, xstar).is_finite();
}

/// Rectangularity through the Fitzpatrick domain: dom A x {0} inside dom F_A.
/// Checking the dom-basis vectors suffices: F_A is convex and degree-2
/// homogeneous under all real scalings on a linear graph, so its domain is a
/// negation-symmetric convex cone and finiteness at a basis propagates to the
/// span. Reports the first failing basis vector when one exists.
inline std::pair<bool, std::optional<Vector>> rectangular_via_fitz_witness(
    const LinearRelation& a) {
  if (!is_monotone(a))
    throw std::invalid_argument("rectangular_via_fitz: relation is not monotone");
  const GraphForm form(a);
  const Subspace dom = feature_subspaces(a).dom;
  const Vector zero = Vector::Zero(a.n());
  for (int i = 0; i < dom.dim(); ++i) {
    const Vector d = dom.basis().col(i);
    if (!form.evaluate(d, zero).value.is_finite()) return {false, d};
  }
  return {true, std::nullopt};
}

inline bool rectangular_via_fitz(const LinearRelation& a) {
  return rectangular_via_fitz_witness(a).first;
}

/// Definitional rectangularity test for relations that need not be maximal:
/// finiteness over dom-basis x {0} and {0} x ran-basis pairs. The cone
/// structure of dom F_A extends basis finiteness to all of dom A x ran A.
/// The witness, when present, is the failing pair (x, x*).
inline std::pair<bool, std::optional<std::pair<Vector, Vector>>> rectangular_by_definition(
    const LinearRelation& a) {
  if (!is_monotone(a))
    throw std::invalid_argument("rectangular_by_definition: relation is not monotone");
  const GraphForm form(a);
  const auto features = feature_subspaces(a);
  const Vector zero = Vector::Zero(a.n());
  for (int i = 0; i < features.dom.dim(); ++i) {
    const Vector d = features.dom.basis().col(i);
    if (!form.evaluate(d, zero).value.is_finite())
      return {false, std::make_pair(d, zero)};
  }
  for (int i = 0; i < features.ran.dim(); ++i) {
    const Vector r = features.ran.basis().col(i);
    if (!form.evaluate(zero, r).value.is_finite())
      return {false, std::make_pair(zero, r)};
  }
  return {true, std::nullopt};
}

}  // namespace monorel
