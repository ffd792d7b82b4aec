#pragma once

// Deciders for paramonotonicity, rectangularity, and strict monotonicity of
// monotone linear relations, plus cocoercivity moduli of monotone matrices.
//
// Paramonotonicity and rectangularity are each decided by two logically
// equivalent routes and the routes are required to agree on maximal inputs;
// a disagreement is a numerical-rank misjudgment and is raised as a hard
// error rather than resolved by vote.

#include "fitzpatrick.hpp"
#include "numkernel.hpp"
#include "relation.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monorel {

/// Raised when two equivalent decision methods disagree. Never resolved
/// silently; callers should rerun with an adjusted tolerance.
class MethodDisagreement : public std::runtime_error {
 public:
  explicit MethodDisagreement(const std::string& what)
      : std::runtime_error(what + " (the two routes are logically equivalent, so this is a "
                                  "numerical-rank misjudgment; rerun with adjusted tol)") {}
};

/// Boolean decision with an optional certificate pair (x, x*).
struct Decision {
  bool holds = false;
  std::optional<std::pair<Vector, Vector>> witness;
};

namespace detail {

// Scale a graph pair so the x part (or the whole vector if x vanishes) has
// unit norm, and fix the sign by the first significant coordinate. Keeps
// witnesses reproducible across eigensolver sign choices.
inline std::pair<Vector, Vector> normalize_graph_pair(Vector x, Vector xstar, double tol) {
  const double nx = x.norm();
  Vector z(x.size() + xstar.size());
  z << x, xstar;
  const double s = nx > tol ? nx : z.norm();
  if (s > 0) z /= s;
  for (int i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > tol) {
      if (z(i) < 0) z = -z;
      break;
    }
  }
  return {Vector(z.head(x.size())), Vector(z.tail(xstar.size()))};
}

// Basis of the zero set {z in gra A : <a, a*> = 0}, in graph coordinates.
// For monotone relations the pairing Gram Q is PSD, so the zero set is
// exactly its null space.
inline Subspace pairing_null_space(const GraphForm& form, double tol) {
  return null_space(form.gram(), tol);
}

inline void require_monotone(const LinearRelation& a, const char* op) {
  if (!is_monotone(a))
    throw std::invalid_argument(std::string(op) + ": relation is not monotone");
}

}  // namespace detail

// ===== paramonotonicity ====================================================

/// A monotone linear relation is paramonotone iff every graph point (a, a*)
/// with <a, a*> = 0 has a* in A0. Decided on the pairing-Gram null space;
/// for maximal relations the result is cross-checked against the kernel
/// comparison ker A+ = ker A and a mismatch raises MethodDisagreement.
inline Decision is_paramonotone(const LinearRelation& a) {
  detail::require_monotone(a, "is_paramonotone");
  const double tol = a.tol();
  const GraphForm form(a);
  const Subspace null = detail::pairing_null_space(form, tol);
  const Subspace a0 = feature_subspaces(a).a0;
  const int n = a.n();

  Decision result{true, std::nullopt};
  for (int j = 0; j < null.dim(); ++j) {
    const Vector z = a.graph().basis() * null.basis().col(j);
    const Vector astar = z.tail(n);
    if (!a0.contains(astar)) {
      result.holds = false;
      result.witness = detail::normalize_graph_pair(z.head(n), astar, tol);
      break;
    }
  }

  if (is_maximally_monotone(a)) {
    const LinearRelation aplus = symmetric_part(a);
    const bool kernel_route =
        subspace_equal(feature_subspaces(aplus).ker, feature_subspaces(a).ker, tol);
    if (kernel_route != result.holds)
      throw MethodDisagreement("paramonotonicity: graph-null route and kernel-comparison "
                               "route disagree");
  }
  return result;
}

// ===== rectangularity ======================================================

/// For maximal monotone relations: range comparison ran A+ = ran A,
/// cross-checked against the Fitzpatrick-domain route (dom A x {0} inside
/// dom F_A); disagreement raises MethodDisagreement. For monotone
/// non-maximal relations the definition is tested directly through the
/// Fitzpatrick domain. The witness is a pair (x, x*) with F_A(x, x*) = +inf.
inline Decision is_rectangular(const LinearRelation& a) {
  detail::require_monotone(a, "is_rectangular");
  const double tol = a.tol();
  const Vector zero = Vector::Zero(a.n());

  if (!is_maximally_monotone(a)) {
    auto [holds, witness] = rectangular_by_definition(a);
    return Decision{holds, std::move(witness)};
  }

  const auto [fitz_holds, fitz_witness] = rectangular_via_fitz_witness(a);
  const LinearRelation aplus = symmetric_part(a);
  const bool range_route =
      subspace_equal(feature_subspaces(aplus).ran, feature_subspaces(a).ran, tol);
  if (range_route != fitz_holds)
    throw MethodDisagreement("rectangularity: range-comparison route and Fitzpatrick-domain "
                             "route disagree");

  Decision result{range_route, std::nullopt};
  if (fitz_witness) result.witness = std::make_pair(*fitz_witness, zero);
  return result;
}

// ===== strict monotonicity =================================================

/// Strictly monotone iff <a, a*> = 0 on the graph forces a = 0, i.e. the
/// x-block of the pairing-null directions vanishes.
inline Decision strict_monotonicity(const LinearRelation& a) {
  detail::require_monotone(a, "is_strictly_monotone");
  const double tol = a.tol();
  const GraphForm form(a);
  const Subspace null = detail::pairing_null_space(form, tol);
  const int n = a.n();
  for (int j = 0; j < null.dim(); ++j) {
    const Vector z = a.graph().basis() * null.basis().col(j);
    if (z.head(n).norm() > tol) {
      return Decision{false, detail::normalize_graph_pair(z.head(n), z.tail(n), tol)};
    }
  }
  return Decision{true, std::nullopt};
}

inline bool is_strictly_monotone(const LinearRelation& a) { return strict_monotonicity(a).holds; }

// ===== cocoercivity ========================================================

/// Largest beta with <x, Mx> >= beta ||Mx||^2 for all x. +infinity for the
/// zero matrix (the inequality holds vacuously for every beta); otherwise the
/// minimum generalized eigenvalue of the pencil (M+, M^T M) restricted to the
/// orthogonal complement of ker M, clamped to 0 when it falls below tol
/// (not cocoercive). Rejects non-monotone input.
inline FitzValue cocoercivity_modulus(const Matrix& m, double tol = default_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("cocoercivity_modulus: matrix not square");
  const Matrix sym = 0.5 * (m + m.transpose());
  if (min_eigenvalue(sym) < -tol * std::max(spectral_norm(sym), 1.0))
    throw std::invalid_argument("cocoercivity_modulus: matrix is not monotone");
  if (spectral_norm(m) <= tol) return FitzValue::plus_infinity();

  // ker M = ker M^T for monotone M, so the complement of ker M both carries
  // the pencil and makes M^T M positive definite on it.
  const Subspace active = complement(null_space(m, tol));
  const Matrix& b = active.basis();
  const Matrix pencil_lhs = b.transpose() * sym * b;
  const Matrix pencil_rhs = b.transpose() * (m.transpose() * m) * b;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(
      0.5 * (pencil_lhs + pencil_lhs.transpose()), 0.5 * (pencil_rhs + pencil_rhs.transpose()));
  const double beta = ges.eigenvalues().minCoeff();
  return FitzValue::finite(beta > tol ? beta : 0.0);
}

/// ||gamma M - Id|| <= 1 within tolerance.
inline bool gamma_nonexpansive_check(const Matrix& m, double gamma, double tol = default_tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("gamma_nonexpansive_check: matrix not square");
  if (gamma < 0) throw std::invalid_argument("gamma_nonexpansive_check: gamma must be >= 0");
  const Matrix shifted = gamma * m - Matrix::Identity(m.rows(), m.cols());
  return spectral_norm(shifted) <= 1.0 + tol;
}

/// Monotonicity of M^{-1} - beta Id, built with relation arithmetic so
/// singular M (multivalued inverse) is handled uniformly.
inline bool inverse_strong_monotonicity_check(const Matrix& m, double beta,
                                              double tol = default_tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("inverse_strong_monotonicity_check: matrix not square");
  if (beta < 0) throw std::invalid_argument("inverse_strong_monotonicity_check: beta must be >= 0");
  const Matrix sym = 0.5 * (m + m.transpose());
  if (min_eigenvalue(sym) < -tol * std::max(spectral_norm(sym), 1.0))
    throw std::invalid_argument("inverse_strong_monotonicity_check: matrix is not monotone");
  const int n = static_cast<int>(m.rows());
  const LinearRelation difference =
      combine(1.0, inverse(LinearRelation::from_matrix(m, tol)), -beta,
              LinearRelation::identity(n, tol));
  return is_monotone(difference);
}

// ===== aggregate report ====================================================

/// Classification record. Flags other than `monotone` are absent when the
/// input is not monotone; the modulus is present only for single-valued
/// full-domain inputs. Witnesses appear exactly for the properties reported
/// false, keyed by property name, each a graph/extension pair (x, x*).
struct ClassificationReport {
  int n = 0;
  double tol = default_tol;
  bool monotone = false;
  std::optional<bool> maximal;
  std::optional<bool> strictly_monotone;
  std::optional<bool> paramonotone;
  std::optional<bool> rectangular;
  std::optional<FitzValue> cocoercivity_modulus;
  std::vector<std::pair<std::string, std::pair<Vector, Vector>>> witnesses;
};

inline ClassificationReport classification_report(const LinearRelation& a) {
  ClassificationReport report;
  report.n = a.n();
  report.tol = a.tol();
  report.monotone = is_monotone(a);
  if (!report.monotone) {
    if (auto w = monotonicity_violation(a)) report.witnesses.emplace_back("monotone", *w);
    return report;
  }

  report.maximal = is_maximally_monotone(a);
  if (!*report.maximal) {
    if (auto w = maximality_witness(a)) report.witnesses.emplace_back("maximal", *w);
  }

  const Decision strict = strict_monotonicity(a);
  report.strictly_monotone = strict.holds;
  if (!strict.holds && strict.witness)
    report.witnesses.emplace_back("strictly_monotone", *strict.witness);

  const Decision para = is_paramonotone(a);
  report.paramonotone = para.holds;
  if (!para.holds && para.witness) report.witnesses.emplace_back("paramonotone", *para.witness);

  const Decision rect = is_rectangular(a);
  report.rectangular = rect.holds;
  if (!rect.holds && rect.witness) report.witnesses.emplace_back("rectangular", *rect.witness);

  if (const auto m = as_matrix(a)) report.cocoercivity_modulus = cocoercivity_modulus(*m, a.tol());
  return report;
}

}  // namespace monorel
