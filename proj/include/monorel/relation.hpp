#pragma once

// Graph calculus for linear relations A : R^n =1 R^n. A relation is held as
// a subspace of R^{2n} with coordinates ordered (x_1..x_n, x*_1..x*_n).
// Adjoint, inverse, and linear combinations are subspace maps; monotonicity
// is positive semidefiniteness of the pairing form restricted to the graph.

#include "numkernel.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace monorel {

/// Image of one point under a relation: empty, or the affine set
/// point + direction_space. For linear relations the direction space is the
/// image of zero, so it is shared by every nonempty image.
class AffineImage {
 public:
  static AffineImage empty(int n, double tol = default_tol) {
    return AffineImage(false, Vector::Zero(n), Subspace::zero(n, tol));
  }
  static AffineImage of(Vector point, Subspace direction_space) {
    return AffineImage(true, std::move(point), std::move(direction_space));
  }

  [[nodiscard]] bool is_empty() const { return !nonempty_; }
  [[nodiscard]] const Vector& point() const {
    if (!nonempty_) throw std::logic_error("AffineImage: point() on empty image");
    return point_;
  }
  [[nodiscard]] const Subspace& direction_space() const {
    if (!nonempty_) throw std::logic_error("AffineImage: direction_space() on empty image");
    return directions_;
  }

 private:
  AffineImage(bool nonempty, Vector point, Subspace directions)
      : nonempty_(nonempty), point_(std::move(point)), directions_(std::move(directions)) {}
  bool nonempty_;
  Vector point_;
  Subspace directions_;
};

/// dom, ran, ker, and the multivalued part A0 = {x* : (0, x*) in gra A}.
struct RelationFeatures {
  Subspace dom;
  Subspace ran;
  Subspace ker;
  Subspace a0;
};

class LinearRelation {
 public:
  LinearRelation(int n, Subspace graph) : n_(n), graph_(std::move(graph)) {
    if (n_ <= 0) throw std::invalid_argument("LinearRelation: n must be positive");
    if (graph_.ambient_dim() != 2 * n_)
      throw std::invalid_argument("LinearRelation: graph ambient dimension must be 2n");
  }

  /// Graph of a single-valued linear operator: span{(e_i, M e_i)}. The
  /// given entries are kept verbatim alongside the orthonormalized graph so
  /// matrix round-trips are exact (the orthonormalization is lossy at the
  /// last ulp, which matters for byte-deterministic reports).
  static LinearRelation from_matrix(const Matrix& m, double tol = default_tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("from_matrix: matrix must be square");
    const int n = static_cast<int>(m.rows());
    Matrix cols(2 * n, n);
    cols.topRows(n) = Matrix::Identity(n, n);
    cols.bottomRows(n) = m;
    LinearRelation rel(n, column_space(cols, tol));
    rel.source_matrix_ = m;
    return rel;
  }

  /// Relation spanned by the given graph vectors (stacked (x, x*) columns).
  static LinearRelation from_graph_span(int n, const Matrix& spanning_columns,
                                        double tol = default_tol) {
    if (spanning_columns.rows() != 2 * n)
      throw std::invalid_argument("from_graph_span: columns must live in R^{2n}");
    return LinearRelation(n, column_space(spanning_columns, tol));
  }

  static LinearRelation identity(int n, double tol = default_tol) {
    return from_matrix(Matrix::Identity(n, n), tol);
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const Subspace& graph() const { return graph_; }
  [[nodiscard]] double tol() const { return graph_.tol(); }

  /// First-block rows of the graph basis (the x parts of the basis columns).
  [[nodiscard]] Matrix x_block() const { return graph_.basis().topRows(n_); }
  /// Second-block rows (the x* parts).
  [[nodiscard]] Matrix xstar_block() const { return graph_.basis().bottomRows(n_); }

  /// The exact entries this relation was built from, when it came from a
  /// matrix; empty for relations assembled from graph spans or calculus.
  [[nodiscard]] const std::optional<Matrix>& source_matrix() const { return source_matrix_; }

 private:
  int n_;
  Subspace graph_;
  std::optional<Matrix> source_matrix_;
};

// ===== structural maps =====================================================

/// Symmetric pairing matrix P with z^T P z = <x, x*> for z = (x, x*).
inline Matrix pairing_matrix(int n) {
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  p.topRightCorner(n, n) = 0.5 * Matrix::Identity(n, n);
  p.bottomLeftCorner(n, n) = 0.5 * Matrix::Identity(n, n);
  return p;
}

/// Adjoint: gra A* = {(y, y*) : (y*, -y) is orthogonal to gra A}, realized as
/// the swap-negate image of the graph's orthogonal complement. The map is
/// orthogonal, so orthonormality of the basis survives and
/// dim gra A* = 2n - dim gra A.
inline LinearRelation adjoint(const LinearRelation& a) {
  const int n = a.n();
  const Subspace comp = complement(a.graph());
  Matrix basis(2 * n, comp.dim());
  basis.topRows(n) = -comp.basis().bottomRows(n);
  basis.bottomRows(n) = comp.basis().topRows(n);
  return LinearRelation(n, Subspace(2 * n, basis, a.tol()));
}

/// Inverse: coordinates swapped. An involution, exactly.
inline LinearRelation inverse(const LinearRelation& a) {
  const int n = a.n();
  Matrix basis(2 * n, a.graph().dim());
  basis.topRows(n) = a.xstar_block();
  basis.bottomRows(n) = a.x_block();
  return LinearRelation(n, Subspace(2 * n, basis, a.tol()));
}

/// Pointwise linear combination:
/// gra(alpha A + beta B) = {(x, alpha a* + beta b*) : (x, a*) in gra A, (x, b*) in gra B}.
/// Computed in R^{3n} by intersecting the two domain-aligned lifts and
/// projecting through (x, a*, b*) -> (x, alpha a* + beta b*).
inline LinearRelation combine(double alpha, const LinearRelation& a, double beta,
                              const LinearRelation& b) {
  if (a.n() != b.n()) throw std::invalid_argument("combine: dimension mismatch");
  const int n = a.n();
  const double tol = std::min(a.tol(), b.tol());

  const int ka = a.graph().dim();
  const int kb = b.graph().dim();
  Matrix lift_a = Matrix::Zero(3 * n, ka + n);
  lift_a.topRows(n).leftCols(ka) = a.x_block();
  lift_a.middleRows(n, n).leftCols(ka) = a.xstar_block();
  lift_a.bottomRows(n).rightCols(n) = Matrix::Identity(n, n);
  Matrix lift_b = Matrix::Zero(3 * n, kb + n);
  lift_b.topRows(n).leftCols(kb) = b.x_block();
  lift_b.bottomRows(n).leftCols(kb) = b.xstar_block();
  lift_b.middleRows(n, n).rightCols(n) = Matrix::Identity(n, n);

  const Subspace meet = intersect(Subspace(3 * n, lift_a, tol), Subspace(3 * n, lift_b, tol));

  Matrix cols(2 * n, meet.dim());
  cols.topRows(n) = meet.basis().topRows(n);
  cols.bottomRows(n) =
      alpha * meet.basis().middleRows(n, n) + beta * meet.basis().bottomRows(n);
  return LinearRelation(n, column_space(cols, tol));
}

inline LinearRelation symmetric_part(const LinearRelation& a) {
  return combine(0.5, a, 0.5, adjoint(a));
}

inline LinearRelation skew_part(const LinearRelation& a) {
  return combine(0.5, a, -0.5, adjoint(a));
}

// ===== structural subspaces and evaluation =================================

inline RelationFeatures feature_subspaces(const LinearRelation& a) {
  const double tol = a.tol();
  const Matrix x = a.x_block();
  const Matrix y = a.xstar_block();
  // ker = {x : (x, 0) in gra A} = x_block * null(xstar_block); a0 dually.
  return RelationFeatures{
      column_space(x, tol),
      column_space(y, tol),
      column_space(x * null_space(y, tol).basis(), tol),
      column_space(y * null_space(x, tol).basis(), tol),
  };
}

/// Ax as an affine set. The particular point is the least-norm element
/// (the projection of any particular solution onto the complement of A0),
/// so the output is deterministic and independent of the solver's choice.
inline AffineImage evaluate(const LinearRelation& a, const Vector& x) {
  const int n = a.n();
  if (x.size() != n) throw std::invalid_argument("evaluate: vector length mismatch");
  const double tol = a.tol();
  const Matrix xb = a.x_block();
  if (xb.cols() == 0) {
    if (x.norm() <= tol) {
      return AffineImage::of(Vector::Zero(n), Subspace::zero(n, tol));
    }
    return AffineImage::empty(n, tol);
  }

  auto svd = detail::full_svd(xb);
  const int r = detail::rank_from_singular_values(svd.singularValues(), tol);
  Vector coeffs = svd.matrixU().transpose() * x;
  Vector scaled = Vector::Zero(xb.cols());
  for (int i = 0; i < r; ++i) scaled(i) = coeffs(i) / svd.singularValues()(i);
  const Vector c = svd.matrixV() * scaled;
  if ((xb * c - x).norm() > tol * std::max(x.norm(), 1.0)) return AffineImage::empty(n, tol);

  const Subspace a0 = feature_subspaces(a).a0;
  const Vector particular = a.xstar_block() * c;
  return AffineImage::of(particular - a0.project(particular), a0);
}

// ===== monotonicity ========================================================

/// Monotone iff <x, x*> is PSD on the graph: the pairing form restricted to
/// the graph has minimum eigenvalue >= -tol.
inline bool is_monotone(const LinearRelation& a) {
  const auto pair = restricted_min_eigenpair(pairing_matrix(a.n()), a.graph());
  if (!pair) return true;  // empty graph: vacuously monotone
  return pair->first >= -a.tol();
}

/// Graph pair (a, a*) with <a, a*> < 0 certifying non-monotonicity.
inline std::optional<std::pair<Vector, Vector>> monotonicity_violation(const LinearRelation& a) {
  const auto pair = restricted_min_eigenpair(pairing_matrix(a.n()), a.graph());
  if (!pair || pair->first >= -a.tol()) return std::nullopt;
  Vector z = pair->second;
  for (int i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > 1e-12) {
      if (z(i) < 0) z = -z;
      break;
    }
  }
  return std::make_pair(Vector(z.head(a.n())), Vector(z.tail(a.n())));
}

/// Maximality of a monotone linear relation on R^n is exactly
/// dim gra A = n (a proper monotone enlargement exists below that dimension
/// and monotone graphs cannot exceed it).
inline bool is_maximally_monotone(const LinearRelation& a) {
  return is_monotone(a) && a.graph().dim() == a.n();
}

/// Searches for a point monotonically related to the graph but outside it,
/// i.e. a certificate that a monotone relation is not maximal. Returns
/// nothing when the relation is maximal. The search is independent of the
/// dimension criterion: it maximizes the pairing form on the form-orthogonal
/// complement of the graph, where any strictly positive value yields a valid
/// monotone extension point.
inline std::optional<std::pair<Vector, Vector>> maximality_witness(const LinearRelation& a) {
  const int n = a.n();
  const double tol = a.tol();
  const Matrix p = pairing_matrix(n);
  const Subspace& graph = a.graph();
  if (graph.dim() == 0) {
    // Everything is monotonically related to the empty graph; (0, e_1) is
    // outside it. (A zero-dimensional graph in this representation is the
    // relation whose only pair is (0, 0).)
    Vector x = Vector::Zero(n);
    Vector xs = Vector::Unit(n, 0);
    return std::make_pair(x, xs);
  }

  // W = {z : z^T P v = 0 for all v in gra A}; q(z - v) = q(z) + q(v) on W.
  const Subspace w = null_space(graph.basis().transpose() * p, tol);
  if (w.dim() == 0) return std::nullopt;

  const Matrix& wb = w.basis();
  Eigen::SelfAdjointEigenSolver<Matrix> es(wb.transpose() * p * wb);
  const Vector& lam = es.eigenvalues();
  for (int i = static_cast<int>(lam.size()) - 1; i >= 0; --i) {
    if (lam(i) <= tol) break;  // eigenvalues ascend: nothing positive remains
    Vector z = wb * es.eigenvectors().col(i);
    if (!graph.contains(z)) {
      for (int j = 0; j < z.size(); ++j) {
        if (std::abs(z(j)) > 1e-12) {
          if (z(j) < 0) z = -z;
          break;
        }
      }
      return std::make_pair(Vector(z.head(n)), Vector(z.tail(n)));
    }
  }
  return std::nullopt;
}

/// Extracts the matrix representation when the relation is single-valued
/// with full domain (dim gra = n, A0 = {0}, dom = R^n). Prefers the exact
/// construction-time entries when available; otherwise reconstructs from the
/// orthonormal graph basis.
inline std::optional<Matrix> as_matrix(const LinearRelation& a) {
  if (a.source_matrix()) return a.source_matrix();
  const int n = a.n();
  if (a.graph().dim() != n) return std::nullopt;
  const Matrix xb = a.x_block();
  auto svd = detail::full_svd(xb);
  if (detail::rank_from_singular_values(svd.singularValues(), a.tol()) != n) return std::nullopt;
  return Matrix(a.xstar_block() * svd.solve(Matrix::Identity(n, n)));
}

}  // namespace monorel
