#pragma once

// Tolerance-aware dense linear-algebra primitives: rank decisions, subspace
// arithmetic, restricted eigenvalues, and constrained quadratic maximization.
//
// Every predicate in this library routes its rank/range/PSD decisions through
// the helpers here, so a single tolerance convention applies everywhere:
//
//   rank:   a singular value counts as nonzero iff  sigma > tol * max(sigma_max, 1)
//   range:  b lies in ran(Q)                   iff  ||Q (Q^+ b) - b|| <= tol * max(||b||, 1)
//   PSD:    Q is positive semidefinite         iff  lambda_min >= -tol * max(||Q||_2, 1)

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace monorel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double default_tol = 1e-9;

namespace detail {

// Full-matrix SVD via two-sided Jacobi. The divide-and-conquer kernel is
// avoided deliberately: on structured rank-deficient inputs with exactly
// repeated singular values (orthonormal block stacks, as produced by the
// relation calculus) its deflation step can emit non-finite U/V factors
// while the singular values stay finite. Jacobi is unconditionally stable
// and fast at the dimensions this library targets.
inline Eigen::JacobiSVD<Matrix> full_svd(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

inline int rank_from_singular_values(const Vector& sigma, double tol) {
  if (sigma.size() == 0) return 0;
  const double thresh = tol * std::max(sigma(0), 1.0);
  int r = 0;
  while (r < sigma.size() && sigma(r) > thresh) ++r;
  return r;
}

}  // namespace detail

// ===== extended reals ======================================================

/// Extended real returned by sup-type computations: a finite value or +infinity.
class FitzValue {
 public:
  static FitzValue finite(double v) { return FitzValue(true, v); }
  static FitzValue plus_infinity() { return FitzValue(false, 0.0); }

  [[nodiscard]] bool is_finite() const { return finite_; }
  [[nodiscard]] double value() const {
    if (!finite_) throw std::logic_error("FitzValue: value() called on +infinity");
    return value_;
  }

  friend bool operator==(const FitzValue& a, const FitzValue& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

 private:
  FitzValue(bool finite, double value) : finite_(finite), value_(value) {}
  bool finite_;
  double value_;
};

// ===== subspaces ===========================================================

/// Linear subspace of R^d held as an orthonormal column basis plus the
/// tolerance it was computed with. An empty basis is the zero subspace;
/// the ambient dimension is carried explicitly so zero subspaces of
/// different spaces stay distinguishable.
class Subspace {
 public:
  Subspace(int ambient_dim, Matrix orthonormal_basis, double tol)
      : ambient_(ambient_dim), basis_(std::move(orthonormal_basis)), tol_(tol) {
    if (ambient_ < 0) throw std::invalid_argument("Subspace: negative ambient dimension");
    if (basis_.size() == 0) basis_.resize(ambient_, 0);
    if (basis_.rows() != ambient_)
      throw std::invalid_argument("Subspace: basis rows do not match ambient dimension");
    if (basis_.cols() > ambient_)
      throw std::invalid_argument("Subspace: more basis vectors than ambient dimension");
    // Invariant: columns pairwise orthonormal to within 10*tol. Guarded on
    // column count because coefficient reductions of empty matrices are
    // undefined.
    if (basis_.cols() > 0) {
      const Matrix gram = basis_.transpose() * basis_;
      const double defect =
          (gram - Matrix::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
      if (defect > 10.0 * tol_)
        throw std::invalid_argument("Subspace: basis is not orthonormal (defect " +
                                    std::to_string(defect) + ")");
    }
  }

  static Subspace zero(int ambient_dim, double tol = default_tol) {
    return Subspace(ambient_dim, Matrix(ambient_dim, 0), tol);
  }
  static Subspace full(int ambient_dim, double tol = default_tol) {
    return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim), tol);
  }

  [[nodiscard]] int ambient_dim() const { return ambient_; }
  [[nodiscard]] int dim() const { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] const Matrix& basis() const { return basis_; }
  [[nodiscard]] double tol() const { return tol_; }

  /// Orthogonal projection onto the subspace.
  [[nodiscard]] Vector project(const Vector& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::project: dimension mismatch");
    if (dim() == 0) return Vector::Zero(ambient_);
    return basis_ * (basis_.transpose() * v);
  }

  /// Membership within the residual tolerance ||v - P v|| <= tol * max(||v||, 1).
  [[nodiscard]] bool contains(const Vector& v) const {
    const Vector r = v - project(v);
    return r.norm() <= tol_ * std::max(v.norm(), 1.0);
  }

 private:
  int ambient_;
  Matrix basis_;
  double tol_;
};

// ===== subspace arithmetic =================================================

/// Span of the given columns. Rank decisions follow the singular-value
/// threshold sigma > tol * max(sigma_max, 1). A d x 0 input yields the zero
/// subspace of R^d.
inline Subspace column_space(const Matrix& columns, double tol = default_tol) {
  const int d = static_cast<int>(columns.rows());
  if (columns.cols() == 0) return Subspace::zero(d, tol);
  auto svd = detail::full_svd(columns);
  const int r = detail::rank_from_singular_values(svd.singularValues(), tol);
  return Subspace(d, svd.matrixU().leftCols(r), tol);
}

/// Null space {x : M x = 0} with the same rank threshold.
inline Subspace null_space(const Matrix& m, double tol = default_tol) {
  const int cols = static_cast<int>(m.cols());
  if (cols == 0) return Subspace::zero(0, tol);
  if (m.rows() == 0) return Subspace::full(cols, tol);
  auto svd = detail::full_svd(m);
  const int r = detail::rank_from_singular_values(svd.singularValues(), tol);
  return Subspace(cols, svd.matrixV().rightCols(cols - r), tol);
}

/// Orthogonal complement in the ambient space; dim(S) + dim(result) = ambient.
inline Subspace complement(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.ambient_dim(), s.tol());
  return null_space(s.basis().transpose(), s.tol());
}

/// Largest principal angle between equal-dimensional subspaces, reported as
/// its sine (exact for the small angles the comparison cares about).
inline double sin_largest_principal_angle(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("principal angle: ambient dimension mismatch");
  if (s.dim() == 0 || t.dim() == 0) return s.dim() == t.dim() ? 0.0 : 1.0;
  const Matrix& b = s.basis();
  const Matrix& c = t.basis();
  const auto residual_norm = [](const Matrix& from, const Matrix& onto) {
    const Matrix r = from - onto * (onto.transpose() * from);
    return detail::full_svd(r).singularValues()(0);
  };
  return std::max(residual_norm(c, b), residual_norm(b, c));
}

/// Equality as subspaces: dimensions agree and the largest principal angle is
/// below tol.
inline bool subspace_equal(const Subspace& s, const Subspace& t, double tol = default_tol) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("subspace_equal: ambient dimension mismatch");
  if (s.dim() != t.dim()) return false;
  if (s.dim() == 0) return true;
  return sin_largest_principal_angle(s, t) < tol;
}

/// Intersection of two subspaces of the same ambient space.
inline Subspace intersect(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("intersect: ambient dimension mismatch");
  const double tol = std::min(s.tol(), t.tol());
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(s.ambient_dim(), tol);
  Matrix stacked(s.ambient_dim(), s.dim() + t.dim());
  stacked << s.basis(), -t.basis();
  const Subspace n = null_space(stacked, tol);
  return column_space(s.basis() * n.basis().topRows(s.dim()), tol);
}

/// Span of the union of two subspaces.
inline Subspace subspace_sum(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim())
    throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
  Matrix joined(s.ambient_dim(), s.dim() + t.dim());
  joined << s.basis(), t.basis();
  return column_space(joined, std::min(s.tol(), t.tol()));
}

// ===== eigenvalue helpers ==================================================

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return detail::full_svd(m).singularValues()(0);
}

inline double min_eigenvalue(const Matrix& symmetric) {
  if (symmetric.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (symmetric + symmetric.transpose()));
  return es.eigenvalues().minCoeff();
}

/// Minimum eigenvalue of B^T Q B together with its minimizer lifted back to
/// the ambient space, where B is the orthonormal basis of S. Empty subspace
/// means the restriction is vacuous (no value).
inline std::optional<std::pair<double, Vector>> restricted_min_eigenpair(const Matrix& q,
                                                                         const Subspace& s) {
  if (s.dim() == 0) return std::nullopt;
  if (q.rows() != s.ambient_dim() || q.cols() != s.ambient_dim())
    throw std::invalid_argument("restricted_min_eigenpair: matrix/subspace size mismatch");
  const Matrix& b = s.basis();
  const Matrix restricted = b.transpose() * (0.5 * (q + q.transpose())) * b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (restricted + restricted.transpose()));
  int idx = 0;
  es.eigenvalues().minCoeff(&idx);
  return std::make_pair(es.eigenvalues()(idx), Vector(b * es.eigenvectors().col(idx)));
}

inline std::optional<double> restricted_min_eigenvalue(const Matrix& q, const Subspace& s) {
  auto pair = restricted_min_eigenpair(q, s);
  if (!pair) return std::nullopt;
  return pair->first;
}

// ===== constrained quadratic maximization ==================================

/// Result of sup_c b^T c - c^T Q c with residual diagnostics. `maximizer` is
/// populated only for finite values. `near_singular` marks range-test
/// residuals within a factor 10 of the acceptance threshold, on either side.
struct SupResult {
  FitzValue value;
  double residual = 0.0;
  double threshold = 0.0;
  bool near_singular = false;
  Vector maximizer;
};

/// sup_c b^T c - c^T Q c for PSD Q: Finite(1/4 b^T Q^+ b) when b lies in
/// ran(Q) by the residual test, +infinity otherwise. Throws when Q fails the
/// PSD tolerance (a non-monotone input upstream).
inline SupResult sup_linear_minus_quadratic_diag(const Matrix& q, const Vector& b,
                                                 double tol = default_tol) {
  if (q.rows() != q.cols()) throw std::invalid_argument("sup_linear_minus_quadratic: Q not square");
  if (b.size() != q.rows())
    throw std::invalid_argument("sup_linear_minus_quadratic: b/Q size mismatch");

  SupResult out{FitzValue::finite(0.0), 0.0, tol, false, Vector()};
  if (q.rows() == 0) {
    out.maximizer = Vector(0);
    return out;
  }

  const Matrix qs = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(qs);
  const Vector& lam = es.eigenvalues();
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  if (lam.minCoeff() < -tol * std::max(lam_max, 1.0))
    throw std::invalid_argument(
        "sup_linear_minus_quadratic: Q is not positive semidefinite within tolerance "
        "(non-monotone input)");

  // Pseudoinverse solve with the shared rank threshold.
  const double rank_thresh = tol * std::max(lam_max, 1.0);
  Vector coeffs = es.eigenvectors().transpose() * b;
  for (int i = 0; i < coeffs.size(); ++i)
    coeffs(i) = lam(i) > rank_thresh ? coeffs(i) / lam(i) : 0.0;
  const Vector c = es.eigenvectors() * coeffs;

  out.residual = (qs * c - b).norm();
  out.threshold = tol * std::max(b.norm(), 1.0);
  out.near_singular = out.residual >= out.threshold / 10.0 && out.residual <= out.threshold * 10.0;
  if (out.residual <= out.threshold) {
    out.value = FitzValue::finite(0.25 * b.dot(c));
    out.maximizer = 0.5 * c;
  } else {
    out.value = FitzValue::plus_infinity();
  }
  return out;
}

inline FitzValue sup_linear_minus_quadratic(const Matrix& q, const Vector& b,
                                            double tol = default_tol) {
  return sup_linear_minus_quadratic_diag(q, b, tol).value;
}

}  // namespace monorel
