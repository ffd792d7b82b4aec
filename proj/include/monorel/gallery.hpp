#pragma once

// Named example operators with exact evaluators, plus expected-classification
// metadata consumed by the acceptance suite. The classifiers never read the
// metadata; it exists so the expectations live next to the constructors.

#include "classify.hpp"
#include "nonexpansive.hpp"
#include "numkernel.hpp"
#include "relation.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace monorel {

/// The 2x2 rotation by -90 degrees: maximal monotone and skew, the standard
/// example of a monotone operator that is neither paramonotone nor
/// rectangular.
inline Matrix rotation() {
  Matrix r(2, 2);
  r << 0.0, 1.0, -1.0, 0.0;
  return r;
}

// ===== ball-constrained operator ===========================================

/// Value of a set-valued map at one point: empty, a single point, or a ray
/// base + lambda * direction (lambda >= 0) with unit direction.
class SetValue {
 public:
  enum class Kind { empty, point, ray };

  static SetValue empty() { return SetValue(Kind::empty, Vector(), Vector()); }
  static SetValue point(Vector p) { return SetValue(Kind::point, std::move(p), Vector()); }
  static SetValue ray(Vector base, Vector unit_direction) {
    return SetValue(Kind::ray, std::move(base), std::move(unit_direction));
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const Vector& base() const { return base_; }
  [[nodiscard]] const Vector& direction() const { return direction_; }

  /// Membership of y* in the set, within tol.
  [[nodiscard]] bool contains(const Vector& y, double tol) const {
    switch (kind_) {
      case Kind::empty:
        return false;
      case Kind::point:
        return (y - base_).norm() <= tol;
      case Kind::ray: {
        const double lambda = (y - base_).dot(direction_);
        if (lambda < -tol) return false;
        return (y - base_ - std::max(lambda, 0.0) * direction_).norm() <= tol;
      }
    }
    return false;
  }

 private:
  SetValue(Kind kind, Vector base, Vector direction)
      : kind_(kind), base_(std::move(base)), direction_(std::move(direction)) {}
  Kind kind_;
  Vector base_;
  Vector direction_;
};

/// x -> A x + N_B(x) for a skew 2x2 matrix A and the closed Euclidean unit
/// ball B: single-valued inside, ray of outward normals on the boundary,
/// empty outside. The bounded domain makes the operator rectangular even
/// though it is not paramonotone.
class BallConstrainedOperator {
 public:
  explicit BallConstrainedOperator(Matrix a, double tol = default_tol)
      : a_(std::move(a)), tol_(tol) {
    if (a_.rows() != 2 || a_.cols() != 2)
      throw std::invalid_argument("BallConstrainedOperator: matrix must be 2x2");
    const double skew_defect = (a_ + a_.transpose()).cwiseAbs().maxCoeff();
    if (skew_defect > tol_ * std::max(a_.cwiseAbs().maxCoeff(), 1.0))
      throw std::invalid_argument(
          "BallConstrainedOperator: matrix must be skew (closed form requires <a, Aa> = 0)");
  }

  [[nodiscard]] const Matrix& matrix() const { return a_; }
  [[nodiscard]] double tol() const { return tol_; }

 private:
  Matrix a_;
  double tol_;
};

inline SetValue ball_evaluate(const BallConstrainedOperator& op, const Vector& x) {
  if (x.size() != 2) throw std::invalid_argument("ball_evaluate: vector must be in R^2");
  const double r = x.norm();
  if (r > 1.0 + op.tol()) return SetValue::empty();
  if (r < 1.0 - op.tol()) return SetValue::point(op.matrix() * x);
  return SetValue::ray(op.matrix() * x, x / r);
}

/// Closed form for the Fitzpatrick function of A + N_B with skew A:
///
///   F(x, y*) = sup_{||a||<=1, lambda>=0} [ <a, y* - Ax> + lambda (<x, a> - 1) ]
///            = ||y* - Ax||            for ||x|| <= 1,
///
/// because <a, Aa> = 0 kills the quadratic term and the lambda term is
/// nonpositive on the ball; +infinity outside the domain.
inline FitzValue ball_fitzpatrick(const BallConstrainedOperator& op, const Vector& x,
                                  const Vector& ystar) {
  if (x.size() != 2 || ystar.size() != 2)
    throw std::invalid_argument("ball_fitzpatrick: vectors must be in R^2");
  if (x.norm() > 1.0 + op.tol()) return FitzValue::plus_infinity();
  return FitzValue::finite((ystar - op.matrix() * x).norm());
}

/// Certificate pair refuting paramonotonicity of the rotation-plus-ball
/// operator: ((1/2, 0), (0, -1/2)) and ((0, 0), (0, 0)) are both in the
/// graph, the pairing of their difference vanishes, yet (0, -1/2) is not a
/// value at 0. The interior scaling 1/2 keeps the first point strictly
/// inside the ball.
struct BallWitnessPair {
  Vector x1, y1, x2, y2;
};

inline BallWitnessPair ball_paramonotone_witness(const BallConstrainedOperator& op) {
  if ((op.matrix() - rotation()).cwiseAbs().maxCoeff() > op.tol())
    throw std::invalid_argument(
        "ball_paramonotone_witness: certificate is specific to the rotation matrix");
  BallWitnessPair pair;
  pair.x1 = Vector(2);
  pair.x1 << 0.5, 0.0;
  pair.y1 = Vector(2);
  pair.y1 << 0.0, -0.5;
  pair.x2 = Vector::Zero(2);
  pair.y2 = Vector::Zero(2);
  return pair;
}

// ===== discretizations =====================================================

/// Trapezoidal discretization of cumulative integration on [0, 1]:
/// V_n = h (L - I/2) with h = 1/n and L lower-triangular all-ones. Chosen
/// because its symmetric part is exactly the rank-one matrix (h/2) J, which
/// gives the exact identity <x, V_n x> = (h/2) (sum x)^2; endpoint rules
/// destroy that structure.
inline Matrix volterra(int n) {
  if (n < 2) throw std::invalid_argument("volterra: n must be >= 2");
  const double h = 1.0 / n;
  Matrix v = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) v(i, j) = h;
    v(i, i) = 0.5 * h;
  }
  return v;
}

/// Diagonal-decay plus block-rotation operator on R^{2m}:
/// C_m = diag(1, 1/2, ..., 1/(2m)) + blockdiag([[0,-1],[1,0]], ...).
/// Strictly monotone and paramonotone for every m, with cocoercivity modulus
/// decaying to zero as m grows.
inline Matrix shift_sum(int m) {
  if (m < 1) throw std::invalid_argument("shift_sum: m must be >= 1");
  const int n = 2 * m;
  Matrix c = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) c(i, i) = 1.0 / (i + 1);
  for (int b = 0; b < m; ++b) {
    c(2 * b, 2 * b + 1) += -1.0;
    c(2 * b + 1, 2 * b) += 1.0;
  }
  return c;
}

/// Displacement of the cyclic right shift with scalar blocks: Id - R on R^m.
inline Matrix cyclic_shift_displacement(int m) {
  if (m < 1) throw std::invalid_argument("cyclic_shift_displacement: m must be >= 1");
  return Matrix::Identity(m, m) - cyclic_shift(m, 1);
}

// ===== gallery catalog =====================================================

struct GalleryExpectation {
  std::optional<bool> monotone;
  std::optional<bool> maximal;
  std::optional<bool> strictly_monotone;
  std::optional<bool> paramonotone;
  std::optional<bool> rectangular;
  std::optional<FitzValue> cocoercivity_modulus;
};

struct GalleryEntry {
  std::string name;
  bool takes_param = false;
  int min_param = 0;
  std::string summary;
};

inline std::vector<GalleryEntry> gallery_list() {
  return {
      {"rotation", false, 0, "2x2 rotation by -90 degrees; monotone, neither paramonotone nor rectangular"},
      {"rotation_ball", false, 0, "rotation plus normal cone of the unit ball; rectangular, not paramonotone"},
      {"volterra", true, 2, "trapezoidal cumulative-integration matrix V_n; neither paramonotone nor rectangular"},
      {"shift_sum", true, 1, "diagonal decay plus block rotation C_m on R^{2m}; strictly monotone, modulus decays"},
      {"cyclic_shift_displacement", true, 1, "Id minus the cyclic right shift on R^m; rectangular and paramonotone"},
  };
}

inline bool gallery_takes_param(const std::string& name) {
  for (const auto& e : gallery_list())
    if (e.name == name) return e.takes_param;
  throw std::invalid_argument("unknown gallery name: " + name);
}

/// Matrix form of a gallery operator (everything except rotation_ball).
inline Matrix gallery_matrix(const std::string& name, std::optional<int> param) {
  if (name == "rotation") return rotation();
  if (name == "volterra") return volterra(param.value());
  if (name == "shift_sum") return shift_sum(param.value());
  if (name == "cyclic_shift_displacement") return cyclic_shift_displacement(param.value());
  throw std::invalid_argument("gallery_matrix: no matrix form for " + name);
}

/// Hand-derived expected classifications. Used by the acceptance suite to
/// check the classifiers, never the other way around.
inline GalleryExpectation gallery_expected(const std::string& name, std::optional<int> param) {
  GalleryExpectation e;
  if (name == "rotation") {
    e.monotone = true;
    e.maximal = true;
    e.strictly_monotone = false;
    e.paramonotone = false;
    e.rectangular = false;
    e.cocoercivity_modulus = FitzValue::finite(0.0);
    return e;
  }
  if (name == "rotation_ball") {
    e.monotone = true;
    e.maximal = true;
    e.strictly_monotone = false;
    e.paramonotone = false;
    e.rectangular = true;
    return e;
  }
  if (name == "volterra") {
    e.monotone = true;
    e.maximal = true;
    e.strictly_monotone = false;
    e.paramonotone = false;
    e.rectangular = false;
    e.cocoercivity_modulus = FitzValue::finite(0.0);
    return e;
  }
  if (name == "shift_sum") {
    e.monotone = true;
    e.maximal = true;
    e.strictly_monotone = true;
    e.paramonotone = true;
    e.rectangular = true;
    if (param && *param == 1) e.cocoercivity_modulus = FitzValue::finite(1.0 / 3.0);
    return e;
  }
  if (name == "cyclic_shift_displacement") {
    e.monotone = true;
    e.maximal = true;
    e.strictly_monotone = false;
    e.paramonotone = true;
    e.rectangular = true;
    if (param)
      e.cocoercivity_modulus =
          *param == 1 ? FitzValue::plus_infinity() : FitzValue::finite(0.5);
    return e;
  }
  throw std::invalid_argument("unknown gallery name: " + name);
}

// ===== honest classification of the ball operator =========================

/// Classification of the set-valued ball operator by operator-specific
/// procedures (the linear-relation classifiers do not apply):
/// - monotone: skew matrix part plus normal-cone monotonicity, checked by
///   sampling graph pairs;
/// - maximal: structural sum rule (monotone matrix part defined everywhere,
///   constraint ball has interior), both hypotheses verified numerically;
/// - strictness and paramonotonicity: refuted by an explicitly verified
///   certificate pair;
/// - rectangular: closed-form Fitzpatrick finiteness on dom x R^2 probes.
inline ClassificationReport ball_classification(const BallConstrainedOperator& op,
                                                unsigned seed = 20120817) {
  ClassificationReport report;
  report.n = 2;
  report.tol = op.tol();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> lambda_dist(0.0, 10.0);
  const auto sample_graph_pair = [&](Vector& x, Vector& y) {
    const double th = angle(rng);
    const double r = std::sqrt(radius(rng));
    x = Vector(2);
    x << r * std::cos(th), r * std::sin(th);
    y = op.matrix() * x;
    if (r > 0.95) {
      // push onto the boundary and add a normal-cone ray sample
      x /= x.norm();
      y = op.matrix() * x + lambda_dist(rng) * x;
    }
  };

  bool monotone = min_eigenvalue(0.5 * (op.matrix() + op.matrix().transpose())) >= -op.tol();
  Vector x1, y1, x2, y2;
  for (int i = 0; i < 10000 && monotone; ++i) {
    sample_graph_pair(x1, y1);
    sample_graph_pair(x2, y2);
    if ((x1 - x2).dot(y1 - y2) < -1e-10) monotone = false;
  }
  report.monotone = monotone;
  if (!monotone) return report;

  // Sum rule hypotheses: the matrix part is a monotone matrix (hence maximal
  // as a single-valued everywhere-defined monotone map) and 0 is interior to
  // the ball, so the sum with the normal cone is maximal.
  report.maximal = is_maximally_monotone(LinearRelation::from_matrix(op.matrix(), op.tol())) &&
                   Vector::Zero(2).norm() < 1.0;

  const BallWitnessPair w = ball_paramonotone_witness(op);
  const bool certificate_valid =
      ball_evaluate(op, w.x1).contains(w.y1, op.tol()) &&
      ball_evaluate(op, w.x2).contains(w.y2, op.tol()) &&
      std::abs((w.x1 - w.x2).dot(w.y1 - w.y2)) <= op.tol() &&
      !ball_evaluate(op, w.x2).contains(w.y1, op.tol());
  report.strictly_monotone = !certificate_valid;
  report.paramonotone = !certificate_valid;
  if (certificate_valid) {
    report.witnesses.emplace_back("strictly_monotone", std::make_pair(w.x1, w.y1));
    report.witnesses.emplace_back("paramonotone", std::make_pair(w.x1, w.y1));
  }

  bool rectangular = true;
  std::uniform_real_distribution<double> wide(-3.0, 3.0);
  for (int i = 0; i < 100 && rectangular; ++i) {
    Vector x(2), ystar(2);
    const double th = angle(rng);
    const double r = std::sqrt(radius(rng));
    x << r * std::cos(th), r * std::sin(th);
    ystar << wide(rng), wide(rng);
    rectangular = ball_fitzpatrick(op, x, ystar).is_finite();
  }
  report.rectangular = rectangular;
  return report;
}

}  // namespace monorel
