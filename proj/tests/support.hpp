#pragma once

// Shared test oracles. Each one recomputes a quantity the library produces,
// by a route the library does not use, so agreement is evidence rather than
// tautology:
//  - Fitzpatrick values: direct ascent of the defining supremum over graph
//    points (sampling + conjugate-direction line searches), never touching
//    the pseudoinverse solve;
//  - cocoercivity modulus: minimum eigenvalue of the symmetrized
//    pseudoinverse restricted to the range, never touching the generalized
//    eigensolver pencil;
//  - pencil roots: sign-change bisection on the characteristic determinant;
//  - ball-operator Fitzpatrick values: dense grid over the graph.

#include <monorel/fitzpatrick.hpp>
#include <monorel/generators.hpp>
#include <monorel/numkernel.hpp>
#include <monorel/relation.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace testsupport {

using monorel::LinearRelation;
using monorel::Matrix;
using monorel::Rng;
using monorel::Vector;

/// The defining Fitzpatrick expression <x, a*> + <a, x*> - <a, a*> at the
/// graph point with coefficient vector c.
inline double defining_value(const Matrix& xb, const Matrix& yb, const Vector& x,
                             const Vector& xstar, const Vector& c) {
  const Vector a = xb * c;
  const Vector astar = yb * c;
  return x.dot(astar) + a.dot(xstar) - a.dot(astar);
}

struct FitzOracleResult {
  bool unbounded = false;
  double value = 0.0;
};

/// Brute-force evaluation of sup over the graph, from the definition:
/// 1. an escape certificate: a graph direction with vanishing self-pairing
///    but nonvanishing linear term makes the supremum +infinity;
/// 2. otherwise log-scaled random sampling for a floor, then
///    conjugate-direction ascent (Powell) with exact quadratic line fits,
///    which terminates on an exact quadratic objective.
inline FitzOracleResult oracle_fitzpatrick(const LinearRelation& rel, const Vector& x,
                                           const Vector& xstar, Rng& rng) {
  const Matrix xb = rel.x_block();
  const Matrix yb = rel.xstar_block();
  const int k = static_cast<int>(xb.cols());
  if (k == 0) return {false, 0.0};

  const Matrix gram = xb.transpose() * yb + yb.transpose() * xb;
  const monorel::Subspace isotropic = monorel::null_space(gram, rel.tol());
  const double point_scale = std::max(1.0, x.norm() + xstar.norm());
  for (int j = 0; j < isotropic.dim(); ++j) {
    const Vector d = isotropic.basis().col(j);
    const double linear = x.dot(yb * d) + (xb * d).dot(xstar);
    if (std::abs(linear) > 1e-7 * point_scale) return {true, 0.0};
  }

  std::uniform_real_distribution<double> log_magnitude(-2.0, 2.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector best_c = Vector::Zero(k);
  double best = defining_value(xb, yb, x, xstar, best_c);
  for (int s = 0; s < 10000; ++s) {
    Vector c(k);
    for (int i = 0; i < k; ++i) c[i] = gauss(rng);
    const double norm = c.norm();
    if (norm < 1e-12) continue;
    c *= std::pow(10.0, log_magnitude(rng)) / norm;
    const double v = defining_value(xb, yb, x, xstar, c);
    if (v > best) {
      best = v;
      best_c = c;
    }
  }

  const auto line_max = [&](const Vector& c0, const Vector& d, bool& moved) -> Vector {
    moved = false;
    const double g0 = defining_value(xb, yb, x, xstar, c0);
    const double gp = defining_value(xb, yb, x, xstar, c0 + d);
    const double gm = defining_value(xb, yb, x, xstar, c0 - d);
    const double slope = 0.5 * (gp - gm);
    const double curvature = 0.5 * (gp + gm) - g0;  // = -d'Qd <= 0 up to rounding
    const double scale = std::abs(g0) + std::abs(gp) + std::abs(gm) + 1.0;
    if (curvature >= -1e-13 * scale) return c0;  // flat direction: certified bounded above
    const double t = -slope / (2.0 * curvature);
    if (std::abs(t) < 1e-15) return c0;
    moved = true;
    return c0 + t * d;
  };

  for (int restart = 0; restart < 3; ++restart) {
    Vector c = best_c;
    std::vector<Vector> dirs;
    dirs.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) dirs.emplace_back(Vector::Unit(k, i));
    for (int round = 0; round <= k; ++round) {
      const Vector c_start = c;
      bool any_move = false;
      for (const Vector& d : dirs) {
        bool moved = false;
        c = line_max(c, d, moved);
        any_move |= moved;
      }
      Vector fresh = c - c_start;
      const double fresh_norm = fresh.norm();
      if (fresh_norm > 1e-14) {
        fresh /= fresh_norm;
        dirs.erase(dirs.begin());
        dirs.push_back(fresh);
        bool moved = false;
        c = line_max(c, fresh, moved);
      }
      if (!any_move) break;
    }
    const double v = defining_value(xb, yb, x, xstar, c);
    if (v > best) {
      best = v;
      best_c = c;
    }
  }

  if (best > 1e8) return {true, best};
  return {false, best};
}

/// Cocoercivity modulus by substitution y = Mx: the infimum of
/// <x, Mx>/|Mx|^2 equals the minimum eigenvalue of sym(pinv(M)) restricted
/// to ran(M). Returns +infinity for the zero matrix.
inline double oracle_modulus_via_pseudoinverse(const Matrix& m) {
  const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
  if (smax <= 1e-12) return std::numeric_limits<double>::infinity();
  const double threshold = 1e-9 * std::max(smax, 1.0);
  int rank = 0;
  while (rank < sigma.size() && sigma[rank] > threshold) ++rank;
  Matrix pinv = Matrix::Zero(m.cols(), m.rows());
  for (int i = 0; i < rank; ++i)
    pinv += (1.0 / sigma[i]) * svd.matrixV().col(i) * svd.matrixU().col(i).transpose();
  const Matrix range_basis = svd.matrixU().leftCols(rank);
  const Matrix sym = 0.5 * (pinv + pinv.transpose());
  const Eigen::SelfAdjointEigenSolver<Matrix> es(range_basis.transpose() * sym * range_basis);
  return es.eigenvalues().minCoeff();
}

/// Smallest root of det(sym(M) - lambda M'M) inside [lo, hi], located by
/// sign-change bisection. The bracket must contain exactly one sign change.
inline double oracle_pencil_root_bisection(const Matrix& m, double lo, double hi,
                                           int iterations = 200) {
  const Matrix sym = 0.5 * (m + m.transpose());
  const Matrix quad = m.transpose() * m;
  const auto f = [&](double lambda) { return (sym - lambda * quad).determinant(); };
  double f_lo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_lo > 0.0) == (f_mid > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Grid evaluation of the ball-constrained operator's Fitzpatrick supremum:
/// interior graph points on a polar grid, boundary points with a ray of
/// normal multipliers. Accurate to roughly 1e-5 for inputs of unit scale.
inline double oracle_ball_fitz_grid(const Matrix& a, const Vector& x, const Vector& ystar) {
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  double best = -std::numeric_limits<double>::infinity();
  for (int ti = 0; ti < 720; ++ti) {
    const double theta = two_pi * ti / 720.0;
    Vector unit(2);
    unit << std::cos(theta), std::sin(theta);
    for (int ri = 0; ri <= 200; ++ri) {
      const Vector p = (ri / 200.0) * unit;
      const Vector pstar = a * p;
      const double v = x.dot(pstar) + p.dot(ystar) - p.dot(pstar);
      if (v > best) best = v;
    }
    const Vector pstar0 = a * unit;
    for (int li = 0; li <= 100; ++li) {
      const double lambda = 0.5 * li;
      const Vector pstar = pstar0 + lambda * unit;
      const double v = x.dot(pstar) + unit.dot(ystar) - unit.dot(pstar);
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace testsupport
