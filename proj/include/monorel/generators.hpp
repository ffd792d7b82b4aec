#pragma once

// Seeded random constructors for the property suites: monotone and
// paramonotone matrices, nonexpansive maps, orthogonal maps, and maximal
// monotone linear relations with genuinely multivalued parts.

#include "numkernel.hpp"
#include "relation.hpp"

#include <random>

namespace monorel {

using Rng = std::mt19937_64;

inline Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

inline Vector random_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

/// PSD matrix F F^T scaled to unit spectral norm.
inline Matrix random_psd(int n, Rng& rng) {
  const Matrix f = random_gaussian(n, n, rng);
  Matrix s = f * f.transpose();
  const double norm = spectral_norm(s);
  if (norm > 0) s /= norm;
  return s;
}

inline Matrix random_skew(int n, Rng& rng) {
  const Matrix g = random_gaussian(n, n, rng);
  return 0.5 * (g - g.transpose());
}

/// Monotone matrix: random PSD part plus random skew part.
inline Matrix random_monotone_matrix(int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return random_psd(n, rng) + unit(rng) * random_skew(n, rng);
}

/// Strongly monotone matrix: symmetric part bounded below by min_sym.
inline Matrix random_strongly_monotone_matrix(int n, Rng& rng, double min_sym = 0.1) {
  Matrix m = random_monotone_matrix(n, rng);
  m += min_sym * Matrix::Identity(n, n);
  return m;
}

/// Paramonotone matrix of rank r <= n: R (S + K) R^T with S positive
/// definite and K skew on the inner space, so ker M = ker M+ = ker R^T.
inline Matrix random_paramonotone_matrix(int n, Rng& rng) {
  std::uniform_int_distribution<int> rank_dist(1, n);
  const int r = rank_dist(rng);
  const Matrix embed = random_gaussian(n, r, rng);
  const Matrix inner = random_psd(r, rng) + 0.2 * Matrix::Identity(r, r) + random_skew(r, rng);
  return embed * inner * embed.transpose() / std::max(1.0, static_cast<double>(n));
}

/// Norm at most 1: a random matrix scaled to unit norm, then shrunk by a
/// uniform factor so strict contractions and norm-1 cases both occur.
inline Matrix random_nonexpansive(int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix t = random_gaussian(n, n, rng);
  const double norm = spectral_norm(t);
  if (norm > 0) t /= norm;
  return unit(rng) * t;
}

/// Orthogonal matrix from the QR factorization of a Gaussian sample.
inline Matrix random_orthogonal(int n, Rng& rng) {
  const Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the sign convention so the distribution is Haar-like.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

inline Subspace random_subspace(int ambient, int dim, Rng& rng, double tol = default_tol) {
  if (dim == 0) return Subspace::zero(ambient, tol);
  return column_space(random_gaussian(ambient, dim, rng), tol);
}

/// Maximal monotone linear relation on R^n: a monotone matrix M = S + K, and
/// with probability 1/2 a genuinely multivalued restriction
/// {(d, M d + w) : d in D, w in D^perp} for a random proper subspace D.
/// Either way dim gra = n and the pairing form stays PSD on the graph.
inline LinearRelation random_maximal_monotone(int n, Rng& rng, double tol = default_tol) {
  const Matrix m = random_monotone_matrix(n, rng);
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng) == 0) return LinearRelation::from_matrix(m, tol);

  std::uniform_int_distribution<int> dim_dist(0, n - 1);
  const int d = dim_dist(rng);
  const Subspace domain = random_subspace(n, d, rng, tol);
  const Subspace normal = complement(domain);
  Matrix cols(2 * n, n);
  cols.topRows(n).leftCols(d) = domain.basis();
  cols.bottomRows(n).leftCols(d) = m * domain.basis();
  cols.topRows(n).rightCols(n - d).setZero();
  cols.bottomRows(n).rightCols(n - d) = normal.basis();
  return LinearRelation::from_graph_span(n, cols, tol);
}

}  // namespace monorel
