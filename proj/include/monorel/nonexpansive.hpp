#pragma once

// Nonexpansive and firmly nonexpansive linear maps, resolvents, and
// displacement mappings. For linear T the spectral norm decides
// nonexpansiveness exactly, and T is firmly nonexpansive iff 2T - Id is
// nonexpansive.

#include "classify.hpp"
#include "numkernel.hpp"
#include "relation.hpp"

#include <stdexcept>

namespace monorel {

struct NonexpansivenessClass {
  double operator_norm = 0.0;
  bool nonexpansive = false;
  bool firmly_nonexpansive = false;
};

inline NonexpansivenessClass nonexpansiveness_class(const Matrix& t, double tol = default_tol) {
  if (t.rows() != t.cols())
    throw std::invalid_argument("nonexpansiveness_class: matrix not square");
  NonexpansivenessClass out;
  out.operator_norm = spectral_norm(t);
  out.nonexpansive = out.operator_norm <= 1.0 + tol;
  const Matrix doubled = 2.0 * t - Matrix::Identity(t.rows(), t.cols());
  out.firmly_nonexpansive = spectral_norm(doubled) <= 1.0 + tol;
  return out;
}

/// Resolvent J_A = (Id + A)^{-1} as a relation; for maximal monotone A the
/// result is a single-valued full-domain (matrix) relation.
inline LinearRelation resolvent(const LinearRelation& a) {
  return inverse(combine(1.0, LinearRelation::identity(a.n(), a.tol()), 1.0, a));
}

/// Displacement mapping Id - T of a nonexpansive T. Rejects expansive input.
inline Matrix displacement(const Matrix& t, double tol = default_tol) {
  const auto cls = nonexpansiveness_class(t, tol);
  if (!cls.nonexpansive)
    throw std::invalid_argument("displacement: operator norm " +
                                std::to_string(cls.operator_norm) + " exceeds 1");
  return Matrix::Identity(t.rows(), t.cols()) - t;
}

/// Cyclic right shift on (R^d)^m: block i moves to block i+1 (mod m).
/// Orthogonal permutation-block matrix; (m=2, d=1) is [[0,1],[1,0]].
inline Matrix cyclic_shift(int m, int d) {
  if (m < 1 || d < 1) throw std::invalid_argument("cyclic_shift: m and d must be >= 1");
  const int n = m * d;
  Matrix r = Matrix::Zero(n, n);
  for (int block = 0; block < m; ++block) {
    const int target = (block + 1) % m;
    r.block(target * d, block * d, d, d) = Matrix::Identity(d, d);
  }
  return r;
}

}  // namespace monorel
