// Property deciders: paramonotonicity, rectangularity, strict monotonicity,
// cocoercivity moduli, and the aggregate classification report. Includes the
// six-way equivalence suite on random maximal relations and oracle
// cross-checks for the modulus.

#include <monorel/classify.hpp>
#include <monorel/gallery.hpp>
#include <monorel/generators.hpp>

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

using namespace monorel;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

bool pair_in_graph(const LinearRelation& rel, const Vector& x, const Vector& xstar) {
  Vector z(2 * rel.n());
  z << x, xstar;
  return rel.graph().contains(z);
}

std::set<std::string> witness_labels(const ClassificationReport& r) {
  std::set<std::string> labels;
  for (const auto& w : r.witnesses) labels.insert(w.first);
  return labels;
}

// Mixed corpus for the equivalence suites: maximal relations with multivalued
// parts, pure skew matrices (never paramonotone unless zero), and
// rank-deficient paramonotone matrices perturbed by skew terms (which break
// the kernel alignment whenever the rank is deficient).
LinearRelation mixed_maximal(int n, int family, Rng& rng) {
  switch (family % 3) {
    case 0:
      return random_maximal_monotone(n, rng);
    case 1:
      return LinearRelation::from_matrix(random_skew(n, rng));
    default:
      return LinearRelation::from_matrix(random_paramonotone_matrix(n, rng) +
                                         random_skew(n, rng));
  }
}

}  // namespace

TEST_CASE("plane rotation: classified with verifiable witnesses") {
  const LinearRelation rot = LinearRelation::from_matrix(rotation());
  const ClassificationReport r = classification_report(rot);

  REQUIRE(r.n == 2);
  REQUIRE(r.monotone);
  REQUIRE(r.maximal.has_value());
  REQUIRE(*r.maximal);
  REQUIRE_FALSE(*r.strictly_monotone);
  REQUIRE_FALSE(*r.paramonotone);
  REQUIRE_FALSE(*r.rectangular);
  REQUIRE(r.cocoercivity_modulus.has_value());
  REQUIRE(r.cocoercivity_modulus->is_finite());
  REQUIRE(r.cocoercivity_modulus->value() == 0.0);

  REQUIRE(witness_labels(r) ==
          std::set<std::string>{"strictly_monotone", "paramonotone", "rectangular"});

  for (const auto& [label, pair] : r.witnesses) {
    const auto& [x, xs] = pair;
    if (label == "strictly_monotone") {
      REQUIRE(pair_in_graph(rot, x, xs));
      REQUIRE(std::abs(x.dot(xs)) <= 1e-10);
      REQUIRE(x.norm() > 1e-9);  // a nonzero x certifies the failure
    } else if (label == "paramonotone") {
      REQUIRE(pair_in_graph(rot, x, xs));
      REQUIRE(std::abs(x.dot(xs)) <= 1e-10);
      REQUIRE(xs.norm() > 1e-9);  // x* outside A0 = {0}
    } else {
      // rectangularity witness: a pair where the coupling function escapes
      REQUIRE_FALSE(in_dom_fitz(rot, x, xs));
    }
  }
}

TEST_CASE("cumulative-sum operator: maximal yet not strict, paramonotone, or rectangular") {
  const Matrix v = volterra(4);
  const LinearRelation rel = LinearRelation::from_matrix(v);
  const ClassificationReport r = classification_report(rel);

  REQUIRE(r.monotone);
  REQUIRE(*r.maximal);
  REQUIRE_FALSE(*r.strictly_monotone);
  REQUIRE_FALSE(*r.paramonotone);
  REQUIRE_FALSE(*r.rectangular);
  REQUIRE(r.cocoercivity_modulus->is_finite());
  REQUIRE(r.cocoercivity_modulus->value() == 0.0);

  // the failure certificates live on the mean-zero slice: <x, Vx> is a
  // multiple of the squared coordinate sum
  for (const auto& [label, pair] : r.witnesses) {
    const auto& [x, xs] = pair;
    if (label == "strictly_monotone" || label == "paramonotone") {
      REQUIRE(pair_in_graph(rel, x, xs));
      REQUIRE(std::abs(x.sum()) <= 1e-8);
      REQUIRE(std::abs(x.dot(xs)) <= 1e-10);
    }
    if (label == "paramonotone") REQUIRE(xs.norm() > 1e-9);
  }
}

TEST_CASE("cocoercivity moduli match hand-computed values") {
  const Matrix id = Matrix::Identity(3, 3);
  const FitzValue beta_id = cocoercivity_modulus(id);
  REQUIRE(beta_id.is_finite());
  REQUIRE(beta_id.value() == Catch::Approx(1.0).margin(1e-12));

  const FitzValue beta_rot = cocoercivity_modulus(rotation());
  REQUIRE(beta_rot.is_finite());
  REQUIRE(beta_rot.value() == 0.0);

  // diag(1, 2): the quotient <x, Mx> / |Mx|^2 attains 1/2 at e2
  const FitzValue beta_diag = cocoercivity_modulus(m2(1, 0, 0, 2));
  REQUIRE(beta_diag.is_finite());
  REQUIRE(beta_diag.value() == Catch::Approx(0.5).margin(1e-12));

  // the zero matrix satisfies the inequality for every modulus
  REQUIRE_FALSE(cocoercivity_modulus(Matrix::Zero(2, 2)).is_finite());

  REQUIRE_THROWS_AS(cocoercivity_modulus(m2(-1, 0, 0, 1)), std::invalid_argument);
  REQUIRE_THROWS_AS(cocoercivity_modulus(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("damped shift-sum block: modulus is one third, confirmed by bisection") {
  const Matrix c1 = shift_sum(1);
  const FitzValue beta = cocoercivity_modulus(c1);
  REQUIRE(beta.is_finite());
  REQUIRE(beta.value() == Catch::Approx(1.0 / 3.0).margin(1e-12));

  // independent route: smallest root of det(sym(M) - t M^T M) on [0, 1/2]
  const double root = testsupport::oracle_pencil_root_bisection(c1, 0.0, 0.5);
  REQUIRE(root == Catch::Approx(1.0 / 3.0).margin(1e-10));
  REQUIRE(beta.value() == Catch::Approx(root).margin(1e-9));
}

TEST_CASE("six-way equivalence on maximal relations") {
  // For maximal monotone relations the following agree: rectangularity of A,
  // range comparison ran A+ = ran A, kernel comparison ker A+ = ker A,
  // paramonotonicity of A, paramonotonicity of A^T, rectangularity of A^T.
  Rng rng(52001);
  std::uniform_int_distribution<int> n_dist(1, 6);
  int holds_count = 0;
  int fails_count = 0;

  for (int rep = 0; rep < 300; ++rep) {
    const int n = n_dist(rng);
    const LinearRelation a = mixed_maximal(n, rep, rng);
    REQUIRE(is_monotone(a));
    REQUIRE(is_maximally_monotone(a));

    const LinearRelation adj = adjoint(a);
    REQUIRE(is_monotone(adj));
    REQUIRE(is_maximally_monotone(adj));

    const bool para = is_paramonotone(a).holds;
    const bool rect = is_rectangular(a).holds;
    const LinearRelation aplus = symmetric_part(a);
    const bool range_eq =
        subspace_equal(feature_subspaces(aplus).ran, feature_subspaces(a).ran, a.tol());
    const bool kernel_eq =
        subspace_equal(feature_subspaces(aplus).ker, feature_subspaces(a).ker, a.tol());
    const bool para_adj = is_paramonotone(adj).holds;
    const bool rect_adj = is_rectangular(adj).holds;

    REQUIRE(rect == para);
    REQUIRE(range_eq == para);
    REQUIRE(kernel_eq == para);
    REQUIRE(para_adj == para);
    REQUIRE(rect_adj == para);

    (para ? holds_count : fails_count)++;
  }

  // the corpus genuinely exercises both outcomes
  REQUIRE(holds_count >= 40);
  REQUIRE(fails_count >= 40);
}

TEST_CASE("rectangularity implies paramonotonicity on maximal relations") {
  Rng rng(52002);
  std::uniform_int_distribution<int> n_dist(1, 5);
  int rectangular_seen = 0;
  for (int rep = 0; rep < 150; ++rep) {
    const int n = n_dist(rng);
    const LinearRelation a = mixed_maximal(n, rep, rng);
    if (is_rectangular(a).holds) {
      REQUIRE(is_paramonotone(a).holds);
      ++rectangular_seen;
    }
  }
  REQUIRE(rectangular_seen >= 30);
}

TEST_CASE("sums of paramonotone matrices are paramonotone") {
  Rng rng(52003);
  std::uniform_int_distribution<int> n_dist(1, 6);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = n_dist(rng);
    const Matrix m1 = random_paramonotone_matrix(n, rng);
    const Matrix m2m = random_paramonotone_matrix(n, rng);
    REQUIRE(is_paramonotone(LinearRelation::from_matrix(m1)).holds);
    REQUIRE(is_paramonotone(LinearRelation::from_matrix(m2m)).holds);
    REQUIRE(is_paramonotone(LinearRelation::from_matrix(m1 + m2m)).holds);
  }
}

TEST_CASE("the modulus is maximal under three equivalent characterizations") {
  // beta is the largest constant with <x, Mx> >= beta |Mx|^2, equivalently
  // the largest with 2 beta M - Id nonexpansive, equivalently the largest
  // with M^{-1} - beta Id monotone. Each check must pass at beta and fail
  // just above it.
  Rng rng(52004);
  std::uniform_int_distribution<int> n_dist(1, 6);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = n_dist(rng);
    const Matrix m = random_strongly_monotone_matrix(n, rng);
    const FitzValue beta_value = cocoercivity_modulus(m);
    REQUIRE(beta_value.is_finite());
    const double beta = beta_value.value();
    REQUIRE(beta > 0.0);

    REQUIRE(gamma_nonexpansive_check(m, 2 * beta));
    REQUIRE_FALSE(gamma_nonexpansive_check(m, 2 * beta * (1 + 1e-6) + 1e-6));

    REQUIRE(inverse_strong_monotonicity_check(m, beta));
    REQUIRE_FALSE(inverse_strong_monotonicity_check(m, beta * (1 + 1e-6) + 1e-6));

    for (int s = 0; s < 2000; ++s) {
      const Vector x = random_vector(n, rng);
      const double lhs = x.dot(m * x);
      const double rhs = beta * (m * x).squaredNorm();
      REQUIRE(lhs >= rhs - 1e-8 * std::max(1.0, x.squaredNorm()));
    }
  }
}

TEST_CASE("positive modulus exactly characterizes rectangular matrices") {
  Rng rng(52005);
  std::uniform_int_distribution<int> n_dist(1, 6);
  int positive_seen = 0;
  int zero_seen = 0;
  for (int rep = 0; rep < 120; ++rep) {
    const int n = n_dist(rng);
    Matrix m;
    switch (rep % 4) {
      case 0: m = random_monotone_matrix(n, rng); break;
      case 1: m = random_paramonotone_matrix(n, rng); break;
      case 2: m = random_skew(n, rng); break;
      default: m = random_paramonotone_matrix(n, rng) + random_skew(n, rng); break;
    }
    const FitzValue beta = cocoercivity_modulus(m);
    const bool positive = !beta.is_finite() || beta.value() > 0.0;
    const bool rect = is_rectangular(LinearRelation::from_matrix(m)).holds;
    REQUIRE(positive == rect);
    (positive ? positive_seen : zero_seen)++;
  }
  REQUIRE(positive_seen >= 25);
  REQUIRE(zero_seen >= 25);
}

TEST_CASE("pencil modulus agrees with the pseudoinverse oracle") {
  Rng rng(52006);
  std::uniform_int_distribution<int> n_dist(1, 6);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = n_dist(rng);
    const Matrix m = random_monotone_matrix(n, rng);
    const FitzValue beta = cocoercivity_modulus(m);
    const double oracle = testsupport::oracle_modulus_via_pseudoinverse(m);
    if (!beta.is_finite()) {
      REQUIRE(std::isinf(oracle));
      continue;
    }
    REQUIRE(std::isfinite(oracle));
    if (beta.value() > 1e-8) {
      REQUIRE(oracle == Catch::Approx(beta.value()).epsilon(1e-7));
    } else {
      // the decider clamps sub-tolerance pencil values to zero
      REQUIRE(oracle <= 1e-6);
    }
  }
}

TEST_CASE("reports carry witnesses exactly for the failed properties") {
  Rng rng(52007);
  std::uniform_int_distribution<int> n_dist(2, 6);
  for (int rep = 0; rep < 80; ++rep) {
    const int n = n_dist(rng);
    LinearRelation rel = random_maximal_monotone(n, rng);
    if (rep % 3 == 1) {
      // trim one graph direction to get a non-maximal restriction
      rel = LinearRelation::from_graph_span(
          n, Matrix(rel.graph().basis().leftCols(rel.graph().dim() - 1)));
    } else if (rep % 3 == 2) {
      rel = LinearRelation::from_matrix(random_skew(n, rng) -
                                        0.5 * Matrix::Identity(n, n));
    }

    const ClassificationReport r = classification_report(rel);
    const std::set<std::string> labels = witness_labels(r);
    REQUIRE(labels.size() == r.witnesses.size());  // no duplicate labels

    if (!r.monotone) {
      REQUIRE_FALSE(r.maximal.has_value());
      REQUIRE_FALSE(r.strictly_monotone.has_value());
      REQUIRE_FALSE(r.paramonotone.has_value());
      REQUIRE_FALSE(r.rectangular.has_value());
      REQUIRE_FALSE(r.cocoercivity_modulus.has_value());
      REQUIRE(labels == std::set<std::string>{"monotone"});
      const auto& [x, xs] = r.witnesses.front().second;
      REQUIRE(pair_in_graph(rel, x, xs));
      REQUIRE(x.dot(xs) < 0.0);
      continue;
    }

    REQUIRE(labels.count("monotone") == 0);
    const std::vector<std::pair<std::string, bool>> flags = {
        {"maximal", *r.maximal},
        {"strictly_monotone", *r.strictly_monotone},
        {"paramonotone", *r.paramonotone},
        {"rectangular", *r.rectangular},
    };
    for (const auto& [label, holds] : flags) {
      REQUIRE(labels.count(label) == (holds ? 0u : 1u));
    }
    REQUIRE(r.cocoercivity_modulus.has_value() == as_matrix(rel).has_value());
  }
}

TEST_CASE("low-dimensional restrictions match hand analysis") {
  // span{(e1, e1*)}: the graph of the identity restricted to a line.
  // Monotone, not maximal, and all three refinement properties hold.
  Matrix diag_line(4, 1);
  diag_line << 1, 0, 1, 0;
  const LinearRelation a = LinearRelation::from_graph_span(2, diag_line);
  const ClassificationReport ra = classification_report(a);
  REQUIRE(ra.monotone);
  REQUIRE_FALSE(*ra.maximal);
  REQUIRE(*ra.strictly_monotone);
  REQUIRE(*ra.paramonotone);
  REQUIRE(*ra.rectangular);
  REQUIRE(witness_labels(ra) == std::set<std::string>{"maximal"});
  REQUIRE_FALSE(ra.cocoercivity_modulus.has_value());

  // span{(e1, e2*)}: an isotropic line. Still rectangular (one-dimensional
  // graphs always are) but neither strictly monotone nor paramonotone; the
  // rectangular => paramonotone implication needs maximality, so the
  // combination is consistent.
  Matrix skew_line(4, 1);
  skew_line << 1, 0, 0, 1;
  const LinearRelation b = LinearRelation::from_graph_span(2, skew_line);
  const ClassificationReport rb = classification_report(b);
  REQUIRE(rb.monotone);
  REQUIRE_FALSE(*rb.maximal);
  REQUIRE_FALSE(*rb.strictly_monotone);
  REQUIRE_FALSE(*rb.paramonotone);
  REQUIRE(*rb.rectangular);
  REQUIRE(witness_labels(rb) ==
          std::set<std::string>{"maximal", "strictly_monotone", "paramonotone"});

  // the rotation plane embedded in R^3: not maximal and genuinely
  // non-rectangular (the coupling function escapes at (e1, 0))
  Matrix plane(6, 2);
  plane.setZero();
  plane(0, 0) = 1;
  plane(4, 0) = -1;
  plane(1, 1) = 1;
  plane(3, 1) = 1;
  const LinearRelation c = LinearRelation::from_graph_span(3, plane);
  const ClassificationReport rc = classification_report(c);
  REQUIRE(rc.monotone);
  REQUIRE_FALSE(*rc.maximal);
  REQUIRE_FALSE(*rc.strictly_monotone);
  REQUIRE_FALSE(*rc.paramonotone);
  REQUIRE_FALSE(*rc.rectangular);
  REQUIRE(witness_labels(rc) == std::set<std::string>{"maximal", "strictly_monotone",
                                                      "paramonotone", "rectangular"});
}

TEST_CASE("deciders reject non-monotone input") {
  const LinearRelation bad = LinearRelation::from_matrix(m2(-1, 0, 0, -1));
  REQUIRE_THROWS_AS(is_paramonotone(bad), std::invalid_argument);
  REQUIRE_THROWS_AS(is_rectangular(bad), std::invalid_argument);
  REQUIRE_THROWS_AS(strict_monotonicity(bad), std::invalid_argument);
}
