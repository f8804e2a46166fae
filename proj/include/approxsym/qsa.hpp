#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "approxsym/graph.hpp"
#include "approxsym/init_spec.hpp"
#include "approxsym/report.hpp"

namespace approxsym {

/// Dense n x n matrix with nonnegative entries and unit row/column sums.
class DoublyStochastic {
 public:
  /// Throws InvalidInput if any row/column sum is off by more than `sum_tol`
  /// or an entry is below -1e-12.
  static DoublyStochastic from_matrix(Eigen::MatrixXd m, double sum_tol = 1e-9);
  static DoublyStochastic barycenter(int n);
  static DoublyStochastic from_permutation(const Permutation& p);

  /// Largest absolute deviation of a row or column sum from 1.
  static double sum_deviation(const Eigen::MatrixXd& m);

  int n() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  explicit DoublyStochastic(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// Blend toward the barycenter used for random starts unless overridden.
inline constexpr double kRandomInitBlend = 0.5;
// Blend used for identity and user-supplied starts unless overridden.
inline constexpr double kGivenInitBlend = 0.1;

struct QsaOptions {
  int max_iters = 200;
  double rel_tol = 1e-8;
  InitSpec init = InitSpec::random();
  // Unset: default_penalty(g).
  std::optional<PenaltyVector> penalty;
  // Called with every iterate, including the starting point (iteration 0).
  std::function<void(int, const Eigen::MatrixXd&)> on_iterate;
};

/// Uniform penalty 2 * max_degree + 1.
PenaltyVector default_penalty(const Graph& g);

/// Gradient of f(X) = -tr(A X A^T X^T) + tr(diag(c) X):
///   -(A X A^T + A^T X A) + diag(c).
Eigen::MatrixXd qsa_gradient(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x,
                             const PenaltyVector& c);

/// Minimizer on [0, 1] of  g(alpha) = quad * alpha^2 + lin * alpha.
/// Ties resolve to the smaller step.
double exact_step(double quad, double lin);

/// Exact Frank–Wolfe step from X toward the vertex Q for the objective above.
double fw_linesearch(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x, const Permutation& q,
                     const PenaltyVector& c);

/// Frank–Wolfe on the relaxed penalized problem followed by projection onto
/// the nearest permutation. Throws InvalidInput for n < 2 or a bad init.
SolverReport qsa_solve(const Graph& g, const QsaOptions& opts, std::uint64_t seed);

}  // namespace approxsym
