#include "approxsym/qsa.hpp"

#include <chrono>
#include <cmath>

#include "approxsym/assignment.hpp"
#include "approxsym/error.hpp"
#include "approxsym/generators.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/rng.hpp"

namespace approxsym {
namespace {

Eigen::VectorXd as_vector(const PenaltyVector& c) {
  Eigen::VectorXd v(c.size());
  for (int i = 0; i < c.size(); ++i) v(i) = c[i];
  return v;
}

// Q A for a permutation Q: row i of the product is row q[i] of A.
Eigen::MatrixXd permute_rows(const Permutation& q, const Eigen::MatrixXd& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (int i = 0; i < q.size(); ++i) out.row(i) = a.row(q[i]);
  return out;
}

double relaxed_objective(const Eigen::MatrixXd& axa, const Eigen::MatrixXd& x,
                         const Eigen::VectorXd& c) {
  return -axa.cwiseProduct(x).sum() + c.dot(x.diagonal());
}

}  // namespace

DoublyStochastic DoublyStochastic::from_matrix(Eigen::MatrixXd m, double sum_tol) {
  if (m.rows() != m.cols()) throw InvalidInput("doubly stochastic matrix must be square");
  if (m.size() > 0 && (!m.allFinite() || m.minCoeff() < -1e-12)) {
    throw InvalidInput("doubly stochastic matrix has negative or non-finite entries");
  }
  if (sum_deviation(m) > sum_tol) throw InvalidInput("row or column sums differ from 1");
  return DoublyStochastic(std::move(m));
}

DoublyStochastic DoublyStochastic::barycenter(int n) {
  return DoublyStochastic(Eigen::MatrixXd::Constant(n, n, 1.0 / n));
}

DoublyStochastic DoublyStochastic::from_permutation(const Permutation& p) {
  return DoublyStochastic(p.to_matrix());
}

double DoublyStochastic::sum_deviation(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const double rows = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

PenaltyVector default_penalty(const Graph& g) {
  return PenaltyVector::uniform(g.n(), 2.0 * g.max_degree() + 1.0);
}

Eigen::MatrixXd qsa_gradient(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x,
                             const PenaltyVector& c) {
  if (a.rows() != a.cols() || x.rows() != a.rows() || x.cols() != a.cols() ||
      c.size() != a.rows()) {
    throw DimensionError("gradient operands have mismatched sizes");
  }
  Eigen::MatrixXd g = -(a * x * a.transpose() + a.transpose() * x * a);
  g.diagonal() += as_vector(c);
  return g;
}

double exact_step(double quad, double lin) {
  if (quad > 0.0) {
    const double alpha = -lin / (2.0 * quad);
    if (alpha <= 0.0) return 0.0;
    return alpha >= 1.0 ? 1.0 : alpha;
  }
  // Concave or linear segment: the better endpoint.
  return quad + lin < 0.0 ? 1.0 : 0.0;
}

double fw_linesearch(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x, const Permutation& q,
                     const PenaltyVector& c) {
  const int n = static_cast<int>(a.rows());
  if (x.rows() != n || x.cols() != n || q.size() != n || c.size() != n) {
    throw DimensionError("line search operands have mismatched sizes");
  }
  const Eigen::MatrixXd d = q.to_matrix() - x;
  const Eigen::MatrixXd axa = a * x * a.transpose();
  const Eigen::MatrixXd ada = a * d * a.transpose();
  const double quad = -ada.cwiseProduct(d).sum();
  const double lin = -2.0 * axa.cwiseProduct(d).sum() + as_vector(c).dot(d.diagonal());
  return exact_step(quad, lin);
}

SolverReport qsa_solve(const Graph& g, const QsaOptions& opts, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  const int n = g.n();
  if (n < 2) throw InvalidInput("QSA needs a graph with at least two nodes");
  if (opts.max_iters < 1) throw InvalidInput("max_iters must be at least 1");
  if (!(opts.rel_tol > 0.0)) throw InvalidInput("rel_tol must be positive");

  const PenaltyVector penalty = opts.penalty ? *opts.penalty : default_penalty(g);
  if (penalty.size() != n) throw DimensionError("penalty vector length differs from graph size");
  const Eigen::VectorXd c = as_vector(penalty);

  Permutation start;
  double blend = kGivenInitBlend;
  switch (opts.init.kind) {
    case InitSpec::Kind::kIdentity:
      start = Permutation::identity(n);
      break;
    case InitSpec::Kind::kRandom:
      start = random_permutation(n, derive_seed(seed, "qsa-init"));
      blend = kRandomInitBlend;
      break;
    case InitSpec::Kind::kGiven:
      if (opts.init.given.size() != n) throw InvalidInput("init permutation size differs from graph size");
      start = opts.init.given;
      break;
  }
  if (opts.init.blend) blend = *opts.init.blend;
  if (!(blend >= 0.0 && blend <= 1.0)) throw InvalidInput("init blend must lie in [0, 1]");

  const Eigen::MatrixXd a = g.to_matrix();
  Eigen::MatrixXd x = (1.0 - blend) * start.to_matrix() +
                      Eigen::MatrixXd::Constant(n, n, blend / n);
  // A X A is updated incrementally: A (X + t D) A = (1 - t) AXA + t AQA.
  Eigen::MatrixXd axa = a * x * a;
  double f = relaxed_objective(axa, x, c);

  SolverReport report;
  report.seed = seed;
  report.objective_trace.push_back(f);
  if (opts.on_iterate) opts.on_iterate(0, x);

  for (int it = 1; it <= opts.max_iters; ++it) {
    Eigen::MatrixXd grad = -2.0 * axa;
    grad.diagonal() += c;
    const Permutation q = lap_min(grad).perm;

    const Eigen::MatrixXd aqa = a * permute_rows(q, a);
    Eigen::MatrixXd d = -x;
    for (int i = 0; i < n; ++i) d(i, q[i]) += 1.0;
    const Eigen::MatrixXd ada = aqa - axa;
    const double quad = -ada.cwiseProduct(d).sum();
    const double lin = -2.0 * axa.cwiseProduct(d).sum() + c.dot(d.diagonal());
    const double alpha = exact_step(quad, lin);
    if (alpha == 0.0) break;

    x += alpha * d;
    axa = (1.0 - alpha) * axa + alpha * aqa;
    const double f_next = relaxed_objective(axa, x, c);
    report.objective_trace.push_back(f_next);
    report.iters = it;
    if (opts.on_iterate) opts.on_iterate(it, x);
    const double decrease = f - f_next;
    f = f_next;
    if (decrease < opts.rel_tol * std::max(1.0, std::abs(f))) break;
  }

  report.final = project_to_permutation(x);
  report.epsilon = epsilon(g, report.final);
  report.S = symmetry_from_epsilon(report.epsilon, n);
  report.fixed_point_count = fixed_points(report.final);
  report.is_identity = report.final.is_identity();
  report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return report;
}

}  // namespace approxsym
