#include <doctest.h>

#include <cmath>
#include <vector>

#include "approxsym/error.hpp"
#include "approxsym/generators.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/qsa.hpp"
#include "oracles.hpp"

using namespace approxsym;

namespace {

Eigen::MatrixXd random_doubly_stochastic(int n, Rng& rng) {
  // Convex combination of a few random permutation matrices.
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = 0.1 + rng.uniform01();
    x += w * oracle::random_perm(n, rng).to_matrix();
    total += w;
  }
  return x / total;
}

double relaxed(const Graph& g, const Eigen::MatrixXd& x, const PenaltyVector& c) {
  return asp_objective(g, x, c);
}

}  // namespace

TEST_SUITE("qsa") {
  TEST_CASE("gradient hand examples") {
    const Graph empty(3);
    const PenaltyVector c({1.0, 2.0, 3.0});
    const Eigen::MatrixXd gd = qsa_gradient(empty.to_matrix(), Eigen::MatrixXd::Constant(3, 3, 1.0 / 3), c);
    CHECK(gd.isApprox(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix()));
    const Graph k2 = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    const Eigen::MatrixXd gk = qsa_gradient(k2.to_matrix(), Eigen::MatrixXd::Identity(2, 2), PenaltyVector::zeros(2));
    CHECK(gk.isApprox(-2.0 * Eigen::MatrixXd::Identity(2, 2)));
    CHECK_THROWS_AS(qsa_gradient(k2.to_matrix(), Eigen::MatrixXd::Identity(3, 3), PenaltyVector::zeros(2)),
                    DimensionError);
  }

  TEST_CASE("gradient matches central differences") {
    Rng rng(31);
    const double h = 1e-4;
    for (int probe = 0; probe < 100; ++probe) {
      const int n = 3 + rng.uniform_int(8);
      const Graph g = oracle::random_graph(n, 0.4, rng);
      std::vector<double> cv(static_cast<std::size_t>(n));
      for (auto& v : cv) v = 3.0 * rng.uniform01();
      const PenaltyVector c(cv);
      const Eigen::MatrixXd x = random_doubly_stochastic(n, rng);
      const Eigen::MatrixXd grad = qsa_gradient(g.to_matrix(), x, c);
      const int i = rng.uniform_int(n);
      const int j = rng.uniform_int(n);
      Eigen::MatrixXd xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      const double fd = (relaxed(g, xp, c) - relaxed(g, xm, c)) / (2 * h);
      REQUIRE(std::abs(fd - grad(i, j)) < 1e-5);
    }
  }

  TEST_CASE("exact step") {
    CHECK(exact_step(0.0, 0.0) == 0.0);
    CHECK(exact_step(1.0, -0.6) == doctest::Approx(0.3));  // -b / 2a
    CHECK(exact_step(1.0, 0.5) == 0.0);
    CHECK(exact_step(1.0, -5.0) == 1.0);
    CHECK(exact_step(-1.0, 0.5) == 1.0);   // g(1) = -0.5 < g(0)
    CHECK(exact_step(-1.0, 1.5) == 0.0);   // g(1) = 0.5 > g(0)
    CHECK(exact_step(-1.0, 1.0) == 0.0);   // tie goes to the smaller step
    CHECK(exact_step(0.0, -1.0) == 1.0);
  }

  TEST_CASE("line search minimizes the segment") {
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 3 + rng.uniform_int(6);
      const Graph g = oracle::random_graph(n, 0.5, rng);
      const PenaltyVector c = PenaltyVector::uniform(n, rng.uniform01() * 4);
      const Eigen::MatrixXd x = random_doubly_stochastic(n, rng);
      const Permutation q = oracle::random_perm(n, rng);
      const double alpha = fw_linesearch(g.to_matrix(), x, q, c);
      REQUIRE(alpha >= 0.0);
      REQUIRE(alpha <= 1.0);
      const Eigen::MatrixXd d = q.to_matrix() - x;
      const double best = relaxed(g, x + alpha * d, c);
      for (int k = 0; k <= 100; ++k) REQUIRE(best <= relaxed(g, x + (k / 100.0) * d, c) + 1e-9);
    }
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
    const Permutation q = Permutation::from_images({1, 0, 2});
    CHECK(fw_linesearch(g.to_matrix(), q.to_matrix(), q, PenaltyVector::zeros(3)) == 0.0);
  }

  TEST_CASE("default penalty") {
    CHECK(default_penalty(Graph(4))[0] == 1.0);
    CHECK(default_penalty(gen_er(5, 1.0, 0))[3] == 9.0);
    std::vector<Edge> star;
    for (int i = 1; i <= 10; ++i) star.emplace_back(0, i);
    CHECK(default_penalty(Graph::from_edges(11, star))[7] == 21.0);
  }

  TEST_CASE("doubly stochastic validation") {
    CHECK_NOTHROW(DoublyStochastic::from_matrix(Eigen::MatrixXd::Constant(4, 4, 0.25)));
    CHECK_THROWS_AS(DoublyStochastic::from_matrix(Eigen::MatrixXd::Constant(4, 4, 0.3)), InvalidInput);
    CHECK(DoublyStochastic::barycenter(5).matrix().sum() == doctest::Approx(5.0));
    CHECK(DoublyStochastic::sum_deviation(Eigen::MatrixXd::Identity(3, 3)) == 0.0);
  }

  TEST_CASE("LR start on an LRM stays optimal") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const LrmInstance inst = gen_lrm(60, 0.2, 0.3, s);
      QsaOptions o;
      o.init = InitSpec::from(inst.lr);
      const SolverReport r = qsa_solve(inst.graph, o, s);
      CHECK(r.S == 0.0);
      CHECK(r.epsilon == 0);
      CHECK_FALSE(r.is_identity);
    }
  }

  TEST_CASE("descent, feasibility and report consistency") {
    Rng rng(99);
    for (int trial = 0; trial < 12; ++trial) {
      const int n = 10 + rng.uniform_int(30);
      const Graph g = trial % 2 == 0 ? oracle::random_graph(n, 0.3, rng) : gen_ba(n, 2, static_cast<std::uint64_t>(trial));
      QsaOptions o;
      double worst_dev = 0.0;
      double min_entry = 0.0;
      int seen = 0;
      o.on_iterate = [&](int, const Eigen::MatrixXd& x) {
        worst_dev = std::max(worst_dev, DoublyStochastic::sum_deviation(x));
        min_entry = std::min(min_entry, x.minCoeff());
        ++seen;
      };
      const SolverReport r = qsa_solve(g, o, static_cast<std::uint64_t>(trial));
      CHECK(worst_dev < 1e-9);
      CHECK(min_entry >= -1e-12);
      CHECK(seen == static_cast<int>(r.objective_trace.size()));
      for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
        CHECK(r.objective_trace[k] <= r.objective_trace[k - 1] + 1e-9);
      CHECK(r.epsilon == epsilon(g, r.final));
      CHECK(r.S == symmetry_coefficient(g, r.final));
      CHECK(r.fixed_point_count == fixed_points(r.final));
      CHECK(r.is_identity == r.final.is_identity());
      CHECK(r.iters <= 200);
    }
  }

  TEST_CASE("determinism") {
    const Graph g = gen_er(40, 0.3, 5);
    QsaOptions o;
    const SolverReport a = qsa_solve(g, o, 17);
    const SolverReport b = qsa_solve(g, o, 17);
    CHECK(a.final == b.final);
    CHECK(a.objective_trace == b.objective_trace);
  }

  TEST_CASE("never below the brute-force optimum on small graphs") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 4 + rng.uniform_int(4);
      const Graph g = oracle::random_graph(n, 0.5, rng);
      const SolverReport r = qsa_solve(g, QsaOptions{}, static_cast<std::uint64_t>(trial));
      if (!r.is_identity) CHECK(r.epsilon >= oracle::brute_force_min_epsilon(g));
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(qsa_solve(Graph(1), QsaOptions{}, 0), InvalidInput);
    QsaOptions o;
    o.init = InitSpec::from(Permutation::identity(3));
    CHECK_THROWS_AS(qsa_solve(Graph(4), o, 0), InvalidInput);
    o.init = InitSpec::from(Permutation::identity(4), 1.5);
    CHECK_THROWS_AS(qsa_solve(Graph(4), o, 0), InvalidInput);
  }
}
