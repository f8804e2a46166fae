#include <doctest.h>

#include <cmath>
#include <vector>

#include "approxsym/afp.hpp"
#include "approxsym/error.hpp"
#include "approxsym/generators.hpp"
#include "approxsym/metrics.hpp"
#include "oracles.hpp"

using namespace approxsym;

TEST_SUITE("afp") {
  TEST_CASE("temperature") {
    CHECK(temperature(1, 1.0, 2.0) == doctest::Approx(1.0 / std::log(3.0)));
    CHECK(temperature(1, 1.0, 2.0) == doctest::Approx(0.9102).epsilon(1e-4));
    CHECK(temperature(100, 5.0, 2.0) == doctest::Approx(1.0811).epsilon(1e-4));
    for (std::int64_t t = 1; t <= 1000000; ++t) REQUIRE(temperature(t, 1.0, 2.0) > temperature(t + 1, 1.0, 2.0));
    CHECK_THROWS_AS(temperature(0, 1.0, 2.0), InvalidInput);
    CHECK_THROWS_AS(temperature(1, 0.0, 2.0), InvalidInput);
    CHECK_THROWS_AS(temperature(1, 1.0, -0.5), InvalidInput);
  }

  TEST_CASE("delta matches full recomputation") {
    Rng rng(12);
    for (int trial = 0; trial < 10000; ++trial) {
      const int n = 2 + rng.uniform_int(29);
      const Graph g = oracle::random_graph(n, rng.uniform01(), rng);
      const Permutation p = oracle::random_perm(n, rng);
      const auto [i, j] = rng.distinct_pair(n);
      const std::int64_t want = oracle::unordered_mismatches(g, p.with_swapped_images(i, j)) -
                                oracle::unordered_mismatches(g, p);
      REQUIRE(delta_epsilon(g, p, i, j) == want);
    }
  }

  TEST_CASE("delta hand cases") {
    const Graph path = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
    const Permutation p = Permutation::from_images({1, 0, 2});
    // p' = (2, 0, 1): 2 * (eps(p') - eps(p)) = 2 * (1 - 1).
    CHECK(delta_epsilon(path, p, 0, 2) == oracle::unordered_mismatches(path, Permutation::from_images({2, 0, 1})) -
                                              oracle::unordered_mismatches(path, p));
    // Leaves 1 and 2 of a star are twins: exchanging their images is free.
    const Graph star = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}});
    const Permutation q = Permutation::from_images({0, 2, 1});
    CHECK(delta_epsilon(star, q, 1, 2) == 0);
    CHECK_THROWS_AS(delta_epsilon(star, q, 1, 1), InvalidInput);
    CHECK_THROWS_AS(delta_epsilon(star, q, 0, 3), InvalidInput);
  }

  TEST_CASE("fixed-point cap holds at every checkpoint") {
    const Graph g = gen_er(40, 0.3, 2);
    AfpOptions o;
    o.max_fixed_points = 5;
    o.budget = 20000;
    o.checkpoint_every = 50;
    o.seed = 4;
    int checks = 0;
    o.on_checkpoint = [&](std::int64_t, const Permutation& p) {
      CHECK(fixed_points(p) <= 5);
      CHECK_FALSE(p.is_identity());
      ++checks;
    };
    const SolverReport r = afp_solve(g, o);
    CHECK(checks == 400);
    CHECK(r.fixed_point_count <= 5);
    CHECK(r.epsilon == epsilon(g, r.final));
    CHECK(r.S == symmetry_coefficient(g, r.final));
    CHECK(r.iters == 20000);
  }

  TEST_CASE("best-so-far is monotone in the budget") {
    const Graph g = gen_er(30, 0.25, 7);
    std::int64_t prev = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t budget : {1000, 3000, 10000, 30000}) {
      AfpOptions o;
      o.budget = budget;
      o.seed = 21;
      o.sched_c = 2.0;
      const SolverReport r = afp_solve(g, o);
      CHECK(r.epsilon <= prev);
      prev = r.epsilon;
      for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
        CHECK(r.objective_trace[k] <= r.objective_trace[k - 1]);
    }
  }

  TEST_CASE("finds the optimum on small graphs") {
    Rng rng(33);
    int hits = 0;
    const int runs = 100;
    for (int trial = 0; trial < runs; ++trial) {
      const int n = 4 + rng.uniform_int(4);
      const Graph g = oracle::random_graph(n, 0.5, rng);
      AfpOptions o;
      o.max_fixed_points = n;
      o.budget = 20000;
      o.seed = static_cast<std::uint64_t>(trial);
      const SolverReport r = afp_solve(g, o);
      const std::int64_t best = oracle::brute_force_min_epsilon(g);
      REQUIRE(r.epsilon >= best);
      hits += r.epsilon == best;
    }
    CHECK(hits >= 95);
  }

  TEST_CASE("determinism and errors") {
    const Graph g = gen_er(25, 0.3, 1);
    AfpOptions o;
    o.budget = 5000;
    o.seed = 3;
    const SolverReport a = afp_solve(g, o);
    const SolverReport b = afp_solve(g, o);
    CHECK(a.final == b.final);
    CHECK(a.objective_trace == b.objective_trace);
    o.init = InitSpec::identity();
    CHECK_THROWS_AS(afp_solve(g, o), InvalidInput);
    o.init = InitSpec::from(Permutation::identity(25).with_swapped_images(0, 1));
    o.max_fixed_points = 3;
    CHECK_THROWS_AS(afp_solve(g, o), InvalidInput);
    CHECK_THROWS_AS(afp_solve(Graph(1), AfpOptions{}), InvalidInput);
  }

  TEST_CASE("LR start on an LRM keeps the perfect symmetry") {
    const LrmInstance inst = gen_lrm(40, 0.2, 0.3, 5);
    AfpOptions o;
    o.init = InitSpec::from(inst.lr);
    o.budget = 10000;
    const SolverReport r = afp_solve(inst.graph, o);
    CHECK(r.epsilon == 0);
  }
}
