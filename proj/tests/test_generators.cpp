#include <doctest.h>

#include <set>
#include <vector>

#include "approxsym/error.hpp"
#include "approxsym/generators.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/text_io.hpp"
#include "oracles.hpp"

using namespace approxsym;

namespace {

// Closed-form grid edge count: sum_k (d_k - 1) * prod_{j != k} d_j.
std::int64_t grid_edges(const std::vector<int>& dims) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::int64_t prod = dims[k] - 1;
    for (std::size_t j = 0; j < dims.size(); ++j)
      if (j != k) prod *= dims[j];
    total += prod;
  }
  return total;
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("grid") {
    const Graph sq = gen_grid({2, 2});
    CHECK(sq.n() == 4);
    CHECK(sq.edge_count() == 4);
    CHECK(gen_grid({5, 4}).edge_count() == grid_edges({5, 4}));
    CHECK(grid_edges({5, 4}) == 31);
    CHECK(gen_grid({5, 2, 3}).n() == 30);
    for (const auto& dims : std::vector<std::vector<int>>{{1}, {7}, {3, 3, 3}, {10, 10, 10}, {100, 100}, {2, 5, 10, 10}}) {
      const Graph g = gen_grid(dims);
      CHECK(g.edge_count() == grid_edges(dims));
    }
    CHECK_THROWS_AS(gen_grid({}), InvalidInput);
    CHECK_THROWS_AS(gen_grid({3, 0}), InvalidInput);
  }

  TEST_CASE("erdos-renyi") {
    CHECK(gen_er(30, 0.0, 1).edge_count() == 0);
    CHECK(gen_er(30, 1.0, 1).edge_count() == 435);
    CHECK(gen_er(50, 0.2, 9) == gen_er(50, 0.2, 9));
    CHECK_THROWS_AS(gen_er(10, 1.5, 1), InvalidInput);
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) mean += gen_er(100, 0.3, s).density();
    CHECK(mean / 200.0 == doctest::Approx(0.3).epsilon(0.01 / 0.3));
  }

  TEST_CASE("barabasi-albert edge counts") {
    CHECK(gen_ba(3, 2, 5).edge_count() == 3);
    CHECK(gen_ba(5, 2, 5).edge_count() == 7);
    // C(4,2) + 96 * 3
    const Graph g = gen_ba(100, 3, 5);
    CHECK(g.edge_count() == 294);
    CHECK(g.is_connected());
    CHECK_THROWS_AS(gen_ba(5, 5, 1), InvalidInput);
    CHECK_THROWS_AS(gen_ba(5, 0, 1), InvalidInput);
  }

  TEST_CASE("stochastic block model") {
    const Graph two = gen_sbm({3, 3}, {{1, 0}, {0, 1}}, 4);
    CHECK(two.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    CHECK_THROWS_AS(gen_sbm({3, 3}, {{1, 0.2}, {0.1, 1}}, 4), InvalidInput);
    CHECK_THROWS_AS(gen_sbm({3, 3}, {{1}}, 4), InvalidInput);
    // Equal probabilities: edge counts behave like G(30, 0.4).
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 300; ++s) mean += static_cast<double>(gen_sbm({10, 20}, {{0.4, 0.4}, {0.4, 0.4}}, s).edge_count());
    CHECK(mean / 300.0 == doctest::Approx(0.4 * 435).epsilon(0.02));
  }

  TEST_CASE("lateral random model") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const LrmInstance inst = gen_lrm(60, 0.2, 0.3, s);
      CHECK(epsilon(inst.graph, inst.lr) == 0);
      CHECK(fixed_points(inst.lr) == 0);
      CHECK(inst.half == 30);
    }
    const LrmInstance full = gen_lrm(20, 0.1, 1.0, 3);
    for (int i = 0; i < 10; ++i) CHECK(full.graph.has_edge(i, i + 10));
    CHECK(full.lr[3] == 13);
    CHECK(full.lr[13] == 3);
    CHECK_THROWS_AS(gen_lrm(7, 0.1, 0.1, 1), InvalidInput);
  }

  TEST_CASE("rewiring") {
    const LrmInstance inst = gen_lrm(200, 0.15, 0.25, 1);
    CHECK(rewire_k(inst.graph, 0, 5) == inst.graph);
    for (int k : {1, 10, 50, 130}) {
      const Graph r = rewire_k(inst.graph, k, static_cast<std::uint64_t>(k));
      CHECK(r.edge_count() == inst.graph.edge_count());
      CHECK(epsilon(r, inst.lr) <= 2 * k);
    }
    CHECK_THROWS_AS(rewire_k(Graph(5), 1, 1), InvalidInput);
    CHECK_THROWS_AS(rewire_k(gen_er(5, 1.0, 1), 1, 1), InvalidInput);
  }

  TEST_CASE("distorted LRM structure") {
    const LrmInstance base = gen_lrm(40, 0.2, 0.3, 8);
    const DistortedLrmInstance d = distort_lrm(base, 3, 6, 12);
    REQUIRE(d.graph.n() == 52);
    CHECK(d.twins_left == std::vector<int>{40, 41, 42, 43, 44, 45});
    CHECK(d.twins_right == std::vector<int>{46, 47, 48, 49, 50, 51});
    std::set<int> x1(d.anchors_left.begin(), d.anchors_left.end());
    CHECK(x1.size() == 3);
    for (int a : d.anchors_left) CHECK(a < 20);
    for (std::size_t k = 0; k < 3; ++k) CHECK(d.anchors_right[k] == d.anchors_left[k] + 20);
    for (int u : d.twins_left) {
      for (int v = 0; v < 40; ++v) CHECK(d.graph.has_edge(u, v) == (x1.count(v) > 0));
    }
    // Cliques: first half of T1, second half of T2.
    CHECK(d.graph.has_edge(40, 42));
    CHECK_FALSE(d.graph.has_edge(43, 45));
    CHECK(d.graph.has_edge(49, 51));
    CHECK_FALSE(d.graph.has_edge(46, 48));
    CHECK(d.lr[40] == 46);
    CHECK(d.lr[51] == 45);
    // Base graph untouched.
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j) CHECK(d.graph.has_edge(i, j) == base.graph.has_edge(i, j));
  }

  TEST_CASE("distorted LRM error count under the extended LR map") {
    // Brute force: the cliques on T1[0..h) and T2[h..t) map onto the empty
    // sets T2[0..h) and T1[h..t), so 4 * C(h, 2) unordered pairs disagree and
    // epsilon = 2 * C(h, 2).
    const LrmInstance base = gen_lrm(40, 0.2, 0.3, 8);
    const DistortedLrmInstance d36 = distort_lrm(base, 3, 6, 3);
    CHECK(oracle::unordered_mismatches(d36.graph, d36.lr) == 12);
    CHECK(mismatch_count(d36.graph, d36.lr) == 12);
    CHECK(epsilon(d36.graph, d36.lr) == 6);
    for (int t : {2, 4, 6, 8, 10}) {
      for (int r : {2, 3, 5}) {
        const DistortedLrmInstance d = distort_lrm(base, r, t, static_cast<std::uint64_t>(10 * t + r));
        const std::int64_t h = t / 2;
        CHECK(oracle::unordered_mismatches(d.graph, d.lr) == 4 * oracle::choose2(h));
        CHECK(epsilon(d.graph, d.lr) == 2 * oracle::choose2(h));
        CHECK(epsilon(d.graph, distorted_lrm_automorphism(d)) == 0);
      }
    }
    const DistortedLrmInstance d2 = distort_lrm(base, 2, 2, 1);
    CHECK(mismatch_count(d2.graph, d2.lr) == 0);
    CHECK_THROWS_AS(distort_lrm(base, 3, 5, 1), InvalidInput);
    CHECK_THROWS_AS(distort_lrm(base, 21, 4, 1), InvalidInput);
  }

  TEST_CASE("reshuffle") {
    const Permutation id = Permutation::identity(200);
    CHECK(reshuffle_perm(id, 0, 1) == id);
    for (std::uint64_t s = 0; s < 50; ++s) CHECK(hamming(id, reshuffle_perm(id, 1, s)) == 2);
    const Permutation big = reshuffle_perm(id, 500, 4);
    CHECK(big.size() == 200);  // from_images already validated the bijection
    for (int l : {3, 10, 40}) CHECK(hamming(id, reshuffle_perm(id, l, 9)) <= 2 * l);
    CHECK_THROWS_AS(reshuffle_perm(Permutation::identity(1), 1, 1), InvalidInput);
  }

  TEST_CASE("random permutation with a fixed-point cap") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      CHECK(fixed_points(random_perm_max_fp(10, 0, s)) == 0);
      CHECK(fixed_points(random_perm_max_fp(200, 100, s)) <= 100);
    }
    CHECK(random_perm_max_fp(6, 6, 3).size() == 6);
    CHECK_THROWS_AS(random_perm_max_fp(5, 6, 1), InvalidInput);
    CHECK_THROWS_AS(random_perm_max_fp(1, 0, 1), InvalidInput);
  }

  TEST_CASE("determinism in serialized form") {
    CHECK(format_graph(gen_ba(80, 2, 6)) == format_graph(gen_ba(80, 2, 6)));
    CHECK(format_graph(gen_sbm({5, 7}, {{0.5, 0.1}, {0.1, 0.5}}, 2)) ==
          format_graph(gen_sbm({5, 7}, {{0.5, 0.1}, {0.1, 0.5}}, 2)));
    CHECK(format_permutation(random_permutation(30, 4)) == format_permutation(random_permutation(30, 4)));
    CHECK_FALSE(gen_er(50, 0.3, 1) == gen_er(50, 0.3, 2));
  }
}
