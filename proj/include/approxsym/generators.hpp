#pragma once

#include <cstdint>
#include <vector>

#include "approxsym/graph.hpp"

namespace approxsym {

/// Lateral random model sample: two identical G(n/2, p) copies on [0, n/2)
/// and [n/2, n), with node i joined to i + n/2 with probability q.
struct LrmInstance {
  Graph graph;
  Permutation lr;  // i <-> i + half
  int half = 0;
};

/// LRM extended by t twins per side (see distort_lrm).
struct DistortedLrmInstance {
  Graph graph;
  Permutation lr;  // original halves swap, twin k of T1 <-> twin k of T2
  int r = 0;
  int t = 0;
  std::vector<int> twins_left;    // T1, in order
  std::vector<int> twins_right;   // T2, in order
  std::vector<int> anchors_left;  // X1
  std::vector<int> anchors_right; // X2 = lr(X1)
};

// Largest node count any generator will build (dense storage).
inline constexpr std::int64_t kMaxGeneratedNodes = 20000;

/// Cartesian product of paths P_{d1} x ... x P_{dk}. Node ids are mixed-radix
/// with the last coordinate varying fastest.
Graph gen_grid(const std::vector<int>& dims);

/// Erdős–Rényi G(n, p).
Graph gen_er(int n, double p, std::uint64_t seed);

/// Preferential attachment grown from the complete graph on m_attach + 1
/// nodes; each new node links to m_attach distinct existing nodes drawn
/// without replacement with probability proportional to degree.
Graph gen_ba(int n, int m_attach, std::uint64_t seed);

/// Stochastic block model with consecutive blocks in `sizes` order.
Graph gen_sbm(const std::vector<int>& sizes, const std::vector<std::vector<double>>& probs,
              std::uint64_t seed);

LrmInstance gen_lrm(int n, double p, double q, std::uint64_t seed);

/// k sequential rewires: remove a uniformly random edge, then add a uniformly
/// random pair that is absent (and differs from the pair just removed).
Graph rewire_k(const Graph& g, int k, std::uint64_t seed);

/// (r, t)-distorted LRM. Appends twin sets T1 then T2 of size t after the base
/// nodes; every twin of T_s is adjacent exactly to the anchor set X_s (r nodes,
/// X1 drawn uniformly from the first half, X2 = lr(X1)). The first t/2 twins
/// of T1 and the last t/2 twins of T2 are then completed into cliques.
DistortedLrmInstance distort_lrm(const LrmInstance& base, int r, int t, std::uint64_t seed);

/// Automorphism of a distorted LRM: lr on the base graph, with the clique and
/// non-clique halves of T1 and T2 exchanged so cliques map onto cliques.
Permutation distorted_lrm_automorphism(const DistortedLrmInstance& inst);

/// l sequential swaps of the images of two distinct uniformly drawn positions.
Permutation reshuffle_perm(const Permutation& p, int l, std::uint64_t seed);

/// Uniform permutation conditioned on at most K fixed points (rejection
/// sampling). K = 0 yields a derangement.
Permutation random_perm_max_fp(int n, int max_fixed_points, std::uint64_t seed);

/// Uniform random permutation.
Permutation random_permutation(int n, std::uint64_t seed);

}  // namespace approxsym
