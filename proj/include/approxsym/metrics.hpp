#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "approxsym/graph.hpp"

namespace approxsym {

/// The relabelled graph P A P^T: result.has_edge(p[i], p[j]) == g.has_edge(i, j).
Graph permute_graph(const Graph& g, const Permutation& p);

/// Number of unordered pairs {i, j} whose adjacency differs between A and
/// P A P^T. Always even, since a permutation conserves the edge count.
std::int64_t mismatch_count(const Graph& g, const Permutation& p);

/// Approximate-symmetry error  eps(A, P) = 1/4 ||A - P A P^T||_F^2 = M / 2,
/// the number of edges that the permutation fails to preserve.
std::int64_t epsilon(const Graph& g, const Permutation& p);

/// Normalized coefficient S = eps / (C(n, 2) / 2), in [0, 1]. Requires n >= 2.
double symmetry_coefficient(const Graph& g, const Permutation& p);

/// S computed from an already known eps.
double symmetry_from_epsilon(std::int64_t eps, int n);

/// Penalized objective  -tr(A X A^T X^T) + sum_i c_i X_ii  at a permutation.
double asp_objective(const Graph& g, const Permutation& p, const PenaltyVector& c);

/// Same objective at a dense (typically doubly stochastic) matrix X.
double asp_objective(const Graph& g, const Eigen::MatrixXd& x, const PenaltyVector& c);

/// Number of positions where the two permutations disagree.
int hamming(const Permutation& a, const Permutation& b);

int fixed_points(const Permutation& p);

}  // namespace approxsym
