#pragma once

#include <Eigen/Dense>

#include "approxsym/graph.hpp"

namespace approxsym {

// Square matrix of finite assignment costs; C(i, j) is the cost of sending
// row i to column j.
using CostMatrix = Eigen::MatrixXd;

struct Assignment {
  Permutation perm;  // perm[i] = column assigned to row i
  double cost = 0.0;
};

/// Exact minimum-cost perfect assignment, O(n^3) shortest augmenting paths
/// with row/column potentials. Among optimal assignments the result is fixed
/// by the scan order (rows and columns ascending), so an all-zero matrix
/// yields the identity. Throws InvalidInput on non-finite or non-square input.
Assignment lap_min(const CostMatrix& cost);

/// Permutation maximizing <D, Q>, i.e. the permutation matrix nearest to D in
/// Frobenius norm. D must be doubly stochastic up to 1e-6 on row/column sums
/// and -1e-12 on entries; otherwise InvalidInput.
Permutation project_to_permutation(const Eigen::MatrixXd& d);

}  // namespace approxsym
