#include "approxsym/assignment.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "approxsym/error.hpp"

namespace approxsym {

Assignment lap_min(const CostMatrix& cost) {
  if (cost.rows() != cost.cols()) throw InvalidInput("cost matrix must be square");
  const int n = static_cast<int>(cost.rows());
  if (!cost.allFinite()) throw InvalidInput("cost matrix has non-finite entries");
  if (n == 0) return {Permutation::identity(0), 0.0};

  // Row-min shift keeps the reduced costs small; it does not change the argmin.
  Eigen::VectorXd row_min = cost.rowwise().minCoeff();

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual source of each augmenting path.
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> row_of(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  std::vector<double> minv(static_cast<std::size_t>(n) + 1);
  std::vector<char> used(static_cast<std::size_t>(n) + 1);

  for (int i = 1; i <= n; ++i) {
    row_of[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = row_of[static_cast<std::size_t>(j0)];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - row_min(i0 - 1) - u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(row_of[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      row_of[static_cast<std::size_t>(j0)] = row_of[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> img(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) img[static_cast<std::size_t>(row_of[static_cast<std::size_t>(j)] - 1)] = j - 1;
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += cost(i, img[static_cast<std::size_t>(i)]);
  return {Permutation::from_images(std::move(img)), total};
}

Permutation project_to_permutation(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) throw InvalidInput("matrix to project must be square");
  if (!d.allFinite()) throw InvalidInput("matrix to project has non-finite entries");
  constexpr double kSumTol = 1e-6;
  constexpr double kNegTol = -1e-12;
  if (d.size() > 0) {
    if (d.minCoeff() < kNegTol) throw InvalidInput("matrix to project has negative entries");
    const double row_dev = (d.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col_dev = (d.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (row_dev > kSumTol || col_dev > kSumTol) {
      throw InvalidInput("matrix to project is not doubly stochastic");
    }
  }
  return lap_min(-d).perm;
}

}  // namespace approxsym
