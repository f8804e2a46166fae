#include "approxsym/metrics.hpp"

#include <string>

#include "approxsym/error.hpp"

namespace approxsym {
namespace {

void require_same_size(const Graph& g, const Permutation& p) {
  if (p.size() != g.n()) {
    throw DimensionError("permutation has length " + std::to_string(p.size()) +
                         " but graph has " + std::to_string(g.n()) + " nodes");
  }
}

// Ordered-pair agreement  sum_{a,b} A_ab A_{p(a) p(b)} = tr(A P A P^T)
// (with P(i, p(i)) = 1, so (P A P^T)_{ab} = A_{p(a) p(b)}).
std::int64_t agreement(const Graph& g, const Permutation& p) {
  const int n = g.n();
  std::int64_t total = 0;
  for (int a = 0; a < n; ++a) {
    const auto row_a = g.row(a);
    const auto row_pa = g.row(p[a]);
    for (int b = 0; b < n; ++b) {
      total += row_a[static_cast<std::size_t>(b)] & row_pa[static_cast<std::size_t>(p[b])];
    }
  }
  return total;
}

}  // namespace

Graph permute_graph(const Graph& g, const Permutation& p) {
  require_same_size(g, p);
  const int n = g.n();
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      adj[static_cast<std::size_t>(p[i]) * n + p[j]] = g.has_edge(i, j) ? 1 : 0;
    }
  }
  return Graph::from_adjacency(n, std::move(adj));
}

std::int64_t mismatch_count(const Graph& g, const Permutation& p) {
  require_same_size(g, p);
  // ||A - P A P^T||_F^2 = 2||A||^2 - 2 tr(A P A P^T) counts every disagreeing
  // unordered pair twice.
  return g.frobenius_sq() - agreement(g, p);
}

std::int64_t epsilon(const Graph& g, const Permutation& p) {
  return mismatch_count(g, p) / 2;
}

double symmetry_from_epsilon(std::int64_t eps, int n) {
  if (n < 2) throw InvalidInput("symmetry coefficient needs at least two nodes");
  return 4.0 * static_cast<double>(eps) / (static_cast<double>(n) * (n - 1.0));
}

double symmetry_coefficient(const Graph& g, const Permutation& p) {
  if (g.n() < 2) throw InvalidInput("symmetry coefficient needs at least two nodes");
  return symmetry_from_epsilon(epsilon(g, p), g.n());
}

double asp_objective(const Graph& g, const Permutation& p, const PenaltyVector& c) {
  require_same_size(g, p);
  if (c.size() != g.n()) throw DimensionError("penalty vector length differs from graph size");
  double penalty = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == i) penalty += c[i];
  }
  return -static_cast<double>(agreement(g, p)) + penalty;
}

double asp_objective(const Graph& g, const Eigen::MatrixXd& x, const PenaltyVector& c) {
  const int n = g.n();
  if (x.rows() != n || x.cols() != n) throw DimensionError("matrix size differs from graph size");
  if (c.size() != n) throw DimensionError("penalty vector length differs from graph size");
  const Eigen::MatrixXd a = g.to_matrix();
  const Eigen::MatrixXd axa = a * x * a;
  double value = -(axa.cwiseProduct(x)).sum();
  for (int i = 0; i < n; ++i) value += c[i] * x(i, i);
  return value;
}

int hamming(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DimensionError("hamming distance of permutations of different sizes");
  int d = 0;
  for (int i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

int fixed_points(const Permutation& p) {
  int k = 0;
  for (int i = 0; i < p.size(); ++i) k += p[i] == i ? 1 : 0;
  return k;
}

}  // namespace approxsym
