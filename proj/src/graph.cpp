#include "approxsym/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "approxsym/error.hpp"

namespace approxsym {

Graph::Graph(int n) {
  if (n < 0) throw InvalidInput("graph size must be nonnegative");
  n_ = n;
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

Graph Graph::from_adjacency(int n, std::vector<std::uint8_t> adj) {
  if (n < 0) throw InvalidInput("graph size must be nonnegative");
  if (adj.size() != static_cast<std::size_t>(n) * n) {
    throw DimensionError("adjacency matrix must have n*n entries");
  }
  std::int64_t twice_m = 0;
  for (int i = 0; i < n; ++i) {
    if (adj[static_cast<std::size_t>(i) * n + i] != 0) {
      throw InvalidInput("adjacency matrix has a loop at node " + std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
      const auto a = adj[static_cast<std::size_t>(i) * n + j];
      if (a > 1) throw InvalidInput("adjacency matrix must be binary");
      if (a != adj[static_cast<std::size_t>(j) * n + i]) {
        throw InvalidInput("adjacency matrix must be symmetric");
      }
      twice_m += a;
    }
  }
  return Graph(n, std::move(adj), twice_m / 2);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw InvalidInput("edge endpoint out of range");
    }
    if (i == j) throw InvalidInput("loops are not allowed");
    auto& a = g.adj_[static_cast<std::size_t>(i) * n + j];
    if (a == 0) {
      a = 1;
      g.adj_[static_cast<std::size_t>(j) * n + i] = 1;
      ++g.m_;
    }
  }
  return g;
}

int Graph::degree(int i) const {
  const auto r = row(i);
  return static_cast<int>(std::count(r.begin(), r.end(), std::uint8_t{1}));
}

int Graph::max_degree() const {
  int best = 0;
  for (int i = 0; i < n_; ++i) best = std::max(best, degree(i));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

double Graph::density() const {
  if (n_ < 2) return 0.0;
  return static_cast<double>(m_) / (0.5 * n_ * (n_ - 1.0));
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n_; ++v) {
      if (has_edge(u, v) && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n_;
}

Eigen::MatrixXd Graph::to_matrix() const {
  Eigen::MatrixXd a(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) a(i, j) = has_edge(i, j) ? 1.0 : 0.0;
  }
  return a;
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw InvalidInput("permutation size must be nonnegative");
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || v >= n) {
      throw InvalidInput("permutation image " + std::to_string(v) + " out of range");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw InvalidInput("permutation is not a bijection: image " + std::to_string(v) +
                         " repeated");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw DimensionError("composing permutations of different sizes");
  std::vector<int> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) {
    out[i] = img_[static_cast<std::size_t>(other.img_[i])];
  }
  return Permutation(std::move(out));
}

Permutation Permutation::with_swapped_images(int i, int j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) {
    throw InvalidInput("swap position out of range");
  }
  auto img = img_;
  std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Eigen::MatrixXd Permutation::to_matrix() const {
  const int n = size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, img_[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

PenaltyVector::PenaltyVector(std::vector<double> c) : c_(std::move(c)) {
  for (double v : c_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("penalty entries must be finite and nonnegative");
    }
  }
}

PenaltyVector PenaltyVector::uniform(int n, double value) {
  return PenaltyVector(std::vector<double>(static_cast<std::size_t>(n), value));
}

bool PenaltyVector::all_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

}  // namespace approxsym
