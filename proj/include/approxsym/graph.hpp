#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace approxsym {

using Edge = std::pair<int, int>;

/// Undirected simple graph on nodes 0..n-1 stored as a dense 0/1 adjacency
/// matrix. The matrix is symmetric with a zero diagonal; instances are
/// immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Empty graph on n nodes.
  explicit Graph(int n);

  /// Row-major n*n adjacency matrix. Throws InvalidInput unless the matrix
  /// is binary, symmetric and loop-free.
  static Graph from_adjacency(int n, std::vector<std::uint8_t> adj);

  /// Builds a graph from an edge list. Duplicate edges collapse; loops and
  /// out-of-range endpoints throw InvalidInput.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int n() const { return n_; }
  std::int64_t edge_count() const { return m_; }

  bool has_edge(int i, int j) const {
    return adj_[static_cast<std::size_t>(i) * n_ + j] != 0;
  }

  std::span<const std::uint8_t> row(int i) const {
    return {adj_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

  const std::vector<std::uint8_t>& adjacency() const { return adj_; }

  int degree(int i) const;
  int max_degree() const;

  /// Edges {i, j} with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  /// Squared Frobenius norm of the adjacency matrix, i.e. 2m.
  std::int64_t frobenius_sq() const { return 2 * m_; }

  double density() const;

  bool is_connected() const;

  Eigen::MatrixXd to_matrix() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  Graph(int n, std::vector<std::uint8_t> adj, std::int64_t m)
      : n_(n), m_(m), adj_(std::move(adj)) {}

  int n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Bijection on {0..n-1} stored as its image array: p[i] = pi(i).
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n);

  /// Throws InvalidInput if `images` is not a bijection on {0..size-1}.
  static Permutation from_images(std::vector<int> images);

  int size() const { return static_cast<int>(img_.size()); }
  int operator[](int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;

  /// (this ∘ other)(i) = this[other[i]].
  Permutation compose(const Permutation& other) const;

  /// Copy with the images of positions i and j exchanged.
  Permutation with_swapped_images(int i, int j) const;

  bool is_identity() const;

  /// Permutation matrix P with P(i, pi(i)) = 1.
  Eigen::MatrixXd to_matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> img) : img_(std::move(img)) {}
  std::vector<int> img_;
};

/// Per-node fixed-point penalty c (all entries nonnegative).
class PenaltyVector {
 public:
  PenaltyVector() = default;

  /// Throws InvalidInput on a negative or non-finite entry.
  explicit PenaltyVector(std::vector<double> c);

  static PenaltyVector zeros(int n) { return PenaltyVector(std::vector<double>(static_cast<std::size_t>(n), 0.0)); }
  static PenaltyVector uniform(int n, double value);

  int size() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return c_; }
  bool all_zero() const;

 private:
  std::vector<double> c_;
};

}  // namespace approxsym
