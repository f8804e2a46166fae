#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "approxsym/graph.hpp"

namespace approxsym {

/// Symmetric nonnegative weighted connectivity matrix with zero diagonal.
class WeightedMatrix {
 public:
  /// Symmetrizes by averaging w_ij and w_ji and zeroes the diagonal. Throws
  /// InvalidInput for non-square input, negative or non-finite weights, or an
  /// asymmetry above 10% of max(|w_ij|, |w_ji|).
  static WeightedMatrix from_matrix(Eigen::MatrixXd w);

  int n() const { return static_cast<int>(w_.rows()); }
  double operator()(int i, int j) const { return w_(i, j); }
  const Eigen::MatrixXd& matrix() const { return w_; }

 private:
  explicit WeightedMatrix(Eigen::MatrixXd w) : w_(std::move(w)) {}
  Eigen::MatrixXd w_;
};

// Relative asymmetry accepted (and averaged away) when loading.
inline constexpr double kMaxRelativeAsymmetry = 0.1;

/// Square numeric grid, cells separated by commas and/or whitespace.
WeightedMatrix parse_matrix(const std::string& text);
WeightedMatrix load_matrix(const std::filesystem::path& path);

/// Keeps the k = round_half_up(rho * C(n, 2)) heaviest pairs. Ties at the
/// cutoff go to the lexicographically smaller pair; zero-weight pairs never
/// become edges.
Graph binarize_density(const WeightedMatrix& wm, double rho);

/// Hemisphere swap i <-> i + n/2 for atlases listing the left half first.
Permutation lr_halves(int n);

/// LR map read from a one-line permutation file; must have length n.
Permutation lr_from_file(const std::filesystem::path& path, int n);

}  // namespace approxsym
