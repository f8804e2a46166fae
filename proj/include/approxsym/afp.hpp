#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "approxsym/graph.hpp"
#include "approxsym/init_spec.hpp"
#include "approxsym/report.hpp"

namespace approxsym {

// Burn-in used to calibrate the cooling numerator when none is given.
inline constexpr int kBurnInProposals = 200;
inline constexpr double kBurnInAcceptance = 0.8;

struct AfpOptions {
  // Maximum number of fixed points K. Unset: n / 2.
  std::optional<int> max_fixed_points;
  // Number of proposals. 0 selects the default 100 * n^2.
  std::int64_t budget = 0;
  // Cooling T(t) = sched_c / ln(t + sched_d). Unset sched_c: calibrated so the
  // median uphill burn-in move is accepted with probability 0.8 at t = 1.
  std::optional<double> sched_c;
  double sched_d = 2.0;
  std::uint64_t seed = 0;
  InitSpec init = InitSpec::random();
  // Interval (in proposals) of the from-scratch energy check and trace sample.
  std::int64_t checkpoint_every = 1000;
  // Optional hook called at each checkpoint with (step, current permutation).
  std::function<void(std::int64_t, const Permutation&)> on_checkpoint;
};

/// c / ln(t + d). Throws InvalidInput unless t >= 1, c > 0 and t + d > 1.
double temperature(std::int64_t t, double sched_c, double sched_d);

/// 2 * (eps(g, p') - eps(g, p)) where p' has the images of i and j exchanged.
/// O(n): only rows i, j, p(i), p(j) are read.
std::int64_t delta_epsilon(const Graph& g, const Permutation& p, int i, int j);

/// Cooling numerator calibrated from a burn-in around `start`.
double calibrate_sched_c(const Graph& g, const Permutation& start, double sched_d,
                         std::uint64_t seed);

/// Metropolis annealing over permutations with at most K fixed points.
/// Proposals swap the images of two distinct positions; proposals exceeding
/// the cap (or producing the identity) are rejected and still consume a step.
/// Returns the best permutation seen.
SolverReport afp_solve(const Graph& g, const AfpOptions& opts);

}  // namespace approxsym
