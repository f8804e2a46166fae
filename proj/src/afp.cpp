#include "approxsym/afp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "approxsym/error.hpp"
#include "approxsym/generators.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/rng.hpp"

namespace approxsym {
namespace {

// Annealing state: the permutation and B = P A P^T (B[a][b] = A[p(a)][p(b)]),
// kept in sync so that a swap's energy change reads four contiguous rows.
class SwapState {
 public:
  SwapState(const Graph& g, std::vector<int> img)
      : g_(g), n_(g.n()), img_(std::move(img)), b_(static_cast<std::size_t>(n_) * n_) {
    for (int a = 0; a < n_; ++a) {
      const auto row = g_.row(img_[static_cast<std::size_t>(a)]);
      for (int c = 0; c < n_; ++c) {
        b_[idx(a, c)] = row[static_cast<std::size_t>(img_[static_cast<std::size_t>(c)])];
      }
    }
    std::int64_t agree = 0;
    for (int a = 0; a < n_; ++a) {
      const auto row = g_.row(a);
      for (int c = 0; c < n_; ++c) agree += row[static_cast<std::size_t>(c)] & b_[idx(a, c)];
    }
    mismatch_ = g_.frobenius_sq() - agree;
    for (int a = 0; a < n_; ++a) fixed_ += img_[static_cast<std::size_t>(a)] == a ? 1 : 0;
  }

  // Change of the mismatch count M (= 2 eps) if the images of i and j swap.
  std::int64_t delta_mismatch(int i, int j) const {
    const std::uint8_t* ai = g_.row(i).data();
    const std::uint8_t* aj = g_.row(j).data();
    const std::uint8_t* bi = &b_[idx(i, 0)];
    const std::uint8_t* bj = &b_[idx(j, 0)];
    int s = 0;
    for (int c = 0; c < n_; ++c) {
      s += (static_cast<int>(ai[c]) - aj[c]) * (static_cast<int>(bj[c]) - bi[c]);
    }
    // Remove the c = i and c = j terms, each equal to -A_ij B_ij.
    s += 2 * (ai[j] & bi[j]);
    return -2 * static_cast<std::int64_t>(s);
  }

  int fixed_after_swap(int i, int j) const {
    const int u = img_[static_cast<std::size_t>(i)];
    const int v = img_[static_cast<std::size_t>(j)];
    return fixed_ - (u == i) - (v == j) + (v == i) + (u == j);
  }

  void apply_swap(int i, int j, std::int64_t delta) {
    fixed_ = fixed_after_swap(i, j);
    std::swap(img_[static_cast<std::size_t>(i)], img_[static_cast<std::size_t>(j)]);
    std::swap_ranges(b_.begin() + static_cast<std::ptrdiff_t>(idx(i, 0)),
                     b_.begin() + static_cast<std::ptrdiff_t>(idx(i, 0) + n_),
                     b_.begin() + static_cast<std::ptrdiff_t>(idx(j, 0)));
    for (int a = 0; a < n_; ++a) std::swap(b_[idx(a, i)], b_[idx(a, j)]);
    mismatch_ += delta;
  }

  std::int64_t epsilon() const { return mismatch_ / 2; }
  int fixed() const { return fixed_; }
  const std::vector<int>& images() const { return img_; }

 private:
  std::size_t idx(int a, int c) const { return static_cast<std::size_t>(a) * n_ + c; }

  const Graph& g_;
  int n_;
  std::vector<int> img_;
  std::vector<std::uint8_t> b_;
  std::int64_t mismatch_ = 0;
  int fixed_ = 0;
};

int resolve_cap(const Graph& g, const AfpOptions& opts) {
  const int n = g.n();
  const int k = opts.max_fixed_points.value_or(n / 2);
  if (k < 0 || k > n) throw InvalidInput("fixed-point cap must lie in [0, n]");
  return k;
}

}  // namespace

double temperature(std::int64_t t, double sched_c, double sched_d) {
  if (t < 1) throw InvalidInput("temperature step must be at least 1");
  if (!(sched_c > 0.0)) throw InvalidInput("cooling numerator must be positive");
  if (!(static_cast<double>(t) + sched_d > 1.0)) throw InvalidInput("t + d must exceed 1");
  return sched_c / std::log(static_cast<double>(t) + sched_d);
}

std::int64_t delta_epsilon(const Graph& g, const Permutation& p, int i, int j) {
  const int n = g.n();
  if (p.size() != n) throw DimensionError("permutation size differs from graph size");
  if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidInput("swap position out of range");
  if (i == j) throw InvalidInput("swap positions must differ");
  const auto ai = g.row(i);
  const auto aj = g.row(j);
  const auto au = g.row(p[i]);
  const auto av = g.row(p[j]);
  // eps' - eps = -sum_{a != i, j} (A_ai - A_aj)(A_{p(a) v} - A_{p(a) u})
  std::int64_t s = 0;
  for (int a = 0; a < n; ++a) {
    if (a == i || a == j) continue;
    const int pa = p[a];
    s += (static_cast<int>(ai[static_cast<std::size_t>(a)]) - aj[static_cast<std::size_t>(a)]) *
         (static_cast<int>(av[static_cast<std::size_t>(pa)]) - au[static_cast<std::size_t>(pa)]);
  }
  return -2 * s;
}

double calibrate_sched_c(const Graph& g, const Permutation& start, double sched_d,
                         std::uint64_t seed) {
  const int n = g.n();
  if (n < 2) return 1.0;
  SwapState state(g, start.images());
  Rng rng(seed);
  std::vector<double> uphill;
  for (int s = 0; s < kBurnInProposals; ++s) {
    const auto [i, j] = rng.distinct_pair(n);
    const std::int64_t dm = state.delta_mismatch(i, j);
    if (dm > 0) uphill.push_back(0.5 * static_cast<double>(dm));
  }
  if (uphill.empty()) return 1.0;
  std::sort(uphill.begin(), uphill.end());
  const std::size_t mid = uphill.size() / 2;
  const double median = uphill.size() % 2 == 1 ? uphill[mid] : 0.5 * (uphill[mid - 1] + uphill[mid]);
  // exp(-median / T(1)) = acceptance  =>  T(1) = median / ln(1 / acceptance).
  const double t1 = median / std::log(1.0 / kBurnInAcceptance);
  return t1 * std::log(1.0 + sched_d);
}

SolverReport afp_solve(const Graph& g, const AfpOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  const int n = g.n();
  if (n < 2) throw InvalidInput("AFP needs a graph with at least two nodes");
  const int cap = resolve_cap(g, opts);
  if (opts.budget < 0) throw InvalidInput("budget must be positive");
  const std::int64_t budget = opts.budget == 0 ? 100LL * n * n : opts.budget;
  if (!(opts.sched_d + 1.0 > 1.0)) throw InvalidInput("sched_d must be positive so that t + d > 1");
  if (opts.checkpoint_every < 1) throw InvalidInput("checkpoint interval must be positive");

  Permutation start;
  switch (opts.init.kind) {
    case InitSpec::Kind::kIdentity:
      throw InvalidInput("AFP cannot start from the identity");
    case InitSpec::Kind::kRandom:
      // The identity is never a valid AFP state, so a cap of n behaves as n - 2.
      start = random_perm_max_fp(n, std::min(cap, n - 2), derive_seed(opts.seed, "afp-init"));
      break;
    case InitSpec::Kind::kGiven:
      start = opts.init.given;
      if (start.size() != n) throw InvalidInput("init permutation size differs from graph size");
      if (start.is_identity()) throw InvalidInput("AFP cannot start from the identity");
      if (fixed_points(start) > cap) {
        throw InvalidInput("init permutation has " + std::to_string(fixed_points(start)) +
                           " fixed points, above the cap " + std::to_string(cap));
      }
      break;
  }

  const double sched_c = opts.sched_c ? *opts.sched_c
                                      : calibrate_sched_c(g, start, opts.sched_d,
                                                          derive_seed(opts.seed, "afp-burn-in"));
  if (!(sched_c > 0.0)) throw InvalidInput("sched_c must be positive");

  SwapState state(g, start.images());
  Rng rng(derive_seed(opts.seed, "afp-moves"));
  std::vector<int> best = state.images();
  std::int64_t best_eps = state.epsilon();

  SolverReport report;
  report.seed = opts.seed;
  report.objective_trace.push_back(static_cast<double>(best_eps));

  for (std::int64_t t = 1; t <= budget; ++t) {
    const auto [i, j] = rng.distinct_pair(n);
    const int fixed = state.fixed_after_swap(i, j);
    if (fixed <= cap && fixed < n) {
      const std::int64_t dm = state.delta_mismatch(i, j);
      bool accept = dm <= 0;
      if (!accept) {
        const double temp = sched_c / std::log(static_cast<double>(t) + opts.sched_d);
        accept = rng.uniform01() < std::exp(-0.5 * static_cast<double>(dm) / temp);
      }
      if (accept) {
        state.apply_swap(i, j, dm);
        if (state.epsilon() < best_eps) {
          best_eps = state.epsilon();
          best = state.images();
        }
      }
    }
    if (t % opts.checkpoint_every == 0) {
      Permutation current = Permutation::from_images(state.images());
      if (epsilon(g, current) != state.epsilon()) {
        throw std::logic_error("AFP incremental energy diverged from recomputation");
      }
      report.objective_trace.push_back(static_cast<double>(best_eps));
      if (opts.on_checkpoint) opts.on_checkpoint(t, current);
    }
  }

  report.final = Permutation::from_images(std::move(best));
  report.epsilon = best_eps;
  report.S = symmetry_from_epsilon(best_eps, n);
  report.iters = budget;
  report.fixed_point_count = fixed_points(report.final);
  report.is_identity = report.final.is_identity();
  report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return report;
}

}  // namespace approxsym
