#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "approxsym/graph.hpp"

namespace approxsym {

/// Outcome of one solver run (QSA or AFP).
struct SolverReport {
  Permutation final;
  std::int64_t epsilon = 0;
  double S = 0.0;
  // QSA: relaxed objective per iterate (initial point first).
  // AFP: best-so-far epsilon at the start and at every checkpoint.
  std::vector<double> objective_trace;
  std::int64_t iters = 0;
  int fixed_point_count = 0;
  bool is_identity = false;
  std::int64_t wall_ms = 0;
  std::uint64_t seed = 0;
};

/// JSON document with exactly the SolverReport field names; two-space indent,
/// trailing LF.
std::string report_to_json(const SolverReport& r);
SolverReport report_from_json(const std::string& text);

}  // namespace approxsym
