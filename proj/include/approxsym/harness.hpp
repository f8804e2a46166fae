#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "approxsym/graph.hpp"
#include "approxsym/init_spec.hpp"

namespace approxsym {

using ordered_json = nlohmann::ordered_json;

/// Malformed experiment configuration (unknown keys, wrong types, missing
/// required fields). Distinct from infeasible model parameters, which only
/// fail the affected records.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model names understood by generate_model.
const std::vector<std::string>& model_names();

/// Checks that `params` has exactly the keys `model` needs, with numeric
/// types. Throws ConfigError.
void validate_model_params(const std::string& model, const ordered_json& params);

struct GeneratedInstance {
  Graph graph;
  std::optional<Permutation> lr;            // LRM variants
  std::optional<Permutation> automorphism;  // distorted LRM only
};

/// Builds one sample of `model`. Parameters by model:
///   grid {dims}, er {n, p}, ba {n, m}, sbm {sizes, probs}, lrm {n, p, q},
///   lrm-rewired {n, p, q, k}, lrm-distorted {n, p, q, r, t}.
/// Throws ConfigError for schema problems and InvalidInput for infeasible
/// values.
GeneratedInstance generate_model(const std::string& model, const ordered_json& params,
                                 std::uint64_t seed);

/// Compact cell label, e.g. "n=20;p=0.1". Lists are joined with '|', nested
/// lists with '/'. Never contains a comma.
std::string flatten_params(const ordered_json& params);

struct AfpMethodConfig {
  std::optional<int> max_fp;
  std::int64_t budget = 0;
  std::optional<double> sched_c;
  double sched_d = 2.0;
};

struct QsaMethodConfig {
  int max_iters = 200;
  double rel_tol = 1e-8;
  std::optional<double> blend;
  std::optional<double> penalty;  // uniform c; unset uses the solver default
};

enum class Reference { kNone, kLr, kAutomorphism };

struct ExperimentConfig {
  std::string model;
  ordered_json params = ordered_json::object();  // fixed values
  ordered_json sweep = ordered_json::object();   // name -> list of values
  std::optional<AfpMethodConfig> afp;
  std::optional<QsaMethodConfig> qsa;
  int repetitions = 1;
  std::uint64_t base_seed = 0;
  std::string init = "random";
  Reference reference = Reference::kNone;
  int workers = 0;  // 0: available parallelism
  bool timing = false;

  /// Cross product of the sweep lists (in key order, last key fastest),
  /// merged over the fixed params.
  std::vector<ordered_json> cells() const;
};

/// Throws ConfigError.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ExperimentRecord {
  std::string model;
  std::string params;
  std::string method;
  std::uint64_t seed = 0;  // per (cell, repetition); shared by paired methods
  int run_index = 0;
  double S = 0.0;          // NaN on error rows
  std::int64_t epsilon = -1;
  int fixed_points = -1;
  int hd_to_reference = -1;
  bool is_identity = false;
  std::int64_t iterations = 0;
  std::int64_t wall_ms = 0;
  // Failure message for error rows. Not serialized.
  std::string error;

  /// Compares the serialized fields; NaN S values compare equal.
  bool operator==(const ExperimentRecord&) const;
};

/// Seed of the graph for one cell and repetition.
std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& model,
                        const std::string& params, int repetition);

/// Runs every (cell, repetition) once per configured method on one shared
/// graph and init. Records come back in (cell, repetition, method) order with
/// AFP before QSA. `progress` (optional) is called after each finished task.
std::vector<ExperimentRecord> run_experiment(
    const ExperimentConfig& cfg, const std::function<void(std::size_t, std::size_t)>& progress = {});

inline constexpr const char* kCsvHeader =
    "model,params,method,seed,run_index,S,epsilon,fixed_points,hd_to_reference,is_identity,"
    "iterations,wall_ms";

std::string records_to_csv(const std::vector<ExperimentRecord>& records);
/// Throws ParseError on a wrong header or malformed rows.
std::vector<ExperimentRecord> records_from_csv(const std::string& text);

enum class GroupKey { kModel, kParams, kMethod, kSeed, kRunIndex };

/// One record per group (groups in order of first appearance): minimal S,
/// ties to the smaller seed. Error rows lose to any finite S. Throws
/// InvalidInput on empty input.
std::vector<ExperimentRecord> best_of(const std::vector<ExperimentRecord>& records,
                                      const std::vector<GroupKey>& keys);

struct CellComparison {
  std::string model;
  std::string params;
  std::string x_method;
  std::string y_method;
  int pairs = 0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double t = 0.0;
  double p = 1.0;
  int df = 0;
  bool degenerate = false;
  double cohens_d = 0.0;
  double alpha_corrected = 0.05;
  bool significant = false;
};

/// Paired comparison of S between two methods in every (model, params) cell.
/// Pairs are matched on (seed, run_index). Throws InvalidInput when a cell has
/// an unmatched run, an error row or fewer than two pairs.
std::vector<CellComparison> compare_methods(const std::vector<ExperimentRecord>& records,
                                            const std::string& x_method,
                                            const std::string& y_method, double alpha);

std::string comparisons_to_csv(const std::vector<CellComparison>& rows);

}  // namespace approxsym
