#include "approxsym/report.hpp"

#include <json.hpp>

#include "approxsym/error.hpp"

namespace approxsym {

std::string report_to_json(const SolverReport& r) {
  nlohmann::ordered_json j;
  j["final"] = r.final.images();
  j["epsilon"] = r.epsilon;
  j["S"] = r.S;
  j["objective_trace"] = r.objective_trace;
  j["iters"] = r.iters;
  j["fixed_point_count"] = r.fixed_point_count;
  j["is_identity"] = r.is_identity;
  j["wall_ms"] = r.wall_ms;
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

SolverReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SolverReport r;
    r.final = Permutation::from_images(j.at("final").get<std::vector<int>>());
    r.epsilon = j.at("epsilon").get<std::int64_t>();
    r.S = j.at("S").get<double>();
    r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    r.iters = j.at("iters").get<std::int64_t>();
    r.fixed_point_count = j.at("fixed_point_count").get<int>();
    r.is_identity = j.at("is_identity").get<bool>();
    r.wall_ms = j.at("wall_ms").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed solver report: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("malformed solver report: ") + e.what());
  }
}

}  // namespace approxsym
