#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridplan/grid.hpp"
#include "gridplan/planners2d.hpp"
#include "gridplan/planners3d.hpp"

namespace gridplan {

// Scenario file problems: the message lists every invalid field.
class ScenarioError : public std::runtime_error {
  public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct PlannerSpec {
    std::string planner;       // dijkstra | astar | rrtstar | niaco |
                               // dijkstra3d | astar3d | rrtconnect | niaco3d
    nlohmann::json params;     // per-planner overrides, may be empty
};

bool planner_is_3d(const std::string& planner);
bool planner_is_stochastic(const std::string& planner);
const std::vector<std::string>& known_planners();

struct Scenario {
    std::string name;
    std::string weight_map;     // resolved path
    std::string elevation_map;  // resolved path, empty if none
    CellCoord start;
    CellCoord goal;
    int repeats = 5;
    std::uint64_t base_seed = 0;

    std::uint32_t impassable_value = 0;
    double weight_scale = 1.0;
    double elevation_scale = 1.0;
    double resolution = 1.0;
    bool median_filter = false;
    Cost3DParams cost3d;

    std::vector<PlannerSpec> planners;
};

// Accepts a single scenario object or {"scenarios": [...]}; relative map
// paths are resolved against the scenario file's directory.
std::vector<Scenario> load_scenarios(const std::string& path);
std::vector<Scenario> parse_scenarios(const nlohmann::json& doc,
                                      const std::string& base_dir);

struct MetricsRecord {
    std::string scenario;
    std::string planner;
    int run_index = 0;
    std::uint64_t seed = 0;
    std::optional<double> path_cost;  // nullopt = unreachable
    double wall_time_s = 0.0;
    std::size_t accounted_bytes = 0;
    std::uint64_t expanded_or_sampled = 0;
    std::optional<Path> path;  // kept for recomputation checks, not serialized
};

// Runs every planner x repeat, seed = base_seed + run index. Wall time wraps
// the planning call only; map loading happens before any run and raises
// ScenarioError on failure. A no-path run still yields a record.
std::vector<MetricsRecord> run_scenario(const Scenario& scenario);

struct StatSummary {
    double mean = 0.0;
    double stddev = 0.0;  // population formula
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

struct PlannerStats {
    std::string scenario;
    std::string planner;
    StatSummary cost;      // finite-cost runs only
    StatSummary time_s;
    StatSummary memory_bytes;
    StatSummary expanded;
    int failures = 0;      // unreachable runs
};

using RunStats = std::vector<PlannerStats>;

// Groups records by (scenario, planner) in first-appearance order. Throws
// std::invalid_argument on an empty record list.
RunStats aggregate_runs(const std::vector<MetricsRecord>& records);

enum class TableFormat { Csv, Json, Text };

// Text: metric-major rows (Path Cost, Computation Time (s), Memory Usage
// (MB)) x algorithm with one column per scenario. CSV columns:
// scenario,planner,metric,mean,std,min,max,failures. JSON mirrors CSV rows.
std::string render_table(const RunStats& stats, TableFormat format);
void emit_table(const RunStats& stats, TableFormat format, const std::string& path);

// Per-run rows: scenario,planner,run_index,seed,path_cost,wall_time_s,
// accounted_memory_bytes,expanded_or_sampled.
std::string render_runs_csv(const std::vector<MetricsRecord>& records);

}  // namespace gridplan
