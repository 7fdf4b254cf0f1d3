#include "gridplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "gridplan/raster.hpp"

namespace gridplan {

namespace {

using nlohmann::json;

const std::vector<std::string> kPlanners = {"dijkstra",   "astar",   "rrtstar",
                                            "niaco",      "dijkstra3d", "astar3d",
                                            "rrtconnect", "niaco3d"};

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct ErrorList {
    std::vector<std::string> items;

    void add(const std::string& ctx, const std::string& what) {
        items.push_back(ctx + ": " + what);
    }
    void raise_if_any() const {
        if (items.empty()) return;
        std::string msg = "invalid scenario configuration:";
        for (const auto& item : items) msg += "\n  - " + item;
        throw ScenarioError(msg);
    }
};

bool get_double(const json& j, const char* key, double& out, ErrorList& errs,
                const std::string& ctx) {
    if (!j.contains(key)) return false;
    if (!j[key].is_number()) {
        errs.add(ctx, std::string(key) + " must be a number");
        return false;
    }
    out = j[key].get<double>();
    return true;
}

bool get_int(const json& j, const char* key, int& out, ErrorList& errs,
             const std::string& ctx) {
    if (!j.contains(key)) return false;
    if (!j[key].is_number_integer()) {
        errs.add(ctx, std::string(key) + " must be an integer");
        return false;
    }
    out = j[key].get<int>();
    return true;
}

bool get_cell(const json& j, const char* key, CellCoord& out, ErrorList& errs,
              const std::string& ctx) {
    if (!j.contains(key)) {
        errs.add(ctx, std::string("missing required field ") + key);
        return false;
    }
    const json& v = j[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer()) {
        errs.add(ctx, std::string(key) + " must be an [x, y] integer pair");
        return false;
    }
    out = {v[0].get<int>(), v[1].get<int>()};
    return true;
}

void check_keys(const json& j, std::initializer_list<const char*> known, ErrorList& errs,
                const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return it.key() == k;
            }) == known.end())
            errs.add(ctx, "unknown field '" + it.key() + "'");
    }
}

RrtParams rrt_params_from(const json& j, std::uint64_t seed, ErrorList& errs,
                          const std::string& ctx) {
    RrtParams p;
    p.seed = seed;
    check_keys(j,
               {"max_iterations", "step_delta", "neighborhood_gamma", "goal_bias",
                "goal_tolerance"},
               errs, ctx);
    get_int(j, "max_iterations", p.max_iterations, errs, ctx);
    get_double(j, "step_delta", p.step_delta, errs, ctx);
    get_double(j, "neighborhood_gamma", p.neighborhood_gamma, errs, ctx);
    get_double(j, "goal_bias", p.goal_bias, errs, ctx);
    get_double(j, "goal_tolerance", p.goal_tolerance, errs, ctx);
    try {
        p.validate();
    } catch (const std::exception& e) {
        errs.add(ctx, e.what());
    }
    return p;
}

NiacoParams niaco_params_from(const json& j, std::uint64_t seed, ErrorList& errs,
                              const std::string& ctx) {
    NiacoParams p;
    p.seed = seed;
    check_keys(j,
               {"n_ants", "n_iterations", "alpha", "beta", "q0_start", "q0_end",
                "rho_start", "rho_end", "deposit_q", "deposit_decay", "tau0"},
               errs, ctx);
    get_int(j, "n_ants", p.n_ants, errs, ctx);
    get_int(j, "n_iterations", p.n_iterations, errs, ctx);
    get_double(j, "alpha", p.alpha, errs, ctx);
    get_double(j, "beta", p.beta, errs, ctx);
    get_double(j, "q0_start", p.q0_start, errs, ctx);
    get_double(j, "q0_end", p.q0_end, errs, ctx);
    get_double(j, "rho_start", p.rho_start, errs, ctx);
    get_double(j, "rho_end", p.rho_end, errs, ctx);
    get_double(j, "deposit_q", p.deposit_q, errs, ctx);
    get_double(j, "deposit_decay", p.deposit_decay, errs, ctx);
    get_double(j, "tau0", p.tau0, errs, ctx);
    try {
        p.validate();
    } catch (const std::exception& e) {
        errs.add(ctx, e.what());
    }
    return p;
}

std::optional<double> astar_scale_from(const json& j, ErrorList& errs,
                                       const std::string& ctx) {
    if (!j.contains("heuristic_scale")) return std::nullopt;
    const json& v = j["heuristic_scale"];
    if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
    if (v.is_number()) {
        const double scale = v.get<double>();
        if (!(scale >= 0.0)) {
            errs.add(ctx, "heuristic_scale must be non-negative");
            return std::nullopt;
        }
        return scale;
    }
    errs.add(ctx, "heuristic_scale must be a number or \"auto\"");
    return std::nullopt;
}

Scenario parse_one(const json& j, const std::string& base_dir, const std::string& where,
                   ErrorList& errs) {
    Scenario s;
    if (!j.is_object()) {
        errs.add(where, "scenario must be a JSON object");
        return s;
    }
    check_keys(j,
               {"name", "weight_map", "elevation_map", "start", "goal", "repeats",
                "base_seed", "impassable_value", "weight_scale", "elevation_scale",
                "resolution", "median_filter", "cost3d", "planners"},
               errs, where);

    if (j.contains("name") && j["name"].is_string()) {
        s.name = j["name"].get<std::string>();
    } else {
        errs.add(where, "missing required string field name");
    }
    const std::string ctx = s.name.empty() ? where : "scenario '" + s.name + "'";

    const auto resolve = [&base_dir](const std::string& p) {
        std::filesystem::path fp(p);
        if (fp.is_absolute() || base_dir.empty()) return p;
        return (std::filesystem::path(base_dir) / fp).string();
    };

    if (j.contains("weight_map") && j["weight_map"].is_string()) {
        s.weight_map = resolve(j["weight_map"].get<std::string>());
    } else {
        errs.add(ctx, "missing required string field weight_map");
    }
    if (j.contains("elevation_map")) {
        if (j["elevation_map"].is_string()) {
            s.elevation_map = resolve(j["elevation_map"].get<std::string>());
        } else {
            errs.add(ctx, "elevation_map must be a string");
        }
    }

    get_cell(j, "start", s.start, errs, ctx);
    get_cell(j, "goal", s.goal, errs, ctx);
    get_int(j, "repeats", s.repeats, errs, ctx);
    if (s.repeats < 1) errs.add(ctx, "repeats must be at least 1");
    if (j.contains("base_seed")) {
        if (j["base_seed"].is_number_unsigned() || j["base_seed"].is_number_integer()) {
            s.base_seed = j["base_seed"].get<std::uint64_t>();
        } else {
            errs.add(ctx, "base_seed must be an integer");
        }
    }
    int impassable = 0;
    if (get_int(j, "impassable_value", impassable, errs, ctx)) {
        if (impassable < 0) {
            errs.add(ctx, "impassable_value must be non-negative");
        } else {
            s.impassable_value = static_cast<std::uint32_t>(impassable);
        }
    }
    get_double(j, "weight_scale", s.weight_scale, errs, ctx);
    if (!(s.weight_scale > 0.0)) errs.add(ctx, "weight_scale must be positive");
    get_double(j, "elevation_scale", s.elevation_scale, errs, ctx);
    get_double(j, "resolution", s.resolution, errs, ctx);
    if (!(s.resolution > 0.0)) errs.add(ctx, "resolution must be positive");
    if (j.contains("median_filter")) {
        if (j["median_filter"].is_boolean()) {
            s.median_filter = j["median_filter"].get<bool>();
        } else {
            errs.add(ctx, "median_filter must be a boolean");
        }
    }
    if (j.contains("cost3d")) {
        const json& c = j["cost3d"];
        if (!c.is_object()) {
            errs.add(ctx, "cost3d must be an object");
        } else {
            check_keys(c, {"kappa", "gradient_window", "gradient_penalty"}, errs, ctx);
            get_double(c, "kappa", s.cost3d.kappa, errs, ctx);
            get_int(c, "gradient_window", s.cost3d.gradient_window, errs, ctx);
            get_double(c, "gradient_penalty", s.cost3d.gradient_penalty, errs, ctx);
            try {
                s.cost3d.validate();
            } catch (const std::exception& e) {
                errs.add(ctx, e.what());
            }
        }
    }

    if (!j.contains("planners") || !j["planners"].is_array() || j["planners"].empty()) {
        errs.add(ctx, "planners must be a non-empty array");
        return s;
    }
    for (std::size_t i = 0; i < j["planners"].size(); ++i) {
        const json& pj = j["planners"][i];
        const std::string pctx = ctx + " planners[" + std::to_string(i) + "]";
        PlannerSpec spec;
        if (pj.is_string()) {
            spec.planner = pj.get<std::string>();
        } else if (pj.is_object()) {
            check_keys(pj, {"planner", "params"}, errs, pctx);
            if (pj.contains("planner") && pj["planner"].is_string()) {
                spec.planner = pj["planner"].get<std::string>();
            } else {
                errs.add(pctx, "missing required string field planner");
                continue;
            }
            if (pj.contains("params")) {
                if (!pj["params"].is_object()) {
                    errs.add(pctx, "params must be an object");
                } else {
                    spec.params = pj["params"];
                    if (spec.params.contains("seed"))
                        errs.add(pctx,
                                 "seed cannot be overridden per planner; use base_seed");
                }
            }
        } else {
            errs.add(pctx, "entry must be a planner name or {planner, params} object");
            continue;
        }
        if (std::find(kPlanners.begin(), kPlanners.end(), spec.planner) ==
            kPlanners.end()) {
            errs.add(pctx, "unknown planner '" + spec.planner + "'");
            continue;
        }
        if (planner_is_3d(spec.planner) && s.elevation_map.empty())
            errs.add(ctx, "planner " + spec.planner + " requires elevation_map");
        s.planners.push_back(std::move(spec));
    }
    return s;
}

StatSummary summarize(const std::vector<double>& values) {
    StatSummary s;
    s.count = static_cast<int>(values.size());
    if (values.empty()) return s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (const double v : values) sum += v;
    s.mean = sum / values.size();
    double var = 0.0;
    for (const double v : values) var += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(var / values.size());
    return s;
}

const char* display_name(const std::string& planner) {
    if (planner == "dijkstra") return "Dijkstra";
    if (planner == "astar") return "A*";
    if (planner == "rrtstar") return "RRT*";
    if (planner == "niaco") return "NIACO";
    if (planner == "dijkstra3d") return "Dijkstra 3D";
    if (planner == "astar3d") return "A* 3D";
    if (planner == "rrtconnect") return "RRT-Connect";
    if (planner == "niaco3d") return "NIACO 3D";
    return planner.c_str();
}

}  // namespace

bool planner_is_3d(const std::string& planner) {
    return planner == "dijkstra3d" || planner == "astar3d" || planner == "rrtconnect" ||
           planner == "niaco3d";
}

bool planner_is_stochastic(const std::string& planner) {
    return planner == "rrtstar" || planner == "rrtconnect" || planner == "niaco" ||
           planner == "niaco3d";
}

const std::vector<std::string>& known_planners() { return kPlanners; }

std::vector<Scenario> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open scenario file");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ScenarioError(path + ": " + e.what());
    }
    return parse_scenarios(doc, std::filesystem::path(path).parent_path().string());
}

std::vector<Scenario> parse_scenarios(const nlohmann::json& doc,
                                      const std::string& base_dir) {
    ErrorList errs;
    std::vector<Scenario> out;
    if (doc.is_object() && doc.contains("scenarios")) {
        if (!doc["scenarios"].is_array() || doc["scenarios"].empty()) {
            errs.add("document", "scenarios must be a non-empty array");
        } else {
            for (std::size_t i = 0; i < doc["scenarios"].size(); ++i)
                out.push_back(parse_one(doc["scenarios"][i], base_dir,
                                        "scenarios[" + std::to_string(i) + "]", errs));
        }
    } else {
        out.push_back(parse_one(doc, base_dir, "scenario", errs));
    }
    errs.raise_if_any();
    return out;
}

std::vector<MetricsRecord> run_scenario(const Scenario& scenario) {
    if (scenario.planners.empty())
        throw ScenarioError("scenario '" + scenario.name + "' has no planners");
    if (scenario.repeats < 1)
        throw ScenarioError("scenario '" + scenario.name + "' repeats must be at least 1");

    RasterGrid weight_raster;
    try {
        weight_raster = load_grayscale_raster(scenario.weight_map);
    } catch (const std::exception& e) {
        throw ScenarioError("scenario '" + scenario.name + "': " + e.what());
    }
    const WeightedGrid grid = from_raster_weights(weight_raster, scenario.impassable_value,
                                                  scenario.weight_scale);

    std::optional<ElevationField> elev;
    std::optional<Scene3D> scene;
    const bool any_3d = std::any_of(scenario.planners.begin(), scenario.planners.end(),
                                    [](const PlannerSpec& p) {
                                        return planner_is_3d(p.planner);
                                    });
    if (!scenario.elevation_map.empty()) {
        RasterGrid elev_raster;
        try {
            elev_raster = load_grayscale_raster(scenario.elevation_map);
        } catch (const std::exception& e) {
            throw ScenarioError("scenario '" + scenario.name + "': " + e.what());
        }
        elev = elevation_from_raster(elev_raster, scenario.elevation_scale,
                                     scenario.resolution, scenario.median_filter);
        scene.emplace(grid, *elev, scenario.cost3d);
    } else if (any_3d) {
        throw ScenarioError("scenario '" + scenario.name +
                            "': 3D planners require elevation_map");
    }

    for (const CellCoord c : {scenario.start, scenario.goal}) {
        if (!grid.in_bounds(c) || !grid.passable(c))
            throw ScenarioError("scenario '" + scenario.name + "': endpoint (" +
                                std::to_string(c.x) + "," + std::to_string(c.y) +
                                ") is not a passable cell");
    }

    // Resolve every planner configuration before timing anything.
    ErrorList errs;
    std::vector<std::function<PlanResult(std::uint64_t)>> runners;
    for (const PlannerSpec& spec : scenario.planners) {
        const std::string ctx = "scenario '" + scenario.name + "' planner " + spec.planner;
        const json params = spec.params.is_null() ? json::object() : spec.params;
        const CellCoord start = scenario.start;
        const CellCoord goal = scenario.goal;

        if (spec.planner == "dijkstra") {
            check_keys(params, {}, errs, ctx);
            runners.emplace_back(
                [&grid, start, goal](std::uint64_t) {
                    return plan_dijkstra_2d(grid, start, goal);
                });
        } else if (spec.planner == "astar") {
            check_keys(params, {"heuristic_scale"}, errs, ctx);
            const auto scale = astar_scale_from(params, errs, ctx);
            runners.emplace_back([&grid, start, goal, scale](std::uint64_t) {
                return plan_astar_2d(grid, start, goal, scale);
            });
        } else if (spec.planner == "rrtstar") {
            const RrtParams base = rrt_params_from(params, 0, errs, ctx);
            runners.emplace_back([&grid, start, goal, base](std::uint64_t seed) {
                RrtParams p = base;
                p.seed = seed;
                return plan_rrtstar_2d(grid, start, goal, p);
            });
        } else if (spec.planner == "niaco") {
            const NiacoParams base = niaco_params_from(params, 0, errs, ctx);
            runners.emplace_back([&grid, start, goal, base](std::uint64_t seed) {
                NiacoParams p = base;
                p.seed = seed;
                return plan_niaco_2d(grid, start, goal, p);
            });
        } else if (spec.planner == "dijkstra3d") {
            check_keys(params, {}, errs, ctx);
            runners.emplace_back([&scene, start, goal](std::uint64_t) {
                return plan_dijkstra_3d(*scene, start, goal);
            });
        } else if (spec.planner == "astar3d") {
            check_keys(params, {"heuristic_scale", "cache_gradient"}, errs, ctx);
            const auto scale = astar_scale_from(params, errs, ctx);
            Astar3dOptions options;
            if (params.contains("cache_gradient")) {
                if (params["cache_gradient"].is_boolean()) {
                    options.cache_gradient = params["cache_gradient"].get<bool>();
                } else {
                    errs.add(ctx, "cache_gradient must be a boolean");
                }
            }
            runners.emplace_back([&scene, start, goal, scale, options](std::uint64_t) {
                return plan_astar_3d(*scene, start, goal, scale, options);
            });
        } else if (spec.planner == "rrtconnect") {
            const RrtParams base = rrt_params_from(params, 0, errs, ctx);
            runners.emplace_back([&scene, start, goal, base](std::uint64_t seed) {
                RrtParams p = base;
                p.seed = seed;
                return plan_rrtconnect_3d(*scene, start, goal, p);
            });
        } else if (spec.planner == "niaco3d") {
            const NiacoParams base = niaco_params_from(params, 0, errs, ctx);
            runners.emplace_back([&scene, start, goal, base](std::uint64_t seed) {
                NiacoParams p = base;
                p.seed = seed;
                return plan_niaco_3d(*scene, start, goal, p);
            });
        } else {
            errs.add(ctx, "unknown planner");
        }
    }
    errs.raise_if_any();

    std::vector<MetricsRecord> records;
    records.reserve(scenario.planners.size() * scenario.repeats);
    for (std::size_t pi = 0; pi < scenario.planners.size(); ++pi) {
        for (int run = 0; run < scenario.repeats; ++run) {
            const std::uint64_t seed = scenario.base_seed + static_cast<std::uint64_t>(run);
            const auto t0 = std::chrono::steady_clock::now();
            PlanResult pr = runners[pi](seed);
            const auto t1 = std::chrono::steady_clock::now();

            MetricsRecord rec;
            rec.scenario = scenario.name;
            rec.planner = scenario.planners[pi].planner;
            rec.run_index = run;
            rec.seed = seed;
            if (pr.path) rec.path_cost = pr.path->total_cost;
            rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
            rec.accounted_bytes = pr.peak_bytes;
            rec.expanded_or_sampled = pr.expanded_or_sampled;
            rec.path = std::move(pr.path);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

RunStats aggregate_runs(const std::vector<MetricsRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("aggregate_runs needs at least one record");

    RunStats stats;
    for (const MetricsRecord& rec : records) {
        auto it = std::find_if(stats.begin(), stats.end(), [&](const PlannerStats& s) {
            return s.scenario == rec.scenario && s.planner == rec.planner;
        });
        if (it == stats.end()) {
            stats.push_back({rec.scenario, rec.planner, {}, {}, {}, {}, 0});
        }
    }
    for (PlannerStats& group : stats) {
        std::vector<double> costs, times, memories, expanded;
        for (const MetricsRecord& rec : records) {
            if (rec.scenario != group.scenario || rec.planner != group.planner) continue;
            if (rec.path_cost) {
                costs.push_back(*rec.path_cost);
            } else {
                ++group.failures;
            }
            times.push_back(rec.wall_time_s);
            memories.push_back(static_cast<double>(rec.accounted_bytes));
            expanded.push_back(static_cast<double>(rec.expanded_or_sampled));
        }
        group.cost = summarize(costs);
        group.time_s = summarize(times);
        group.memory_bytes = summarize(memories);
        group.expanded = summarize(expanded);
    }
    return stats;
}

namespace {

std::string render_csv(const RunStats& stats) {
    std::ostringstream out;
    out << "scenario,planner,metric,mean,std,min,max,failures\n";
    const auto row = [&out](const PlannerStats& s, const char* metric,
                            const StatSummary& sum) {
        out << csv_field(s.scenario) << ',' << csv_field(s.planner) << ',' << metric << ','
            << fmt(sum.mean, "%.17g") << ',' << fmt(sum.stddev, "%.17g") << ','
            << fmt(sum.min, "%.17g") << ',' << fmt(sum.max, "%.17g") << ',' << s.failures
            << '\n';
    };
    for (const PlannerStats& s : stats) {
        row(s, "path_cost", s.cost);
        row(s, "wall_time_s", s.time_s);
        row(s, "memory_bytes", s.memory_bytes);
        row(s, "expanded_or_sampled", s.expanded);
    }
    return out.str();
}

std::string render_json(const RunStats& stats) {
    json rows = json::array();
    const auto row = [&rows](const PlannerStats& s, const char* metric,
                             const StatSummary& sum) {
        rows.push_back({{"scenario", s.scenario},
                        {"planner", s.planner},
                        {"metric", metric},
                        {"mean", sum.mean},
                        {"std", sum.stddev},
                        {"min", sum.min},
                        {"max", sum.max},
                        {"failures", s.failures}});
    };
    for (const PlannerStats& s : stats) {
        row(s, "path_cost", s.cost);
        row(s, "wall_time_s", s.time_s);
        row(s, "memory_bytes", s.memory_bytes);
        row(s, "expanded_or_sampled", s.expanded);
    }
    return rows.dump(2) + "\n";
}

std::string render_text(const RunStats& stats) {
    std::vector<std::string> scenarios, planners;
    for (const PlannerStats& s : stats) {
        if (std::find(scenarios.begin(), scenarios.end(), s.scenario) == scenarios.end())
            scenarios.push_back(s.scenario);
        if (std::find(planners.begin(), planners.end(), s.planner) == planners.end())
            planners.push_back(s.planner);
    }
    const auto find_group = [&stats](const std::string& scenario,
                                     const std::string& planner) -> const PlannerStats* {
        for (const PlannerStats& s : stats) {
            if (s.scenario == scenario && s.planner == planner) return &s;
        }
        return nullptr;
    };

    struct Metric {
        const char* label;
        std::function<std::string(const PlannerStats&)> cell;
    };
    const std::vector<Metric> metrics = {
        {"Path Cost",
         [](const PlannerStats& s) {
             return s.cost.count ? fmt(s.cost.mean, "%.1f") : std::string("unreachable");
         }},
        {"Computation Time (s)",
         [](const PlannerStats& s) { return fmt(s.time_s.mean, "%.4f"); }},
        {"Memory Usage (MB)",
         [](const PlannerStats& s) {
             return fmt(s.memory_bytes.mean / (1024.0 * 1024.0), "%.2f");
         }},
    };

    // Column widths: metric, algorithm, then one column per scenario.
    std::size_t metric_w = 6, algo_w = 9;
    for (const Metric& m : metrics) metric_w = std::max(metric_w, std::string(m.label).size());
    for (const std::string& p : planners)
        algo_w = std::max(algo_w, std::string(display_name(p)).size());
    std::vector<std::size_t> col_w(scenarios.size());
    std::vector<std::vector<std::string>> cells(metrics.size() * planners.size());
    for (std::size_t si = 0; si < scenarios.size(); ++si) col_w[si] = scenarios[si].size();

    for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        for (std::size_t pi = 0; pi < planners.size(); ++pi) {
            auto& row_cells = cells[mi * planners.size() + pi];
            row_cells.resize(scenarios.size());
            for (std::size_t si = 0; si < scenarios.size(); ++si) {
                const PlannerStats* g = find_group(scenarios[si], planners[pi]);
                row_cells[si] = g ? metrics[mi].cell(*g) : "-";
                col_w[si] = std::max(col_w[si], row_cells[si].size());
            }
        }
    }

    std::ostringstream out;
    const auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    out << pad("Metric", metric_w) << " | " << pad("Algorithm", algo_w);
    for (std::size_t si = 0; si < scenarios.size(); ++si)
        out << " | " << pad(scenarios[si], col_w[si]);
    out << '\n';
    out << std::string(metric_w, '-') << "-+-" << std::string(algo_w, '-');
    for (std::size_t si = 0; si < scenarios.size(); ++si)
        out << "-+-" << std::string(col_w[si], '-');
    out << '\n';
    for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        for (std::size_t pi = 0; pi < planners.size(); ++pi) {
            out << pad(pi == 0 ? metrics[mi].label : "", metric_w);
            out << " | " << pad(display_name(planners[pi]), algo_w);
            const auto& row_cells = cells[mi * planners.size() + pi];
            for (std::size_t si = 0; si < scenarios.size(); ++si)
                out << " | " << pad(row_cells[si], col_w[si]);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace

std::string render_table(const RunStats& stats, TableFormat format) {
    if (stats.empty()) throw std::invalid_argument("render_table needs non-empty stats");
    switch (format) {
        case TableFormat::Csv:
            return render_csv(stats);
        case TableFormat::Json:
            return render_json(stats);
        case TableFormat::Text:
            return render_text(stats);
    }
    throw std::invalid_argument("unknown table format");
}

void emit_table(const RunStats& stats, TableFormat format, const std::string& path) {
    const std::string body = render_table(stats, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << body;
    if (!out.flush()) throw std::runtime_error(path + ": write failed");
}

std::string render_runs_csv(const std::vector<MetricsRecord>& records) {
    std::ostringstream out;
    out << "scenario,planner,run_index,seed,path_cost,wall_time_s,"
           "accounted_memory_bytes,expanded_or_sampled\n";
    for (const MetricsRecord& rec : records) {
        out << csv_field(rec.scenario) << ',' << csv_field(rec.planner) << ','
            << rec.run_index << ',' << rec.seed << ','
            << (rec.path_cost ? fmt(*rec.path_cost, "%.17g") : std::string()) << ','
            << fmt(rec.wall_time_s, "%.17g") << ',' << rec.accounted_bytes << ','
            << rec.expanded_or_sampled << '\n';
    }
    return out.str();
}

}  // namespace gridplan
