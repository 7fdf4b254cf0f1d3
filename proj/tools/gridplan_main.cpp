#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridplan/bench.hpp"
#include "gridplan/grid.hpp"
#include "gridplan/mapgen.hpp"
#include "gridplan/raster.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoPath = 2;

gridplan::CellCoord parse_cell(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma != std::string::npos) {
        try {
            std::size_t ax = 0, ay = 0;
            const std::string xs = text.substr(0, comma);
            const std::string ys = text.substr(comma + 1);
            const int x = std::stoi(xs, &ax);
            const int y = std::stoi(ys, &ay);
            if (ax == xs.size() && ay == ys.size()) return {x, y};
        } catch (const std::exception&) {
        }
    }
    throw CLI::ValidationError(flag, "expected X,Y integer pair, got '" + text + "'");
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << body;
    if (!out.flush()) throw std::runtime_error(path + ": write failed");
}

struct PlanArgs {
    std::string weights, elevation, start, goal, planner, params_file, out, image;
    std::uint64_t seed = 0;
    int impassable = 0;
    double weight_scale = 1.0;
    double elevation_scale = 1.0;
    double resolution = 1.0;
    bool median_filter = false;
    double kappa = 1.0;
    int gradient_window = 3;
    double gradient_penalty = 0.0;
};

int cmd_plan(const PlanArgs& args) {
    gridplan::Scenario scenario;
    scenario.name = "plan";
    scenario.weight_map = args.weights;
    scenario.elevation_map = args.elevation;
    scenario.start = parse_cell(args.start, "--start");
    scenario.goal = parse_cell(args.goal, "--goal");
    scenario.repeats = 1;
    scenario.base_seed = args.seed;
    scenario.impassable_value = static_cast<std::uint32_t>(args.impassable);
    scenario.weight_scale = args.weight_scale;
    scenario.elevation_scale = args.elevation_scale;
    scenario.resolution = args.resolution;
    scenario.median_filter = args.median_filter;
    scenario.cost3d = {args.kappa, args.gradient_window, args.gradient_penalty};

    gridplan::PlannerSpec spec;
    spec.planner = args.planner;
    if (!args.params_file.empty()) {
        std::ifstream in(args.params_file);
        if (!in) {
            std::cerr << "error: --params " << args.params_file << ": cannot open\n";
            return kExitError;
        }
        try {
            in >> spec.params;
        } catch (const json::parse_error& e) {
            std::cerr << "error: --params " << args.params_file << ": " << e.what() << "\n";
            return kExitError;
        }
    }
    scenario.planners.push_back(spec);

    if (gridplan::planner_is_3d(args.planner) && args.elevation.empty()) {
        std::cerr << "error: planner " << args.planner << " requires --elevation\n";
        return kExitError;
    }

    const std::vector<gridplan::MetricsRecord> records = gridplan::run_scenario(scenario);
    const gridplan::MetricsRecord& rec = records.front();
    if (!rec.path) {
        std::cerr << "no path: " << args.planner << " found no route after "
                  << rec.expanded_or_sampled << " expansions/samples\n";
        return kExitNoPath;
    }

    json cells = json::array();
    for (const gridplan::CellCoord c : rec.path->cells) cells.push_back({c.x, c.y});
    const json doc = {{"cells", cells},
                      {"total_cost", rec.path->total_cost},
                      {"planner", args.planner},
                      {"seed", rec.seed}};
    write_file(args.out, doc.dump(2) + "\n");

    if (!args.image.empty()) {
        const gridplan::RasterGrid base = gridplan::load_grayscale_raster(args.weights);
        const gridplan::OverlayLayer layer{rec.path->cells,
                                           gridplan::planner_color(args.planner)};
        gridplan::save_png_rgb(gridplan::render_overlay(base, {layer}), args.image);
    }
    std::cout << "planner " << args.planner << " cost " << rec.path->total_cost << " cells "
              << rec.path->cells.size() << " -> " << args.out << "\n";
    return kExitOk;
}

int cmd_bench(const std::string& scenario_file, const std::string& out_dir,
              const std::string& format) {
    const std::vector<gridplan::Scenario> scenarios =
        gridplan::load_scenarios(scenario_file);
    std::filesystem::create_directories(out_dir);

    std::vector<gridplan::MetricsRecord> all;
    for (const gridplan::Scenario& s : scenarios) {
        std::vector<gridplan::MetricsRecord> records = gridplan::run_scenario(s);
        all.insert(all.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
    }
    const std::filesystem::path dir(out_dir);
    write_file((dir / "runs.csv").string(), gridplan::render_runs_csv(all));

    const gridplan::RunStats stats = gridplan::aggregate_runs(all);
    gridplan::TableFormat tf = gridplan::TableFormat::Text;
    std::string ext = "txt";
    if (format == "csv") {
        tf = gridplan::TableFormat::Csv;
        ext = "csv";
    } else if (format == "json") {
        tf = gridplan::TableFormat::Json;
        ext = "json";
    }
    const std::string table_path = (dir / ("aggregate." + ext)).string();
    gridplan::emit_table(stats, tf, table_path);
    std::cout << gridplan::render_table(stats, gridplan::TableFormat::Text);
    std::cout << "wrote " << (dir / "runs.csv").string() << " and " << table_path << "\n";
    return kExitOk;
}

int cmd_render(const std::string& weights, const std::vector<std::string>& path_files,
               const std::string& out_png, const std::string& palette_file) {
    const gridplan::RasterGrid base = gridplan::load_grayscale_raster(weights);

    json palette = json::object();
    if (!palette_file.empty()) {
        std::ifstream in(palette_file);
        if (!in) throw std::runtime_error(palette_file + ": cannot open");
        in >> palette;
    }
    const auto color_for = [&palette](const std::string& planner) {
        if (palette.contains(planner)) {
            const json& c = palette[planner];
            if (!c.is_array() || c.size() != 3)
                throw std::runtime_error("palette entry for " + planner +
                                         " must be [r, g, b]");
            return gridplan::Rgb{c[0].get<std::uint8_t>(), c[1].get<std::uint8_t>(),
                                 c[2].get<std::uint8_t>()};
        }
        return gridplan::planner_color(planner);
    };

    std::vector<gridplan::OverlayLayer> layers;
    std::vector<std::pair<std::string, gridplan::Rgb>> legend;
    for (const std::string& pf : path_files) {
        std::ifstream in(pf);
        if (!in) throw std::runtime_error(pf + ": cannot open");
        json doc;
        in >> doc;
        if (!doc.contains("cells") || !doc["cells"].is_array())
            throw std::runtime_error(pf + ": missing cells array");
        gridplan::OverlayLayer layer;
        for (const json& c : doc["cells"])
            layer.cells.push_back({c[0].get<int>(), c[1].get<int>()});
        const std::string planner =
            doc.contains("planner") ? doc["planner"].get<std::string>() : "path";
        layer.color = color_for(planner);
        legend.emplace_back(planner, layer.color);
        layers.push_back(std::move(layer));
    }

    gridplan::save_png_rgb(gridplan::render_overlay(base, layers), out_png);

    std::string legend_body;
    for (const auto& [planner, color] : legend) {
        legend_body += planner + "\t" + std::to_string(color.r) + "," +
                       std::to_string(color.g) + "," + std::to_string(color.b) + "\n";
    }
    write_file(out_png + ".legend.txt", legend_body);
    std::cout << "wrote " << out_png << " with " << layers.size() << " path layer(s)\n";
    return kExitOk;
}

int cmd_gen(const std::string& kind, int size, std::uint64_t seed, const std::string& out) {
    gridplan::RasterGrid grid;
    if (kind == "uniform") {
        grid = gridplan::gen_uniform(size);
    } else if (kind == "random-weights") {
        grid = gridplan::gen_random_weights(size, seed);
    } else if (kind == "ridge") {
        grid = gridplan::gen_ridge(size);
    } else if (kind == "smoothed-noise") {
        grid = gridplan::gen_smoothed_noise(size, seed);
    } else {
        std::cerr << "error: unknown kind '" << kind << "'\n";
        return kExitError;
    }
    gridplan::save_grayscale_raster(grid, out, gridplan::raster_format_for_path(out));
    std::cout << "wrote " << kind << " " << size << "x" << size << " map to " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted-grid route planning and benchmarking"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    CLI::App* plan = app.add_subcommand("plan", "Plan a single route");
    plan->add_option("--weights", plan_args.weights, "Weight raster (PGM/PNG)")->required();
    plan->add_option("--elevation", plan_args.elevation, "Elevation raster (PGM/PNG)");
    plan->add_option("--start", plan_args.start, "Start cell X,Y")->required();
    plan->add_option("--goal", plan_args.goal, "Goal cell X,Y")->required();
    plan->add_option("--planner", plan_args.planner, "Planner id")
        ->required()
        ->check(CLI::IsMember(gridplan::known_planners()));
    plan->add_option("--seed", plan_args.seed, "RNG seed for stochastic planners");
    plan->add_option("--params", plan_args.params_file, "Planner parameter JSON file");
    plan->add_option("--out", plan_args.out, "Output path JSON")->required();
    plan->add_option("--image", plan_args.image, "Optional overlay PNG");
    plan->add_option("--impassable", plan_args.impassable, "Raster value marking blocked")
        ->check(CLI::NonNegativeNumber);
    plan->add_option("--weight-scale", plan_args.weight_scale, "Weight multiplier");
    plan->add_option("--elevation-scale", plan_args.elevation_scale, "Meters per unit");
    plan->add_option("--resolution", plan_args.resolution, "Meters per pixel");
    plan->add_flag("--median-filter", plan_args.median_filter, "Median-filter elevation");
    plan->add_option("--kappa", plan_args.kappa, "Vertical exaggeration");
    plan->add_option("--gradient-window", plan_args.gradient_window, "Gradient window");
    plan->add_option("--gradient-penalty", plan_args.gradient_penalty, "Gradient penalty");

    std::string bench_scenario, bench_out_dir = "bench-out", bench_format = "text";
    CLI::App* bench = app.add_subcommand("bench", "Run benchmark scenarios");
    bench->add_option("--scenario", bench_scenario, "Scenario JSON file")->required();
    bench->add_option("--out-dir", bench_out_dir, "Output directory");
    bench->add_option("--format", bench_format, "Aggregate table format")
        ->check(CLI::IsMember({"csv", "json", "text"}));

    std::string render_weights, render_out, render_palette;
    std::vector<std::string> render_paths;
    CLI::App* render = app.add_subcommand("render", "Render path overlays");
    render->add_option("--weights", render_weights, "Base raster")->required();
    render->add_option("--path", render_paths, "Path JSON file (repeatable)")->required();
    render->add_option("--out", render_out, "Output PNG")->required();
    render->add_option("--palette", render_palette, "Palette JSON {planner: [r,g,b]}");

    std::string gen_kind, gen_out;
    int gen_size = 0;
    std::uint64_t gen_seed = 0;
    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic map");
    gen->add_option("--kind", gen_kind, "uniform|random-weights|ridge|smoothed-noise")
        ->required()
        ->check(CLI::IsMember({"uniform", "random-weights", "ridge", "smoothed-noise"}));
    gen->add_option("--size", gen_size, "Map width and height")->required();
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output raster path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (plan->parsed()) return cmd_plan(plan_args);
        if (bench->parsed()) return cmd_bench(bench_scenario, bench_out_dir, bench_format);
        if (render->parsed())
            return cmd_render(render_weights, render_paths, render_out, render_palette);
        if (gen->parsed()) return cmd_gen(gen_kind, gen_size, gen_seed, gen_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
