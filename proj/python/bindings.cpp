#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridplan/grid.hpp"
#include "gridplan/mapgen.hpp"
#include "gridplan/planners2d.hpp"
#include "gridplan/planners3d.hpp"
#include "gridplan/raster.hpp"

namespace py = pybind11;
using namespace gridplan;

PYBIND11_MODULE(_gridplan, m) {
    m.doc() = "Weighted-grid route planning over raster maps";

    py::class_<CellCoord>(m, "CellCoord")
        .def(py::init<int, int>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &CellCoord::x)
        .def_readwrite("y", &CellCoord::y)
        .def("__eq__", [](CellCoord a, CellCoord b) { return a == b; })
        .def("__repr__", [](CellCoord c) {
            return "CellCoord(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
        });

    py::class_<RasterGrid>(m, "RasterGrid")
        .def(py::init<>())
        .def_readwrite("width", &RasterGrid::width)
        .def_readwrite("height", &RasterGrid::height)
        .def_readwrite("bit_depth", &RasterGrid::bit_depth)
        .def_readwrite("values", &RasterGrid::values)
        .def("at", &RasterGrid::at, py::arg("x"), py::arg("y"));

    py::class_<WeightedGrid>(m, "WeightedGrid")
        .def(py::init<int, int, std::vector<double>, std::vector<std::uint8_t>>(),
             py::arg("width"), py::arg("height"), py::arg("weights"), py::arg("passable"))
        .def_property_readonly("width", &WeightedGrid::width)
        .def_property_readonly("height", &WeightedGrid::height)
        .def("in_bounds", &WeightedGrid::in_bounds)
        .def("passable", &WeightedGrid::passable)
        .def("weight", &WeightedGrid::weight)
        .def("min_passable_weight", &WeightedGrid::min_passable_weight)
        .def("passable_count", &WeightedGrid::passable_count);

    py::class_<ElevationField>(m, "ElevationField")
        .def(py::init<>())
        .def_readwrite("width", &ElevationField::width)
        .def_readwrite("height", &ElevationField::height)
        .def_readwrite("z", &ElevationField::z)
        .def_readwrite("horizontal_resolution", &ElevationField::horizontal_resolution)
        .def("at", &ElevationField::at);

    py::class_<Cost3DParams>(m, "Cost3DParams")
        .def(py::init<>())
        .def_readwrite("kappa", &Cost3DParams::kappa)
        .def_readwrite("gradient_window", &Cost3DParams::gradient_window)
        .def_readwrite("gradient_penalty", &Cost3DParams::gradient_penalty);

    py::class_<Path>(m, "Path")
        .def(py::init<>())
        .def_readwrite("cells", &Path::cells)
        .def_readwrite("total_cost", &Path::total_cost);

    py::class_<PlanResult>(m, "PlanResult")
        .def_readonly("path", &PlanResult::path)
        .def_readonly("expanded_or_sampled", &PlanResult::expanded_or_sampled)
        .def_readonly("iterations_used", &PlanResult::iterations_used)
        .def_readonly("peak_bytes", &PlanResult::peak_bytes)
        .def_readonly("best_cost_trace", &PlanResult::best_cost_trace);

    py::class_<RrtParams>(m, "RrtParams")
        .def(py::init<>())
        .def_readwrite("max_iterations", &RrtParams::max_iterations)
        .def_readwrite("step_delta", &RrtParams::step_delta)
        .def_readwrite("neighborhood_gamma", &RrtParams::neighborhood_gamma)
        .def_readwrite("goal_bias", &RrtParams::goal_bias)
        .def_readwrite("goal_tolerance", &RrtParams::goal_tolerance)
        .def_readwrite("seed", &RrtParams::seed);

    py::class_<NiacoParams>(m, "NiacoParams")
        .def(py::init<>())
        .def_readwrite("n_ants", &NiacoParams::n_ants)
        .def_readwrite("n_iterations", &NiacoParams::n_iterations)
        .def_readwrite("alpha", &NiacoParams::alpha)
        .def_readwrite("beta", &NiacoParams::beta)
        .def_readwrite("q0_start", &NiacoParams::q0_start)
        .def_readwrite("q0_end", &NiacoParams::q0_end)
        .def_readwrite("rho_start", &NiacoParams::rho_start)
        .def_readwrite("rho_end", &NiacoParams::rho_end)
        .def_readwrite("deposit_q", &NiacoParams::deposit_q)
        .def_readwrite("deposit_decay", &NiacoParams::deposit_decay)
        .def_readwrite("tau0", &NiacoParams::tau0)
        .def_readwrite("seed", &NiacoParams::seed);

    py::class_<Scene3D>(m, "Scene3D")
        .def(py::init<const WeightedGrid&, const ElevationField&, Cost3DParams>(),
             py::arg("grid"), py::arg("elev"), py::arg("cost") = Cost3DParams{},
             py::keep_alive<1, 2>(), py::keep_alive<1, 3>());

    m.def("load_grayscale_raster", &load_grayscale_raster, py::arg("path"));
    m.def("save_grayscale_raster", &save_grayscale_raster, py::arg("grid"), py::arg("path"),
          py::arg("format"));
    m.def("raster_format_for_path", &raster_format_for_path, py::arg("path"));
    py::enum_<RasterFormat>(m, "RasterFormat")
        .value("Pgm", RasterFormat::Pgm)
        .value("Png", RasterFormat::Png);

    m.def("from_raster_weights", &from_raster_weights, py::arg("raster"),
          py::arg("impassable_value") = 0, py::arg("scale") = 1.0);
    m.def("elevation_from_raster", &elevation_from_raster, py::arg("raster"),
          py::arg("z_scale") = 1.0, py::arg("horizontal_resolution") = 1.0,
          py::arg("median_filter") = false);
    m.def("neighbors", &neighbors, py::arg("grid"), py::arg("cell"));
    m.def("edge_cost_2d", &edge_cost_2d, py::arg("grid"), py::arg("u"), py::arg("v"));
    m.def("edge_cost_3d", &edge_cost_3d, py::arg("grid"), py::arg("elev"), py::arg("u"),
          py::arg("v"), py::arg("params"));
    m.def("avg_gradient", &avg_gradient, py::arg("elev"), py::arg("cell"), py::arg("k"));
    m.def(
        "path_cost",
        [](const WeightedGrid& grid, const std::vector<CellCoord>& cells,
           const ElevationField* elev, const Cost3DParams* p) {
            return path_cost(grid, cells, elev, p);
        },
        py::arg("grid"), py::arg("cells"), py::arg("elev") = nullptr,
        py::arg("params") = nullptr);

    m.def("plan_dijkstra_2d", &plan_dijkstra_2d, py::arg("grid"), py::arg("start"),
          py::arg("goal"));
    m.def("plan_astar_2d", &plan_astar_2d, py::arg("grid"), py::arg("start"),
          py::arg("goal"), py::arg("heuristic_scale") = std::nullopt);
    m.def("plan_rrtstar_2d", &plan_rrtstar_2d, py::arg("grid"), py::arg("start"),
          py::arg("goal"), py::arg("params") = RrtParams{});
    m.def("plan_niaco_2d", &plan_niaco_2d, py::arg("grid"), py::arg("start"),
          py::arg("goal"), py::arg("params") = NiacoParams{});
    m.def("plan_dijkstra_3d", &plan_dijkstra_3d, py::arg("scene"), py::arg("start"),
          py::arg("goal"));
    m.def(
        "plan_astar_3d",
        [](const Scene3D& scene, CellCoord start, CellCoord goal,
           std::optional<double> heuristic_scale, bool cache_gradient) {
            return plan_astar_3d(scene, start, goal, heuristic_scale, {cache_gradient});
        },
        py::arg("scene"), py::arg("start"), py::arg("goal"),
        py::arg("heuristic_scale") = std::nullopt, py::arg("cache_gradient") = false);
    m.def("plan_rrtconnect_3d", &plan_rrtconnect_3d, py::arg("scene"), py::arg("start"),
          py::arg("goal"), py::arg("params") = RrtParams{});
    m.def("plan_niaco_3d", &plan_niaco_3d, py::arg("scene"), py::arg("start"),
          py::arg("goal"), py::arg("params") = NiacoParams{});

    m.def("gen_uniform", &gen_uniform, py::arg("size"));
    m.def("gen_random_weights", &gen_random_weights, py::arg("size"), py::arg("seed"));
    m.def("gen_ridge", &gen_ridge, py::arg("size"));
    m.def("gen_smoothed_noise", &gen_smoothed_noise, py::arg("size"), py::arg("seed"));
}
