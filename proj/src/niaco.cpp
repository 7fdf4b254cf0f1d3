#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cost_detail.hpp"
#include "gridplan/planners2d.hpp"
#include "gridplan/planners3d.hpp"
#include "search_detail.hpp"

namespace gridplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lerp_schedule(double from, double to, int t, int n_iterations) {
    if (n_iterations <= 1) return from;
    return from + (to - from) * (static_cast<double>(t) / (n_iterations - 1));
}

// One ant step shared by the 2D and 3D planners; eta supplies the
// metric-specific desirability.
template <typename EtaFn>
CellCoord transition_impl(CellCoord current, std::span<const CellCoord> allowed,
                          const PheromoneTable& tau, double alpha, double beta, double q0_t,
                          Rng& rng, EtaFn&& eta) {
    if (allowed.empty()) throw std::invalid_argument("transition needs candidate cells");
    if (allowed.size() > 8)
        throw std::invalid_argument("transition candidates exceed the Moore neighborhood");

    std::array<double, 8> attract;
    double sum = 0.0;
    std::size_t best_i = 0;
    double best_a = -1.0;
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        const double a = std::pow(tau.get(current, allowed[i]), alpha) *
                         std::pow(eta(allowed[i]), beta);
        attract[i] = a;
        sum += a;
        if (a > best_a) {
            best_a = a;
            best_i = i;
        }
    }

    if (rng.next_double() < q0_t) return allowed[best_i];
    if (!(sum > 0.0)) return allowed[best_i];
    const double r = rng.next_double() * sum;
    double acc = 0.0;
    for (std::size_t i = 0; i < allowed.size(); ++i) {
        acc += attract[i];
        if (r < acc) return allowed[i];
    }
    return allowed[allowed.size() - 1];
}

template <typename Model>
PlanResult plan_niaco_impl(const WeightedGrid& grid, const Model& model, CellCoord start,
                           CellCoord goal, const NiacoParams& params) {
    params.validate();
    detail::check_endpoints(grid, start, goal);

    PlanResult result;
    PheromoneTable tau(grid.width(), grid.height(), params.tau0);
    const std::size_t table_bytes = tau.logical_bytes();
    const auto sample = [&result, table_bytes](std::size_t tabu_bytes,
                                               std::size_t path_cells) {
        const std::size_t bytes =
            table_bytes + tabu_bytes + path_cells * sizeof(CellCoord);
        if (bytes > result.peak_bytes) result.peak_bytes = bytes;
    };
    sample(0, 0);
    if (start == goal) {
        result.path = Path{{start}, 0.0};
        return result;
    }

    Rng rng(params.seed);
    const double min_w = grid.min_passable_weight();
    std::optional<Path> best;
    std::vector<std::uint8_t> tabu(grid.cell_count());
    std::vector<Path> winners;
    std::array<CellCoord, 8> nbrs;
    std::vector<CellCoord> allowed;
    allowed.reserve(8);

    for (int t = 0; t < params.n_iterations; ++t) {
        const double q0_t =
            lerp_schedule(params.q0_start, params.q0_end, t, params.n_iterations);
        winners.clear();

        for (int ant = 0; ant < params.n_ants; ++ant) {
            std::fill(tabu.begin(), tabu.end(), 0);
            Path walk;
            walk.cells.push_back(start);
            tabu[grid.index(start)] = 1;
            CellCoord cur = start;
            sample(tabu.size(), walk.cells.size());

            while (cur != goal) {
                const int count = neighbors_into(grid, cur, nbrs);
                allowed.clear();
                for (int i = 0; i < count; ++i) {
                    if (!tabu[grid.index(nbrs[i])]) allowed.push_back(nbrs[i]);
                }
                if (allowed.empty()) break;  // dead end: abandon the ant

                const CellCoord next = transition_impl(
                    cur, allowed, tau, params.alpha, params.beta, q0_t, rng,
                    [&](CellCoord j) {
                        return 1.0 / (model.edge(cur, j) + model.dist(j, goal) * min_w);
                    });
                walk.total_cost += model.edge(cur, next);
                walk.cells.push_back(next);
                tabu[grid.index(next)] = 1;
                cur = next;
                ++result.expanded_or_sampled;
                sample(tabu.size(), walk.cells.size());
            }
            if (cur == goal) winners.push_back(std::move(walk));
        }

        niaco_update_pheromone(tau, winners, t, params);
        for (const Path& w : winners) {
            if (!best || w.total_cost < best->total_cost) best = w;
        }
        result.best_cost_trace.push_back(best ? best->total_cost : kInf);
        result.iterations_used = static_cast<std::uint64_t>(t) + 1;
    }

    if (best) result.path = std::move(*best);
    return result;
}

struct Model2D {
    const WeightedGrid& grid;
    double edge(CellCoord u, CellCoord v) const {
        return detail::edge_cost_2d_fast(grid, u, v);
    }
    double dist(CellCoord a, CellCoord b) const { return euclid(a, b); }
};

struct Model3D {
    const WeightedGrid& grid;
    const ElevationField& elev;
    const Cost3DParams& p;
    double edge(CellCoord u, CellCoord v) const {
        return detail::edge_cost_3d_fast(grid, elev, u, v, p);
    }
    double dist(CellCoord a, CellCoord b) const { return detail::dist_3d(elev, p, a, b); }
};

}  // namespace

void NiacoParams::validate() const {
    if (n_ants < 1) throw std::invalid_argument("n_ants must be at least 1");
    if (n_iterations < 1) throw std::invalid_argument("n_iterations must be at least 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be non-negative and finite");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("beta must be non-negative and finite");
    if (!(q0_end >= 0.0 && q0_start >= q0_end && q0_start <= 1.0))
        throw std::invalid_argument("q0 schedule must satisfy 0 <= q0_end <= q0_start <= 1");
    if (!(rho_start > 0.0 && rho_start < 1.0) || !(rho_end > 0.0 && rho_end < 1.0))
        throw std::invalid_argument("rho_start and rho_end must lie in (0, 1)");
    if (!(deposit_q > 0.0) || !std::isfinite(deposit_q))
        throw std::invalid_argument("deposit_q must be positive and finite");
    if (!(deposit_decay > 0.0 && deposit_decay <= 1.0))
        throw std::invalid_argument("deposit_decay must lie in (0, 1]");
    if (!(tau0 > 0.0) || !std::isfinite(tau0))
        throw std::invalid_argument("tau0 must be positive and finite");
}

PheromoneTable::PheromoneTable(int width, int height, double tau0)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("pheromone table dimensions must be at least 1x1");
    if (!(tau0 > 0.0) || !std::isfinite(tau0))
        throw std::invalid_argument("tau0 must be positive and finite");
    tau_.assign(static_cast<std::size_t>(width) * height * 8, tau0);
}

int PheromoneTable::direction_index(CellCoord from, CellCoord to) {
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;
    // Scan order NW,N,NE,W,E,SW,S,SE; center is not a direction.
    static constexpr int kIndex[3][3] = {{0, 1, 2}, {3, -1, 4}, {5, 6, 7}};
    if (dx < -1 || dx > 1 || dy < -1 || dy > 1 || (dx == 0 && dy == 0))
        throw std::invalid_argument("cells are not distinct Moore neighbors");
    return kIndex[dy + 1][dx + 1];
}

void PheromoneTable::evaporate(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("evaporation rate must lie in [0, 1]");
    const double keep = 1.0 - rho;
    for (double& v : tau_) v *= keep;
}

void PheromoneTable::clamp(double tau_min, double tau_max) {
    if (!(tau_min > 0.0) || !(tau_min <= tau_max))
        throw std::invalid_argument("clamp bounds must satisfy 0 < tau_min <= tau_max");
    for (double& v : tau_) v = std::clamp(v, tau_min, tau_max);
}

CellCoord niaco_transition(CellCoord current, std::span<const CellCoord> allowed,
                           const PheromoneTable& tau, const WeightedGrid& grid,
                           CellCoord goal, double q0_t, Rng& rng) {
    if (!(q0_t >= 0.0 && q0_t <= 1.0))
        throw std::invalid_argument("q0 must lie in [0, 1]");
    const NiacoParams defaults;
    const double min_w = grid.min_passable_weight();
    return transition_impl(current, allowed, tau, defaults.alpha, defaults.beta, q0_t, rng,
                           [&](CellCoord j) {
                               return 1.0 / (edge_cost_2d(grid, current, j) +
                                             euclid(j, goal) * min_w);
                           });
}

void niaco_update_pheromone(PheromoneTable& tau, const std::vector<Path>& ant_paths,
                            int iteration, const NiacoParams& params) {
    params.validate();
    if (iteration < 0 || iteration >= params.n_iterations)
        throw std::invalid_argument("iteration must lie in [0, n_iterations)");

    tau.evaporate(lerp_schedule(params.rho_start, params.rho_end, iteration,
                                params.n_iterations));

    // Repeated multiplication rather than pow() so that consecutive
    // iterations' deposits differ by exactly the decay factor.
    double decay_pow = 1.0;
    for (int i = 0; i < iteration; ++i) decay_pow *= params.deposit_decay;

    for (const Path& path : ant_paths) {
        if (path.cells.size() < 2 || !(path.total_cost > 0.0)) continue;
        const double amount = (params.deposit_q / path.total_cost) * decay_pow;
        for (std::size_t i = 1; i < path.cells.size(); ++i) {
            tau.add(path.cells[i - 1], path.cells[i], amount);
            tau.add(path.cells[i], path.cells[i - 1], amount);
        }
    }
    tau.clamp(params.tau0 * 1e-3, params.tau0 * 1e3);
}

PlanResult plan_niaco_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                         const NiacoParams& params) {
    return plan_niaco_impl(grid, Model2D{grid}, start, goal, params);
}

PlanResult plan_niaco_3d(const Scene3D& scene, CellCoord start, CellCoord goal,
                         const NiacoParams& params) {
    return plan_niaco_impl(scene.grid(), Model3D{scene.grid(), scene.elev(), scene.cost()},
                           start, goal, params);
}

}  // namespace gridplan
