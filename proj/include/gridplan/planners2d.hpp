#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/rng.hpp"

namespace gridplan {

// Common planner output. `path` is empty on no-path. `expanded_or_sampled`
// counts expansions (Dijkstra/A*), sampling iterations (RRT family) or state
// transitions (NIACO). `peak_bytes` is the accounted peak of the planner-owned
// structures (open/closed bookkeeping, tree nodes, pheromone table, tabu),
// sampled at every insertion; the shared map is excluded.
struct PlanResult {
    std::optional<Path> path;
    std::uint64_t expanded_or_sampled = 0;
    std::uint64_t iterations_used = 0;
    std::size_t peak_bytes = 0;
    std::vector<double> best_cost_trace;  // per-iteration best (RRT*, NIACO)
};

PlanResult plan_dijkstra_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal);

// heuristic_scale: nullopt = auto (min passable weight, admissible);
// an explicit value is used verbatim and may be inadmissible.
PlanResult plan_astar_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                         std::optional<double> heuristic_scale = std::nullopt);

struct RrtParams {
    int max_iterations = 5000;
    double step_delta = 3.0;         // max extension step, pixels
    double neighborhood_gamma = 0.0;  // <= 0 selects the auto radius scale
    double goal_bias = 0.05;
    double goal_tolerance = 0.0;  // <= 0 defaults to step_delta
    std::uint64_t seed = 0;

    void validate() const;
};

// Bounded extension toward x_rand: at most delta pixels along the ray,
// coordinates rounded half-up.
CellCoord rrt_steer(CellCoord x_nearest, CellCoord x_rand, double delta);

struct ParentCandidate {
    CellCoord cell;
    double cost_so_far = 0.0;
};

// Index of the candidate minimizing cost_so_far + segment cost to x_new,
// ties broken by earliest index. nullopt when every segment is blocked.
std::optional<std::size_t> rrt_choose_parent(std::span<const ParentCandidate> candidates,
                                             CellCoord x_new, const WeightedGrid& grid);

PlanResult plan_rrtstar_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                           const RrtParams& params);

struct NiacoParams {
    int n_ants = 32;
    int n_iterations = 200;
    double alpha = 1.0;  // pheromone exponent
    double beta = 3.0;   // heuristic exponent
    double q0_start = 0.9;  // greediness, interpolated q0_start -> q0_end
    double q0_end = 0.2;
    double rho_start = 0.1;  // evaporation, interpolated rho_start -> rho_end
    double rho_end = 0.3;
    double deposit_q = 50.0;
    double deposit_decay = 0.995;  // per-iteration multiplier on increments
    double tau0 = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Directed pheromone levels for the 8 exits of every cell.
class PheromoneTable {
  public:
    PheromoneTable(int width, int height, double tau0);

    double get(CellCoord from, CellCoord to) const { return tau_[entry(from, to)]; }
    void add(CellCoord from, CellCoord to, double amount) { tau_[entry(from, to)] += amount; }

    void evaporate(double rho);
    void clamp(double tau_min, double tau_max);

    std::size_t logical_bytes() const { return tau_.size() * sizeof(double); }

    // 0..7 in scan order (NW,N,NE,W,E,SW,S,SE); from and to must be distinct
    // Moore neighbors.
    static int direction_index(CellCoord from, CellCoord to);

  private:
    std::size_t entry(CellCoord from, CellCoord to) const {
        return (static_cast<std::size_t>(from.y) * width_ + from.x) * 8 +
               direction_index(from, to);
    }

    int width_;
    int height_;
    std::vector<double> tau_;
};

// One ant step: with probability q0_t the argmax-attractiveness cell (ties to
// lowest scan order), otherwise roulette-sampled proportional to
// attractiveness. `allowed` must be non-empty.
CellCoord niaco_transition(CellCoord current, std::span<const CellCoord> allowed,
                           const PheromoneTable& tau, const WeightedGrid& grid,
                           CellCoord goal, double q0_t, Rng& rng);

// Evaporates at the iteration-t rate, deposits (deposit_q / cost) * decay^t
// along every goal-reaching path (both edge directions), then clamps entries
// to [tau0e-3, tau0e+3].
void niaco_update_pheromone(PheromoneTable& tau, const std::vector<Path>& ant_paths,
                            int iteration, const NiacoParams& params);

PlanResult plan_niaco_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                         const NiacoParams& params);

}  // namespace gridplan
