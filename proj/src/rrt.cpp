#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cost_detail.hpp"
#include "gridplan/planners2d.hpp"
#include "gridplan/planners3d.hpp"
#include "search_detail.hpp"

namespace gridplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<CellCoord> passable_cells_of(const WeightedGrid& grid) {
    std::vector<CellCoord> cells;
    cells.reserve(grid.passable_count());
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            if (grid.passable({x, y})) cells.push_back({x, y});
        }
    }
    return cells;
}

// Shrinking-ball radius from the planar rewiring rule, capped at 4 steps.
double rewire_radius(const RrtParams& params, double free_cells, std::size_t n_nodes) {
    double gamma = params.neighborhood_gamma;
    if (gamma <= 0.0) gamma = 2.0 * std::sqrt(3.0 * free_cells / std::numbers::pi);
    const double n = static_cast<double>(n_nodes);
    return std::min(gamma * std::sqrt(std::log(n) / n), 4.0 * params.step_delta);
}

}  // namespace

void RrtParams::validate() const {
    if (max_iterations < 0)
        throw std::invalid_argument("max_iterations must be non-negative");
    if (!(step_delta >= 1.0) || !std::isfinite(step_delta))
        throw std::invalid_argument("step_delta must be at least 1");
    if (!(goal_bias >= 0.0 && goal_bias <= 1.0))
        throw std::invalid_argument("goal_bias must be within [0, 1]");
    if (!std::isfinite(neighborhood_gamma))
        throw std::invalid_argument("neighborhood_gamma must be finite");
    if (!std::isfinite(goal_tolerance))
        throw std::invalid_argument("goal_tolerance must be finite");
}

CellCoord rrt_steer(CellCoord x_nearest, CellCoord x_rand, double delta) {
    if (!(delta >= 1.0)) throw std::invalid_argument("steer delta must be at least 1");
    if (x_nearest == x_rand) return x_rand;
    const double d = euclid(x_nearest, x_rand);
    if (d <= delta) return x_rand;
    const double t = delta / d;
    const double fx = x_nearest.x + t * (x_rand.x - x_nearest.x);
    const double fy = x_nearest.y + t * (x_rand.y - x_nearest.y);
    return {static_cast<int>(std::floor(fx + 0.5)), static_cast<int>(std::floor(fy + 0.5))};
}

std::optional<std::size_t> rrt_choose_parent(std::span<const ParentCandidate> candidates,
                                             CellCoord x_new, const WeightedGrid& grid) {
    std::optional<std::size_t> best;
    double best_cost = kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const SegmentCost seg = segment_cost(grid, candidates[i].cell, x_new);
        if (seg.blocked) continue;
        const double total = candidates[i].cost_so_far + seg.cost;
        if (total < best_cost) {
            best_cost = total;
            best = i;
        }
    }
    return best;
}

namespace {

struct StarNode {
    CellCoord cell;
    std::int32_t parent = -1;
    double cost = 0.0;       // accumulated from the root
    double edge_cost = 0.0;  // segment cost from parent
};

class StarTree {
  public:
    StarTree(const WeightedGrid& grid, PlanResult& result)
        : grid_(grid), result_(result), cell_node_(grid.cell_count(), -1) {}

    std::int32_t node_at(CellCoord c) const { return cell_node_[grid_.index(c)]; }
    const StarNode& node(std::int32_t i) const { return nodes_[i]; }
    std::size_t size() const { return nodes_.size(); }

    std::int32_t insert(CellCoord cell, std::int32_t parent, double edge) {
        const std::int32_t idx = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({cell, parent, parent < 0 ? 0.0 : nodes_[parent].cost + edge, edge});
        children_.emplace_back();
        if (parent >= 0) {
            children_[parent].push_back(idx);
            ++child_entries_;
        }
        cell_node_[grid_.index(cell)] = idx;
        sample();
        return idx;
    }

    // Moves idx under new_parent and refreshes the costs of its subtree.
    void reparent(std::int32_t idx, std::int32_t new_parent, double edge) {
        StarNode& n = nodes_[idx];
        auto& siblings = children_[n.parent];
        siblings.erase(std::find(siblings.begin(), siblings.end(), idx));
        n.parent = new_parent;
        n.edge_cost = edge;
        children_[new_parent].push_back(idx);
        n.cost = nodes_[new_parent].cost + edge;
        refresh_subtree(idx);
    }

    bool is_ancestor(std::int32_t candidate, std::int32_t of) const {
        for (std::int32_t i = of; i >= 0; i = nodes_[i].parent) {
            if (i == candidate) return true;
        }
        return false;
    }

    std::int32_t nearest(CellCoord target) const {
        std::int32_t best = 0;
        double best_d = euclid_sq(nodes_[0].cell, target);
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            const double d = euclid_sq(nodes_[i].cell, target);
            if (d < best_d) {
                best_d = d;
                best = static_cast<std::int32_t>(i);
            }
        }
        return best;
    }

    // Node indices within radius of cell, ascending (= insertion order).
    std::vector<std::int32_t> near(CellCoord cell, double radius) const {
        std::vector<std::int32_t> out;
        const double r2 = radius * radius;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (euclid_sq(nodes_[i].cell, cell) <= r2)
                out.push_back(static_cast<std::int32_t>(i));
        }
        return out;
    }

  private:
    void refresh_subtree(std::int32_t root) {
        std::vector<std::int32_t> stack{root};
        while (!stack.empty()) {
            const std::int32_t i = stack.back();
            stack.pop_back();
            for (const std::int32_t c : children_[i]) {
                nodes_[c].cost = nodes_[i].cost + nodes_[c].edge_cost;
                stack.push_back(c);
            }
        }
    }

    void sample() {
        const std::size_t bytes =
            nodes_.size() * sizeof(StarNode) + child_entries_ * sizeof(std::int32_t);
        if (bytes > result_.peak_bytes) result_.peak_bytes = bytes;
    }

    const WeightedGrid& grid_;
    PlanResult& result_;
    std::vector<StarNode> nodes_;
    std::vector<std::vector<std::int32_t>> children_;
    std::vector<std::int32_t> cell_node_;
    std::size_t child_entries_ = 0;
};

// Connects x_new to the cheapest reachable candidate and returns the node
// index, reusing (and possibly improving) an existing node on the same cell.
std::int32_t attach(StarTree& tree, const WeightedGrid& grid, CellCoord x_new,
                    const std::vector<std::int32_t>& near_idx) {
    const std::int32_t existing = tree.node_at(x_new);
    std::vector<std::int32_t> usable;
    usable.reserve(near_idx.size());
    for (const std::int32_t i : near_idx) {
        if (existing >= 0 && tree.is_ancestor(existing, i)) continue;
        usable.push_back(i);
    }
    if (usable.empty()) return -1;

    std::vector<ParentCandidate> candidates;
    candidates.reserve(usable.size());
    for (const std::int32_t i : usable)
        candidates.push_back({tree.node(i).cell, tree.node(i).cost});
    const auto chosen = rrt_choose_parent(candidates, x_new, grid);
    if (!chosen) return -1;

    const std::int32_t parent = usable[*chosen];
    const SegmentCost seg = segment_cost(grid, tree.node(parent).cell, x_new);
    const double cost = tree.node(parent).cost + seg.cost;
    if (existing >= 0) {
        if (cost < tree.node(existing).cost) tree.reparent(existing, parent, seg.cost);
        return existing;
    }
    return tree.insert(x_new, parent, seg.cost);
}

Path densify_chain(const WeightedGrid& grid, const std::vector<CellCoord>& node_cells,
                   const std::vector<bool>& reversed_edge, const ElevationField* elev,
                   const Cost3DParams* p) {
    Path path;
    path.cells.push_back(node_cells.front());
    for (std::size_t i = 1; i < node_cells.size(); ++i) {
        const CellCoord from = node_cells[i - 1];
        const CellCoord to = node_cells[i];
        // Rasterize in the direction the segment was collision-checked.
        SegmentCost seg = reversed_edge[i - 1] ? segment_cost(grid, to, from, elev, p)
                                               : segment_cost(grid, from, to, elev, p);
        if (seg.blocked) throw std::logic_error("tree edge no longer traversable");
        if (reversed_edge[i - 1]) std::reverse(seg.cells.begin(), seg.cells.end());
        path.cells.insert(path.cells.end(), seg.cells.begin() + 1, seg.cells.end());
    }
    path.total_cost = path_cost(grid, path.cells, elev, p);
    return path;
}

}  // namespace

PlanResult plan_rrtstar_2d(const WeightedGrid& grid, CellCoord start, CellCoord goal,
                           const RrtParams& params) {
    params.validate();
    detail::check_endpoints(grid, start, goal);

    PlanResult result;
    StarTree tree(grid, result);
    tree.insert(start, -1, 0.0);
    if (start == goal) {
        result.path = Path{{start}, 0.0};
        return result;
    }

    const std::vector<CellCoord> samples = passable_cells_of(grid);
    const double goal_tol =
        params.goal_tolerance > 0.0 ? params.goal_tolerance : params.step_delta;
    Rng rng(params.seed);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        ++result.expanded_or_sampled;
        result.iterations_used = static_cast<std::uint64_t>(iter) + 1;

        const CellCoord x_rand = rng.next_double() < params.goal_bias
                                     ? goal
                                     : samples[rng.next_below(samples.size())];
        const std::int32_t nearest = tree.nearest(x_rand);
        const CellCoord x_new = rrt_steer(tree.node(nearest).cell, x_rand, params.step_delta);

        const auto trace = [&] {
            const std::int32_t g = tree.node_at(goal);
            result.best_cost_trace.push_back(g >= 0 ? tree.node(g).cost : kInf);
        };

        if (x_new == tree.node(nearest).cell || !grid.passable(x_new)) {
            trace();
            continue;
        }

        const double radius = rewire_radius(params, static_cast<double>(samples.size()),
                                            tree.size());
        std::vector<std::int32_t> near_idx = tree.near(x_new, radius);
        if (std::find(near_idx.begin(), near_idx.end(), nearest) == near_idx.end())
            near_idx.push_back(nearest);

        const std::int32_t ni = attach(tree, grid, x_new, near_idx);
        if (ni < 0) {
            trace();
            continue;
        }

        // Rewire the neighborhood through the new node where cheaper.
        for (const std::int32_t m : near_idx) {
            if (m == ni || tree.is_ancestor(m, ni)) continue;
            const SegmentCost seg = segment_cost(grid, x_new, tree.node(m).cell);
            if (seg.blocked) continue;
            const double cand = tree.node(ni).cost + seg.cost;
            if (cand < tree.node(m).cost) tree.reparent(m, ni, seg.cost);
        }

        // Try a direct goal connection from close-enough new nodes.
        if (x_new != goal && euclid(x_new, goal) <= goal_tol) {
            const SegmentCost seg = segment_cost(grid, x_new, goal);
            if (!seg.blocked) {
                const double cand = tree.node(ni).cost + seg.cost;
                const std::int32_t g = tree.node_at(goal);
                if (g < 0) {
                    tree.insert(goal, ni, seg.cost);
                } else if (cand < tree.node(g).cost && !tree.is_ancestor(g, ni)) {
                    tree.reparent(g, ni, seg.cost);
                }
            }
        }
        trace();
    }

    const std::int32_t goal_node = tree.node_at(goal);
    if (goal_node < 0) return result;

    std::vector<CellCoord> chain;
    for (std::int32_t i = goal_node; i >= 0; i = tree.node(i).parent)
        chain.push_back(tree.node(i).cell);
    std::reverse(chain.begin(), chain.end());
    result.path =
        densify_chain(grid, chain, std::vector<bool>(chain.size() - 1, false), nullptr,
                      nullptr);
    return result;
}

std::size_t RrtTree::nearest(CellCoord target) const {
    if (nodes.empty()) throw std::logic_error("nearest() on an empty tree");
    std::size_t best = 0;
    double best_d = euclid_sq(nodes[0].cell, target);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double d = euclid_sq(nodes[i].cell, target);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

ExtendResult rrt_connect_extend(RrtTree& tree, CellCoord target, const Scene3D& scene,
                                double delta) {
    if (!(delta >= 1.0)) throw std::invalid_argument("extend delta must be at least 1");
    const WeightedGrid& grid = scene.grid();
    if (!grid.in_bounds(target))
        throw std::invalid_argument("extend target is out of bounds");

    bool first = true;
    while (true) {
        const std::size_t ni = tree.nearest(target);
        const CellCoord from = tree.nodes[ni].cell;
        if (from == target) return ExtendResult::Reached;

        const CellCoord x_new = rrt_steer(from, target, delta);
        if (x_new == from) return first ? ExtendResult::Trapped : ExtendResult::Advanced;
        const SegmentCost seg = segment_cost(grid, from, x_new, &scene.elev(), &scene.cost());
        if (seg.blocked) return first ? ExtendResult::Trapped : ExtendResult::Advanced;

        tree.nodes.push_back({x_new, static_cast<std::int32_t>(ni)});
        if (x_new == target) return ExtendResult::Reached;
        first = false;
    }
}

PlanResult plan_rrtconnect_3d(const Scene3D& scene, CellCoord start, CellCoord goal,
                              const RrtParams& params) {
    params.validate();
    const WeightedGrid& grid = scene.grid();
    detail::check_endpoints(grid, start, goal);

    PlanResult result;
    const auto sample_peak = [&result](const RrtTree& a, const RrtTree& b) {
        const std::size_t bytes = (a.nodes.size() + b.nodes.size()) * sizeof(RrtTree::Node);
        if (bytes > result.peak_bytes) result.peak_bytes = bytes;
    };

    RrtTree start_tree;
    start_tree.nodes.push_back({start, -1});
    if (start == goal) {
        result.peak_bytes = sizeof(RrtTree::Node);
        result.path = Path{{start}, 0.0};
        return result;
    }
    RrtTree goal_tree;
    goal_tree.nodes.push_back({goal, -1});
    sample_peak(start_tree, goal_tree);

    const std::vector<CellCoord> samples = passable_cells_of(grid);
    Rng rng(params.seed);

    RrtTree* grow = &start_tree;
    RrtTree* chase = &goal_tree;
    bool grow_is_start = true;

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        ++result.expanded_or_sampled;
        result.iterations_used = static_cast<std::uint64_t>(iter) + 1;

        const CellCoord x_rand = samples[rng.next_below(samples.size())];
        const std::size_t ni = grow->nearest(x_rand);
        const CellCoord from = grow->nodes[ni].cell;

        CellCoord x_new = from;
        if (from != x_rand) {
            x_new = rrt_steer(from, x_rand, params.step_delta);
            if (x_new != from) {
                const SegmentCost seg =
                    segment_cost(grid, from, x_new, &scene.elev(), &scene.cost());
                if (seg.blocked) {
                    std::swap(grow, chase);
                    grow_is_start = !grow_is_start;
                    continue;
                }
                grow->nodes.push_back({x_new, static_cast<std::int32_t>(ni)});
                sample_peak(start_tree, goal_tree);
            }
        }

        const ExtendResult r = rrt_connect_extend(*chase, x_new, scene, params.step_delta);
        sample_peak(start_tree, goal_tree);
        if (r == ExtendResult::Reached) {
            // Walk both branches from the meeting cell out to the roots.
            const auto chain_of = [x_new](const RrtTree& tree) {
                std::size_t at = tree.nodes.size();
                for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
                    if (tree.nodes[i].cell == x_new) {
                        at = i;
                        break;
                    }
                }
                std::vector<CellCoord> cells;  // meeting cell first, root last
                for (std::int32_t i = static_cast<std::int32_t>(at); i >= 0;
                     i = tree.nodes[i].parent)
                    cells.push_back(tree.nodes[i].cell);
                return cells;
            };
            const std::vector<CellCoord> to_start =
                chain_of(grow_is_start ? *grow : *chase);
            const std::vector<CellCoord> to_goal = chain_of(grow_is_start ? *chase : *grow);

            // Tree segments were collision-checked parent->child. The
            // start-side chain, reversed to run root->meeting, walks them
            // forward; the goal-side chain walks them child->parent.
            std::vector<CellCoord> cells(to_start.rbegin(), to_start.rend());
            std::vector<bool> reversed_edge(to_start.size() - 1, false);
            cells.insert(cells.end(), to_goal.begin() + 1, to_goal.end());
            reversed_edge.insert(reversed_edge.end(), to_goal.size() - 1, true);

            result.path =
                densify_chain(grid, cells, reversed_edge, &scene.elev(), &scene.cost());
            return result;
        }
        std::swap(grow, chase);
        grow_is_start = !grow_is_start;
    }
    return result;
}

}  // namespace gridplan
