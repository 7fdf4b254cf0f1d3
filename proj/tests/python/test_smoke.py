"""End-to-end smoke tests for the gridplan python module."""

import math

import pytest

import gridplan as gp


def uniform_grid(size):
    n = size * size
    return gp.WeightedGrid(size, size, [1.0] * n, [1] * n)


def test_module_surface():
    for name in (
        "plan_dijkstra_2d",
        "plan_astar_2d",
        "plan_rrtstar_2d",
        "plan_niaco_2d",
        "plan_dijkstra_3d",
        "plan_astar_3d",
        "plan_rrtconnect_3d",
        "plan_niaco_3d",
    ):
        assert callable(getattr(gp, name))


def test_dijkstra_open_diagonal():
    g = uniform_grid(8)
    r = gp.plan_dijkstra_2d(g, gp.CellCoord(0, 0), gp.CellCoord(7, 7))
    assert r.path is not None
    assert r.path.total_cost == pytest.approx(7 * math.sqrt(2), rel=1e-12)
    assert r.path.cells[0] == gp.CellCoord(0, 0)
    assert r.path.cells[-1] == gp.CellCoord(7, 7)
    assert gp.path_cost(g, r.path.cells) == pytest.approx(r.path.total_cost, rel=1e-12)


def test_astar_matches_dijkstra():
    raster = gp.gen_random_weights(12, 3)
    raster.values[0] = 4
    raster.values[-1] = 2
    g = gp.from_raster_weights(raster)
    start, goal = gp.CellCoord(0, 0), gp.CellCoord(11, 11)
    d = gp.plan_dijkstra_2d(g, start, goal)
    a = gp.plan_astar_2d(g, start, goal)
    assert (d.path is None) == (a.path is None)
    if d.path is not None:
        assert a.path.total_cost == d.path.total_cost
        assert a.expanded_or_sampled <= d.expanded_or_sampled


def test_stochastic_planners_are_seeded():
    g = uniform_grid(14)
    start, goal = gp.CellCoord(0, 0), gp.CellCoord(13, 13)

    p = gp.RrtParams()
    p.max_iterations = 800
    p.seed = 6
    first = gp.plan_rrtstar_2d(g, start, goal, p)
    second = gp.plan_rrtstar_2d(g, start, goal, p)
    assert first.path is not None
    assert first.path.total_cost == second.path.total_cost
    assert [(c.x, c.y) for c in first.path.cells] == [
        (c.x, c.y) for c in second.path.cells
    ]

    n = gp.NiacoParams()
    n.n_ants = 8
    n.n_iterations = 12
    n.seed = 6
    ant_a = gp.plan_niaco_2d(g, start, goal, n)
    ant_b = gp.plan_niaco_2d(g, start, goal, n)
    assert ant_a.best_cost_trace == ant_b.best_cost_trace


def test_raster_round_trip(tmp_path):
    raster = gp.gen_smoothed_noise(16, 9)
    out = tmp_path / "noise.pgm"
    gp.save_grayscale_raster(raster, str(out), gp.RasterFormat.Pgm)
    back = gp.load_grayscale_raster(str(out))
    assert back.width == raster.width
    assert back.height == raster.height
    assert list(back.values) == list(raster.values)


def test_flat_elevation_reduces_to_2d():
    raster = gp.gen_random_weights(10, 5)
    raster.values[0] = 3
    raster.values[-1] = 3
    g = gp.from_raster_weights(raster)
    elev = gp.ElevationField()
    elev.width = 10
    elev.height = 10
    elev.z = [2.0] * 100
    scene = gp.Scene3D(g, elev)
    start, goal = gp.CellCoord(0, 0), gp.CellCoord(9, 9)
    flat = gp.plan_dijkstra_3d(scene, start, goal)
    plain = gp.plan_dijkstra_2d(g, start, goal)
    assert (flat.path is None) == (plain.path is None)
    if plain.path is not None:
        assert flat.path.total_cost == plain.path.total_cost
        assert [(c.x, c.y) for c in flat.path.cells] == [
            (c.x, c.y) for c in plain.path.cells
        ]


def test_gradient_window_edge_cost():
    elev = gp.ElevationField()
    elev.width = 3
    elev.height = 1
    elev.z = [0.0, 0.0, 4.0]
    params = gp.Cost3DParams()
    params.gradient_window = 1
    g = uniform_grid(3)
    g3 = gp.WeightedGrid(3, 1, [1.0, 1.0, 1.0], [1, 1, 1])
    cost = gp.edge_cost_3d(g3, elev, gp.CellCoord(1, 0), gp.CellCoord(2, 0), params)
    assert cost == pytest.approx(math.sqrt(17), rel=1e-12)


def test_invalid_arguments_raise():
    g = uniform_grid(4)
    with pytest.raises(ValueError):
        gp.plan_dijkstra_2d(g, gp.CellCoord(-1, 0), gp.CellCoord(3, 3))
    with pytest.raises(ValueError):
        gp.WeightedGrid(2, 2, [1.0], [1])
