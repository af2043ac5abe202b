import numpy as np
import pytest

from spgtex.errors import InconsistentGraphError, LayerMismatchError
from spgtex.graphmodel import VertexId, build_single_layer, build_two_layer
from spgtex.oracle import brute_force_cost, iter_simple_paths
from spgtex.pathengine import (
    DIRECTIONS,
    Direction,
    PathQuery,
    _cost_or_raise,
    block_endpoints,
    direction_query,
    shortest_path_cost,
)


def test_endpoints_horizontal_even_block():
    assert block_endpoints(Direction.D0, 4) == ((1, 0), (1, 3))  # m = floor(3/2)


def test_endpoints_diagonals_and_vertical():
    assert block_endpoints(Direction.DN45, 4) == ((0, 0), (3, 3))
    assert block_endpoints(Direction.D45, 4) == ((3, 0), (0, 3))
    assert block_endpoints(Direction.D90, 4) == ((0, 1), (3, 1))


def test_endpoints_odd_block_uses_center_row():
    assert block_endpoints(Direction.D0, 5) == ((2, 0), (2, 4))
    assert block_endpoints(Direction.D90, 5) == ((0, 2), (4, 2))


@pytest.mark.parametrize("direction", DIRECTIONS)
def test_endpoints_degenerate_single_pixel(direction):
    assert block_endpoints(direction, 1) == ((0, 0), (0, 0))


def test_endpoints_reject_bad_side():
    with pytest.raises(ValueError):
        block_endpoints(Direction.D0, 0)


def test_source_equals_target_costs_zero():
    graph = build_single_layer(np.full((3, 3), 200, dtype=np.uint8))
    q = PathQuery(Direction.D0, "H", VertexId("H", 1, 1), VertexId("H", 1, 1))
    assert shortest_path_cost(graph, q).cost == 0.0


@pytest.mark.parametrize("g", [0, 1, 100, 255])
def test_constant_plane_horizontal_cost(g):
    # three hops, each of weight g; fewer hops cannot reach column 3
    graph = build_single_layer(np.full((4, 4), g, dtype=np.uint8))
    q = direction_query(graph, "H", Direction.D0)
    assert shortest_path_cost(graph, q).cost == 3.0 * g


def test_single_pixel_block_all_directions_zero():
    single = build_single_layer(np.array([[123]], dtype=np.uint8))
    coupled = build_two_layer(np.array([[4]], dtype=np.uint8), np.array([[250]], dtype=np.uint8))
    for direction in DIRECTIONS:
        assert shortest_path_cost(single, direction_query(single, "H", direction)).cost == 0.0
        for channel in ("S", "I"):
            q = direction_query(coupled, channel, direction)
            assert shortest_path_cost(coupled, q).cost == 0.0


def _random_graph(rng, b, kind):
    if kind == "single":
        return build_single_layer(rng.integers(0, 256, size=(b, b)).astype(np.uint8))
    return build_two_layer(
        rng.integers(0, 256, size=(b, b)).astype(np.uint8),
        rng.integers(0, 256, size=(b, b)).astype(np.uint8),
    )


def test_matches_brute_force_on_random_blocks():
    rng = np.random.default_rng(20)
    for trial in range(60):
        kind = ("single", "two")[trial % 2]
        graph = _random_graph(rng, 3, kind)
        channel = "H" if kind == "single" else ("S", "I")[trial % 4 // 2]
        for direction in DIRECTIONS:
            q = direction_query(graph, channel, direction)
            assert shortest_path_cost(graph, q).cost == brute_force_cost(graph, q).cost


def test_cost_is_symmetric_in_endpoints():
    rng = np.random.default_rng(21)
    for _ in range(40):
        graph = _random_graph(rng, 4, "two")
        channel = "S"
        r1, c1, r2, c2 = rng.integers(0, 4, size=4)
        fwd = PathQuery(Direction.D0, channel, VertexId(channel, r1, c1), VertexId(channel, r2, c2))
        rev = PathQuery(Direction.D0, channel, VertexId(channel, r2, c2), VertexId(channel, r1, c1))
        assert shortest_path_cost(graph, fwd).cost == shortest_path_cost(graph, rev).cost


def test_triangle_property():
    rng = np.random.default_rng(22)
    for _ in range(25):
        graph = _random_graph(rng, 3, "single")
        pts = [VertexId("H", int(r), int(c)) for r, c in rng.integers(0, 3, size=(3, 2))]
        a, b, c = pts

        def cost(u, v):
            return shortest_path_cost(graph, PathQuery(Direction.D0, "H", u, v)).cost

        assert cost(a, c) <= cost(a, b) + cost(b, c) + 1e-9


def test_layer_exchange_symmetry():
    # with identical planes, S->S and the mirrored I->I query cost the same
    rng = np.random.default_rng(23)
    plane = rng.integers(0, 256, size=(4, 4)).astype(np.uint8)
    graph = build_two_layer(plane, plane.copy())
    for direction in DIRECTIONS:
        s_cost = shortest_path_cost(graph, direction_query(graph, "S", direction)).cost
        i_cost = shortest_path_cost(graph, direction_query(graph, "I", direction)).cost
        assert s_cost == i_cost


def test_constant_shift_moves_each_path_by_hop_count():
    rng = np.random.default_rng(24)
    plane = rng.integers(0, 200, size=(3, 3)).astype(np.uint8)
    src, tgt = VertexId("H", 0, 0), VertexId("H", 2, 2)
    for c in (1, 5, 50):
        before = list(iter_simple_paths(build_single_layer(plane), src, tgt))
        shifted = build_single_layer((plane + c).astype(np.uint8))
        after = list(iter_simple_paths(shifted, src, tgt))
        assert len(before) == len(after)
        for (cost0, hops0), (cost1, hops1) in zip(before, after):
            assert hops0 == hops1
            assert cost1 == cost0 + c * hops0  # every edge weight rises by exactly c


def test_query_construction_rejects_mixed_layers():
    with pytest.raises(LayerMismatchError):
        PathQuery(Direction.D0, "S", VertexId("S", 0, 0), VertexId("I", 0, 0))
    with pytest.raises(LayerMismatchError):
        PathQuery(Direction.D0, "H", VertexId("S", 0, 0), VertexId("S", 0, 1))


def test_channel_must_belong_to_graph():
    single = build_single_layer(np.zeros((2, 2), np.uint8))
    coupled = build_two_layer(np.zeros((2, 2), np.uint8), np.zeros((2, 2), np.uint8))
    s_query = PathQuery(Direction.D0, "S", VertexId("S", 0, 0), VertexId("S", 0, 1))
    h_query = PathQuery(Direction.D0, "H", VertexId("H", 0, 0), VertexId("H", 0, 1))
    with pytest.raises(LayerMismatchError):
        shortest_path_cost(single, s_query)
    with pytest.raises(LayerMismatchError):
        shortest_path_cost(coupled, h_query)


def test_out_of_bounds_vertex_rejected():
    graph = build_single_layer(np.zeros((2, 2), np.uint8))
    q = PathQuery(Direction.D0, "H", VertexId("H", 0, 0), VertexId("H", 0, 5))
    with pytest.raises(LayerMismatchError):
        shortest_path_cost(graph, q)


def test_unreachable_target_raises_distinct_error():
    # well-formed block graphs are connected; the error path is exercised
    # through the kernel sentinel translation
    q = PathQuery(Direction.D0, "H", VertexId("H", 0, 0), VertexId("H", 0, 1))
    with pytest.raises(InconsistentGraphError):
        _cost_or_raise(-1.0, q)
    assert _cost_or_raise(7.5, q).cost == 7.5
