"""Brute-force reference implementations, for tests only.

``brute_force_cost`` finds the minimum simple-path cost by depth-first
enumeration over an explicit adjacency list built from the graph's edge
enumeration. It shares no shortest-path code with the production engine:
the engine runs heap-based Dijkstra over implicit grid adjacency, the
oracle walks explicit edges. Subtrees whose partial cost already reaches
the best known total are cut (weights are non-negative, so no cheaper
completion exists down there); with adjacency sorted by weight this keeps
the coupled graphs tractable while the returned minimum stays that of the
full enumeration.

``naive_extract`` recomputes per-scale descriptors through the oracle
path costs, as an end-to-end cross-check of the fast pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .colorspace import HsiImage
from .errors import LayerMismatchError, OracleBudgetError
from .features import partition_blocks
from .graphmodel import (
    CHANNELS,
    HUE,
    BlockGraph,
    VertexId,
    build_single_layer,
    build_two_layer,
)
from .pathengine import DIRECTIONS, PathQuery, PathResult, direction_query


@dataclass(frozen=True)
class OracleBudget:
    """Enumeration limits; exhaustive path search explodes combinatorially,
    so callers must opt in to anything beyond small blocks."""

    max_vertices: int = 18  # default covers side-3 blocks of either graph kind
    max_trials: int = 20_000

    def check_graph(self, graph: BlockGraph) -> None:
        if graph.vertex_count > self.max_vertices:
            raise OracleBudgetError(
                f"graph has {graph.vertex_count} vertices, budget allows {self.max_vertices}"
            )

    def check_trials(self, planned: int) -> None:
        if planned > self.max_trials:
            raise OracleBudgetError(f"{planned} path queries exceed budget {self.max_trials}")


DEFAULT_BUDGET = OracleBudget()


def _adjacency(graph: BlockGraph) -> dict[VertexId, list[tuple[VertexId, float]]]:
    adj: dict[VertexId, list[tuple[VertexId, float]]] = {v: [] for v in graph.vertices()}
    for v1, v2, w in graph.edges():
        adj[v1].append((v2, w))
        adj[v2].append((v1, w))
    for nbrs in adj.values():
        nbrs.sort(key=lambda pair: pair[1])
    return adj


def _validate_query(graph: BlockGraph, query: PathQuery) -> None:
    if query.channel not in graph.layers:
        raise LayerMismatchError(
            f"channel {query.channel!r} has no layer in a {graph.kind} graph"
        )
    for v in (query.source, query.target):
        if not graph.has_vertex(v):
            raise LayerMismatchError(f"vertex {v} outside graph (side {graph.side})")


def brute_force_cost(
    graph: BlockGraph, query: PathQuery, budget: OracleBudget = DEFAULT_BUDGET
) -> PathResult:
    """Minimum cost over all simple source-target paths, by enumeration."""
    budget.check_graph(graph)
    _validate_query(graph, query)
    if query.source == query.target:
        return PathResult(cost=0.0)

    adj = _adjacency(graph)
    target = query.target
    best = float("inf")
    on_path = {query.source}

    def walk(u: VertexId, cost: float) -> None:
        nonlocal best
        if u == target:
            if cost < best:
                best = cost
            return
        for v, w in adj[u]:
            total = cost + w
            if total >= best:
                break  # neighbors sorted by weight: the rest only cost more
            if v in on_path:
                continue
            on_path.add(v)
            walk(v, total)
            on_path.remove(v)

    walk(query.source, 0.0)
    return PathResult(cost=best)


def iter_simple_paths(
    graph: BlockGraph, source: VertexId, target: VertexId, budget: OracleBudget = DEFAULT_BUDGET
) -> Iterator[tuple[float, int]]:
    """Yield (cost, hop count) of every simple path, without any pruning.

    Only sensible on very small graphs; used to check per-path laws.
    """
    budget.check_graph(graph)
    adj = _adjacency(graph)
    on_path = {source}

    def walk(u: VertexId, cost: float, hops: int):
        if u == target:
            yield (cost, hops)
            return
        for v, w in adj[u]:
            if v in on_path:
                continue
            on_path.add(v)
            yield from walk(v, cost + w, hops + 1)
            on_path.remove(v)

    if source == target:
        yield (0.0, 0)
        return
    yield from walk(source, 0.0, 0)


def _block_costs_by_oracle(block, budget: OracleBudget) -> np.ndarray:
    graphs = {
        "H": build_single_layer(block.h),
        "S": build_two_layer(block.s, block.i),
    }
    graphs["I"] = graphs["S"]
    out = np.empty(12)
    for c, channel in enumerate(CHANNELS):
        graph = graphs[channel]
        for d, direction in enumerate(DIRECTIONS):
            query = direction_query(graph, channel, direction)
            out[c * 4 + d] = brute_force_cost(graph, query, budget).cost
    return out


def naive_extract(img: HsiImage, r: int, budget: OracleBudget = DEFAULT_BUDGET) -> np.ndarray:
    """Per-scale descriptor recomputed entirely through the oracle."""
    blocks = partition_blocks(img, r)
    budget.check_trials(12 * len(blocks))
    costs = np.stack([_block_costs_by_oracle(block, budget) for block in blocks])
    mu = costs.mean(axis=0)
    sigma = costs.std(axis=0)
    vec = np.empty(24)
    vec[0::2] = mu
    vec[1::2] = sigma
    return vec
