"""Directional shortest-path queries over block graphs.

Four fixed directions are probed per block: horizontal, the two
diagonals, and vertical. Endpoints are deterministic pixels of the block
border; with m = floor((b - 1) / 2):

    0 degrees:    (m, 0)     -> (m, b-1)
    45 degrees:   (b-1, 0)   -> (0, b-1)      (bottom-left to top-right)
    -45 degrees:  (0, 0)     -> (b-1, b-1)    (top-left to bottom-right)
    90 degrees:   (0, m)     -> (b-1, m)

In the coupled S/I graph the two query endpoints must sit in one channel
layer; the minimizing path is still free to hop between layers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import InconsistentGraphError, LayerMismatchError
from .graphmodel import (
    HUE,
    INTENSITY,
    SATURATION,
    SINGLE_LAYER,
    BlockGraph,
    VertexId,
)


class Direction(enum.Enum):
    D0 = "0"
    D45 = "45"
    DN45 = "-45"
    D90 = "90"

    @property
    def degrees(self) -> str:
        return self.value


# Canonical order; feature vectors interleave (mu, sigma) in this order.
DIRECTIONS = (Direction.D0, Direction.D45, Direction.DN45, Direction.D90)

_CHANNEL_TO_LAYER_INDEX = {SATURATION: 0, INTENSITY: 1}


def block_endpoints(direction: Direction, b: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Source and target pixel of ``direction`` in a block of side ``b``."""
    if b < 1:
        raise ValueError(f"block side must be >= 1, got {b}")
    m = (b - 1) // 2
    last = b - 1
    if direction is Direction.D0:
        return ((m, 0), (m, last))
    if direction is Direction.D90:
        return ((0, m), (last, m))
    if direction is Direction.DN45:
        return ((0, 0), (last, last))
    return ((last, 0), (0, last))


@lru_cache(maxsize=None)
def endpoint_table(b: int) -> np.ndarray:
    """(4, 4) int64 rows of (sr, sc, tr, tc), one per canonical direction."""
    table = np.empty((4, 4), dtype=np.int64)
    for d, direction in enumerate(DIRECTIONS):
        (sr, sc), (tr, tc) = block_endpoints(direction, b)
        table[d] = (sr, sc, tr, tc)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class PathQuery:
    direction: Direction
    channel: str  # "H", "S" or "I"
    source: VertexId
    target: VertexId

    def __post_init__(self):
        if self.source.layer != self.channel or self.target.layer != self.channel:
            raise LayerMismatchError(
                f"query endpoints must both lie in the {self.channel!r} layer, "
                f"got source={self.source.layer!r} target={self.target.layer!r}"
            )


@dataclass(frozen=True)
class PathResult:
    cost: float


def direction_query(graph: BlockGraph, channel: str, direction: Direction) -> PathQuery:
    """The canonical endpoint query for one channel and direction of a block."""
    (sr, sc), (tr, tc) = block_endpoints(direction, graph.side)
    return PathQuery(
        direction=direction,
        channel=channel,
        source=VertexId(channel, sr, sc),
        target=VertexId(channel, tr, tc),
    )


def _cost_or_raise(raw: float, query: PathQuery) -> PathResult:
    if raw < 0.0:
        raise InconsistentGraphError(
            f"no path from {query.source} to {query.target}: "
            "block graphs are connected, so the supplied graph is inconsistent"
        )
    return PathResult(cost=raw)


def shortest_path_cost(graph: BlockGraph, query: PathQuery) -> PathResult:
    """Minimum total edge weight from query.source to query.target.

    Raises LayerMismatchError when the channel does not belong to the
    graph or an endpoint lies outside it, InconsistentGraphError when the
    endpoints are not connected.
    """
    if query.channel not in graph.layers:
        raise LayerMismatchError(
            f"channel {query.channel!r} has no layer in a {graph.kind} graph"
        )
    for v in (query.source, query.target):
        if not graph.has_vertex(v):
            raise LayerMismatchError(f"vertex {v} outside graph (side {graph.side})")

    s, t = query.source, query.target
    if graph.kind == SINGLE_LAYER:
        raw = _kernels.single_layer_cost(graph.planes[HUE], s.row, s.col, t.row, t.col)
    else:
        layer = _CHANNEL_TO_LAYER_INDEX[query.channel]
        raw = _kernels.two_layer_cost(
            graph.planes[SATURATION], graph.planes[INTENSITY], layer, s.row, s.col, t.row, t.col
        )
    return _cost_or_raise(raw, query)
