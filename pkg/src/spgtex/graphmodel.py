"""Weighted undirected pixel graphs over one grid block.

Two graph kinds model a color texture block:

* a single-layer graph on the hue plane, and
* a coupled two-layer graph whose layers are the saturation and
  intensity planes.

Within one layer, two pixels are joined iff their Chebyshev distance is
exactly 1 (8-connectivity). Between the two layers of the coupled graph,
a saturation vertex and an intensity vertex are joined iff their spatial
Chebyshev distance is at most 1 -- including 0, so every pixel is linked
to its spatially aligned counterpart in the other layer. The hue graph is
never connected to the other two channels.

Every edge weight is ``|g1 - g2| + (g1 + g2) / 2`` where g1, g2 are the
endpoint intensities read from each vertex's own plane. Weights live on
the half-integer lattice and are therefore exact in float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

# Chebyshev neighborhood radius; fixed, not a tuning knob.
NEIGHBOR_RADIUS = 1

SINGLE_LAYER = "single_layer"
TWO_LAYER = "two_layer"

HUE = "H"
SATURATION = "S"
INTENSITY = "I"
CHANNELS = (HUE, SATURATION, INTENSITY)


class VertexId(NamedTuple):
    layer: str  # "H" in the single-layer graph, "S" or "I" in the coupled one
    row: int
    col: int


@dataclass(frozen=True)
class Block:
    """One b x b tile of an HSI image, carrying all three channel planes."""

    origin: tuple[int, int]  # (row, col) of the top-left pixel in the source image
    side: int
    h: np.ndarray
    s: np.ndarray
    i: np.ndarray

    def plane(self, channel: str) -> np.ndarray:
        return {"H": self.h, "S": self.s, "I": self.i}[channel]


def edge_weight(g1: float, g2: float) -> float:
    """Weight of an edge between pixels of intensity g1 and g2 in [0, 255]:
    absolute difference plus the endpoint mean."""
    return abs(float(g1) - float(g2)) + 0.5 * (float(g1) + float(g2))


def _check_plane(plane: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(plane)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square 2-d array, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError(f"{name} must have side >= 1")
    if arr.dtype != np.uint8:
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError(f"{name} intensities outside [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


@dataclass(frozen=True)
class BlockGraph:
    """Pixel graph of one block.

    The adjacency is implicit in (kind, side); ``edges()`` enumerates it
    explicitly for tests and oracles, while the shortest-path kernels
    recompute neighborhoods on the fly for speed. Both views must agree,
    which the test suite checks against exhaustive pair enumeration.
    """

    kind: str
    side: int
    planes: dict[str, np.ndarray]

    @property
    def layers(self) -> tuple[str, ...]:
        return (HUE,) if self.kind == SINGLE_LAYER else (SATURATION, INTENSITY)

    @property
    def vertex_count(self) -> int:
        n = self.side * self.side
        return n if self.kind == SINGLE_LAYER else 2 * n

    def intensity(self, v: VertexId) -> int:
        return int(self.planes[v.layer][v.row, v.col])

    def vertices(self) -> Iterator[VertexId]:
        for layer in self.layers:
            for row in range(self.side):
                for col in range(self.side):
                    yield VertexId(layer, row, col)

    def has_vertex(self, v: VertexId) -> bool:
        return v.layer in self.layers and 0 <= v.row < self.side and 0 <= v.col < self.side

    def edges(self) -> Iterator[tuple[VertexId, VertexId, float]]:
        """Enumerate each undirected edge exactly once with its weight."""
        verts = list(self.vertices())
        for a, v1 in enumerate(verts):
            for v2 in verts[a + 1 :]:
                cheb = max(abs(v1.row - v2.row), abs(v1.col - v2.col))
                if v1.layer == v2.layer:
                    joined = cheb == NEIGHBOR_RADIUS
                else:
                    joined = cheb <= NEIGHBOR_RADIUS
                if joined:
                    yield (v1, v2, edge_weight(self.intensity(v1), self.intensity(v2)))

    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())


def build_single_layer(plane: np.ndarray) -> BlockGraph:
    """Graph on one channel plane: all b^2 pixels, 8-connected."""
    arr = _check_plane(plane, "plane")
    return BlockGraph(kind=SINGLE_LAYER, side=arr.shape[0], planes={HUE: arr})


def build_two_layer(s_plane: np.ndarray, i_plane: np.ndarray) -> BlockGraph:
    """Coupled graph over the saturation and intensity planes of one block."""
    s_arr = _check_plane(s_plane, "s_plane")
    i_arr = _check_plane(i_plane, "i_plane")
    if s_arr.shape != i_arr.shape:
        raise ValueError(f"plane shapes differ: s={s_arr.shape} i={i_arr.shape}")
    return BlockGraph(
        kind=TWO_LAYER, side=s_arr.shape[0], planes={SATURATION: s_arr, INTENSITY: i_arr}
    )
