"""JIT-compiled shortest-path kernels.

Dijkstra with an array-backed binary heap and early exit once the target
vertex is settled. Adjacency is implicit in the grid geometry: neighbors
are generated on the fly from (row, col) offsets instead of materializing
edge lists, which is what makes corpus-scale extraction (millions of
queries on small blocks) cheap.

Vertex numbering: ``row * b + col`` within a layer; the coupled kernel
offsets the intensity layer by ``b*b``. Weights are computed from the
endpoint intensities as ``|g1 - g2| + (g1 + g2) / 2``; they live on the
half-integer lattice, so float64 arithmetic is exact and results can be
compared exactly against the brute-force oracle.

Both kernels return -1.0 when the target is unreachable; callers turn
that into an error (well-formed block graphs are always connected).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _heap_push(keys, vals, size, key, val):
    i = size
    keys[i] = key
    vals[i] = val
    while i > 0:
        parent = (i - 1) >> 1
        if keys[parent] <= keys[i]:
            break
        keys[parent], keys[i] = keys[i], keys[parent]
        vals[parent], vals[i] = vals[i], vals[parent]
        i = parent
    return size + 1


@njit(cache=True)
def _heap_pop(keys, vals, size):
    top_key = keys[0]
    top_val = vals[0]
    size -= 1
    keys[0] = keys[size]
    vals[0] = vals[size]
    i = 0
    while True:
        left = 2 * i + 1
        right = left + 1
        smallest = i
        if left < size and keys[left] < keys[smallest]:
            smallest = left
        if right < size and keys[right] < keys[smallest]:
            smallest = right
        if smallest == i:
            break
        keys[smallest], keys[i] = keys[i], keys[smallest]
        vals[smallest], vals[i] = vals[i], vals[smallest]
        i = smallest
    return top_key, top_val, size


@njit(cache=True)
def single_layer_cost(plane, sr, sc, tr, tc):
    """Min-cost path between two pixels of one 8-connected channel plane."""
    b = plane.shape[0]
    n = b * b
    src = sr * b + sc
    tgt = tr * b + tc
    dist = np.full(n, np.inf)
    done = np.zeros(n, dtype=np.bool_)
    # pushes are bounded by the directed edge count (degree <= 8) plus the seed
    cap = 8 * n + 8
    hkeys = np.empty(cap)
    hvals = np.empty(cap, dtype=np.int64)
    hsize = _heap_push(hkeys, hvals, 0, 0.0, src)
    dist[src] = 0.0
    while hsize > 0:
        d, u, hsize = _heap_pop(hkeys, hvals, hsize)
        if done[u]:
            continue
        if u == tgt:
            return d
        done[u] = True
        ur = u // b
        uc = u % b
        gu = np.float64(plane[ur, uc])
        for dr in range(-1, 2):
            vr = ur + dr
            if vr < 0 or vr >= b:
                continue
            for dc in range(-1, 2):
                if dr == 0 and dc == 0:
                    continue
                vc = uc + dc
                if vc < 0 or vc >= b:
                    continue
                v = vr * b + vc
                if done[v]:
                    continue
                gv = np.float64(plane[vr, vc])
                diff = gu - gv
                if diff < 0.0:
                    diff = -diff
                nd = d + diff + 0.5 * (gu + gv)
                if nd < dist[v]:
                    dist[v] = nd
                    hsize = _heap_push(hkeys, hvals, hsize, nd, v)
    return -1.0


@njit(cache=True)
def two_layer_cost(s_plane, i_plane, layer, sr, sc, tr, tc):
    """Min-cost path in the coupled S/I graph.

    ``layer`` selects the endpoint layer (0 = saturation, 1 = intensity);
    the path itself is free to cross layers.
    """
    b = s_plane.shape[0]
    n = b * b
    src = layer * n + sr * b + sc
    tgt = layer * n + tr * b + tc
    nn = 2 * n
    dist = np.full(nn, np.inf)
    done = np.zeros(nn, dtype=np.bool_)
    # degree <= 8 intra + 9 cross = 17
    cap = 17 * nn + 8
    hkeys = np.empty(cap)
    hvals = np.empty(cap, dtype=np.int64)
    hsize = _heap_push(hkeys, hvals, 0, 0.0, src)
    dist[src] = 0.0
    while hsize > 0:
        d, u, hsize = _heap_pop(hkeys, hvals, hsize)
        if done[u]:
            continue
        if u == tgt:
            return d
        done[u] = True
        ulayer = u // n
        rem = u - ulayer * n
        ur = rem // b
        uc = rem % b
        if ulayer == 0:
            gu = np.float64(s_plane[ur, uc])
        else:
            gu = np.float64(i_plane[ur, uc])
        for dr in range(-1, 2):
            vr = ur + dr
            if vr < 0 or vr >= b:
                continue
            for dc in range(-1, 2):
                vc = uc + dc
                if vc < 0 or vc >= b:
                    continue
                for vlayer in range(2):
                    # same-layer self pair is not an edge; the aligned
                    # cross-layer pair (dr == dc == 0) is
                    if vlayer == ulayer and dr == 0 and dc == 0:
                        continue
                    v = vlayer * n + vr * b + vc
                    if done[v]:
                        continue
                    if vlayer == 0:
                        gv = np.float64(s_plane[vr, vc])
                    else:
                        gv = np.float64(i_plane[vr, vc])
                    diff = gu - gv
                    if diff < 0.0:
                        diff = -diff
                    nd = d + diff + 0.5 * (gu + gv)
                    if nd < dist[v]:
                        dist[v] = nd
                        hsize = _heap_push(hkeys, hvals, hsize, nd, v)
    return -1.0


@njit(cache=True)
def block_costs(h_plane, s_plane, i_plane, endpoints, out):
    """Twelve directional costs of one block, channel-major.

    ``endpoints`` is a (4, 4) int64 array of (sr, sc, tr, tc) rows in
    canonical direction order; ``out`` receives H[0..3], S[4..7], I[8..11].
    """
    for d in range(4):
        sr, sc, tr, tc = endpoints[d, 0], endpoints[d, 1], endpoints[d, 2], endpoints[d, 3]
        out[d] = single_layer_cost(h_plane, sr, sc, tr, tc)
        out[4 + d] = two_layer_cost(s_plane, i_plane, 0, sr, sc, tr, tc)
        out[8 + d] = two_layer_cost(s_plane, i_plane, 1, sr, sc, tr, tc)


@njit(cache=True)
def scale_costs(h_plane, s_plane, i_plane, grid, endpoints):
    """Directional costs for every block of an r x r grid covering.

    Returns a (grid*grid, 12) array; blocks in row-major order.
    """
    side = h_plane.shape[0]
    b = side // grid
    out = np.empty((grid * grid, 12))
    for br in range(grid):
        r0 = br * b
        for bc in range(grid):
            c0 = bc * b
            h = h_plane[r0 : r0 + b, c0 : c0 + b]
            s = s_plane[r0 : r0 + b, c0 : c0 + b]
            i = i_plane[r0 : r0 + b, c0 : c0 + b]
            block_costs(h, s, i, endpoints, out[br * grid + bc])
    return out
