"""Reference kernels in Python/numpy.

Same signatures and outputs as the compiled ``_core`` module, which is
preferred when importable. Traversal orders match the compiled loops so both
backends return identical arrays.
"""
import math

import numpy as np

from isoclean._tables import CORNER_OFFSETS, EDGE_CORNERS, TRI_TABLE
from isoclean.dsu import DisjointSetForest

NAME = "python"


def _member_mask(values, iso, above):
    return values >= iso if above else values <= iso


def label_grid(values, nx, ny, nz, iso, above):
    """Label the 6-connected components of ``{v : f(v) >= iso}`` (or ``<=``).

    Returns ``(labels, sizes)``: ``labels[i]`` is the dense component id of
    vertex ``i`` or ``-1``, ids ordered by each component's smallest vertex.
    """
    n = nx * ny * nz
    member = _member_mask(np.asarray(values), iso, above)
    forest = DisjointSetForest(n)
    live = np.flatnonzero(member)
    for v in live.tolist():
        forest.make_set(v)

    grid = member.reshape((nz, ny, nx))
    strides = (1, nx, nx * ny)
    pairs = (
        grid[:, :, :-1] & grid[:, :, 1:],
        grid[:, :-1, :] & grid[:, 1:, :],
        grid[:-1, :, :] & grid[1:, :, :],
    )
    for axis, both in enumerate(pairs):
        zz, yy, xx = np.nonzero(both)
        lower = xx + nx * (yy + ny * zz)
        step = strides[axis]
        for v in lower.tolist():
            forest.union(v, v + step)

    labels = np.full(n, -1, dtype=np.int32)
    root_id = {}
    sizes = []
    for v in live.tolist():
        r = forest.find(v)
        cid = root_id.get(r)
        if cid is None:
            cid = root_id[r] = len(sizes)
            sizes.append(forest.size[r])
        labels[v] = cid
    return labels, np.asarray(sizes, dtype=np.int64)


def reassign(values, nx, ny, nz, iso, above, vertices):
    """Average of the nearest across-``iso`` values along the six axis rays."""
    values = np.asarray(values)
    out = np.empty(len(vertices), dtype=np.float64)
    nxy = nx * ny
    for j, i in enumerate(np.asarray(vertices).tolist()):
        x = i % nx
        y = (i // nx) % ny
        z = i // nxy
        total = 0.0
        count = 0
        for stride, lo_steps, hi_steps in ((1, x, nx - 1 - x),
                                           (nx, y, ny - 1 - y),
                                           (nxy, z, nz - 1 - z)):
            for sign, steps in ((-1, lo_steps), (1, hi_steps)):
                w = i
                for _ in range(steps):
                    w += sign * stride
                    f = values[w]
                    if (f < iso) if above else (f > iso):
                        total += f
                        count += 1
                        break
        if count == 0:
            out[j] = iso - 1.0 if above else iso + 1.0
            continue
        mean = total / count
        if above and mean >= iso:
            mean = math.nextafter(iso, -math.inf)
        elif not above and mean <= iso:
            mean = math.nextafter(iso, math.inf)
        out[j] = mean
    return out


def _corner_views(values, nx, ny, nz):
    g = np.asarray(values).reshape((nz, ny, nx))
    views = []
    for ox, oy, oz in CORNER_OFFSETS:
        views.append(g[oz:nz - 1 + oz, oy:ny - 1 + oy, ox:nx - 1 + ox])
    return views


def _case_indices(values, nx, ny, nz, iso):
    case = np.zeros((nz - 1, ny - 1, nx - 1), dtype=np.int32)
    for k, view in enumerate(_corner_views(values, nx, ny, nz)):
        case |= (view >= iso).astype(np.int32) << k
    return case.reshape(-1)


def count_active(values, nx, ny, nz, iso):
    if min(nx, ny, nz) < 2:
        return 0
    case = _case_indices(values, nx, ny, nz, iso)
    return int(np.count_nonzero((case != 0) & (case != 255)))


_EDGE_GEOMETRY = []
for _a, _b in EDGE_CORNERS:
    _pa, _pb = CORNER_OFFSETS[_a], CORNER_OFFSETS[_b]
    _axis = next(k for k in range(3) if _pa[k] != _pb[k])
    _EDGE_GEOMETRY.append((_pa, _axis))


def marching_cubes(values, nx, ny, nz, iso, sx, sy, sz):
    """Extract the ``iso`` level set.

    Returns ``(vertices, triangles, cubes)``: float64 ``(V, 3)`` positions,
    int64 ``(T, 3)`` welded indices, and the linear cube id of each triangle.
    """
    if min(nx, ny, nz) < 2:
        return (np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64),
                np.zeros(0, dtype=np.int64))
    values = np.asarray(values)
    case = _case_indices(values, nx, ny, nz, iso)
    active = np.flatnonzero((case != 0) & (case != 255))
    cx, cy = nx - 1, ny - 1
    nxy = nx * ny
    strides = (1, nx, nxy)
    edge_vertex = {}
    verts = []
    tris = []
    cubes = []
    for c in active.tolist():
        x = c % cx
        y = (c // cx) % cy
        z = c // (cx * cy)
        row = TRI_TABLE[case[c]]
        ids = [0, 0, 0]
        for t in range(0, 16, 3):
            if row[t] < 0:
                break
            for k in range(3):
                (ox, oy, oz), axis = _EDGE_GEOMETRY[row[t + k]]
                p = (x + ox, y + oy, z + oz)
                lo = p[0] + nx * p[1] + nxy * p[2]
                key = 3 * lo + axis
                vid = edge_vertex.get(key)
                if vid is None:
                    fa = values[lo]
                    fb = values[lo + strides[axis]]
                    frac = (iso - fa) / (fb - fa)
                    pos = [float(p[0]), float(p[1]), float(p[2])]
                    pos[axis] += frac
                    verts.append((pos[0] * sx, pos[1] * sy, pos[2] * sz))
                    vid = edge_vertex[key] = len(verts) - 1
                ids[k] = vid
            # table winding faces the positive side; reverse it
            tris.append((ids[0], ids[2], ids[1]))
            cubes.append(c)
    return (np.asarray(verts, dtype=np.float64).reshape(-1, 3),
            np.asarray(tris, dtype=np.int64).reshape(-1, 3),
            np.asarray(cubes, dtype=np.int64))


def mesh_components(n_vertices, triangles):
    """Connected components of triangles that share a vertex."""
    triangles = np.asarray(triangles)
    if len(triangles) == 0:
        return 0
    forest = DisjointSetForest(n_vertices)
    used = np.unique(triangles)
    for v in used.tolist():
        forest.make_set(v)
    for a, b, c in triangles.tolist():
        forest.union(a, b)
        forest.union(a, c)
    return forest.n_sets
