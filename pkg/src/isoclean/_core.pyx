# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled kernels. Signatures and outputs mirror ``isoclean._purepy``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, nextafter
from libc.stdint cimport int32_t, int64_t
from libcpp.vector cimport vector

from isoclean._tables import CORNER_OFFSETS, EDGE_CORNERS, TRI_TABLE

cnp.import_array()

NAME = "cython"

cdef int32_t MAX_VERTICES = 2147483646

cdef int _tri[256][16]
cdef int _edge_lo[12][3]
cdef int _edge_axis[12]


def _init_tables():
    cdef int c, k, a, b
    for c in range(256):
        for k in range(16):
            _tri[c][k] = TRI_TABLE[c][k]
    for k in range(12):
        a, b = EDGE_CORNERS[k]
        for c in range(3):
            _edge_lo[k][c] = CORNER_OFFSETS[a][c]
            if CORNER_OFFSETS[a][c] != CORNER_OFFSETS[b][c]:
                _edge_axis[k] = c


_init_tables()


cdef inline int32_t _find(int32_t* parent, int32_t v) noexcept nogil:
    cdef int32_t root = v
    cdef int32_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[v] != root:
        nxt = parent[v]
        parent[v] = root
        v = nxt
    return root


cdef inline bint _union(int32_t* parent, int32_t* size, int32_t a, int32_t b) noexcept nogil:
    a = _find(parent, a)
    b = _find(parent, b)
    if a == b:
        return False
    if size[a] < size[b]:
        a, b = b, a
    parent[b] = a
    size[a] += size[b]
    return True


cdef void _check_size(Py_ssize_t n) except *:
    if n > MAX_VERTICES:
        raise ValueError(f"grid of {n} vertices exceeds the 32-bit index range")


def label_grid(const double[::1] values, Py_ssize_t nx, Py_ssize_t ny, Py_ssize_t nz,
               double iso, bint above):
    cdef Py_ssize_t n = nx * ny * nz
    _check_size(n)
    parent_arr = np.empty(n, dtype=np.int32)
    size_arr = np.zeros(n, dtype=np.int32)
    labels_arr = np.full(n, -1, dtype=np.int32)
    root_id_arr = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] parent = parent_arr
    cdef int32_t[::1] size = size_arr
    cdef int32_t[::1] labels = labels_arr
    cdef int32_t[::1] root_id = root_id_arr
    cdef int32_t* pp = &parent[0] if n > 0 else NULL
    cdef int32_t* ps = &size[0] if n > 0 else NULL
    cdef Py_ssize_t i, x, y, z, base, nxy = nx * ny
    cdef int32_t r, count = 0
    cdef double f
    cdef vector[int64_t] comp_size

    with nogil:
        for i in range(n):
            f = values[i]
            if (f >= iso) if above else (f <= iso):
                parent[i] = <int32_t>i
                size[i] = 1
            else:
                parent[i] = -1
        for z in range(nz):
            for y in range(ny):
                base = nx * (y + ny * z)
                for x in range(nx - 1):
                    i = base + x
                    if parent[i] >= 0 and parent[i + 1] >= 0:
                        _union(pp, ps, <int32_t>i, <int32_t>(i + 1))
        for z in range(nz):
            for y in range(ny - 1):
                base = nx * (y + ny * z)
                for x in range(nx):
                    i = base + x
                    if parent[i] >= 0 and parent[i + nx] >= 0:
                        _union(pp, ps, <int32_t>i, <int32_t>(i + nx))
        for z in range(nz - 1):
            for y in range(ny):
                base = nx * (y + ny * z)
                for x in range(nx):
                    i = base + x
                    if parent[i] >= 0 and parent[i + nxy] >= 0:
                        _union(pp, ps, <int32_t>i, <int32_t>(i + nxy))
        for i in range(n):
            if parent[i] < 0:
                continue
            r = _find(pp, <int32_t>i)
            if root_id[r] < 0:
                root_id[r] = count
                count += 1
                comp_size.push_back(size[r])
            labels[i] = root_id[r]

    sizes = np.empty(comp_size.size(), dtype=np.int64)
    cdef int64_t[::1] sv = sizes
    for i in range(<Py_ssize_t>comp_size.size()):
        sv[i] = comp_size[i]
    return labels_arr, sizes


cdef inline bint _across(double f, double iso, bint above) noexcept nogil:
    return f < iso if above else f > iso


def reassign(const double[::1] values, Py_ssize_t nx, Py_ssize_t ny, Py_ssize_t nz,
             double iso, bint above, vertices):
    cdef const int64_t[::1] verts = np.ascontiguousarray(vertices, dtype=np.int64)
    cdef Py_ssize_t m = verts.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j, i, w, x, y, z, k, s, nxy = nx * ny
    cdef Py_ssize_t strides[3]
    cdef Py_ssize_t below_steps[3]
    cdef Py_ssize_t above_steps[3]
    cdef double total, f, mean
    cdef int count
    strides[0] = 1
    strides[1] = nx
    strides[2] = nxy

    with nogil:
        for j in range(m):
            i = verts[j]
            x = i % nx
            y = (i // nx) % ny
            z = i // nxy
            below_steps[0] = x
            below_steps[1] = y
            below_steps[2] = z
            above_steps[0] = nx - 1 - x
            above_steps[1] = ny - 1 - y
            above_steps[2] = nz - 1 - z
            total = 0.0
            count = 0
            for k in range(3):
                w = i
                for s in range(below_steps[k]):
                    w = w - strides[k]
                    f = values[w]
                    if _across(f, iso, above):
                        total = total + f
                        count = count + 1
                        break
                w = i
                for s in range(above_steps[k]):
                    w = w + strides[k]
                    f = values[w]
                    if _across(f, iso, above):
                        total = total + f
                        count = count + 1
                        break
            if count == 0:
                out[j] = iso - 1.0 if above else iso + 1.0
                continue
            mean = total / count
            if above and mean >= iso:
                mean = nextafter(iso, -INFINITY)
            elif not above and mean <= iso:
                mean = nextafter(iso, INFINITY)
            out[j] = mean
    return out_arr


cdef inline int _case(const double[::1] values, Py_ssize_t i, Py_ssize_t nx,
                      Py_ssize_t nxy, double iso) noexcept nogil:
    cdef int c = 0
    if values[i] >= iso:
        c |= 1
    if values[i + 1] >= iso:
        c |= 2
    if values[i + 1 + nx] >= iso:
        c |= 4
    if values[i + nx] >= iso:
        c |= 8
    if values[i + nxy] >= iso:
        c |= 16
    if values[i + 1 + nxy] >= iso:
        c |= 32
    if values[i + 1 + nx + nxy] >= iso:
        c |= 64
    if values[i + nx + nxy] >= iso:
        c |= 128
    return c


def count_active(const double[::1] values, Py_ssize_t nx, Py_ssize_t ny, Py_ssize_t nz,
                 double iso):
    if nx < 2 or ny < 2 or nz < 2:
        return 0
    cdef Py_ssize_t x, y, z, nxy = nx * ny
    cdef int c
    cdef int64_t active = 0
    with nogil:
        for z in range(nz - 1):
            for y in range(ny - 1):
                for x in range(nx - 1):
                    c = _case(values, x + nx * (y + ny * z), nx, nxy, iso)
                    if c != 0 and c != 255:
                        active += 1
    return active


def marching_cubes(const double[::1] values, Py_ssize_t nx, Py_ssize_t ny, Py_ssize_t nz,
                   double iso, double sx, double sy, double sz):
    if nx < 2 or ny < 2 or nz < 2:
        return (np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64),
                np.zeros(0, dtype=np.int64))
    cdef Py_ssize_t nxy = nx * ny
    _check_size(nx * ny * nz)
    # Per-slab edge -> vertex maps: x/y edges on the lower and upper planes,
    # z edges between them.
    lo_arr = np.full(2 * nxy, -1, dtype=np.int64)
    hi_arr = np.full(2 * nxy, -1, dtype=np.int64)
    zm_arr = np.full(nxy, -1, dtype=np.int64)
    cdef int64_t[::1] plane_lo = lo_arr
    cdef int64_t[::1] plane_hi = hi_arr
    cdef int64_t[::1] zmap = zm_arr
    cdef int64_t[::1] tmp
    cdef vector[double] verts
    cdef vector[int64_t] tris
    cdef vector[int64_t] cubes
    cdef Py_ssize_t x, y, z, cx = nx - 1, cy = ny - 1, i, lo, px, py, pz, slot
    cdef int c, t, k, e, axis
    cdef int64_t vid, cube_id
    cdef int64_t ids[3]
    cdef double fa, fb, frac, p[3]
    cdef Py_ssize_t strides[3]
    strides[0] = 1
    strides[1] = nx
    strides[2] = nxy

    for z in range(nz - 1):
        with nogil:
            for y in range(ny - 1):
                for x in range(nx - 1):
                    i = x + nx * (y + ny * z)
                    c = _case(values, i, nx, nxy, iso)
                    if c == 0 or c == 255:
                        continue
                    cube_id = x + cx * (y + cy * z)
                    t = 0
                    while t < 16 and _tri[c][t] >= 0:
                        for k in range(3):
                            e = _tri[c][t + k]
                            axis = _edge_axis[e]
                            px = x + _edge_lo[e][0]
                            py = y + _edge_lo[e][1]
                            pz = z + _edge_lo[e][2]
                            slot = px + nx * py
                            if axis == 2:
                                vid = zmap[slot]
                            elif pz == z:
                                vid = plane_lo[2 * slot + axis]
                            else:
                                vid = plane_hi[2 * slot + axis]
                            if vid < 0:
                                lo = slot + nxy * pz
                                fa = values[lo]
                                fb = values[lo + strides[axis]]
                                frac = (iso - fa) / (fb - fa)
                                p[0] = <double>px
                                p[1] = <double>py
                                p[2] = <double>pz
                                p[axis] = p[axis] + frac
                                vid = <int64_t>(verts.size() // 3)
                                verts.push_back(p[0] * sx)
                                verts.push_back(p[1] * sy)
                                verts.push_back(p[2] * sz)
                                if axis == 2:
                                    zmap[slot] = vid
                                elif pz == z:
                                    plane_lo[2 * slot + axis] = vid
                                else:
                                    plane_hi[2 * slot + axis] = vid
                            ids[k] = vid
                        # table winding faces the positive side; reverse it
                        tris.push_back(ids[0])
                        tris.push_back(ids[2])
                        tris.push_back(ids[1])
                        cubes.push_back(cube_id)
                        t += 3
        tmp = plane_lo
        plane_lo = plane_hi
        plane_hi = tmp
        plane_hi[:] = -1
        zmap[:] = -1

    cdef Py_ssize_t nv = verts.size(), nt = tris.size()
    v_out = np.empty(nv, dtype=np.float64)
    t_out = np.empty(nt, dtype=np.int64)
    c_out = np.empty(cubes.size(), dtype=np.int64)
    cdef double[::1] vo = v_out
    cdef int64_t[::1] to = t_out
    cdef int64_t[::1] co = c_out
    for i in range(nv):
        vo[i] = verts[i]
    for i in range(nt):
        to[i] = tris[i]
    for i in range(<Py_ssize_t>cubes.size()):
        co[i] = cubes[i]
    return v_out.reshape(-1, 3), t_out.reshape(-1, 3), c_out


def mesh_components(Py_ssize_t n_vertices, triangles):
    cdef const int64_t[:, ::1] tri = np.ascontiguousarray(triangles, dtype=np.int64).reshape(-1, 3)
    cdef Py_ssize_t nt = tri.shape[0], j, k
    if nt == 0:
        return 0
    _check_size(n_vertices)
    parent_arr = np.full(n_vertices, -1, dtype=np.int32)
    size_arr = np.zeros(n_vertices, dtype=np.int32)
    cdef int32_t[::1] parent = parent_arr
    cdef int32_t[::1] size = size_arr
    cdef int32_t* pp = &parent[0]
    cdef int32_t* ps = &size[0]
    cdef int32_t v
    cdef int64_t sets = 0
    with nogil:
        for j in range(nt):
            for k in range(3):
                v = <int32_t>tri[j, k]
                if parent[v] < 0:
                    parent[v] = v
                    size[v] = 1
                    sets += 1
        for j in range(nt):
            if _union(pp, ps, <int32_t>tri[j, 0], <int32_t>tri[j, 1]):
                sets -= 1
            if _union(pp, ps, <int32_t>tri[j, 0], <int32_t>tri[j, 2]):
                sets -= 1
    return sets
