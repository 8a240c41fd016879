"""Marching Cubes extraction, active-cube census and mesh output."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from isoclean import _backend
from isoclean.volume import VolumeGrid

__all__ = [
    "TriangleMesh",
    "CubeCensus",
    "count_cubes",
    "marching_cubes",
    "mesh_component_count",
    "write_mesh",
]


@dataclass(frozen=True)
class TriangleMesh:
    """Indexed triangle mesh.

    Vertices are in grid-index coordinates multiplied by the grid spacing.
    One vertex exists per crossed grid edge, so neighbouring cubes share
    vertices. ``cube_ids`` holds the linear cube index ``x + (nx-1) *
    (y + (ny-1) * z)`` that produced each triangle.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    cube_ids: np.ndarray | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def edges(self) -> np.ndarray:
        """Unique undirected edges as sorted ``(E, 2)`` index pairs."""
        if self.n_triangles == 0:
            return np.zeros((0, 2), dtype=np.int64)
        t = self.triangles
        e = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        e.sort(axis=1)
        return np.unique(e, axis=0)

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges()) + self.n_triangles


@dataclass(frozen=True)
class CubeCensus:
    total_cubes: int
    active_cubes: int


def count_cubes(grid: VolumeGrid, isovalue: float) -> CubeCensus:
    """Count cubes with corners on both sides of ``isovalue``.

    A corner counts as positive when ``f >= isovalue``.
    """
    nx, ny, nz = grid.dims
    active = _backend.kernels().count_active(grid.samples, nx, ny, nz, float(isovalue))
    return CubeCensus(grid.total_cubes, int(active))


def marching_cubes(grid: VolumeGrid, isovalue: float) -> TriangleMesh:
    """Extract the ``isovalue`` isosurface with the classic 256-case table.

    Crossings sit at ``t = (iso - f(a)) / (f(b) - f(a))`` along each edge
    from its lower corner ``a``. Triangle normals point away from the
    ``f >= iso`` side.
    """
    nx, ny, nz = grid.dims
    sx, sy, sz = grid.spacing
    verts, tris, cubes = _backend.kernels().marching_cubes(
        grid.samples, nx, ny, nz, float(isovalue), sx, sy, sz)
    return TriangleMesh(verts, tris, cubes)


def mesh_component_count(mesh: TriangleMesh) -> int:
    """Number of groups of triangles connected through shared vertices."""
    return int(_backend.kernels().mesh_components(mesh.n_vertices, mesh.triangles))


def write_mesh(mesh: TriangleMesh, path, format: str | None = None) -> None:
    """Write ``mesh`` as Wavefront OBJ or ASCII PLY.

    ``format`` defaults to the file suffix.
    """
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".")).lower()
    if fmt not in ("obj", "ply"):
        raise ValueError(f"unsupported mesh format {fmt!r}; use 'obj' or 'ply'")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        if fmt == "obj":
            fh.write(f"# {mesh.n_vertices} vertices, {mesh.n_triangles} faces\n")
            np.savetxt(fh, mesh.vertices, fmt="v %.9g %.9g %.9g")
            np.savetxt(fh, mesh.triangles + 1, fmt="f %d %d %d")
        else:
            fh.write("ply\nformat ascii 1.0\n")
            fh.write(f"element vertex {mesh.n_vertices}\n")
            fh.write("property float x\nproperty float y\nproperty float z\n")
            fh.write(f"element face {mesh.n_triangles}\n")
            fh.write("property list uchar int vertex_indices\nend_header\n")
            np.savetxt(fh, mesh.vertices, fmt="%.9g %.9g %.9g")
            np.savetxt(fh, mesh.triangles, fmt="3 %d %d %d")
