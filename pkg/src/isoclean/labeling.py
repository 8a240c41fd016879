"""Connected components of the superlevel and sublevel vertex graphs."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from isoclean import _backend
from isoclean.volume import VolumeGrid

__all__ = ["FilterMode", "ComponentLabeling", "label_components", "small_components"]


class FilterMode(enum.Enum):
    """Which level-set graph to label.

    ``ABOVE`` is the graph induced by ``{v : f(v) >= iso}``, ``BELOW`` the one
    induced by ``{v : f(v) <= iso}``. A vertex with ``f(v) == iso`` belongs
    to both.
    """

    ABOVE = "above"
    BELOW = "below"

    @property
    def is_above(self) -> bool:
        return self is FilterMode.ABOVE

    def contains(self, values, isovalue):
        values = np.asarray(values)
        return values >= isovalue if self.is_above else values <= isovalue


@dataclass(frozen=True)
class ComponentLabeling:
    """Dense component ids for the vertices of one level-set graph.

    Attributes
    ----------
    label : np.ndarray
        int32 per vertex, ``-1`` for vertices outside the graph. Ids run
        ``0 .. comp_count - 1`` ordered by each component's smallest
        linear vertex index.
    comp_size : np.ndarray
        int64 vertex count per component id.
    """

    mode: FilterMode
    isovalue: float
    dims: tuple[int, int, int]
    label: np.ndarray
    comp_size: np.ndarray

    @property
    def comp_count(self) -> int:
        return len(self.comp_size)

    @property
    def n_labeled(self) -> int:
        return int(self.comp_size.sum())

    def members(self, component_id: int) -> np.ndarray:
        return np.flatnonzero(self.label == component_id)

    def component_sets(self) -> list[frozenset[int]]:
        """Vertex sets of all components, indexed by id."""
        order = np.argsort(self.label, kind="stable")
        ordered = self.label[order]
        start = np.searchsorted(ordered, 0)
        groups = np.split(order[start:], np.cumsum(self.comp_size)[:-1])
        return [frozenset(g.tolist()) for g in groups] if self.comp_count else []


def label_components(grid: VolumeGrid, isovalue: float, mode: FilterMode) -> ComponentLabeling:
    """Label the 6-connected components of the ``mode`` graph at ``isovalue``.

    Every vertex satisfying the mode's predicate becomes a singleton set; then
    the x, y and z grid edges are swept in turn and both endpoints of each
    qualifying edge are merged.
    """
    mode = FilterMode(mode)
    nx, ny, nz = grid.dims
    labels, sizes = _backend.kernels().label_grid(
        grid.samples, nx, ny, nz, float(isovalue), mode.is_above)
    labels.flags.writeable = False
    sizes.flags.writeable = False
    return ComponentLabeling(mode, float(isovalue), grid.dims, labels, sizes)


def small_components(lab: ComponentLabeling, threshold: int) -> list[int]:
    """Ids of components with at most ``threshold`` vertices, ascending."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    return np.flatnonzero(lab.comp_size <= threshold).tolist()
