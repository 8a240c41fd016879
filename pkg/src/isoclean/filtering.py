"""Small-component removal by rewriting scalar values.

Each vertex of a removed component receives the mean of the nearest values
strictly across the isovalue along the six axis directions, so the whole
component flips side and its isosurface piece disappears.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from isoclean import _backend
from isoclean.labeling import ComponentLabeling, FilterMode, label_components
from isoclean.volume import VolumeGrid

__all__ = [
    "FilterOutcome",
    "CombinedOutcome",
    "reassign_value",
    "reassign_values",
    "filter_components",
    "filter_both",
]


@dataclass(frozen=True)
class FilterOutcome:
    filtered: VolumeGrid
    mode: FilterMode
    isovalue: float
    threshold: int
    total_components: int
    removed_ids: list[int] = field(repr=False)
    components_removed: int
    scalar_values_modified: int

    @property
    def removed_fraction(self) -> float:
        if self.total_components == 0:
            return 0.0
        return self.components_removed / self.total_components


@dataclass(frozen=True)
class CombinedOutcome:
    """Result of an ABOVE pass followed by a BELOW pass on its output."""

    filtered: VolumeGrid
    above: FilterOutcome
    below: FilterOutcome

    @property
    def passes(self) -> tuple[FilterOutcome, FilterOutcome]:
        return self.above, self.below

    @property
    def components_removed(self) -> int:
        return self.above.components_removed + self.below.components_removed

    @property
    def scalar_values_modified(self) -> int:
        return self.above.scalar_values_modified + self.below.scalar_values_modified


def reassign_values(grid: VolumeGrid, vertices, isovalue: float, mode: FilterMode) -> np.ndarray:
    """Replacement values for ``vertices``, all read from ``grid`` as given.

    Rays that leave the grid without meeting a qualifying vertex are skipped.
    If no ray qualifies the result is ``isovalue - 1`` (ABOVE) or
    ``isovalue + 1`` (BELOW).
    """
    mode = FilterMode(mode)
    nx, ny, nz = grid.dims
    vertices = np.asarray(vertices, dtype=np.int64).reshape(-1)
    return _backend.kernels().reassign(
        grid.samples, nx, ny, nz, float(isovalue), mode.is_above, vertices)


def reassign_value(grid: VolumeGrid, v: int, isovalue: float, mode: FilterMode) -> float:
    return float(reassign_values(grid, [v], isovalue, mode)[0])


def _apply(grid: VolumeGrid, lab: ComponentLabeling, threshold: int) -> FilterOutcome:
    small = lab.comp_size <= threshold
    removed_ids = np.flatnonzero(small)
    if len(removed_ids) == 0:
        return FilterOutcome(grid, lab.mode, lab.isovalue, threshold, lab.comp_count,
                             [], 0, 0)
    in_small = np.zeros(lab.comp_count + 1, dtype=bool)
    in_small[:-1] = small
    # label -1 indexes the trailing False slot
    vertices = np.flatnonzero(in_small[lab.label])
    new_values = reassign_values(grid, vertices, lab.isovalue, lab.mode)
    samples = grid.samples.copy()
    samples[vertices] = new_values
    samples.flags.writeable = False
    return FilterOutcome(
        grid.with_samples(samples), lab.mode, lab.isovalue, threshold, lab.comp_count,
        removed_ids.tolist(), len(removed_ids), len(vertices))


def filter_components(grid: VolumeGrid, isovalue: float, threshold: int,
                      mode: FilterMode) -> FilterOutcome:
    """Remove every ``mode`` component with at most ``threshold`` vertices.

    All replacement values are computed from the input grid before any is
    written, so the result does not depend on component order.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    lab = label_components(grid, isovalue, mode)
    return _apply(grid, lab, threshold)


def filter_both(grid: VolumeGrid, isovalue: float, threshold_above: int,
                threshold_below: int) -> CombinedOutcome:
    above = filter_components(grid, isovalue, threshold_above, FilterMode.ABOVE)
    below = filter_components(above.filtered, isovalue, threshold_below, FilterMode.BELOW)
    return CombinedOutcome(below.filtered, above, below)
