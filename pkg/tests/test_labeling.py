import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bfs_partition

from isoclean.labeling import FilterMode, label_components, small_components
from isoclean.volume import VolumeGrid


def _partition(lab):
    return set(lab.component_sets())


def test_empty_graph(backend):
    grid = VolumeGrid((2, 2, 2), np.zeros(8))
    lab = label_components(grid, 0.5, FilterMode.ABOVE)
    assert lab.comp_count == 0
    assert (lab.label == -1).all()


def test_two_corner_singletons(backend):
    arr = np.zeros((3, 3, 3))
    arr[0, 0, 0] = arr[2, 2, 2] = 100
    grid = VolumeGrid.from_array(arr)
    lab = label_components(grid, 50.5, FilterMode.ABOVE)
    expected = bfs_partition(grid.samples, grid.dims, 50.5, True)
    assert expected == {frozenset({0}), frozenset({26})}
    assert _partition(lab) == expected
    assert lab.comp_size.tolist() == [1, 1]
    assert lab.label[0] == 0 and lab.label[26] == 1


def test_dense_ids_ordered_by_min_vertex(backend):
    values = np.array([0, 9, 0, 9, 9, 0, 0, 9], dtype=float)
    grid = VolumeGrid((8, 1, 1), values)
    lab = label_components(grid, 5, FilterMode.ABOVE)
    assert lab.label.tolist() == [-1, 0, -1, 1, 1, -1, -1, 2]
    assert lab.comp_size.tolist() == [1, 2, 1]
    below = label_components(grid, 5, FilterMode.BELOW)
    assert below.label.tolist() == [0, -1, 1, -1, -1, 2, 2, -1]


def test_equal_to_isovalue_in_both_graphs(backend):
    grid = VolumeGrid((3, 1, 1), [1.0, 2.0, 3.0])
    assert label_components(grid, 2.0, FilterMode.ABOVE).comp_size.tolist() == [2]
    assert label_components(grid, 2.0, FilterMode.BELOW).comp_size.tolist() == [2]


def test_diagonal_not_connected(backend):
    arr = np.zeros((2, 2, 2))
    arr[0, 0, 0] = arr[1, 1, 0] = arr[1, 0, 1] = arr[0, 1, 1] = 1
    lab = label_components(VolumeGrid.from_array(arr), 0.5, FilterMode.ABOVE)
    assert lab.comp_count == 4


@settings(max_examples=120, deadline=None)
@given(
    dims=st.tuples(*[st.integers(1, 9)] * 3),
    seed=st.integers(0, 2**32 - 1),
    integer=st.booleans(),
    mode=st.sampled_from(list(FilterMode)),
)
def test_matches_flood_fill(dims, seed, integer, mode):
    rng = np.random.default_rng(seed)
    n = dims[0] * dims[1] * dims[2]
    values = rng.integers(0, 6, n).astype(float) if integer else rng.normal(size=n)
    iso = float(rng.choice(values)) if rng.random() < 0.3 else float(rng.uniform(-1, 6))
    grid = VolumeGrid(dims, values)
    lab = label_components(grid, iso, mode)
    expected = bfs_partition(values, dims, iso, mode.is_above)
    assert _partition(lab) == expected
    assert lab.n_labeled == int(mode.contains(values, iso).sum())
    labeled = lab.label >= 0
    assert np.array_equal(labeled, mode.contains(values, iso))


@settings(max_examples=40, deadline=None)
@given(dims=st.tuples(*[st.integers(1, 8)] * 3), seed=st.integers(0, 2**32 - 1))
def test_mode_duality(dims, seed):
    rng = np.random.default_rng(seed)
    n = dims[0] * dims[1] * dims[2]
    values = rng.integers(0, 4, n).astype(float)
    grid = VolumeGrid(dims, values)
    iso = 1.5
    a = label_components(grid, iso, FilterMode.ABOVE).label >= 0
    b = label_components(grid, iso, FilterMode.BELOW).label >= 0
    assert not (a & b).any()
    assert (a | b).all()


def test_deterministic(backend):
    rng = np.random.default_rng(3)
    grid = VolumeGrid((12, 10, 9), rng.integers(0, 3, 1080).astype(float))
    a = label_components(grid, 1.5, FilterMode.ABOVE)
    b = label_components(grid, 1.5, FilterMode.ABOVE)
    assert np.array_equal(a.label, b.label)
    assert np.array_equal(a.comp_size, b.comp_size)


def test_small_components_boundary_inclusive():
    values = np.zeros(40)
    # runs of length 1, 5, 6, 20 separated by zeros along x
    runs = [(0, 1), (2, 7), (8, 14), (15, 35)]
    for start, stop in runs:
        values[start:stop] = 1
    lab = label_components(VolumeGrid((40, 1, 1), values), 0.5, FilterMode.ABOVE)
    assert lab.comp_size.tolist() == [1, 5, 6, 20]
    assert small_components(lab, 5) == [0, 1]
    assert small_components(lab, 0) == []
    assert small_components(lab, 20) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        small_components(lab, -1)
